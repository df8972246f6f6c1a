fn main() {
    std::process::exit(handplan::cli::run_from_env());
}
