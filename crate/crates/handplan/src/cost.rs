//! The joint-effort functional that filters sampled configurations.
//!
//! For a candidate configuration with joint displacements `e2` (middle) and
//! `e3` (distal) and a task-motion magnitude `d`, the functional is
//!
//! ```text
//! f = integral over t in [0, 1] of d / (e3 + e2 * t) dt
//! ```
//!
//! i.e. the task motion measured against a displacement budget that starts at
//! the distal joint's move and grows linearly by the middle joint's. A
//! configuration is kept when `f` is close to 1: the joints move about as
//! much as the task requires — no more, no less.
//!
//! Two independent evaluation routes are kept deliberately: the logarithmic
//! closed form used by the sampler, and an adaptive-quadrature evaluation of
//! the defining integral used to cross-check it. Do not fold one into the
//! other.

use crate::error::{Error, Result};

/// Default half-width of the acceptance band around `f = 1`.
pub const DEFAULT_COST_TOLERANCE: f64 = 0.05;

/// Inputs to the effort functional.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostInput {
    /// Magnitude of the task motion assigned to this finger (for a
    /// translation, the object displacement norm; for a roll, the contact
    /// displacement norm).
    pub delta_norm: f64,
    /// Displacement of the middle joint from its initial position.
    pub e2: f64,
    /// Displacement of the distal joint from its initial position.
    pub e3: f64,
}

impl CostInput {
    pub fn new(delta_norm: f64, e2: f64, e3: f64) -> Self {
        debug_assert!(delta_norm >= 0.0 && e2 >= 0.0 && e3 >= 0.0);
        CostInput { delta_norm, e2, e3 }
    }
}

/// Closed-form value of the effort functional.
///
/// Case split: zero task motion costs nothing; a vanishing distal
/// displacement with nonzero task motion diverges; otherwise the integral
/// evaluates to `d/e2 * ln(1 + e2/e3)` (continuously extended to `d/e3` as
/// `e2 -> 0`).
pub fn cost_closed_form(input: CostInput) -> f64 {
    let CostInput { delta_norm, e2, e3 } = input;
    if delta_norm == 0.0 {
        return 0.0;
    }
    if e3 <= 0.0 {
        return f64::INFINITY;
    }
    if e2 == 0.0 {
        return delta_norm / e3;
    }
    delta_norm / e2 * (e2 / e3).ln_1p()
}

/// Evaluate the defining integral by adaptive Simpson quadrature.
///
/// This is the oracle route: it never touches a logarithm. `tol` is the
/// absolute tolerance allotted to the whole interval.
pub fn cost_quadrature(input: CostInput, tol: f64) -> Result<f64> {
    debug_assert!(tol > 0.0);
    let CostInput { delta_norm, e2, e3 } = input;
    if delta_norm == 0.0 {
        return Ok(0.0);
    }
    if e3 <= 0.0 {
        return Err(Error::DivergentIntegral);
    }
    let g = |t: f64| delta_norm / (e3 + e2 * t);
    Ok(adaptive_simpson(&g, 0.0, 1.0, tol))
}

/// Whether a configuration passes the effort filter: `|f - 1| <= tolerance`,
/// with the all-zero identity case accepted outright.
pub fn accepts(input: CostInput, tolerance: f64) -> bool {
    if input.delta_norm == 0.0 && input.e2 == 0.0 && input.e3 == 0.0 {
        return true;
    }
    let f = cost_closed_form(input);
    f.is_finite() && (f - 1.0).abs() <= tolerance
}

fn adaptive_simpson(g: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (g(a), g(m), g(b));
    let whole = simpson(a, b, fa, fm, fb);
    refine(g, a, b, fa, fm, fb, whole, tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn refine(
    g: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (g(lm), g(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        // Richardson extrapolation of the composite estimate.
        return left + right + delta / 15.0;
    }
    refine(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + refine(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

#[inline]
fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}
