//! Closed forms for the Example 1 kernel g(u) = c(1 − cos u)/|u|^{1+α}.

use std::f64::consts::PI;

use crate::quad::{self, QuadOptions, QuadResult, Trig};
use crate::special::{gamma, one_minus_cos, pow1p_m1};

/// K_α = ∫₀^∞ (1 − cos v) v^{−1−α} dv = π / (2Γ(1+α) sin(πα/2)).
pub fn k_alpha(alpha: f64) -> f64 {
    PI / (2.0 * gamma(1.0 + alpha) * (0.5 * PI * alpha).sin())
}

/// K_α by quadrature: the non-oscillatory tail ∫_π^∞ v^{−1−α} = π^{−α}/α is exact.
pub fn k_alpha_quad(alpha: f64, opts: &QuadOptions) -> QuadResult {
    let env = |v: f64| v.powf(-1.0 - alpha);
    // Series on [0, ε] where (1 − cos v) = v²/2 − v⁴/24 + O(v⁶).
    let eps: f64 = 1e-2;
    let series = eps.powf(2.0 - alpha) / (2.0 * (2.0 - alpha)) - eps.powf(4.0 - alpha) / (24.0 * (4.0 - alpha));
    let head = quad::integrate(|v: f64| one_minus_cos(v) * env(v), eps, PI, opts);
    let osc = quad::integrate_oscillatory(env, Trig::Cos, 1.0, PI, f64::INFINITY, opts);
    QuadResult {
        value: series + head.value + PI.powf(-alpha) / alpha - osc.value,
        error_estimate: head.error_estimate + osc.error_estimate,
        evaluations: head.evaluations + osc.evaluations,
        converged: head.converged && osc.converged,
    }
}

/// (θ(w), 1 − θ(w)) for θ(w) = ½|1+w|^α + ½|1−w|^α − |w|^α.
///
/// Both outputs are formed without subtracting nearly equal numbers:
/// near 0 from (1±w)^α − 1, far out from (1±1/w)^α − 1.
pub fn theta(alpha: f64, w: f64) -> (f64, f64) {
    let w = w.abs();
    if alpha == 1.0 {
        let d = w.min(1.0);
        return (1.0 - d, d);
    }
    if w == 0.0 {
        return (1.0, 0.0);
    }
    if w <= 1.0 {
        // 1 − θ = |w|^α − ½[(1+w)^α − 1] − ½[(1−w)^α − 1]
        let lower = if w < 1.0 { pow1p_m1(-w, alpha) } else { -1.0 };
        let d = w.powf(alpha) - 0.5 * (pow1p_m1(w, alpha) + lower);
        (1.0 - d, d)
    } else {
        let r = 1.0 / w;
        let t = 0.5 * w.powf(alpha) * (pow1p_m1(r, alpha) + pow1p_m1(-r, alpha));
        (t, 1.0 - t)
    }
}

/// The density itself, with its removable singularity handled.
pub fn density(alpha: f64, c: f64, u: f64) -> f64 {
    let a = u.abs();
    if a == 0.0 {
        return if alpha < 1.0 {
            0.0
        } else if alpha == 1.0 {
            0.5 * c
        } else {
            f64::INFINITY
        };
    }
    c * one_minus_cos(u) * a.powf(-1.0 - alpha)
}
