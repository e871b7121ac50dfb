//! Quadratures for the hyperbolic-cosine array gₙ(u) = 1/(2nu sinh(u/n)) on |u| ≥ 1.
//!
//! With h(v) = 1/(v sinh v) and the substitution u = nv,
//! θₙ(w) = ν·(1/n)∫_{1/n}^∞ cos(nwv) h(v) dv, where ν is the normalising
//! factor (1/Zₙ, or 1 for the literal formula), Zₙ = (1/n)∫_{1/n}^∞ h and
//! 1 − θₙ(w) = (1 − νZₙ) + ν Jₙ(nw)/n with Jₙ(z) = ∫_{1/n}^∞ (1 − cos zv) h(v) dv.

use crate::quad::{self, QuadOptions, QuadResult};
use crate::special::{inv_v_sinh_v, one_minus_cos};

/// Beyond this point h(v) < 1e−25 and the integrals are cut.
const V_CUT: f64 = 60.0;

pub fn h(v: f64) -> f64 {
    inv_v_sinh_v(v)
}

/// ∫_c^∞ h(v) dv.
pub fn h_tail(c: f64, opts: &QuadOptions) -> QuadResult {
    if c >= V_CUT {
        return quad::integrate(h, c, f64::INFINITY, opts);
    }
    let head = quad::integrate(h, c, V_CUT, opts);
    let tail = quad::integrate(h, V_CUT, f64::INFINITY, opts);
    QuadResult {
        value: head.value + tail.value,
        error_estimate: head.error_estimate + tail.error_estimate,
        evaluations: head.evaluations + tail.evaluations,
        converged: head.converged && tail.converged,
    }
}

/// ∫_c^∞ (1 − cos zv) h(v) dv for c > 0 (c = 0 gives the limit exponent).
pub fn j_integral(c: f64, z: f64, opts: &QuadOptions) -> QuadResult {
    let z = z.abs();
    if z == 0.0 {
        return QuadResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        };
    }
    let f = |v: f64| one_minus_cos(z * v) * h(v);
    if z * (V_CUT - c) < std::f64::consts::PI {
        // Less than half an oscillation before h is negligible.
        let r = if c == 0.0 {
            quad::integrate_singular(f, c, V_CUT, opts)
        } else {
            quad::integrate(f, c, V_CUT, opts)
        };
        return r;
    }
    quad::one_minus_cos_transform(h, z, c, opts)
}

/// ∫_a^∞ 1/(v sinh v)² dv, used for ∫gₙ².
pub fn h_sq_tail(c: f64, opts: &QuadOptions) -> QuadResult {
    let f = |v: f64| {
        let x = h(v);
        x * x
    };
    let head = quad::integrate(f, c, c.max(V_CUT), opts);
    let tail = quad::integrate(f, c.max(V_CUT), f64::INFINITY, opts);
    QuadResult {
        value: head.value + tail.value,
        error_estimate: head.error_estimate + tail.error_estimate,
        evaluations: head.evaluations + tail.evaluations,
        converged: head.converged && tail.converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn raw_mass_matches_oracle() {
        let o = QuadOptions::tight();
        for (n, z) in [
            (1u32, 0.467_420_248_933_254_9),
            (4, 0.837_104_652_894_731_4),
            (16, 0.957_329_244_006_545_4),
        ] {
            let n = n as f64;
            let v = h_tail(1.0 / n, &o).value / n;
            assert!((v - z).abs() < 1e-11, "n={n}: {v}");
        }
    }

    #[test]
    fn limit_exponent_is_log_cosh() {
        let o = QuadOptions::tight();
        for &z in &[0.01, 0.5, 1.0, 5.0, 40.0] {
            let v = j_integral(0.0, z, &o).value;
            let expect = (std::f64::consts::FRAC_PI_2 * z).cosh().ln();
            assert!((v - expect).abs() < 1e-9 * expect.max(1.0), "z={z}: {v} vs {expect}");
        }
    }
}
