//! One-dimensional quadrature.
//!
//! [`integrate`] covers finite and (semi-)infinite intervals with an adaptive
//! Gauss–Kronrod rule, [`integrate_singular`] uses tanh-sinh nodes for
//! integrable endpoint singularities, and [`integrate_oscillatory`] sums
//! half-period panels of `f(u)·cos(ωu)` or `f(u)·sin(ωu)` with an
//! alternating-series accelerator on infinite tails.

mod gk;
mod oscillatory;
mod tanh_sinh;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_evals: 1_000_000,
        }
    }
}

impl QuadOptions {
    pub fn with_abs(abs_tol: f64) -> Self {
        QuadOptions {
            abs_tol,
            ..Default::default()
        }
    }

    pub fn tight() -> Self {
        QuadOptions {
            abs_tol: 1e-13,
            rel_tol: 1e-11,
            max_evals: 2_000_000,
        }
    }

    /// Acceptable absolute error for an estimate `value` whose absolute
    /// integrand mass is `abs_mass`. The last term is a roundoff floor.
    pub(crate) fn target(&self, value: f64, abs_mass: f64) -> f64 {
        self.abs_tol
            .max(self.rel_tol * value.abs())
            .max(64.0 * f64::EPSILON * abs_mass)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl QuadResult {
    pub(crate) fn exact(value: f64) -> Self {
        QuadResult {
            value,
            error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        }
    }

    fn combine(self, other: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            evaluations: self.evaluations + other.evaluations,
            converged: self.converged && other.converged,
        }
    }

    fn scale(self, c: f64) -> QuadResult {
        QuadResult {
            value: c * self.value,
            error_estimate: c.abs() * self.error_estimate,
            ..self
        }
    }

    /// Turns a non-converged result into an error carrying the estimate.
    pub fn require(self, what: &str) -> Result<f64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::QuadNotConverged {
                what: what.to_string(),
                estimate: self.value,
                error: self.error_estimate,
                evaluations: self.evaluations,
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trig {
    Cos,
    Sin,
}

impl Trig {
    #[inline]
    pub fn eval(self, x: f64) -> f64 {
        match self {
            Trig::Cos => x.cos(),
            Trig::Sin => x.sin(),
        }
    }
}

/// ∫_a^b f(u) du. Either bound may be infinite; a half-line is mapped onto
/// [0, 1) by u = a + t/(1−t).
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: &QuadOptions) -> QuadResult {
    integrate_ref(&f, a, b, opts)
}

fn integrate_ref<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, opts: &QuadOptions) -> QuadResult {
    if a == b {
        return QuadResult::exact(0.0);
    }
    if a > b {
        return integrate_ref(f, b, a, opts).scale(-1.0);
    }
    match (a.is_finite(), b.is_finite()) {
        (true, true) => gk::adaptive(f, a, b, opts),
        (true, false) => half_line(&|t: f64| mapped_right(f, a, t), opts),
        (false, true) => half_line(&|t: f64| mapped_right(&|v: f64| f(-v), -b, t), opts),
        (false, false) => {
            let half = QuadOptions {
                abs_tol: 0.5 * opts.abs_tol,
                ..*opts
            };
            integrate_ref(f, f64::NEG_INFINITY, 0.0, &half).combine(integrate_ref(f, 0.0, f64::INFINITY, &half))
        }
    }
}

/// Mapped half-line integrand on [0, 1). Power-law tails leave an algebraic
/// singularity at t = 1, which the double-exponential rule absorbs; the
/// adaptive rule is the fallback for integrands with interior kinks.
fn half_line<G: Fn(f64) -> f64>(g: &G, opts: &QuadOptions) -> QuadResult {
    let ts = tanh_sinh::integrate(g, 0.0, 1.0, opts);
    if ts.converged {
        return ts;
    }
    let ak = gk::adaptive(g, 0.0, 1.0, opts);
    let evaluations = ak.evaluations + ts.evaluations;
    if ak.converged || ak.error_estimate < ts.error_estimate {
        QuadResult { evaluations, ..ak }
    } else {
        QuadResult { evaluations, ..ts }
    }
}

#[inline]
fn mapped_right<F: Fn(f64) -> f64>(f: &F, a: f64, t: f64) -> f64 {
    let s = 1.0 - t;
    if s <= 0.0 {
        return 0.0;
    }
    let v = f(a + t / s) / (s * s);
    if v.is_finite() {
        v
    } else {
        0.0
    }
}

/// ∫_a^b f(u) du on a finite interval with integrable singularities at
/// either endpoint. Falls back to the adaptive rule if the tanh-sinh
/// ladder does not settle.
pub fn integrate_singular<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: &QuadOptions) -> QuadResult {
    assert!(a.is_finite() && b.is_finite(), "integrate_singular needs finite bounds");
    let ts = tanh_sinh::integrate(&f, a, b, opts);
    if ts.converged {
        return ts;
    }
    let ak = gk::adaptive(&f, a, b, opts);
    if ak.converged || ak.error_estimate < ts.error_estimate {
        QuadResult {
            evaluations: ak.evaluations + ts.evaluations,
            ..ak
        }
    } else {
        ts
    }
}

/// ∫_a^b f(u)·trig(ωu) du with `a` finite and `b` finite or +∞.
///
/// The piece up to the first zero of trig(ωu) after `a` is integrated on its
/// own (it may carry an endpoint singularity); the rest is split at the
/// zeros, and on infinite domains the partial sums are accelerated by
/// repeated averaging.
pub fn integrate_oscillatory<F: Fn(f64) -> f64>(
    f: F,
    trig: Trig,
    omega: f64,
    a: f64,
    b: f64,
    opts: &QuadOptions,
) -> QuadResult {
    assert!(a.is_finite(), "integrate_oscillatory needs a finite lower bound");
    if a == b {
        return QuadResult::exact(0.0);
    }
    if a > b {
        return integrate_oscillatory(f, trig, omega, b, a, opts).scale(-1.0);
    }
    if omega == 0.0 {
        return match trig {
            Trig::Cos => integrate(f, a, b, opts),
            Trig::Sin => QuadResult::exact(0.0),
        };
    }
    if omega < 0.0 {
        let sign = match trig {
            Trig::Cos => 1.0,
            Trig::Sin => -1.0,
        };
        return oscillatory::integrate(&f, trig, -omega, a, b, opts).scale(sign);
    }
    oscillatory::integrate(&f, trig, omega, a, b, opts)
}

/// ∫_a^∞ (1 − cos ωu) f(u) du for a nonnegative, integrable-at-infinity `f`.
///
/// The first half-period is integrated with the cancellation-free
/// integrand; beyond it the integral splits as ∫f − ∫f·cos(ωu).
pub fn one_minus_cos_transform<F: Fn(f64) -> f64>(f: F, omega: f64, a: f64, opts: &QuadOptions) -> QuadResult {
    use crate::special::one_minus_cos;
    let omega = omega.abs();
    if omega == 0.0 {
        return QuadResult::exact(0.0);
    }
    let split = a + std::f64::consts::PI / omega;
    let head = integrate_singular(|u: f64| one_minus_cos(omega * u) * f(u), a, split, opts);
    let plain = integrate(&f, split, f64::INFINITY, opts);
    let osc = integrate_oscillatory(&f, Trig::Cos, omega, split, f64::INFINITY, opts);
    head.combine(plain).combine(osc.scale(-1.0))
}
