//! Canonical measures and Lévy–Khintchine characteristic exponents.
//!
//! A measure `M` is stored through its Lévy density `ℓ(u) = M(du)/(u² du)`
//! plus an optional atom at the origin. The exponent is
//! `ψ(z) = −iβz + φ(z)` with
//! `φ(z) = ∫(1 − cos zu) ℓ(u) du + atom·z²/2 + i∫(z sin u − sin zu) ℓ(u) du`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quad::{self, QuadOptions, QuadResult, Trig};
use crate::special::{one_minus_cos, z_sin_u_minus_sin_zu};

pub type DensityFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// `ℓ(u) = m(u)·(1 − cos ωu)` with a smooth, decaying envelope `m`.
#[derive(Clone)]
pub struct Modulation {
    pub envelope: DensityFn,
    pub omega: f64,
}

#[derive(Clone)]
pub struct CanonicalMeasure {
    levy_density: DensityFn,
    atom: f64,
    breakpoints: Vec<f64>,
    symmetric: bool,
    modulation: Option<Modulation>,
    opts: QuadOptions,
}

impl fmt::Debug for CanonicalMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CanonicalMeasure")
            .field("atom", &self.atom)
            .field("breakpoints", &self.breakpoints)
            .field("symmetric", &self.symmetric)
            .field("modulated", &self.modulation.is_some())
            .finish()
    }
}

impl CanonicalMeasure {
    /// `breakpoints` are the points (of either sign) where ℓ is not smooth.
    pub fn new(levy_density: DensityFn, atom: f64, breakpoints: Vec<f64>, symmetric: bool) -> Result<Self> {
        if !(atom >= 0.0 && atom.is_finite()) {
            return Err(Error::NotCanonical(format!("atom at zero must be finite and nonnegative, got {atom}")));
        }
        let mut bps: Vec<f64> = breakpoints.into_iter().filter(|b| *b != 0.0 && b.is_finite()).collect();
        if symmetric {
            let mirrored: Vec<f64> = bps.iter().map(|b| -b).collect();
            bps.extend(mirrored);
        }
        bps.sort_by(f64::total_cmp);
        bps.dedup();
        let m = CanonicalMeasure {
            levy_density,
            atom,
            breakpoints: bps,
            symmetric,
            modulation: None,
            opts: QuadOptions::default(),
        };
        m.check_symmetry()?;
        Ok(m)
    }

    pub fn with_modulation(mut self, modulation: Modulation) -> Self {
        self.modulation = Some(modulation);
        self
    }

    pub fn with_options(mut self, opts: QuadOptions) -> Self {
        self.opts = opts;
        self
    }

    /// Symmetric α-stable measure ℓ(u) = c|u|^{−1−α}.
    pub fn stable(alpha: f64, c: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 2.0) {
            return Err(Error::param("alpha", format!("must lie in (0,2), got {alpha}")));
        }
        CanonicalMeasure::new(Arc::new(move |u: f64| c * u.abs().powf(-1.0 - alpha)), 0.0, vec![], true)
    }

    /// Pure Gaussian component: M = σ²·δ₀.
    pub fn gaussian(variance: f64) -> Result<Self> {
        CanonicalMeasure::new(Arc::new(|_| 0.0), variance, vec![], true)
    }

    pub fn levy_density(&self, u: f64) -> f64 {
        if u == 0.0 {
            0.0
        } else {
            (self.levy_density)(u)
        }
    }

    pub fn atom(&self) -> f64 {
        self.atom
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    fn check_symmetry(&self) -> Result<()> {
        if !self.symmetric {
            return Ok(());
        }
        for k in 1..=40 {
            let u = 0.05 * k as f64 * (1.0 + 0.1 * k as f64);
            let (l, r) = (self.levy_density(u), self.levy_density(-u));
            if (l - r).abs() > 1e-12 * l.abs().max(r.abs()).max(1e-300) {
                return Err(Error::NotCanonical(format!("declared symmetric but ℓ({u}) ≠ ℓ(−{u})")));
            }
        }
        Ok(())
    }

    fn positive_breaks(&self, sign: f64) -> Vec<f64> {
        let mut b: Vec<f64> = self.breakpoints.iter().map(|x| sign * x).filter(|x| *x > 0.0).collect();
        b.sort_by(f64::total_cmp);
        b
    }

    /// ℓ(u) + ℓ(−u) for u > 0.
    fn even_part(&self, u: f64) -> f64 {
        self.levy_density(u) + self.levy_density(-u)
    }

    /// ℓ(u) − ℓ(−u) for u > 0.
    fn odd_part(&self, u: f64) -> f64 {
        if self.symmetric {
            0.0
        } else {
            self.levy_density(u) - self.levy_density(-u)
        }
    }

    fn all_positive_breaks(&self) -> Vec<f64> {
        let mut b: Vec<f64> = self.breakpoints.iter().map(|x| x.abs()).collect();
        b.sort_by(f64::total_cmp);
        b.dedup();
        b
    }

    /// ∫_lo^hi h over a finite interval, split at breakpoints.
    fn split_finite<F: Fn(f64) -> f64>(&self, h: &F, lo: f64, hi: f64, breaks: &[f64]) -> QuadResult {
        let mut knots = vec![lo];
        knots.extend(breaks.iter().copied().filter(|b| *b > lo && *b < hi));
        knots.push(hi);
        let mut acc = QuadResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        };
        for w in knots.windows(2) {
            let r = if w[0] == 0.0 || w[1] == 0.0 {
                quad::integrate_singular(h, w[0], w[1], &self.opts)
            } else {
                quad::integrate(h, w[0], w[1], &self.opts)
            };
            acc.value += r.value;
            acc.error_estimate += r.error_estimate;
            acc.evaluations += r.evaluations;
            acc.converged &= r.converged;
        }
        acc
    }

    /// M(I) = ∫_I u²ℓ(u)du + atom·1_{0∈I}.
    pub fn mass(&self, a: f64, b: f64) -> Result<f64> {
        if !(a.is_finite() && b.is_finite()) || a > b {
            return Err(Error::Domain(format!("M(I) needs a finite interval, got [{a}, {b}]")));
        }
        let h = |u: f64| u * u * self.levy_density(u);
        let mut breaks = self.breakpoints.clone();
        breaks.push(0.0);
        breaks.sort_by(f64::total_cmp);
        let r = self.split_finite(&h, a, b, &breaks);
        let atom = if a <= 0.0 && 0.0 <= b { self.atom } else { 0.0 };
        Ok(r.require("M(I)")? + atom)
    }

    fn one_sided_tail(&self, x: f64, sign: f64) -> QuadResult {
        let breaks = self.positive_breaks(sign);
        let last = breaks.iter().copied().filter(|b| *b > x).fold(x, f64::max);
        let h = |u: f64| self.levy_density(sign * u);
        let mut head = self.split_finite(&h, x, last, &breaks);
        let tail = match &self.modulation {
            None => quad::integrate(h, last, f64::INFINITY, &self.opts),
            Some(m) => {
                let env = |u: f64| (m.envelope)(sign * u);
                let plain = quad::integrate(env, last, f64::INFINITY, &self.opts);
                let osc = quad::integrate_oscillatory(env, Trig::Cos, m.omega, last, f64::INFINITY, &self.opts);
                QuadResult {
                    value: plain.value - osc.value,
                    error_estimate: plain.error_estimate + osc.error_estimate,
                    evaluations: plain.evaluations + osc.evaluations,
                    converged: plain.converged && osc.converged,
                }
            }
        };
        head.value += tail.value;
        head.error_estimate += tail.error_estimate;
        head.evaluations += tail.evaluations;
        head.converged &= tail.converged;
        head
    }

    /// (M⁺(x), M⁻(x)) with M⁺(x) = ∫_x^∞ ℓ(u)du and M⁻(x) = ∫_{−∞}^{−x} ℓ(u)du.
    pub fn tail_functionals(&self, x: f64) -> Result<(f64, f64)> {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("tail functionals need x > 0, got {x}")));
        }
        let plus = self.one_sided_tail(x, 1.0);
        let plus = check_tail(plus, "M⁺")?;
        let minus = if self.symmetric {
            plus
        } else {
            check_tail(self.one_sided_tail(x, -1.0), "M⁻")?
        };
        Ok((plus, minus))
    }

    /// ∫(1 − cos zu)ℓ(u)du, not including the atom.
    fn real_integral(&self, z: f64) -> QuadResult {
        let z = z.abs();
        if z == 0.0 {
            return QuadResult {
                value: 0.0,
                error_estimate: 0.0,
                evaluations: 0,
                converged: true,
            };
        }
        let breaks = self.all_positive_breaks();
        let e = |u: f64| self.even_part(u);
        match &self.modulation {
            None => {
                let last = breaks.last().copied().unwrap_or(0.0);
                let h = |u: f64| one_minus_cos(z * u) * e(u);
                let mut head = self.split_finite(&h, 0.0, last, &breaks);
                let tail = quad::one_minus_cos_transform(e, z, last, &self.opts);
                accumulate(&mut head, tail, 1.0);
                head
            }
            Some(m) => {
                let omega = m.omega.abs();
                let last = breaks.last().copied().unwrap_or(0.0).max(PI / omega);
                let h = |u: f64| one_minus_cos(z * u) * e(u);
                let mut acc = self.split_finite(&h, 0.0, last, &breaks);
                let env = |u: f64| (m.envelope)(u) + (m.envelope)(-u);
                // (1−cos zu)(1−cos ωu) = 1 − cos zu − cos ωu + ½cos((z−ω)u) + ½cos((z+ω)u)
                for (freq, weight) in [(0.0, 1.0), (z, -1.0), (omega, -1.0), (z - omega, 0.5), (z + omega, 0.5)] {
                    let r = quad::integrate_oscillatory(env, Trig::Cos, freq, last, f64::INFINITY, &self.opts);
                    accumulate(&mut acc, r, weight);
                }
                acc
            }
        }
    }

    /// ∫(z sin u − sin zu)ℓ(u)du.
    fn imag_integral(&self, z: f64) -> QuadResult {
        if self.symmetric || z == 0.0 {
            return QuadResult {
                value: 0.0,
                error_estimate: 0.0,
                evaluations: 0,
                converged: true,
            };
        }
        let breaks = self.all_positive_breaks();
        let o = |u: f64| self.odd_part(u);
        let last = breaks.last().copied().unwrap_or(0.0) + PI * (1.0f64).max(1.0 / z.abs());
        let h = |u: f64| z_sin_u_minus_sin_zu(z, u) * o(u);
        let mut acc = self.split_finite(&h, 0.0, last, &breaks);
        let s1 = quad::integrate_oscillatory(o, Trig::Sin, 1.0, last, f64::INFINITY, &self.opts);
        let sz = quad::integrate_oscillatory(o, Trig::Sin, z, last, f64::INFINITY, &self.opts);
        accumulate(&mut acc, s1, z);
        accumulate(&mut acc, sz, -1.0);
        acc
    }

    /// Drift-free part φ(z).
    pub fn phi(&self, z: f64) -> Result<Complex64> {
        let re = self.real_integral(z).require("Re φ")? + 0.5 * self.atom * z * z;
        let im = self.imag_integral(z).require("Im φ")?;
        Ok(Complex64::new(re, im))
    }

    /// Confirms M is finite on [−1, 1] and the tails at 1 are finite.
    pub fn validate(&self) -> Result<()> {
        let m = self.mass(-1.0, 1.0).map_err(|e| Error::NotCanonical(format!("M([−1,1]) diverges: {e}")))?;
        let (p, q) = self
            .tail_functionals(1.0)
            .map_err(|e| Error::NotCanonical(format!("tail functionals diverge: {e}")))?;
        if !(m.is_finite() && p.is_finite() && q.is_finite()) {
            return Err(Error::NotCanonical("non-finite mass or tails".into()));
        }
        Ok(())
    }
}

fn accumulate(acc: &mut QuadResult, r: QuadResult, weight: f64) {
    acc.value += weight * r.value;
    acc.error_estimate += weight.abs() * r.error_estimate;
    acc.evaluations += r.evaluations;
    acc.converged &= r.converged;
}

fn check_tail(r: QuadResult, what: &str) -> Result<f64> {
    if !r.value.is_finite() {
        return Err(Error::NotCanonical(format!("{what} diverges")));
    }
    r.require(what)
}

/// Condition-B growth data: Re ψ(z) ≥ c|z|^α for large |z|.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Growth {
    pub alpha: f64,
    pub c: f64,
}

#[derive(Clone)]
enum Form {
    /// scale·|z|^α
    Stable { alpha: f64, scale: f64 },
    /// Drift-free part evaluated from a canonical measure, memoised by z.
    Measure {
        measure: CanonicalMeasure,
        memo: Arc<DashMap<u64, Complex64>>,
    },
    /// User-supplied drift-free φ.
    Custom(Arc<dyn Fn(f64) -> Result<Complex64> + Send + Sync>),
}

/// ψ(z) = −iβz + φ(z).
#[derive(Clone)]
pub struct CharExponent {
    form: Form,
    drift_beta: f64,
    growth: Option<Growth>,
    symmetric: bool,
}

impl fmt::Debug for CharExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let form = match &self.form {
            Form::Stable { alpha, scale } => format!("stable(alpha={alpha}, scale={scale})"),
            Form::Measure { measure, .. } => format!("measure({measure:?})"),
            Form::Custom(_) => "custom".to_string(),
        };
        f.debug_struct("CharExponent")
            .field("form", &form)
            .field("drift_beta", &self.drift_beta)
            .field("growth", &self.growth)
            .finish()
    }
}

/// Builds ψ from a canonical measure and drift β.
pub fn exponent_from_measure(m: &CanonicalMeasure, beta: f64) -> CharExponent {
    CharExponent {
        symmetric: m.is_symmetric() && beta == 0.0,
        form: Form::Measure {
            measure: m.clone(),
            memo: Arc::new(DashMap::new()),
        },
        drift_beta: beta,
        growth: None,
    }
}

/// (M⁺(x), M⁻(x)); see [`CanonicalMeasure::tail_functionals`].
pub fn tail_functionals(m: &CanonicalMeasure, x: f64) -> Result<(f64, f64)> {
    m.tail_functionals(x)
}

impl CharExponent {
    /// ψ(z) = scale·|z|^α in closed form.
    pub fn stable(alpha: f64, scale: f64) -> Self {
        CharExponent {
            form: Form::Stable { alpha, scale },
            drift_beta: 0.0,
            growth: Some(Growth { alpha, c: scale }),
            symmetric: true,
        }
    }

    /// ψ(z) = σ²z²/2.
    pub fn gaussian(variance: f64) -> Self {
        CharExponent {
            form: Form::Stable {
                alpha: 2.0,
                scale: 0.5 * variance,
            },
            drift_beta: 0.0,
            growth: Some(Growth {
                alpha: 2.0,
                c: 0.5 * variance,
            }),
            symmetric: true,
        }
    }

    pub fn custom(phi: Arc<dyn Fn(f64) -> Result<Complex64> + Send + Sync>, beta: f64, symmetric: bool) -> Self {
        CharExponent {
            form: Form::Custom(phi),
            drift_beta: beta,
            growth: None,
            symmetric,
        }
    }

    pub fn with_growth(mut self, growth: Growth) -> Self {
        self.growth = Some(growth);
        self
    }

    pub fn with_drift(mut self, beta: f64) -> Self {
        self.drift_beta = beta;
        if beta != 0.0 {
            self.symmetric = false;
        }
        self
    }

    pub fn drift_beta(&self) -> f64 {
        self.drift_beta
    }

    pub fn growth(&self) -> Option<Growth> {
        self.growth
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn measure(&self) -> Option<&CanonicalMeasure> {
        match &self.form {
            Form::Measure { measure, .. } => Some(measure),
            _ => None,
        }
    }

    /// Drift-free part φ(z).
    pub fn phi(&self, z: f64) -> Result<Complex64> {
        match &self.form {
            Form::Stable { alpha, scale } => Ok(Complex64::new(scale * z.abs().powf(*alpha), 0.0)),
            Form::Measure { measure, memo } => {
                // φ(−z) = conj φ(z); cache on |z|.
                let key = z.abs().to_bits();
                let v = match memo.get(&key) {
                    Some(v) => *v,
                    None => {
                        let v = measure.phi(z.abs())?;
                        memo.insert(key, v);
                        v
                    }
                };
                Ok(if z < 0.0 { v.conj() } else { v })
            }
            Form::Custom(f) => f(z),
        }
    }

    pub fn psi(&self, z: f64) -> Result<Complex64> {
        Ok(self.phi(z)? - Complex64::new(0.0, self.drift_beta * z))
    }

    pub fn re_part(&self, z: f64) -> Result<f64> {
        Ok(self.phi(z)?.re)
    }

    pub fn im_part(&self, z: f64) -> Result<f64> {
        Ok(self.psi(z)?.im)
    }

    /// Φ(z) = e^{−ψ(z)}.
    pub fn char_fn(&self, z: f64) -> Result<Complex64> {
        Ok((-self.psi(z)?).exp())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntervalDelta {
    pub a: f64,
    pub b: f64,
    pub delta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailDelta {
    pub x: f64,
    pub delta_plus: f64,
    pub delta_minus: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProperConvergence {
    pub intervals: Vec<IntervalDelta>,
    pub tails: Vec<TailDelta>,
}

impl ProperConvergence {
    pub fn max_delta(&self) -> f64 {
        self.intervals
            .iter()
            .map(|d| d.delta)
            .chain(self.tails.iter().flat_map(|t| [t.delta_plus, t.delta_minus]))
            .fold(0.0, f64::max)
    }
}

/// |Mₙ(I) − M(I)| per interval and |Mₙ±(x) − M±(x)| per x.
pub fn proper_convergence_report(
    mn: &CanonicalMeasure,
    m: &CanonicalMeasure,
    intervals: &[(f64, f64)],
    xs: &[f64],
) -> Result<ProperConvergence> {
    let intervals = intervals
        .iter()
        .map(|&(a, b)| {
            Ok(IntervalDelta {
                a,
                b,
                delta: (mn.mass(a, b)? - m.mass(a, b)?).abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let tails = xs
        .iter()
        .map(|&x| {
            let (pn, qn) = mn.tail_functionals(x)?;
            let (p, q) = m.tail_functionals(x)?;
            Ok(TailDelta {
                x,
                delta_plus: (pn - p).abs(),
                delta_minus: (qn - q).abs(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProperConvergence { intervals, tails })
}
