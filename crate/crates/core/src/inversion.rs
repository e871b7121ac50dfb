//! Densities from characteristic functions.
//!
//! p(x) = (2π)^{−1} ∫ e^{−izx} Φ(z) dz, truncated at z_max with a certified
//! (or, failing an envelope, probed) bound on the discarded tail.
//!
//! Grids use the trapezoid rule in z folded onto an FFT of length M, so
//! Δz·Δx = 2π/M. The x-period of the discrete transform is P = MΔx; it is
//! chosen from the tail index of Φ at the origin so that the aliased copies
//! p(x + mP), m ≠ 0, stay below a requested level.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{self, QuadOptions, Trig};
use crate::special::{gamma, zeta};

/// A characteristic function Φ of a real random variable, so Φ(−z) = conj Φ(z).
pub trait CharFn: Sync {
    fn eval(&self, z: f64) -> Result<Complex64>;

    /// Φ is real and even.
    fn is_even_real(&self) -> bool {
        false
    }

    /// A certified bound on ∫_{z0}^∞ |Φ(z)| dz, if known.
    fn tail_integral(&self, _z0: f64) -> Option<f64> {
        None
    }

    /// Φ(z) = 0 for |z| ≥ edge.
    fn support_edge(&self) -> Option<f64> {
        None
    }
}

/// Envelope |Φ(z)| ≤ … for z ≥ 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Decay {
    /// amp·e^{−c z^α}
    Stretched { amp: f64, c: f64, alpha: f64 },
    /// zero beyond `edge`
    Compact { edge: f64 },
    /// amp·z^{−p} for z ≥ from
    Power { amp: f64, p: f64, from: f64 },
    Unknown,
}

impl Decay {
    /// ∫_{z0}^∞ of the envelope.
    pub fn tail_integral(&self, z0: f64) -> Option<f64> {
        let z0 = z0.max(0.0);
        match *self {
            Decay::Stretched { amp, c, alpha } => {
                let f = |z: f64| amp * (-c * z.powf(alpha)).exp();
                let r = quad::integrate(f, z0, f64::INFINITY, &QuadOptions::with_abs(1e-300));
                // The quadrature of a smooth monotone integrand; pad by its own error.
                Some(r.value.max(0.0) + r.error_estimate)
            }
            Decay::Compact { edge } => Some(if z0 >= edge { 0.0 } else { f64::INFINITY }),
            Decay::Power { amp, p, from } => {
                if p <= 1.0 || z0 < from {
                    None
                } else {
                    Some(amp * z0.powf(1.0 - p) / (p - 1.0))
                }
            }
            Decay::Unknown => None,
        }
    }
}

/// A closure-backed [`CharFn`].
pub struct FnCharFn<F> {
    f: F,
    even_real: bool,
    decay: Decay,
}

impl<F: Fn(f64) -> Complex64 + Sync> FnCharFn<F> {
    pub fn new(f: F, even_real: bool, decay: Decay) -> Self {
        FnCharFn { f, even_real, decay }
    }
}

impl<F: Fn(f64) -> Complex64 + Sync> CharFn for FnCharFn<F> {
    fn eval(&self, z: f64) -> Result<Complex64> {
        Ok((self.f)(z))
    }
    fn is_even_real(&self) -> bool {
        self.even_real
    }
    fn tail_integral(&self, z0: f64) -> Option<f64> {
        self.decay.tail_integral(z0)
    }
    fn support_edge(&self) -> Option<f64> {
        match self.decay {
            Decay::Compact { edge } => Some(edge),
            _ => None,
        }
    }
}

/// Where the z-integral was cut and what the cut costs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Truncation {
    pub z_max: f64,
    /// ∫_{z_max}^∞ |Φ| (one side).
    pub tail_integral: f64,
    /// False when the bound comes from probing rather than an envelope.
    pub certified: bool,
}

impl Truncation {
    /// Bound on the density error from the cut: (2π)^{−1}·2·tail.
    pub fn density_bound(&self) -> f64 {
        self.tail_integral / PI
    }
}

const Z_CAP: f64 = 1e6;

/// Picks z_max so that the discarded tail contributes at most `tol` to p.
pub fn choose_truncation(phi: &dyn CharFn, tol: f64) -> Result<Truncation> {
    if let Some(edge) = phi.support_edge() {
        return Ok(Truncation {
            z_max: edge,
            tail_integral: 0.0,
            certified: true,
        });
    }
    let target = PI * tol;
    if phi.tail_integral(1.0).is_some() {
        let ok = |z: f64| phi.tail_integral(z).is_some_and(|t| t <= target);
        let mut hi = 0.5;
        while !ok(hi) {
            hi *= 1.25;
            if hi > Z_CAP {
                return Err(Error::SlowDecay(format!("envelope tail still above {target:e} at z = {Z_CAP:e}")));
            }
        }
        let mut lo = hi / 1.25;
        for _ in 0..40 {
            let mid = 0.5 * (lo + hi);
            if ok(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        return Ok(Truncation {
            z_max: hi,
            tail_integral: phi.tail_integral(hi).unwrap_or(0.0),
            certified: true,
        });
    }
    probe_truncation(phi, tol)
}

/// Geometric probe for |Φ(z)| < tol/(1+z²) on three consecutive points,
/// followed by a power-law fit of the remaining tail.
fn probe_truncation(phi: &dyn CharFn, tol: f64) -> Result<Truncation> {
    let mut z = 0.5;
    let mut run = 0;
    while z < Z_CAP {
        let a = phi.eval(z)?.norm();
        if a < tol / (1.0 + z * z) {
            run += 1;
            if run == 3 {
                break;
            }
        } else {
            run = 0;
        }
        z *= 1.1;
    }
    if z >= Z_CAP {
        return Err(Error::SlowDecay(format!("|Φ| not below tolerance before z = {Z_CAP:e}")));
    }
    let z_max = z;
    let samples: Vec<f64> = (0..4)
        .map(|j| phi.eval(z_max * 2f64.powi(j)).map(|v| v.norm()))
        .collect::<Result<_>>()?;
    let head = samples[0].max(samples[1]).max(1e-300);
    let rest = samples[2].max(samples[3]).max(1e-300);
    let p = (0.5 * (head / rest).log2()).max(2.0);
    Ok(Truncation {
        z_max,
        tail_integral: head * z_max / (p - 1.0),
        certified: false,
    })
}

/// Pointwise value with its truncation certificate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DensityPoint {
    pub x: f64,
    pub value: f64,
    pub tail_bound: f64,
    pub quad_error: f64,
    pub certified: bool,
}

/// p(x) by oscillatory quadrature of (1/π)∫₀^{z_max} Re(e^{−izx}Φ(z)) dz.
pub fn density_point(phi: &dyn CharFn, x: f64, tol: f64) -> Result<DensityPoint> {
    let t = choose_truncation(phi, tol)?;
    density_point_with(phi, x, tol, &t)
}

pub fn density_point_with(phi: &dyn CharFn, x: f64, tol: f64, t: &Truncation) -> Result<DensityPoint> {
    let opts = QuadOptions {
        abs_tol: tol,
        rel_tol: 1e-12,
        max_evals: 4_000_000,
    };
    let re = |z: f64| phi.eval(z).map(|v| v.re).unwrap_or(f64::NAN);
    let mut r = quad::integrate_oscillatory(re, Trig::Cos, x, 0.0, t.z_max, &opts);
    if !phi.is_even_real() {
        let im = |z: f64| phi.eval(z).map(|v| v.im).unwrap_or(f64::NAN);
        let s = quad::integrate_oscillatory(im, Trig::Sin, x, 0.0, t.z_max, &opts);
        r.value += s.value;
        r.error_estimate += s.error_estimate;
        r.converged &= s.converged;
    }
    if !r.value.is_finite() {
        return Err(Error::Domain(format!("characteristic function failed near x = {x}")));
    }
    let value = r.require(&format!("density at x = {x}"))? / PI;
    Ok(DensityPoint {
        x,
        value,
        tail_bound: t.density_bound(),
        quad_error: r.error_estimate / PI,
        certified: t.certified,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridOptions {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    pub tol: f64,
    /// Target for the aliased copies Σ_{m≠0} p(x + mP).
    pub alias_tol: f64,
    pub max_fft: usize,
    /// Upper limit on Φ evaluations.
    pub max_evals: usize,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions {
            x_min: -10.0,
            x_max: 10.0,
            points: 1024,
            tol: 1e-10,
            alias_tol: 1e-9,
            max_fft: 1 << 22,
            max_evals: 50_000_000,
        }
    }
}

impl GridOptions {
    pub fn new(x_min: f64, x_max: f64, points: usize, tol: f64) -> Self {
        GridOptions {
            x_min,
            x_max,
            points,
            tol,
            ..Default::default()
        }
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.points - 1) as f64
    }

    pub fn xs(&self) -> Vec<f64> {
        let dx = self.dx();
        (0..self.points).map(|j| self.x_min + j as f64 * dx).collect()
    }

    fn validate(&self) -> Result<()> {
        if self.points < 16 {
            return Err(Error::param("points", format!("need at least 16, got {}", self.points)));
        }
        if !(self.x_max > self.x_min) || !self.x_min.is_finite() || !self.x_max.is_finite() {
            return Err(Error::param("x_range", "need finite x_min < x_max"));
        }
        if !(self.tol > 0.0) {
            return Err(Error::param("tol", "must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityGrid {
    pub xs: Vec<f64>,
    pub values: Vec<f64>,
    pub z_max: f64,
    /// (2π)^{−1}∫_{|z|>z_max}|Φ|.
    pub tail_bound: f64,
    pub tol: f64,
    /// Estimated size of the periodic copies; 0 for light tails.
    pub alias_bound: f64,
    pub period: f64,
    pub dz: f64,
    pub certified: bool,
    /// Probed index α̂ of the power tail p(x) ~ C|x|^{−1−α̂}; 2 for light tails.
    pub tail_index: f64,
    /// The C above; 0 for light tails.
    pub tail_const: f64,
}

#[derive(Serialize)]
struct GridMeta<'a> {
    z_max: f64,
    tail_bound: f64,
    tol: f64,
    alias_bound: f64,
    period: f64,
    dz: f64,
    certified: bool,
    tail_index: f64,
    tail_const: f64,
    points: usize,
    x_min: f64,
    x_max: f64,
    label: &'a str,
}

impl DensityGrid {
    pub fn dx(&self) -> f64 {
        if self.xs.len() < 2 {
            0.0
        } else {
            self.xs[1] - self.xs[0]
        }
    }

    /// Trapezoid mass over the grid.
    pub fn mass(&self) -> f64 {
        let n = self.values.len();
        if n < 2 {
            return 0.0;
        }
        let inner: f64 = self.values[1..n - 1].iter().sum();
        self.dx() * (inner + 0.5 * (self.values[0] + self.values[n - 1]))
    }

    /// Total error certificate: truncation, alias and quadrature tolerance.
    pub fn certificate(&self) -> f64 {
        self.tail_bound + self.alias_bound + self.tol
    }

    /// Mass expected outside the window from the probed power tail.
    pub fn outside_mass(&self) -> f64 {
        if self.tail_const == 0.0 || self.xs.is_empty() {
            return 0.0;
        }
        let lo = self.xs[0].abs();
        let hi = self.xs[self.xs.len() - 1].abs();
        let a = self.tail_index;
        self.tail_const * (lo.powf(-a) + hi.powf(-a)) / a
    }

    pub fn value_at(&self, x: f64) -> Option<f64> {
        let dx = self.dx();
        let i = ((x - self.xs[0]) / dx).round();
        if i < 0.0 || i as usize >= self.xs.len() {
            return None;
        }
        Some(self.values[i as usize])
    }

    /// CSV with header `x,p` and 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "x,p")?;
        for (x, p) in self.xs.iter().zip(&self.values) {
            writeln!(w, "{},{}", fmt17(*x), fmt17(*p))?;
        }
        Ok(())
    }

    pub fn metadata_json(&self, label: &str) -> serde_json::Value {
        serde_json::to_value(GridMeta {
            z_max: self.z_max,
            tail_bound: self.tail_bound,
            tol: self.tol,
            alias_bound: self.alias_bound,
            period: self.period,
            dz: self.dz,
            certified: self.certified,
            tail_index: self.tail_index,
            tail_const: self.tail_const,
            points: self.xs.len(),
            x_min: self.xs.first().copied().unwrap_or(0.0),
            x_max: self.xs.last().copied().unwrap_or(0.0),
            label,
        })
        .unwrap_or(serde_json::Value::Null)
    }
}

/// 17 significant digits, scientific notation.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Tail index α̂ and scale ĉ from −ln|Φ(z)/Φ(0)| ≈ ĉ|z|^α̂ near the origin.
pub fn probe_tail_index(phi: &dyn CharFn) -> Result<(f64, f64)> {
    let at0 = phi.eval(0.0)?.norm();
    if !(at0 > 0.0) {
        return Err(Error::Domain("characteristic function vanishes at 0".into()));
    }
    let r = |z: f64| -> Result<f64> {
        let v = phi.eval(z)?;
        Ok(-(v.norm() / at0).ln())
    };
    let (z1, z2) = (1e-3, 2e-3);
    let (r1, r2) = (r(z1)?, r(z2)?);
    if !(r1 > 0.0 && r2 > 0.0) {
        // Numerically flat at the origin: treat as light-tailed.
        return Ok((2.0, 0.0));
    }
    let alpha = (r2 / r1).log2();
    Ok((alpha, r1 / z1.powf(alpha)))
}

/// Alias level Σ_{m≠0} p(x + mP) for a density with tail C|x|^{−1−α}, |x| ≤ half.
fn power_alias(c_tail: f64, alpha: f64, period: f64, half: f64) -> f64 {
    2.0 * c_tail * zeta(1.0 + alpha) * (period - half).max(1.0).powf(-1.0 - alpha)
}

/// p on a uniform grid of `opts.points` points spanning [x_min, x_max].
pub fn density_grid(phi: &dyn CharFn, opts: &GridOptions) -> Result<DensityGrid> {
    opts.validate()?;
    let t = choose_truncation(phi, opts.tol)?;
    let dx = opts.dx();
    let width = opts.x_max - opts.x_min;
    let half = opts.x_min.abs().max(opts.x_max.abs());

    let (alpha, c_hat) = probe_tail_index(phi)?;
    let light = alpha >= 1.9;
    let tail_const = if light {
        0.0
    } else {
        // ĉ|z|^α at the origin ↔ p(x) ~ ĉ Γ(1+α) sin(πα/2)/π |x|^{−1−α}
        c_hat * gamma(1.0 + alpha) * (0.5 * PI * alpha).sin() / PI
    };
    let wanted = if light {
        (4.0 * width).max(64.0)
    } else {
        let p = (2.0 * tail_const * zeta(1.0 + alpha) / opts.alias_tol).powf(1.0 / (1.0 + alpha)) + half;
        p.max(4.0 * width)
    };
    let m = ((wanted / dx).ceil() as usize).next_power_of_two().max(opts.points.next_power_of_two());
    let m = m.min(opts.max_fft.max(opts.points.next_power_of_two()));
    let period = m as f64 * dx;
    let alias_bound = if light {
        0.0
    } else {
        power_alias(tail_const, alpha, period, half)
    };
    let dz = 2.0 * PI / period;
    let k_max = (t.z_max / dz).ceil() as usize;
    if k_max + 1 > opts.max_evals {
        return Err(Error::SlowDecay(format!(
            "{} evaluations of Φ needed (z_max = {}, dz = {dz:e})",
            k_max + 1,
            t.z_max
        )));
    }

    let samples: Vec<Result<Complex64>> = crate::par::map_range(k_max + 1, |k| phi.eval(k as f64 * dz));
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    for (k, s) in samples.into_iter().enumerate() {
        let v = s?;
        let w = if k == 0 || k == k_max { 0.5 } else { 1.0 };
        // e^{−i z_k x_0} shifts the transform to start at x_min.
        let shift = Complex64::from_polar(1.0, -(k as f64 * dz) * opts.x_min);
        buf[k % m] += v * shift * w;
    }
    let fft = FftPlanner::new().plan_fft_forward(m);
    fft.process(&mut buf);
    let scale = dz / PI;
    let xs = opts.xs();
    let values = buf[..opts.points].iter().map(|c| c.re * scale).collect();
    Ok(DensityGrid {
        xs,
        values,
        z_max: t.z_max,
        tail_bound: t.density_bound(),
        tol: opts.tol,
        alias_bound,
        period,
        dz,
        certified: t.certified,
        tail_index: if light { 2.0 } else { alpha },
        tail_const,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SupDistance {
    pub value: f64,
    pub argmax: f64,
    /// Sum of both grids' truncation and alias certificates.
    pub certificate: f64,
}

/// max_i |d1[i] − d2[i]| over a shared grid.
pub fn sup_distance(d1: &DensityGrid, d2: &DensityGrid) -> Result<SupDistance> {
    if d1.xs.len() != d2.xs.len() || d1.xs.iter().zip(&d2.xs).any(|(a, b)| (a - b).abs() > 1e-12 * (1.0 + a.abs())) {
        return Err(Error::GridMismatch(format!("{} vs {} points", d1.xs.len(), d2.xs.len())));
    }
    let (mut best, mut arg) = (0.0f64, d1.xs.first().copied().unwrap_or(0.0));
    for ((x, a), b) in d1.xs.iter().zip(&d1.values).zip(&d2.values) {
        let d = (a - b).abs();
        if d > best {
            best = d;
            arg = *x;
        }
    }
    Ok(SupDistance {
        value: best,
        argmax: arg,
        certificate: d1.tail_bound + d2.tail_bound + d1.alias_bound + d2.alias_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss() -> FnCharFn<impl Fn(f64) -> Complex64 + Sync> {
        FnCharFn::new(
            |z: f64| Complex64::new((-0.5 * z * z).exp(), 0.0),
            true,
            Decay::Stretched {
                amp: 1.0,
                c: 0.5,
                alpha: 2.0,
            },
        )
    }

    fn cauchy() -> FnCharFn<impl Fn(f64) -> Complex64 + Sync> {
        FnCharFn::new(
            |z: f64| Complex64::new((-z.abs()).exp(), 0.0),
            true,
            Decay::Stretched {
                amp: 1.0,
                c: 1.0,
                alpha: 1.0,
            },
        )
    }

    #[test]
    fn point_values() {
        let p = density_point(&gauss(), 0.0, 1e-12).unwrap();
        assert!((p.value - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-11);
        let p = density_point(&cauchy(), 0.0, 1e-12).unwrap();
        assert!((p.value - 1.0 / PI).abs() < 1e-10);
        let p = density_point(&cauchy(), 2.5, 1e-12).unwrap();
        assert!((p.value - 1.0 / (PI * 7.25)).abs() < 1e-10);
        let sech = FnCharFn::new(
            |z: f64| Complex64::new(1.0 / (0.5 * PI * z).cosh(), 0.0),
            true,
            Decay::Stretched {
                amp: 2.0,
                c: PI / 2.0,
                alpha: 1.0,
            },
        );
        let p = density_point(&sech, 0.0, 1e-12).unwrap();
        assert!((p.value - 1.0 / PI).abs() < 1e-10);
    }

    #[test]
    fn probed_truncation_without_envelope() {
        let f = FnCharFn::new(|z: f64| Complex64::new((-0.5 * z * z).exp(), 0.0), true, Decay::Unknown);
        let t = choose_truncation(&f, 1e-10).unwrap();
        assert!(!t.certified);
        assert!(t.z_max > 6.0 && t.z_max < 10.0, "{}", t.z_max);
        let slow = FnCharFn::new(|z: f64| Complex64::new(1.0 / (1.0 + z.abs()), 0.0), true, Decay::Unknown);
        assert!(matches!(choose_truncation(&slow, 1e-10), Err(Error::SlowDecay(_))));
    }

    #[test]
    fn gaussian_grid() {
        let g = density_grid(&gauss(), &GridOptions::new(-5.0, 5.0, 512, 1e-10)).unwrap();
        let err = g
            .xs
            .iter()
            .zip(&g.values)
            .map(|(x, p)| (p - (-0.5 * x * x).exp() / (2.0 * PI).sqrt()).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-8, "{err}");
        assert!((g.mass() - 1.0).abs() < 1e-5);
    }

    #[test]
    fn cauchy_grid() {
        let g = density_grid(&cauchy(), &GridOptions::default()).unwrap();
        let err = g
            .xs
            .iter()
            .zip(&g.values)
            .map(|(x, p)| (p - 1.0 / (PI * (1.0 + x * x))).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-6 + g.tail_bound, "{err}");
        assert!(g.alias_bound > 0.0 && g.alias_bound < 1e-8);
        // 1 − (2/π)arctan 10 lies outside [−10, 10]
        let outside = 1.0 - 2.0 / PI * 10f64.atan();
        assert!((g.tail_index - 1.0).abs() < 1e-3);
        assert!((g.outside_mass() - outside).abs() < 1e-2 * outside);
        assert!((g.mass() + g.outside_mass() - 1.0).abs() < 1e-3);
    }

    #[test]
    fn grid_matches_points() {
        let f = cauchy();
        let g = density_grid(&f, &GridOptions::default()).unwrap();
        for &i in &[0usize, 100, 511, 700, 1023] {
            let p = density_point(&f, g.xs[i], 1e-10).unwrap();
            assert!((p.value - g.values[i]).abs() < g.tail_bound + g.alias_bound + 10.0 * 1e-10, "i={i}");
        }
    }

    #[test]
    fn asymmetric_point_and_grid() {
        // N(1, 1): Φ(z) = e^{iz − z²/2}
        let f = FnCharFn::new(
            |z: f64| Complex64::from_polar((-0.5 * z * z).exp(), z),
            false,
            Decay::Stretched {
                amp: 1.0,
                c: 0.5,
                alpha: 2.0,
            },
        );
        let expect = |x: f64| (-0.5 * (x - 1.0) * (x - 1.0)).exp() / (2.0 * PI).sqrt();
        let p = density_point(&f, 0.3, 1e-12).unwrap();
        assert!((p.value - expect(0.3)).abs() < 1e-10);
        let g = density_grid(&f, &GridOptions::new(-6.0, 6.0, 256, 1e-10)).unwrap();
        for (x, v) in g.xs.iter().zip(&g.values) {
            assert!((v - expect(*x)).abs() < 1e-8);
        }
    }

    #[test]
    fn sup_distance_basics() {
        let g = density_grid(&gauss(), &GridOptions::new(-5.0, 5.0, 64, 1e-10)).unwrap();
        assert_eq!(sup_distance(&g, &g).unwrap().value, 0.0);
        let h = density_grid(&gauss(), &GridOptions::new(-5.0, 5.0, 128, 1e-10)).unwrap();
        assert!(matches!(sup_distance(&g, &h), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn csv_format() {
        let g = density_grid(&gauss(), &GridOptions::new(-1.0, 1.0, 16, 1e-10)).unwrap();
        let mut out = Vec::new();
        g.write_csv(&mut out).unwrap();
        let s = String::from_utf8(out).unwrap();
        let mut lines = s.lines();
        assert_eq!(lines.next(), Some("x,p"));
        let row = lines.next().unwrap();
        let (x, _) = row.split_once(',').unwrap();
        assert_eq!(x, "-1.0000000000000000e0");
        assert_eq!(s.lines().count(), 17);
    }
}
