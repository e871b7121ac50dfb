//! Triangular-array models.
//!
//! A model fixes the row length aₙ, the normaliser bₙ and the density gₙ of
//! a single summand ξ₁,ₙ. Everything else follows: θₙ (the characteristic
//! function of ξ₁,ₙ), Φₙ(z) = θₙ(z/bₙ)^{aₙ}, βₙ = Im θₙ(1/bₙ),
//! ψₙ(z) = aₙ(1 − θₙ(z/bₙ)), the canonical measure Mₙ and the limit ψ.

pub mod hyperbolic;
pub mod kernel;

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use dashmap::DashMap;
use num_complex::Complex64;

use crate::canonical::{exponent_from_measure, CanonicalMeasure, CharExponent, DensityFn, Growth, Modulation};
use crate::error::{Error, Result};
use crate::inversion::{CharFn, Decay};
use crate::quad::{self, QuadOptions, QuadResult, Trig};
use crate::special::one_minus_cos;

pub type ArrayDensity = Arc<dyn Fn(u32, f64) -> f64 + Send + Sync>;

/// A user-defined array whose θₙ is obtained by quadrature of gₙ.
#[derive(Clone)]
pub struct CustomArray {
    pub density: ArrayDensity,
    /// Points where gₙ jumps or is singular.
    pub breakpoints: Arc<dyn Fn(u32) -> Vec<f64> + Send + Sync>,
    pub a_seq: Arc<dyn Fn(u32) -> u64 + Send + Sync>,
    pub b_seq: Arc<dyn Fn(u32) -> f64 + Send + Sync>,
}

#[derive(Clone)]
pub enum Kind {
    /// g(u) = c(1 − cos u)/|u|^{1+α}, aₙ = n, bₙ = n^{1/α}.
    Example1 { alpha: f64, c: f64 },
    /// gₙ(u) = ν/(2nu sinh(u/n)) on |u| ≥ 1, aₙ = bₙ = n; ν = 1/∫gₙ when normalised.
    Hyperbolic { normalized: bool },
    /// Standard normal summands, aₙ = n, bₙ = √n.
    Gauss,
    Custom(CustomArray),
}

#[derive(Clone)]
pub struct ArrayModel {
    name: String,
    kind: Kind,
    symmetric: bool,
    limit: CharExponent,
    limit_measure: Option<CanonicalMeasure>,
    one_minus_theta_memo: Arc<DashMap<(u32, u64), Complex64>>,
    mass_memo: Arc<DashMap<u32, f64>>,
    opts: QuadOptions,
}

impl fmt::Debug for ArrayModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ArrayModel")
            .field("name", &self.name)
            .field("symmetric", &self.symmetric)
            .field("limit", &self.limit)
            .finish()
    }
}

fn hyperbolic_measure(scale: f64, cutoff: f64) -> Result<CanonicalMeasure> {
    let dens: DensityFn = Arc::new(move |u: f64| {
        let a = u.abs();
        if a < cutoff {
            0.0
        } else {
            0.5 * scale * hyperbolic::h(a)
        }
    });
    let bps = if cutoff > 0.0 { vec![cutoff] } else { vec![] };
    CanonicalMeasure::new(dens, 0.0, bps, true)
}

/// Even part u ↦ (h(u) + h(−u))/2.
pub fn symmetrize<F: Fn(f64) -> f64>(h: F) -> impl Fn(f64) -> f64 {
    move |u| 0.5 * (h(u) + h(-u))
}

impl ArrayModel {
    /// Example 1 with c_α fixed by quadrature so that ∫g = 1 (equivalently ψ(1) = 1).
    pub fn example1(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 2.0) {
            return Err(Error::param("alpha", format!("must lie in (0,2), got {alpha}")));
        }
        let opts = QuadOptions::tight();
        let k = kernel::k_alpha_quad(alpha, &opts).require("c_alpha")?;
        let c = 1.0 / (2.0 * k);
        let limit_measure = CanonicalMeasure::stable(alpha, c)?;
        Ok(ArrayModel {
            name: format!("example1:alpha={alpha}"),
            kind: Kind::Example1 { alpha, c },
            symmetric: true,
            limit: CharExponent::stable(alpha, 1.0),
            limit_measure: Some(limit_measure),
            one_minus_theta_memo: Arc::new(DashMap::new()),
            mass_memo: Arc::new(DashMap::new()),
            opts: QuadOptions::default(),
        })
    }

    /// Example 2, normalised so each gₙ is a probability density.
    pub fn example2() -> Result<Self> {
        Self::hyperbolic(true)
    }

    /// Example 2 with the literal, unnormalised gₙ (negative control).
    pub fn example2_raw() -> Result<Self> {
        Self::hyperbolic(false)
    }

    fn hyperbolic(normalized: bool) -> Result<Self> {
        let m = hyperbolic_measure(1.0, 0.0)?;
        let limit = exponent_from_measure(&m, 0.0).with_growth(Growth { alpha: 1.0, c: PI / 2.0 - 1.0 });
        Ok(ArrayModel {
            name: if normalized { "example2".into() } else { "example2:raw".into() },
            kind: Kind::Hyperbolic { normalized },
            symmetric: true,
            limit,
            limit_measure: Some(m),
            one_minus_theta_memo: Arc::new(DashMap::new()),
            mass_memo: Arc::new(DashMap::new()),
            opts: QuadOptions::default(),
        })
    }

    /// Standard normal summands: Φₙ = e^{−z²/2} for every n.
    pub fn gauss() -> Self {
        ArrayModel {
            name: "gauss".into(),
            kind: Kind::Gauss,
            symmetric: true,
            limit: CharExponent::gaussian(1.0),
            limit_measure: CanonicalMeasure::gaussian(1.0).ok(),
            one_minus_theta_memo: Arc::new(DashMap::new()),
            mass_memo: Arc::new(DashMap::new()),
            opts: QuadOptions::default(),
        }
    }

    /// Example 2 with every summand shifted by `s`: gₙ(u − s). The limit
    /// picks up the drift β = s. θₙ goes through the generic quadrature path.
    pub fn example2_shifted(s: f64) -> Result<Self> {
        if !s.is_finite() {
            return Err(Error::param("shift", "must be finite"));
        }
        let base = ArrayModel::example2()?;
        let base_for_density = base.clone();
        let density: ArrayDensity = Arc::new(move |n, u| base_for_density.g_density(n, u - s));
        let custom = CustomArray {
            density,
            breakpoints: Arc::new(move |_| vec![s - 1.0, s + 1.0]),
            a_seq: Arc::new(|n| n as u64),
            b_seq: Arc::new(|n| n as f64),
        };
        let limit = base.limit.clone().with_drift(s);
        Ok(Self::custom(format!("example2:shift={s}"), custom, limit, false, base.limit_measure))
    }

    pub fn custom(
        name: String,
        custom: CustomArray,
        limit: CharExponent,
        symmetric: bool,
        limit_measure: Option<CanonicalMeasure>,
    ) -> Self {
        ArrayModel {
            name,
            kind: Kind::Custom(custom),
            symmetric,
            limit,
            limit_measure,
            one_minus_theta_memo: Arc::new(DashMap::new()),
            mass_memo: Arc::new(DashMap::new()),
            opts: QuadOptions::default(),
        }
    }

    /// Parses `example1:alpha=<f>`, `example2`, `example2:raw`,
    /// `example2:shift=<f>` or `gauss`.
    pub fn from_name(name: &str) -> Result<Self> {
        let name = name.trim();
        let (head, rest) = name.split_once(':').unwrap_or((name, ""));
        let param = |key: &str| -> Result<f64> {
            let (k, v) = rest.split_once('=').ok_or_else(|| Error::UnknownModel(name.to_string()))?;
            if k.trim() != key {
                return Err(Error::UnknownModel(name.to_string()));
            }
            v.trim()
                .parse::<f64>()
                .map_err(|_| Error::config("model", format!("cannot parse `{v}` as a number")))
        };
        match head {
            "example1" => ArrayModel::example1(param("alpha")?),
            "example2" if rest.is_empty() => ArrayModel::example2(),
            "example2" if rest == "raw" => ArrayModel::example2_raw(),
            "example2" => ArrayModel::example2_shifted(param("shift")?),
            "gauss" if rest.is_empty() => Ok(ArrayModel::gauss()),
            _ => Err(Error::UnknownModel(name.to_string())),
        }
    }

    pub fn with_options(mut self, opts: QuadOptions) -> Self {
        self.opts = opts;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn limit(&self) -> &CharExponent {
        &self.limit
    }

    pub fn limit_beta(&self) -> f64 {
        self.limit.drift_beta()
    }

    pub fn limit_measure(&self) -> Option<&CanonicalMeasure> {
        self.limit_measure.as_ref()
    }

    pub fn options(&self) -> &QuadOptions {
        &self.opts
    }

    /// The stable index for Example 1, if this is one.
    pub fn stable_alpha(&self) -> Option<f64> {
        match self.kind {
            Kind::Example1 { alpha, .. } => Some(alpha),
            _ => None,
        }
    }

    pub fn a_n(&self, n: u32) -> u64 {
        match &self.kind {
            Kind::Custom(c) => (c.a_seq)(n),
            _ => n as u64,
        }
    }

    pub fn b_n(&self, n: u32) -> f64 {
        match &self.kind {
            Kind::Example1 { alpha, .. } => (n as f64).powf(1.0 / alpha),
            Kind::Hyperbolic { .. } => n as f64,
            Kind::Gauss => (n as f64).sqrt(),
            Kind::Custom(c) => (c.b_seq)(n),
        }
    }

    /// Zₙ = ∫ of the literal hyperbolic gₙ.
    fn hyperbolic_raw_mass(&self, n: u32) -> Result<f64> {
        if let Some(v) = self.mass_memo.get(&n) {
            return Ok(*v);
        }
        let nf = n as f64;
        let z = hyperbolic::h_tail(1.0 / nf, &QuadOptions::tight()).require("Z_n")? / nf;
        self.mass_memo.insert(n, z);
        Ok(z)
    }

    fn hyperbolic_nu(&self, n: u32, normalized: bool) -> Result<f64> {
        Ok(if normalized { 1.0 / self.hyperbolic_raw_mass(n)? } else { 1.0 })
    }

    /// Density gₙ(u) of ξ₁,ₙ.
    pub fn g_density(&self, n: u32, u: f64) -> f64 {
        match &self.kind {
            Kind::Example1 { alpha, c } => kernel::density(*alpha, *c, u),
            Kind::Hyperbolic { normalized } => {
                let a = u.abs();
                if a < 1.0 {
                    return 0.0;
                }
                let nu = self.hyperbolic_nu(n, *normalized).unwrap_or(f64::NAN);
                let nf = n as f64;
                nu / (2.0 * nf * a * (a / nf).sinh())
            }
            Kind::Gauss => (-0.5 * u * u).exp() / (2.0 * PI).sqrt(),
            Kind::Custom(c) => (c.density)(n, u),
        }
    }

    /// fₙ(u) = bₙ gₙ(bₙu), the density of X₁,ₙ.
    pub fn f_density(&self, n: u32, u: f64) -> f64 {
        let b = self.b_n(n);
        b * self.g_density(n, b * u)
    }

    fn density_breakpoints(&self, n: u32) -> Vec<f64> {
        let mut b = match &self.kind {
            Kind::Example1 { .. } => vec![0.0],
            Kind::Hyperbolic { .. } => vec![-1.0, 1.0],
            Kind::Gauss => vec![0.0],
            Kind::Custom(c) => (c.breakpoints)(n),
        };
        b.sort_by(f64::total_cmp);
        b.dedup();
        b
    }

    /// ∫ over ℝ of `h`, split at gₙ's breakpoints. `h` must decay at ±∞.
    fn integrate_line<F: Fn(f64) -> f64>(&self, n: u32, h: F, opts: &QuadOptions) -> QuadResult {
        let bps = self.density_breakpoints(n);
        let mut knots = vec![f64::NEG_INFINITY];
        knots.extend(bps);
        knots.push(f64::INFINITY);
        let mut acc = QuadResult {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
            converged: true,
        };
        for w in knots.windows(2) {
            let r = if w[0].is_finite() && w[1].is_finite() {
                quad::integrate_singular(&h, w[0], w[1], opts)
            } else {
                quad::integrate(&h, w[0], w[1], opts)
            };
            acc.value += r.value;
            acc.error_estimate += r.error_estimate;
            acc.evaluations += r.evaluations;
            acc.converged &= r.converged;
        }
        acc
    }

    /// ∫ gₙ (condition A requires 1).
    pub fn density_mass(&self, n: u32) -> Result<f64> {
        match &self.kind {
            Kind::Example1 { alpha, c } => {
                let k = kernel::k_alpha_quad(*alpha, &QuadOptions::tight()).require("∫g")?;
                Ok(2.0 * c * k)
            }
            Kind::Hyperbolic { normalized } => {
                let z = self.hyperbolic_raw_mass(n)?;
                Ok(if *normalized { 1.0 } else { z })
            }
            Kind::Gauss => self.integrate_line(n, |u| self.g_density(n, u), &QuadOptions::tight()).require("∫g"),
            Kind::Custom(_) => self.custom_mass(n),
        }
    }

    fn custom_mass(&self, n: u32) -> Result<f64> {
        if let Some(v) = self.mass_memo.get(&n) {
            return Ok(*v);
        }
        let m = self
            .integrate_line(n, |u| self.g_density(n, u), &QuadOptions::tight())
            .require("∫g")?;
        self.mass_memo.insert(n, m);
        Ok(m)
    }

    /// ∫ gₙ² (condition D). Infinite for Example 1 with α ≥ 3/2, where
    /// g(u) ~ (c/2)|u|^{1−α} is not square integrable at the origin.
    pub fn density_l2_sq(&self, n: u32) -> Result<f64> {
        match &self.kind {
            Kind::Example1 { alpha, c } => {
                if *alpha >= 1.5 {
                    return Ok(f64::INFINITY);
                }
                let f = |v: f64| {
                    let g = c * one_minus_cos(v) * v.powf(-1.0 - alpha);
                    g * g
                };
                let o = QuadOptions::tight();
                let head = quad::integrate_singular(f, 0.0, 1.0, &o);
                let tail = quad::integrate(f, 1.0, f64::INFINITY, &o);
                Ok(2.0 * (head.require("∫g²")? + tail.require("∫g²")?))
            }
            Kind::Hyperbolic { normalized } => {
                // ∫gₙ² = 2∫₁^∞ ν²/(4n²u² sinh²(u/n)) du = (ν²/(2n³)) ∫_{1/n}^∞ h(v)² dv
                let nu = self.hyperbolic_nu(n, *normalized)?;
                let nf = n as f64;
                let t = hyperbolic::h_sq_tail(1.0 / nf, &self.opts).require("∫g²")?;
                Ok(nu * nu * t / (2.0 * nf.powi(3)))
            }
            Kind::Gauss => Ok(1.0 / (2.0 * PI.sqrt())),
            Kind::Custom(_) => self
                .integrate_line(
                    n,
                    |u| {
                        let g = self.g_density(n, u);
                        g * g
                    },
                    &self.opts,
                )
                .require("∫g²"),
        }
    }

    /// P{|X₁,ₙ| ≥ ε} = ∫_{|u| ≥ εbₙ} gₙ.
    pub fn tail_mass(&self, n: u32, eps: f64) -> Result<f64> {
        let cut = eps * self.b_n(n);
        match &self.kind {
            Kind::Example1 { alpha, c } => {
                let env = |v: f64| v.powf(-1.0 - alpha);
                let plain = cut.powf(-alpha) / alpha;
                let osc = quad::integrate_oscillatory(env, Trig::Cos, 1.0, cut, f64::INFINITY, &self.opts)
                    .require("tail mass")?;
                Ok(2.0 * c * (plain - osc))
            }
            Kind::Hyperbolic { normalized } => {
                let nu = self.hyperbolic_nu(n, *normalized)?;
                let nf = n as f64;
                let t = hyperbolic::h_tail(cut.max(1.0) / nf, &self.opts).require("tail mass")?;
                Ok(nu * t / nf)
            }
            Kind::Gauss => {
                let r = quad::integrate(|u: f64| self.g_density(n, u), cut, f64::INFINITY, &self.opts);
                Ok(2.0 * r.require("tail mass")?)
            }
            Kind::Custom(_) => {
                let h = |u: f64| if u.abs() >= cut { self.g_density(n, u) } else { 0.0 };
                let mut knots = self.density_breakpoints(n);
                knots.extend([cut, -cut]);
                knots.sort_by(f64::total_cmp);
                let mut total = 0.0;
                let mut edges = vec![f64::NEG_INFINITY];
                edges.extend(knots);
                edges.push(f64::INFINITY);
                for w in edges.windows(2) {
                    if w[0] == w[1] {
                        continue;
                    }
                    total += quad::integrate(h, w[0], w[1], &self.opts).require("tail mass")?;
                }
                Ok(total)
            }
        }
    }

    /// 1 − θₙ(w), formed without cancellation.
    pub fn one_minus_theta(&self, n: u32, w: f64) -> Result<Complex64> {
        match &self.kind {
            Kind::Example1 { alpha, .. } => Ok(Complex64::new(kernel::theta(*alpha, w).1, 0.0)),
            Kind::Gauss => Ok(Complex64::new(-(-0.5 * w * w).exp_m1(), 0.0)),
            Kind::Hyperbolic { normalized } => {
                let key = (n, w.abs().to_bits());
                if let Some(v) = self.one_minus_theta_memo.get(&key) {
                    return Ok(*v);
                }
                let nf = n as f64;
                let z = self.hyperbolic_raw_mass(n)?;
                let nu = self.hyperbolic_nu(n, *normalized)?;
                let j = hyperbolic::j_integral(1.0 / nf, nf * w, &self.opts).require("θₙ")?;
                let deficit = if *normalized { 0.0 } else { 1.0 - z };
                let v = Complex64::new(deficit + nu * j / nf, 0.0);
                self.one_minus_theta_memo.insert(key, v);
                Ok(v)
            }
            Kind::Custom(_) => {
                let key = (n, w.to_bits());
                if let Some(v) = self.one_minus_theta_memo.get(&key) {
                    return Ok(*v);
                }
                let v = self.custom_one_minus_theta(n, w)?;
                self.one_minus_theta_memo.insert(key, v);
                Ok(v)
            }
        }
    }

    fn custom_one_minus_theta(&self, n: u32, w: f64) -> Result<Complex64> {
        let deficit = 1.0 - self.custom_mass(n)?;
        if w == 0.0 {
            return Ok(Complex64::new(deficit, 0.0));
        }
        let g = |u: f64| self.g_density(n, u);
        let mut bps = self.density_breakpoints(n);
        if bps.is_empty() {
            bps.push(0.0);
        }
        let (first, last) = (bps[0], *bps.last().unwrap());
        let o = &self.opts;
        let mut re = deficit;
        let mut im = 0.0;
        let mut ok = true;
        let mut add = |r: QuadResult, target: &mut f64, weight: f64| {
            *target += weight * r.value;
            ok &= r.converged;
        };
        // Right tail [last, ∞).
        add(quad::one_minus_cos_transform(g, w, last, o), &mut re, 1.0);
        add(quad::integrate_oscillatory(g, Trig::Sin, w, last, f64::INFINITY, o), &mut im, -1.0);
        // Left tail (−∞, first], reflected.
        let gl = |v: f64| self.g_density(n, -v);
        add(quad::one_minus_cos_transform(gl, w, -first, o), &mut re, 1.0);
        add(quad::integrate_oscillatory(gl, Trig::Sin, w, -first, f64::INFINITY, o), &mut im, 1.0);
        for k in bps.windows(2) {
            add(quad::integrate(|u: f64| one_minus_cos(w * u) * g(u), k[0], k[1], o), &mut re, 1.0);
            add(quad::integrate(|u: f64| (w * u).sin() * g(u), k[0], k[1], o), &mut im, -1.0);
        }
        if !ok {
            return Err(Error::QuadNotConverged {
                what: format!("θ_{n}({w}) for {}", self.name),
                estimate: 1.0 - re,
                error: f64::NAN,
                evaluations: 0,
            });
        }
        Ok(Complex64::new(re, im))
    }

    /// θₙ(w), the characteristic function of ξ₁,ₙ.
    pub fn theta_n(&self, n: u32, w: f64) -> Result<Complex64> {
        Ok(Complex64::new(1.0, 0.0) - self.one_minus_theta(n, w)?)
    }

    /// Φₙ(z) = θₙ(z/bₙ)^{aₙ} with an integer power.
    pub fn char_fn_sn(&self, n: u32, z: f64) -> Result<Complex64> {
        let a = self.a_n(n);
        let w = z / self.b_n(n);
        if let Kind::Gauss = self.kind {
            return Ok(Complex64::new((-(a as f64) * 0.5 * w * w).exp(), 0.0));
        }
        let d = self.one_minus_theta(n, w)?;
        Ok(int_power_from_one_minus(d, a))
    }

    /// βₙ = ∫ sin(u) fₙ(u) du = Im θₙ(1/bₙ).
    pub fn beta_n(&self, n: u32) -> Result<f64> {
        if self.symmetric {
            return Ok(0.0);
        }
        Ok(-self.one_minus_theta(n, 1.0 / self.b_n(n))?.im)
    }

    /// ψₙ(z) = aₙ(1 − θₙ(z/bₙ)); the drift enters as aₙβₙ.
    pub fn psi_n(&self, n: u32, z: f64) -> Result<Complex64> {
        let a = self.a_n(n) as f64;
        Ok(self.one_minus_theta(n, z / self.b_n(n))? * a)
    }

    /// φₙ(z) = ψₙ(z) + i aₙβₙ z (drift-free part).
    pub fn phi_n(&self, n: u32, z: f64) -> Result<Complex64> {
        let ab = self.a_n(n) as f64 * self.beta_n(n)?;
        Ok(self.psi_n(n, z)? + Complex64::new(0.0, ab * z))
    }

    /// Canonical measure Mₙ(du) = aₙu²Fₙ(du), i.e. ℓₙ(u) = aₙ fₙ(u).
    pub fn levy_measure(&self, n: u32) -> Result<CanonicalMeasure> {
        let a = self.a_n(n) as f64;
        let b = self.b_n(n);
        match &self.kind {
            Kind::Example1 { alpha, c } => {
                let (alpha, c) = (*alpha, *c);
                let dens: DensityFn = Arc::new(move |u: f64| c * one_minus_cos(b * u) * u.abs().powf(-1.0 - alpha));
                let env: DensityFn = Arc::new(move |u: f64| c * u.abs().powf(-1.0 - alpha));
                Ok(CanonicalMeasure::new(dens, 0.0, vec![], true)?.with_modulation(Modulation { envelope: env, omega: b }))
            }
            Kind::Hyperbolic { normalized } => {
                let nu = self.hyperbolic_nu(n, *normalized)?;
                hyperbolic_measure(nu, 1.0 / n as f64)
            }
            _ => {
                let me = self.clone();
                let dens: DensityFn = Arc::new(move |u: f64| a * me.f_density(n, u));
                let bps = self.density_breakpoints(n).into_iter().map(|x| x / b).collect();
                CanonicalMeasure::new(dens, 0.0, bps, self.symmetric)
            }
        }
    }

    /// sup_{|w| ≥ w0} |θₙ(w)| when an analytic envelope is available.
    pub fn theta_abs_bound(&self, n: u32, w0: f64) -> Option<f64> {
        let w0 = w0.abs();
        match &self.kind {
            Kind::Example1 { alpha, .. } => {
                if *alpha == 1.0 {
                    (w0 >= 1.0).then_some(0.0)
                } else if w0 >= 2.0 {
                    Some(kernel::theta(*alpha, w0).0.abs())
                } else {
                    None
                }
            }
            Kind::Gauss => Some((-0.5 * w0 * w0).exp()),
            Kind::Hyperbolic { normalized } => {
                // Integration by parts: |∫_c^∞ cos(kv)h| ≤ 2h(c)/k.
                let nu = self.hyperbolic_nu(n, *normalized).ok()?;
                let nf = n as f64;
                Some(2.0 * nu * hyperbolic::h(1.0 / nf) / (nf * nf * w0))
            }
            Kind::Custom(_) => None,
        }
    }

    /// Decay envelope of the limit Φ = e^{−ψ}.
    pub fn limit_decay(&self) -> Decay {
        match &self.kind {
            Kind::Example1 { alpha, .. } => Decay::Stretched {
                amp: 1.0,
                c: 1.0,
                alpha: *alpha,
            },
            Kind::Gauss => Decay::Stretched {
                amp: 1.0,
                c: 0.5,
                alpha: 2.0,
            },
            // |1/cosh(πz/2)| ≤ 2e^{−π|z|/2}
            Kind::Hyperbolic { .. } => Decay::Stretched {
                amp: 2.0,
                c: PI / 2.0,
                alpha: 1.0,
            },
            Kind::Custom(_) => match self.limit.measure() {
                Some(_) if self.name.starts_with("example2") => Decay::Stretched {
                    amp: 2.0,
                    c: PI / 2.0,
                    alpha: 1.0,
                },
                _ => Decay::Unknown,
            },
        }
    }

    /// Certified ∫_{z0}^∞ |Φₙ(z)| dz when the model provides an envelope.
    pub fn sn_tail_integral(&self, n: u32, z0: f64) -> Option<f64> {
        let a = self.a_n(n);
        let b = self.b_n(n);
        match &self.kind {
            Kind::Example1 { alpha, .. } if *alpha == 1.0 => {
                // (1 − z/n)₊ⁿ ≤ e^{−z}
                Some(if z0 >= b { 0.0 } else { (-z0).exp() - (-b).exp() })
            }
            Kind::Example1 { alpha, .. } => {
                let p = a as f64 * (2.0 - alpha);
                if p <= 1.0 {
                    return None;
                }
                let far = |w0: f64| {
                    // |θ(w)| ≤ |θ(w0)|(w0/w)^{2−α} for w ≥ w0 ≥ 2
                    let k = kernel::theta(*alpha, w0).0.abs();
                    b * w0 * k.powf(a as f64) / (p - 1.0)
                };
                let w0 = z0 / b;
                if w0 >= 2.0 {
                    return Some(far(w0));
                }
                // Sampled sup on [w0, 2] plus the far tail.
                let m = 4096;
                let mut sup: f64 = 0.0;
                for i in 0..=m {
                    let w = w0 + (2.0 - w0) * i as f64 / m as f64;
                    sup = sup.max(kernel::theta(*alpha, w).0.abs());
                }
                Some(b * (2.0 - w0) * sup.powf(a as f64) + far(2.0))
            }
            Kind::Gauss => Decay::Stretched {
                amp: 1.0,
                c: 0.5,
                alpha: 2.0,
            }
            .tail_integral(z0),
            Kind::Hyperbolic { .. } => {
                // |Φₙ(z)| ≤ min(1, A/z)^{aₙ} with A = bₙ·sup_w |θₙ(w)|·w
                let big_a = self.theta_abs_bound(n, 1.0)? * b;
                let af = a as f64;
                if a < 2 {
                    return None;
                }
                let z0 = z0.max(0.0);
                Some(if z0 >= big_a {
                    z0 * (big_a / z0).powf(af) / (af - 1.0)
                } else {
                    (big_a - z0) + big_a / (af - 1.0)
                })
            }
            _ => None,
        }
    }

    /// Φₙ vanishes for |z| ≥ edge.
    pub fn sn_support_edge(&self, n: u32) -> Option<f64> {
        match &self.kind {
            Kind::Example1 { alpha, .. } if *alpha == 1.0 => Some(self.b_n(n)),
            _ => None,
        }
    }

    /// Φₙ as an inversion-ready characteristic function.
    pub fn sn_char_fn(&self, n: u32) -> SnCharFn<'_> {
        SnCharFn { model: self, n }
    }

    /// Φ = e^{−ψ} as an inversion-ready characteristic function.
    pub fn limit_char_fn(&self) -> LimitCharFn<'_> {
        LimitCharFn { model: self }
    }
}

/// (1 − d)^a for an integer a, through the logarithm of 1 − d when that is
/// unambiguous and by repeated multiplication otherwise.
pub fn int_power_from_one_minus(d: Complex64, a: u64) -> Complex64 {
    let theta = Complex64::new(1.0 - d.re, -d.im);
    let af = a as f64;
    if d.im == 0.0 {
        if theta.re > 0.0 {
            return Complex64::new((af * (-d.re).ln_1p()).exp(), 0.0);
        }
        if theta.re == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        return Complex64::new(theta.re.powi(a.min(i32::MAX as u64) as i32), 0.0);
    }
    let ln_mod = 0.5 * (-2.0 * d.re + d.norm_sqr()).ln_1p();
    let arg = theta.im.atan2(theta.re);
    Complex64::from_polar((af * ln_mod).exp(), af * arg)
}

pub struct SnCharFn<'a> {
    model: &'a ArrayModel,
    n: u32,
}

impl CharFn for SnCharFn<'_> {
    fn eval(&self, z: f64) -> Result<Complex64> {
        self.model.char_fn_sn(self.n, z)
    }
    fn is_even_real(&self) -> bool {
        self.model.symmetric
    }
    fn tail_integral(&self, z0: f64) -> Option<f64> {
        self.model.sn_tail_integral(self.n, z0)
    }
    fn support_edge(&self) -> Option<f64> {
        self.model.sn_support_edge(self.n)
    }
}

pub struct LimitCharFn<'a> {
    model: &'a ArrayModel,
}

impl CharFn for LimitCharFn<'_> {
    fn eval(&self, z: f64) -> Result<Complex64> {
        self.model.limit.char_fn(z)
    }
    fn is_even_real(&self) -> bool {
        self.model.limit.is_symmetric()
    }
    fn tail_integral(&self, z0: f64) -> Option<f64> {
        self.model.limit_decay().tail_integral(z0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangular_kernel_theta() {
        let m = ArrayModel::example1(1.0).unwrap();
        assert!((m.theta_n(1, 0.5).unwrap().re - 0.5).abs() < 1e-15);
        assert_eq!(m.theta_n(1, 0.0).unwrap(), Complex64::new(1.0, 0.0));
        let v = m.char_fn_sn(4, 2.0).unwrap();
        assert!((v.re - 0.0625).abs() < 1e-15);
        if let Kind::Example1 { c, .. } = m.kind() {
            assert!((c - 1.0 / PI).abs() < 1e-12);
        }
    }

    #[test]
    fn example1_theta_matches_direct_quadrature() {
        for &alpha in &[0.5, 1.5] {
            let m = ArrayModel::example1(alpha).unwrap();
            let Kind::Example1 { c, .. } = *m.kind() else { unreachable!() };
            for &w in &[0.3, 1.7] {
                let env = |u: f64| c * one_minus_cos(u) * u.powf(-1.0 - alpha);
                let r = quad::integrate_oscillatory(env, Trig::Cos, w, 0.0, f64::INFINITY, &QuadOptions::tight());
                let direct = 2.0 * r.value;
                let closed = m.theta_n(1, w).unwrap().re;
                assert!((direct - closed).abs() < 1e-9, "alpha={alpha} w={w}: {direct} vs {closed}");
            }
        }
    }

    #[test]
    fn example2_theta_oracle() {
        let m = ArrayModel::example2().unwrap();
        let t = m.theta_n(1, 1.0).unwrap();
        assert!((t.re - 0.019_539_661_071_146_22).abs() < 1e-9, "{}", t.re);
        assert_eq!(t.im, 0.0);
        let raw = ArrayModel::example2_raw().unwrap();
        let t = raw.theta_n(1, 1.0).unwrap();
        assert!((t.re - 0.009_133_233_241_946_596).abs() < 1e-9, "{}", t.re);
    }

    #[test]
    fn example2_normalisation() {
        let m = ArrayModel::example2().unwrap();
        let raw = ArrayModel::example2_raw().unwrap();
        for (n, z) in [(1, 0.467_420_248_933_254_9), (4, 0.837_104_652_894_731_4), (16, 0.957_329_244_006_545_4)] {
            assert!((m.density_mass(n).unwrap() - 1.0).abs() < 1e-8);
            assert!((raw.density_mass(n).unwrap() - z).abs() < 1e-10);
            // direct quadrature of the normalised density
            let direct = m.integrate_line(n, |u| m.g_density(n, u), &QuadOptions::tight()).value;
            assert!((direct - 1.0).abs() < 1e-8, "n={n}: {direct}");
        }
    }

    #[test]
    fn example1_density_integrates_to_one() {
        for &alpha in &[0.5, 1.0, 1.5] {
            let m = ArrayModel::example1(alpha).unwrap();
            assert!((m.density_mass(1).unwrap() - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn gauss_is_stable() {
        let m = ArrayModel::gauss();
        for &n in &[1, 7, 256] {
            for &z in &[0.0, 0.5, 3.0, 9.0] {
                let v = m.char_fn_sn(n, z).unwrap();
                assert!((v.re - (-0.5 * z * z).exp()).abs() < 1e-12 * (1.0 + v.re));
                assert_eq!(v.im, 0.0);
            }
        }
        assert_eq!(m.beta_n(5).unwrap(), 0.0);
    }

    #[test]
    fn shifted_model_drift() {
        let m = ArrayModel::example2_shifted(0.5).unwrap();
        assert!(!m.is_symmetric());
        assert!((m.density_mass(4).unwrap() - 1.0).abs() < 1e-8);
        for (n, beta, chi) in [
            (4u32, 0.095_051_321_521_579_07, 0.119_794_713_913_683_7),
            (8, 0.055_149_882_533_634_59, 0.058_800_939_730_923_27),
        ] {
            let b = m.beta_n(n).unwrap();
            assert!((b - beta).abs() < 1e-9, "n={n}: {b}");
            let x = (m.a_n(n) as f64 * b - m.limit_beta()).abs();
            assert!((x - chi).abs() < 1e-8);
        }
        // θ of the shifted law is e^{isw} times the centred one.
        let base = ArrayModel::example2().unwrap();
        let w = 0.37;
        let t = m.theta_n(4, w).unwrap();
        let expect = base.theta_n(4, w).unwrap() * Complex64::from_polar(1.0, 0.5 * w);
        assert!((t - expect).norm() < 1e-9);
    }

    #[test]
    fn psi_n_real_part_identity() {
        let m = ArrayModel::example1(1.0).unwrap();
        for &z in &[0.5, 2.0, 7.0] {
            let v = m.psi_n(8, z).unwrap();
            let expect = 8.0 * (1.0 - m.theta_n(8, z / 8.0).unwrap().re);
            assert!((v.re - expect).abs() < 1e-14);
            assert_eq!(v.im, 0.0);
        }
        assert_eq!(m.psi_n(8, 0.0).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn proper_convergence_example2() {
        use crate::canonical::proper_convergence_report;
        let m = ArrayModel::example2().unwrap();
        let lim = m.limit_measure().unwrap().clone();
        for (n, di, dt) in [
            (4u32, 0.113_129_031_326_553_8, 0.045_478_533_317_618_85),
            (16, 0.023_013_941_032_332_72, 0.010_417_092_924_664_875),
            (64, 0.005_454_300_991_889_37, 0.002_549_175_229_908_693),
        ] {
            let r = proper_convergence_report(&m.levy_measure(n).unwrap(), &lim, &[(-1.0, 1.0)], &[1.0]).unwrap();
            assert!((r.intervals[0].delta - di).abs() < 1e-9, "n={n}: {}", r.intervals[0].delta);
            assert!((r.tails[0].delta_plus - dt).abs() < 1e-9, "n={n}: {}", r.tails[0].delta_plus);
        }
    }

    #[test]
    fn proper_convergence_example1() {
        use crate::canonical::proper_convergence_report;
        let m = ArrayModel::example1(1.0).unwrap();
        let lim = m.limit_measure().unwrap().clone();
        let mut prev = f64::INFINITY;
        for (n, di, dt) in [
            (4u32, 0.120_448_858_072_537_7, 0.030_552_537_625_569_167),
            (16, 0.011_455_308_994_949_097, 0.003_321_749_325_734_905_7),
            (64, 0.009_151_668_234_517_009, 0.004_508_436_463_809_276),
        ] {
            let r = proper_convergence_report(&m.levy_measure(n).unwrap(), &lim, &[(-1.0, 1.0)], &[1.0]).unwrap();
            assert!((r.intervals[0].delta - di).abs() < 1e-9, "n={n}: {}", r.intervals[0].delta);
            assert!((r.tails[0].delta_plus - dt).abs() < 1e-9, "n={n}: {}", r.tails[0].delta_plus);
            assert!(r.intervals[0].delta < prev);
            prev = r.intervals[0].delta;
            // tails are bounded by the 2c/(n x²) envelope
            assert!(r.tails[0].delta_plus <= 2.0 / (PI * n as f64));
        }
    }

    #[test]
    fn symmetrize_examples() {
        let h = |u: f64| if (0.0..=1.0).contains(&u) { u } else { 0.0 };
        let s = symmetrize(h);
        assert_eq!(s(0.5), 0.25);
        assert_eq!(s(-0.5), 0.25);
        let m = ArrayModel::example2().unwrap();
        let g = |u: f64| m.g_density(4, u);
        let sg = symmetrize(g);
        for &u in &[-3.0, 1.5, 7.0] {
            assert_eq!(sg(u), g(u));
        }
    }

    #[test]
    fn model_names() {
        assert!(ArrayModel::from_name("example1:alpha=0.5").is_ok());
        assert!(ArrayModel::from_name("example2").is_ok());
        assert!(ArrayModel::from_name("gauss").is_ok());
        assert!(ArrayModel::from_name("example2:raw").is_ok());
        assert!(matches!(ArrayModel::from_name("cauchy"), Err(Error::UnknownModel(_))));
        assert!(ArrayModel::from_name("example1:alpha=2.5").is_err());
        assert!(ArrayModel::from_name("example1:alpha=x").unwrap_err().is_config());
    }

    #[test]
    fn uniform_smallness() {
        for m in [ArrayModel::example1(1.0).unwrap(), ArrayModel::example2().unwrap(), ArrayModel::gauss()] {
            for &eps in &[0.1, 1.0] {
                let mut prev = f64::INFINITY;
                for &n in &[4u32, 16, 64, 256] {
                    let t = m.tail_mass(n, eps).unwrap();
                    assert!(t < prev && t >= 0.0, "{} eps={eps} n={n}: {t}", m.name());
                    prev = t;
                }
            }
        }
    }
}
