//! Convergence-rate quantities and condition audits.
//!
//! Sups and infs over continuous z are taken on grids: reported sups are
//! lower bounds and reported infs are upper bounds of the true values.

pub mod audit;
pub mod closed;

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::array::ArrayModel;
use crate::error::{Error, Result};
use crate::inversion::{choose_truncation, fmt17, CharFn};
use crate::par;
use crate::quad::{self, QuadOptions};

pub use audit::{audit_all, AuditParams, ConditionAudit};

/// Uniform grid on [0, max]; the quantities involved are even or odd in z.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZGrid {
    pub max: f64,
    pub points: usize,
}

impl Default for ZGrid {
    fn default() -> Self {
        ZGrid {
            max: 50.0,
            points: 4096,
        }
    }
}

impl ZGrid {
    pub fn new(max: f64, points: usize) -> Self {
        ZGrid { max, points }
    }

    pub fn values(&self) -> Vec<f64> {
        let m = (self.points.max(2) - 1) as f64;
        (0..self.points.max(2)).map(|i| self.max * i as f64 / m).collect()
    }

    /// Same range, twice the resolution (old points are kept).
    pub fn refined(&self) -> ZGrid {
        ZGrid {
            max: self.max,
            points: 2 * self.points.max(2) - 1,
        }
    }
}

/// A sup over a grid, i.e. a lower bound of the true sup.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridSup {
    pub value: f64,
    pub argmax: f64,
}

fn grid_sup(zs: &[f64], f: impl Fn(f64) -> Result<f64> + Sync + Send) -> Result<GridSup> {
    let vals = par::map_slice(zs, |&z| f(z));
    let mut best = GridSup {
        value: 0.0,
        argmax: zs.first().copied().unwrap_or(0.0),
    };
    for (z, v) in zs.iter().zip(vals) {
        let v = v?;
        if v > best.value {
            best = GridSup { value: v, argmax: *z };
        }
    }
    Ok(best)
}

/// γ′ₙ = sup_z |Re φ(z) − Re φₙ(z)|/(1+z²).
pub fn gamma_prime(model: &ArrayModel, n: u32, grid: &ZGrid) -> Result<GridSup> {
    grid_sup(&grid.values(), |z| {
        let l = model.limit().re_part(z)?;
        let m = model.psi_n(n, z)?.re;
        Ok((l - m).abs() / (1.0 + z * z))
    })
}

/// γ″ₙ = sup_z |Im φ(z) − Im φₙ(z)|/(1+z²).
pub fn gamma_dprime(model: &ArrayModel, n: u32, grid: &ZGrid) -> Result<GridSup> {
    if model.is_symmetric() && model.limit().is_symmetric() {
        return Ok(GridSup { value: 0.0, argmax: 0.0 });
    }
    grid_sup(&grid.values(), |z| {
        let l = model.limit().phi(z)?.im;
        let m = model.phi_n(n, z)?.im;
        Ok((l - m).abs() / (1.0 + z * z))
    })
}

/// χₙ = |aₙβₙ − β|.
pub fn chi(model: &ArrayModel, n: u32) -> Result<f64> {
    Ok((model.a_n(n) as f64 * model.beta_n(n)? - model.limit_beta()).abs())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NDeltaOptions {
    /// Scan limit in w when no analytic envelope closes the scan earlier.
    pub w_max: f64,
    pub step: f64,
}

impl Default for NDeltaOptions {
    fn default() -> Self {
        NDeltaOptions { w_max: 50.0, step: 0.02 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NDeltaRow {
    pub n: u32,
    pub sup: f64,
    pub argmax: f64,
    /// Where the scan stopped.
    pub scanned_to: f64,
    /// The envelope bounds |θₙ| beyond the scan.
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NDelta {
    pub value: f64,
    pub delta: f64,
    pub rows: Vec<NDeltaRow>,
    pub certified: bool,
}

impl NDelta {
    /// N(δ) over the rows never decreases in the scanned range means the
    /// sup over all n may sit beyond it.
    pub fn trend_increasing(&self) -> bool {
        self.rows.len() >= 2 && self.rows.windows(2).all(|w| w[1].sup >= w[0].sup)
    }
}

/// N(δ) = sup_{n ∈ n_set, |w| ≥ δ} |θₙ(w)|.
pub fn n_delta(model: &ArrayModel, delta: f64, n_set: &[u32], opts: &NDeltaOptions) -> Result<NDelta> {
    if !(delta > 0.0) {
        return Err(Error::param("delta", "must be positive"));
    }
    let mut rows = Vec::with_capacity(n_set.len());
    for &n in n_set {
        let mut sup = 0.0f64;
        let mut arg = delta;
        let mut w0 = delta;
        let mut certified = false;
        let block = 2.0;
        loop {
            if let Some(b) = model.theta_abs_bound(n, w0) {
                if b <= sup {
                    certified = true;
                    break;
                }
            }
            if w0 >= opts.w_max {
                if let Some(b) = model.theta_abs_bound(n, w0) {
                    certified = true;
                    if b > sup {
                        sup = b;
                        arg = w0;
                    }
                }
                break;
            }
            let w1 = (w0 + block).min(opts.w_max);
            let k = ((w1 - w0) / opts.step).ceil().max(1.0) as usize;
            let ws: Vec<f64> = (0..=k).map(|i| w0 + (w1 - w0) * i as f64 / k as f64).collect();
            let s = grid_sup(&ws, |w| Ok(model.theta_n(n, w)?.norm()))?;
            if s.value > sup {
                sup = s.value;
                arg = s.argmax;
            }
            w0 = w1;
        }
        rows.push(NDeltaRow {
            n,
            sup,
            argmax: arg,
            scanned_to: w0,
            certified,
        });
    }
    let value = rows.iter().map(|r| r.sup).fold(0.0, f64::max);
    let certified = rows.iter().all(|r| r.certified);
    Ok(NDelta {
        value,
        delta,
        rows,
        certified,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateRecord {
    pub n: u32,
    pub gamma_prime: f64,
    pub gamma_dprime: f64,
    pub chi: f64,
    pub inv_a_n: f64,
    /// e^{aₙ(ln N(δ) + ε)}
    pub exp_term: f64,
    /// e^{−(1−ε) Re ψ(δbₙ)}
    pub tail_term: f64,
    pub rho: f64,
    pub sup_error: Option<f64>,
}

pub const RATE_CSV_HEADER: &str = "n,gamma_prime,gamma_dprime,chi,inv_a_n,exp_term,tail_term,rho,sup_error";

impl RateRecord {
    /// ρ as the max of the five stored terms.
    pub fn recompute_rho(&self) -> f64 {
        [
            self.chi,
            self.gamma_prime,
            self.gamma_dprime,
            self.inv_a_n,
            self.exp_term * self.tail_term,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            fmt17(self.gamma_prime),
            fmt17(self.gamma_dprime),
            fmt17(self.chi),
            fmt17(self.inv_a_n),
            fmt17(self.exp_term),
            fmt17(self.tail_term),
            fmt17(self.rho),
            self.sup_error.map(fmt17).unwrap_or_default()
        )
    }
}

pub fn write_rate_csv<W: Write>(records: &[RateRecord], mut w: W) -> Result<()> {
    writeln!(w, "{RATE_CSV_HEADER}")?;
    for r in records {
        writeln!(w, "{}", r.csv_row())?;
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateParams {
    pub epsilon: f64,
    pub delta: f64,
    pub grid: ZGrid,
}

impl Default for RateParams {
    fn default() -> Self {
        RateParams {
            epsilon: 0.1,
            delta: 0.5,
            grid: ZGrid::default(),
        }
    }
}

/// Supremum of the admissible ε for a given N(δ): ln N(δ) + ε < 0 and ε < 1.
pub fn epsilon_supremum(n_delta: f64) -> Option<f64> {
    (n_delta < 1.0).then(|| (-n_delta.ln()).min(1.0))
}

/// ρ_{ε,δ}(n) with all five terms; `n_delta` is N(δ).
pub fn rho(model: &ArrayModel, n: u32, params: &RateParams, n_delta: f64) -> Result<RateRecord> {
    let eps = params.epsilon;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::param("epsilon", format!("must lie in (0,1), got {eps}")));
    }
    let log_n = n_delta.ln();
    if !(log_n + eps < 0.0) {
        let hint = match epsilon_supremum(n_delta) {
            Some(s) => format!("choose epsilon < {s:.6}"),
            None => "no epsilon works since N(delta) >= 1".to_string(),
        };
        return Err(Error::param(
            "epsilon",
            format!("ln N(delta) + epsilon = {:.6} is not negative (N = {n_delta:.6}); {hint}", log_n + eps),
        ));
    }
    let a = model.a_n(n) as f64;
    let gp = gamma_prime(model, n, &params.grid)?.value;
    let gd = gamma_dprime(model, n, &params.grid)?.value;
    let ch = chi(model, n)?;
    let exp_term = (a * (log_n + eps)).exp();
    let re = model.limit().re_part(params.delta * model.b_n(n))?;
    let tail_term = (-(1.0 - eps) * re).exp();
    let mut rec = RateRecord {
        n,
        gamma_prime: gp,
        gamma_dprime: gd,
        chi: ch,
        inv_a_n: 1.0 / a,
        exp_term,
        tail_term,
        rho: 0.0,
        sup_error: None,
    };
    rec.rho = rec.recompute_rho();
    Ok(rec)
}

/// max(γ′ₙ, γ″ₙ, χₙ, 1/aₙ).
pub fn rho_simplified(model: &ArrayModel, n: u32, grid: &ZGrid) -> Result<f64> {
    let terms = [
        gamma_prime(model, n, grid)?.value,
        gamma_dprime(model, n, grid)?.value,
        chi(model, n)?,
        1.0 / model.a_n(n) as f64,
    ];
    Ok(terms.into_iter().fold(0.0, f64::max))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PViolation {
    pub z: f64,
    pub phi_n: f64,
    pub phi: f64,
}

/// Worst point of Φₙ(z) − Φ(z) on a grid of `points` points over [0, δbₙ].
pub fn condition_p(model: &ArrayModel, n: u32, delta: f64, points: usize) -> Result<(f64, PViolation)> {
    let top = delta * model.b_n(n);
    let zs: Vec<f64> = (0..points).map(|i| top * i as f64 / (points - 1) as f64).collect();
    let vals = par::map_slice(&zs, |&z| -> Result<(f64, f64)> {
        Ok((model.char_fn_sn(n, z)?.re, model.limit().char_fn(z)?.re))
    });
    let mut worst = (f64::INFINITY, PViolation { z: 0.0, phi_n: 1.0, phi: 1.0 });
    for (z, v) in zs.iter().zip(vals) {
        let (pn, p) = v?;
        if pn - p < worst.0 {
            worst = (pn - p, PViolation { z: *z, phi_n: pn, phi: p });
        }
    }
    Ok(worst)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SymmetricRate {
    pub gamma_prime: f64,
    /// (I₂ + I₃)/(2π)
    pub remainder: f64,
    /// γ′ₙ + remainder when (P) holds on the grid.
    pub value: Option<f64>,
    pub violation: Option<PViolation>,
}

/// γ′ₙ + r(n) for symmetric models satisfying Φₙ ≥ Φ on |z| ≤ δbₙ.
pub fn rho_symmetric(model: &ArrayModel, n: u32, delta: f64, grid: &ZGrid, tol: f64) -> Result<SymmetricRate> {
    if !model.is_symmetric() {
        return Err(Error::Domain(format!("{} is not symmetric", model.name())));
    }
    let gp = gamma_prime(model, n, grid)?.value;
    let bt = bound_terms(model, n, delta, tol)?;
    let remainder = (bt.i2 + bt.i3) / (2.0 * PI);
    let (margin, worst) = condition_p(model, n, delta, 1024)?;
    let violated = margin < -1e-14;
    Ok(SymmetricRate {
        gamma_prime: gp,
        remainder,
        value: (!violated).then_some(gp + remainder),
        violation: violated.then_some(worst),
    })
}

/// Hₙ(z) = Re ψ(z) + aₙ ln θₙ(z/bₙ) for symmetric models with θₙ(z/bₙ) > 0.
pub fn h_n(model: &ArrayModel, n: u32, z: f64) -> Result<f64> {
    if !model.is_symmetric() {
        return Err(Error::Domain(format!("{} is not symmetric", model.name())));
    }
    let d = model.one_minus_theta(n, z / model.b_n(n))?;
    if !(d.re < 1.0) {
        return Err(Error::Domain(format!("theta_n(z/b_n) = {} is not positive at z = {z}", 1.0 - d.re)));
    }
    Ok(model.limit().re_part(z)? + model.a_n(n) as f64 * (-d.re).ln_1p())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundTerms {
    /// ∫_{|z|≤δbₙ} |Φₙ − Φ|
    pub i1: f64,
    /// ∫_{|z|>δbₙ} |Φₙ|
    pub i2: f64,
    /// ∫_{|z|>δbₙ} |Φ|
    pub i3: f64,
}

impl BoundTerms {
    pub fn total(&self) -> f64 {
        self.i1 + self.i2 + self.i3
    }
}

fn abs_tail(phi: &dyn CharFn, from: f64, tol: f64) -> Result<f64> {
    let t = choose_truncation(phi, tol)?;
    if t.z_max <= from {
        return Ok(phi.tail_integral(from).unwrap_or(t.tail_integral));
    }
    let opts = QuadOptions {
        abs_tol: tol,
        rel_tol: 1e-8,
        max_evals: 2_000_000,
    };
    let r = quad::integrate(|z: f64| phi.eval(z).map(|v| v.norm()).unwrap_or(f64::NAN), from, t.z_max, &opts);
    if r.value.is_nan() {
        return Err(Error::Domain("characteristic function evaluation failed".into()));
    }
    Ok(r.require("tail of |Phi|")? + t.tail_integral)
}

/// The three pieces of ∫|Φₙ − Φ| split at δbₙ; both sides of the line.
pub fn bound_terms(model: &ArrayModel, n: u32, delta: f64, tol: f64) -> Result<BoundTerms> {
    let cut = delta * model.b_n(n);
    let sn = model.sn_char_fn(n);
    let lim = model.limit_char_fn();
    let diff = |z: f64| -> f64 {
        match (sn.eval(z), lim.eval(z)) {
            (Ok(a), Ok(b)) => (a - b).norm(),
            _ => f64::NAN,
        }
    };
    let opts = QuadOptions {
        abs_tol: tol,
        rel_tol: 1e-8,
        max_evals: 2_000_000,
    };
    let i1 = quad::integrate(diff, 0.0, cut, &opts);
    if i1.value.is_nan() {
        return Err(Error::Domain("characteristic function evaluation failed".into()));
    }
    let i1 = 2.0 * i1.require("I1 bound term")?;
    let i2 = 2.0 * abs_tail(&sn, cut, tol)?;
    let i3 = 2.0 * abs_tail(&lim, cut, tol)?;
    Ok(BoundTerms { i1, i2, i3 })
}

/// Φₙ(z) for a batch of z, in order.
pub fn char_fn_batch(model: &ArrayModel, n: u32, zs: &[f64]) -> Result<Vec<Complex64>> {
    par::map_slice(zs, |&z| model.char_fn_sn(n, z)).into_iter().collect()
}
