//! Browser bindings: density grids, characteristic-function curves and audits.

use wasm_bindgen::prelude::*;

use lltlab::array::ArrayModel;
use lltlab::experiment::{audit_table, run_audit, AuditReport, ExperimentConfig};
use lltlab::inversion::{density_grid, sup_distance, GridOptions};

#[wasm_bindgen]
pub struct DensityView {
    xs: Vec<f64>,
    pn: Vec<f64>,
    p: Vec<f64>,
    sup_error: f64,
    argmax: f64,
    certificate: f64,
}

#[wasm_bindgen]
impl DensityView {
    #[wasm_bindgen(getter)]
    pub fn xs(&self) -> Vec<f64> {
        self.xs.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn pn(&self) -> Vec<f64> {
        self.pn.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn p(&self) -> Vec<f64> {
        self.p.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn sup_error(&self) -> f64 {
        self.sup_error
    }
    #[wasm_bindgen(getter)]
    pub fn argmax(&self) -> f64 {
        self.argmax
    }
    #[wasm_bindgen(getter)]
    pub fn certificate(&self) -> f64 {
        self.certificate
    }
}

#[wasm_bindgen]
pub struct CurveView {
    zs: Vec<f64>,
    phi_n: Vec<f64>,
    phi: Vec<f64>,
}

#[wasm_bindgen]
impl CurveView {
    #[wasm_bindgen(getter)]
    pub fn zs(&self) -> Vec<f64> {
        self.zs.clone()
    }
    /// Re Φₙ(z).
    #[wasm_bindgen(getter)]
    pub fn phi_n(&self) -> Vec<f64> {
        self.phi_n.clone()
    }
    /// Re Φ(z).
    #[wasm_bindgen(getter)]
    pub fn phi(&self) -> Vec<f64> {
        self.phi.clone()
    }
}

fn js(e: lltlab::Error) -> JsError {
    JsError::new(&e.to_string())
}

pub fn density_view(model: &str, n: u32, x_min: f64, x_max: f64, points: usize) -> lltlab::Result<DensityView> {
    let m = ArrayModel::from_name(model)?;
    let opts = GridOptions {
        max_fft: 1 << 20,
        ..GridOptions::new(x_min, x_max, points, 1e-10)
    };
    let pn = density_grid(&m.sn_char_fn(n), &opts)?;
    let p = density_grid(&m.limit_char_fn(), &opts)?;
    let d = sup_distance(&pn, &p)?;
    Ok(DensityView {
        xs: pn.xs,
        pn: pn.values,
        p: p.values,
        sup_error: d.value,
        argmax: d.argmax,
        certificate: d.certificate,
    })
}

pub fn curve_view(model: &str, n: u32, z_max: f64, points: usize) -> lltlab::Result<CurveView> {
    let m = ArrayModel::from_name(model)?;
    let points = points.max(2);
    let zs: Vec<f64> = (0..points).map(|i| z_max * i as f64 / (points - 1) as f64).collect();
    let phi_n = zs
        .iter()
        .map(|&z| m.char_fn_sn(n, z).map(|c| c.re))
        .collect::<lltlab::Result<Vec<_>>>()?;
    let phi = zs
        .iter()
        .map(|&z| m.limit().char_fn(z).map(|c| c.re))
        .collect::<lltlab::Result<Vec<_>>>()?;
    Ok(CurveView { zs, phi_n, phi })
}

pub fn audit_report(model: &str, n_values: Vec<u32>) -> lltlab::Result<AuditReport> {
    let cfg = ExperimentConfig {
        model: model.to_string(),
        n_values,
        ..Default::default()
    };
    run_audit(&cfg)
}

/// pₙ and p on `points` grid points over [x_min, x_max].
#[wasm_bindgen]
pub fn density(model: &str, n: u32, x_min: f64, x_max: f64, points: usize) -> Result<DensityView, JsError> {
    density_view(model, n, x_min, x_max, points).map_err(js)
}

/// Re Φₙ and Re Φ on [0, z_max].
#[wasm_bindgen]
pub fn char_fn_curve(model: &str, n: u32, z_max: f64, points: usize) -> Result<CurveView, JsError> {
    curve_view(model, n, z_max, points).map_err(js)
}

/// The condition audit as a text table.
#[wasm_bindgen]
pub fn audit(model: &str, n_values: Vec<u32>) -> Result<String, JsError> {
    audit_report(model, n_values).map(|r| audit_table(&r)).map_err(js)
}
