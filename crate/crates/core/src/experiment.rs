//! Experiment configuration, sweeps over n and the files they emit.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::array::ArrayModel;
use crate::error::{Error, Result};
use crate::fit::{fit_rate, FitResult};
use crate::inversion::{density_grid, sup_distance, DensityGrid, GridOptions, SupDistance};
use crate::par;
use crate::rates::{
    audit::all_pass, audit_all, epsilon_supremum, n_delta, rho, write_rate_csv, AuditParams, ConditionAudit,
    NDelta, NDeltaOptions, RateParams, RateRecord, ZGrid,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: String,
    pub n_values: Vec<u32>,
    pub delta: f64,
    pub epsilon: f64,
    pub x_range: (f64, f64),
    pub x_points: usize,
    pub z_grid_max: f64,
    pub z_grid_points: usize,
    pub tol: f64,
    pub outputs: PathBuf,
    pub formats: Vec<Format>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            model: "example2".to_string(),
            n_values: vec![8, 16, 32, 64, 128, 256],
            delta: 0.5,
            epsilon: 0.1,
            x_range: (-10.0, 10.0),
            x_points: 1024,
            z_grid_max: 50.0,
            z_grid_points: 4096,
            tol: 1e-10,
            outputs: PathBuf::from("outputs"),
            formats: vec![Format::Csv, Format::Json],
        }
    }
}

impl ExperimentConfig {
    /// Parses JSON; missing fields take their defaults.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::config("config", e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::config("config", format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        ArrayModel::from_name(&self.model).map_err(|e| match e {
            Error::Config { .. } => e,
            other => Error::config("model", other.to_string()),
        })?;
        if self.n_values.is_empty() {
            return Err(Error::config("n_values", "must not be empty"));
        }
        if self.n_values[0] == 0 {
            return Err(Error::config("n_values", "entries must be positive"));
        }
        if let Some(w) = self.n_values.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::config(
                "n_values",
                format!("must be strictly increasing ({} then {})", w[0], w[1]),
            ));
        }
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(Error::config("delta", format!("must be positive, got {}", self.delta)));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::config("epsilon", format!("must lie in (0,1), got {}", self.epsilon)));
        }
        let (lo, hi) = self.x_range;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::config("x_range", format!("need finite lo < hi, got ({lo}, {hi})")));
        }
        if self.x_points < 64 || !self.x_points.is_power_of_two() {
            return Err(Error::config(
                "x_points",
                format!("must be a power of two >= 64, got {}", self.x_points),
            ));
        }
        if !(self.z_grid_max > 0.0 && self.z_grid_max.is_finite()) {
            return Err(Error::config("z_grid_max", format!("must be positive, got {}", self.z_grid_max)));
        }
        if self.z_grid_points < 2 {
            return Err(Error::config("z_grid_points", "need at least 2 points"));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::config("tol", format!("must lie in (0,1), got {}", self.tol)));
        }
        if self.formats.is_empty() {
            return Err(Error::config("formats", "choose at least one of csv, json"));
        }
        Ok(())
    }

    pub fn model(&self) -> Result<ArrayModel> {
        ArrayModel::from_name(&self.model)
    }

    pub fn grid_options(&self) -> GridOptions {
        GridOptions::new(self.x_range.0, self.x_range.1, self.x_points, self.tol)
    }

    pub fn rate_params(&self) -> RateParams {
        RateParams {
            epsilon: self.epsilon,
            delta: self.delta,
            grid: ZGrid::new(self.z_grid_max, self.z_grid_points),
        }
    }

    pub fn audit_params(&self) -> AuditParams {
        AuditParams {
            n_values: self.n_values.clone(),
            delta: self.delta,
            epsilon: self.epsilon,
            ..Default::default()
        }
    }

    fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NError {
    pub n: u32,
    pub message: String,
}

/// A fitted order, or the reason none was fitted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitEntry {
    pub quantity: String,
    pub fit: Option<FitResult>,
    pub skipped: Option<String>,
}

impl FitEntry {
    fn from(quantity: &str, ns: &[u32], ys: &[f64]) -> Self {
        match fit_rate(ns, ys) {
            Ok(f) => FitEntry {
                quantity: quantity.to_string(),
                fit: Some(f),
                skipped: None,
            },
            Err(e) => Self::skip(quantity, e.to_string()),
        }
    }

    fn skip(quantity: &str, reason: impl Into<String>) -> Self {
        FitEntry {
            quantity: quantity.to_string(),
            fit: None,
            skipped: Some(reason.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergeReport {
    pub model: String,
    pub n_delta: f64,
    pub records: Vec<RateRecord>,
    pub distances: Vec<SupDistance>,
    pub errors: Vec<NError>,
    pub fits: Vec<FitEntry>,
    /// Differences at or below this level are treated as numerical noise.
    pub floor: f64,
    #[serde(skip)]
    pub limit: DensityGrid,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatesReport {
    pub model: String,
    pub n_delta: NDelta,
    pub records: Vec<RateRecord>,
    pub errors: Vec<NError>,
    pub fits: Vec<FitEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub model: String,
    pub audits: Vec<ConditionAudit>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub model: String,
    pub n: u32,
    pub sn: DensityGrid,
    pub limit: DensityGrid,
    pub distance: SupDistance,
}

fn n_delta_for(model: &ArrayModel, cfg: &ExperimentConfig) -> Result<NDelta> {
    let mut ns = vec![1];
    ns.extend(cfg.n_values.iter().copied().filter(|&n| n > 1));
    n_delta(model, cfg.delta, &ns, &NDeltaOptions::default())
}

/// N(δ) plus the ε admissibility check, reported against the `epsilon` field.
fn checked_n_delta(model: &ArrayModel, cfg: &ExperimentConfig) -> Result<NDelta> {
    let nd = n_delta_for(model, cfg)?;
    if nd.value.ln() + cfg.epsilon >= 0.0 {
        let hint = match epsilon_supremum(nd.value) {
            Some(s) => format!("choose epsilon < {s:.6}"),
            None => format!("N({}) = {} >= 1, no epsilon works", cfg.delta, nd.value),
        };
        return Err(Error::config(
            "epsilon",
            format!("ln N(delta) + epsilon must be negative (N = {:.6}); {hint}", nd.value),
        ));
    }
    Ok(nd)
}

/// Inverts Φₙ for every n and Φ once, records sup|pₙ − p| next to ρ(n) and
/// fits both against n.
pub fn run_converge(cfg: &ExperimentConfig) -> Result<ConvergeReport> {
    cfg.validate()?;
    let model = cfg.model()?;
    let nd = checked_n_delta(&model, cfg)?;
    let opts = cfg.grid_options();
    let limit = density_grid(&model.limit_char_fn(), &opts)?;
    let params = cfg.rate_params();
    let per_n = par::map_slice(&cfg.n_values, |&n| -> Result<(RateRecord, SupDistance)> {
        let g = density_grid(&model.sn_char_fn(n), &opts)?;
        let d = sup_distance(&g, &limit)?;
        let mut r = rho(&model, n, &params, nd.value)?;
        r.sup_error = Some(d.value);
        Ok((r, d))
    });
    let mut records = Vec::new();
    let mut distances = Vec::new();
    let mut errors = Vec::new();
    for (&n, r) in cfg.n_values.iter().zip(per_n) {
        match r {
            Ok((rec, d)) => {
                records.push(rec);
                distances.push(d);
            }
            Err(e) => errors.push(NError { n, message: e.to_string() }),
        }
    }
    let floor = distances.iter().map(|d| d.certificate).fold(0.0, f64::max) + 100.0 * cfg.tol;
    let ns: Vec<u32> = records.iter().map(|r| r.n).collect();
    let sups: Vec<f64> = distances.iter().map(|d| d.value).collect();
    let rhos: Vec<f64> = records.iter().map(|r| r.rho).collect();
    let sup_fit = if !sups.is_empty() && sups.iter().all(|&s| s <= floor) {
        FitEntry::skip("sup_error", format!("below tolerance floor ({floor:.3e})"))
    } else {
        FitEntry::from("sup_error", &ns, &sups)
    };
    Ok(ConvergeReport {
        model: model.name().to_string(),
        n_delta: nd.value,
        records,
        distances,
        errors,
        fits: vec![sup_fit, FitEntry::from("rho", &ns, &rhos)],
        floor,
        limit,
    })
}

/// Rate terms without inversion.
pub fn run_rates(cfg: &ExperimentConfig) -> Result<RatesReport> {
    cfg.validate()?;
    let model = cfg.model()?;
    let nd = checked_n_delta(&model, cfg)?;
    let params = cfg.rate_params();
    let per_n = par::map_slice(&cfg.n_values, |&n| rho(&model, n, &params, nd.value));
    let mut records = Vec::new();
    let mut errors = Vec::new();
    for (&n, r) in cfg.n_values.iter().zip(per_n) {
        match r {
            Ok(rec) => records.push(rec),
            Err(e) => errors.push(NError { n, message: e.to_string() }),
        }
    }
    let ns: Vec<u32> = records.iter().map(|r| r.n).collect();
    let rhos: Vec<f64> = records.iter().map(|r| r.rho).collect();
    Ok(RatesReport {
        model: model.name().to_string(),
        n_delta: nd,
        records,
        errors,
        fits: vec![FitEntry::from("rho", &ns, &rhos)],
    })
}

pub fn run_audit(cfg: &ExperimentConfig) -> Result<AuditReport> {
    cfg.validate()?;
    let model = cfg.model()?;
    let audits = audit_all(&model, &cfg.audit_params());
    Ok(AuditReport {
        model: model.name().to_string(),
        pass: all_pass(&audits),
        audits,
    })
}

/// pₙ and p on the configured x grid.
pub fn run_density(cfg: &ExperimentConfig, n: u32) -> Result<DensityReport> {
    cfg.validate()?;
    if n == 0 {
        return Err(Error::config("n", "must be positive"));
    }
    let model = cfg.model()?;
    let opts = cfg.grid_options();
    let sn = density_grid(&model.sn_char_fn(n), &opts)?;
    let limit = density_grid(&model.limit_char_fn(), &opts)?;
    let distance = sup_distance(&sn, &limit)?;
    Ok(DensityReport {
        model: model.name().to_string(),
        n,
        sn,
        limit,
        distance,
    })
}

/// Echo of everything a run produced.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Manifest {
    pub config: ExperimentConfig,
    pub command: String,
    pub records: Vec<RateRecord>,
    pub fits: Vec<FitEntry>,
    pub audits: Vec<ConditionAudit>,
    pub errors: Vec<NError>,
    pub files: Vec<String>,
    pub version: String,
}

impl Manifest {
    fn new(cfg: &ExperimentConfig, command: &str) -> Self {
        Manifest {
            config: cfg.clone(),
            command: command.to_string(),
            records: Vec::new(),
            fits: Vec::new(),
            audits: Vec::new(),
            errors: Vec::new(),
            files: Vec::new(),
            version: VERSION.to_string(),
        }
    }
}

struct Sink<'a> {
    dir: &'a Path,
    files: Vec<String>,
}

impl<'a> Sink<'a> {
    fn new(dir: &'a Path) -> Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Sink { dir, files: Vec::new() })
    }

    fn write(&mut self, name: &str, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
        let mut w = BufWriter::new(File::create(self.dir.join(name))?);
        f(&mut w)?;
        w.flush()?;
        self.files.push(name.to_string());
        Ok(())
    }

    fn json<T: Serialize>(&mut self, name: &str, v: &T) -> Result<()> {
        self.write(name, |w| {
            serde_json::to_writer_pretty(&mut *w, v).map_err(|e| Error::Io(e.to_string()))?;
            writeln!(w)?;
            Ok(())
        })
    }

    fn grid(&mut self, stem: &str, g: &DensityGrid, label: &str, csv: bool) -> Result<()> {
        if csv {
            self.write(&format!("{stem}.csv"), |w| g.write_csv(w))?;
        }
        self.json(&format!("{stem}.json"), &g.metadata_json(label))
    }

    fn finish(mut self, mut manifest: Manifest) -> Result<PathBuf> {
        self.files.push("manifest.json".to_string());
        manifest.files = self.files.clone();
        self.json("manifest.json", &manifest)?;
        Ok(self.dir.join("manifest.json"))
    }
}

fn rate_files(sink: &mut Sink, cfg: &ExperimentConfig, stem: &str, records: &[RateRecord]) -> Result<()> {
    if cfg.wants(Format::Csv) {
        sink.write(&format!("{stem}.csv"), |w| write_rate_csv(records, w))?;
    }
    if cfg.wants(Format::Json) {
        sink.json(&format!("{stem}.json"), &records)?;
    }
    Ok(())
}

/// Writes the converge outputs and returns the manifest path.
pub fn write_converge(cfg: &ExperimentConfig, r: &ConvergeReport) -> Result<PathBuf> {
    let mut sink = Sink::new(&cfg.outputs)?;
    rate_files(&mut sink, cfg, "converge", &r.records)?;
    sink.grid("density_limit", &r.limit, &format!("{} limit", r.model), cfg.wants(Format::Csv))?;
    if cfg.wants(Format::Json) {
        sink.json("converge_report.json", r)?;
    }
    let mut m = Manifest::new(cfg, "converge");
    m.records = r.records.clone();
    m.fits = r.fits.clone();
    m.errors = r.errors.clone();
    sink.finish(m)
}

pub fn write_rates(cfg: &ExperimentConfig, r: &RatesReport) -> Result<PathBuf> {
    let mut sink = Sink::new(&cfg.outputs)?;
    rate_files(&mut sink, cfg, "rates", &r.records)?;
    if cfg.wants(Format::Json) {
        sink.json("rates_report.json", r)?;
    }
    let mut m = Manifest::new(cfg, "rates");
    m.records = r.records.clone();
    m.fits = r.fits.clone();
    m.errors = r.errors.clone();
    sink.finish(m)
}

pub fn write_audit(cfg: &ExperimentConfig, r: &AuditReport) -> Result<PathBuf> {
    let mut sink = Sink::new(&cfg.outputs)?;
    if cfg.wants(Format::Csv) {
        sink.write("audit.csv", |w| {
            writeln!(w, "id,n_min,n_max,margin,pass,gating,notes")?;
            for a in &r.audits {
                writeln!(
                    w,
                    "{},{},{},{},{},{},\"{}\"",
                    a.id,
                    a.n_range.0,
                    a.n_range.1,
                    crate::inversion::fmt17(a.margin),
                    a.pass,
                    a.gating,
                    a.notes.replace('"', "'")
                )?;
            }
            Ok(())
        })?;
    }
    if cfg.wants(Format::Json) {
        sink.json("audit.json", r)?;
    }
    let mut m = Manifest::new(cfg, "audit");
    m.audits = r.audits.clone();
    sink.finish(m)
}

pub fn write_density(cfg: &ExperimentConfig, r: &DensityReport) -> Result<PathBuf> {
    let mut sink = Sink::new(&cfg.outputs)?;
    let csv = cfg.wants(Format::Csv);
    sink.grid(&format!("density_n{}", r.n), &r.sn, &format!("{} n={}", r.model, r.n), csv)?;
    sink.grid("density_limit", &r.limit, &format!("{} limit", r.model), csv)?;
    if cfg.wants(Format::Json) {
        sink.json("density_distance.json", &r.distance)?;
    }
    sink.finish(Manifest::new(cfg, "density"))
}

/// Text table of an audit.
pub fn audit_table(r: &AuditReport) -> String {
    let mut s = format!("{:<10} {:>11} {:>14}  {:<5} notes\n", "condition", "n", "margin", "pass");
    for a in &r.audits {
        let pass = match (a.pass, a.gating) {
            (true, _) => "yes",
            (false, true) => "NO",
            (false, false) => "no*",
        };
        s.push_str(&format!(
            "{:<10} {:>5}-{:<5} {:>14.6e}  {:<5} {}\n",
            a.id, a.n_range.0, a.n_range.1, a.margin, pass, a.notes
        ));
    }
    s.push_str(if r.pass { "all gating conditions pass\n" } else { "audit FAILED\n" });
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_partial_json() {
        let c = ExperimentConfig::from_json(r#"{"model": "gauss", "delta": 0.25}"#).unwrap();
        assert_eq!(c.n_values, vec![8, 16, 32, 64, 128, 256]);
        assert_eq!(c.delta, 0.25);
        assert_eq!(c.x_points, 1024);
        assert_eq!(c.formats, vec![Format::Csv, Format::Json]);
        c.validate().unwrap();
    }

    fn field_of(e: Error) -> String {
        match e {
            Error::Config { field, .. } => field,
            other => panic!("{other}"),
        }
    }

    #[test]
    fn validation_names_fields() {
        let base = ExperimentConfig::default();
        let cases: Vec<(ExperimentConfig, &str)> = vec![
            (ExperimentConfig { n_values: vec![8, 8, 16], ..base.clone() }, "n_values"),
            (ExperimentConfig { n_values: vec![], ..base.clone() }, "n_values"),
            (ExperimentConfig { x_points: 1000, ..base.clone() }, "x_points"),
            (ExperimentConfig { x_points: 32, ..base.clone() }, "x_points"),
            (ExperimentConfig { delta: 0.0, ..base.clone() }, "delta"),
            (ExperimentConfig { epsilon: 1.0, ..base.clone() }, "epsilon"),
            (ExperimentConfig { x_range: (1.0, -1.0), ..base.clone() }, "x_range"),
            (ExperimentConfig { model: "cauchy".into(), ..base.clone() }, "model"),
            (ExperimentConfig { model: "example1:alpha=x".into(), ..base.clone() }, "model"),
            (ExperimentConfig { formats: vec![], ..base.clone() }, "formats"),
            (ExperimentConfig { tol: -1.0, ..base.clone() }, "tol"),
        ];
        for (c, f) in cases {
            assert_eq!(field_of(c.validate().unwrap_err()), f);
        }
        let e = ExperimentConfig::from_json(r#"{"modle": "gauss"}"#).unwrap_err();
        assert!(e.to_string().contains("modle"), "{e}");
    }

    fn small(model: &str) -> ExperimentConfig {
        ExperimentConfig {
            model: model.into(),
            n_values: vec![8, 16, 32],
            x_points: 256,
            z_grid_points: 512,
            ..Default::default()
        }
    }

    #[test]
    fn gauss_converge_skips_fit() {
        let r = run_converge(&small("gauss")).unwrap();
        assert!(r.errors.is_empty());
        assert!(r.distances.iter().all(|d| d.value < 1e-8));
        let f = &r.fits[0];
        assert!(f.fit.is_none());
        assert!(f.skipped.as_deref().unwrap().starts_with("below tolerance floor"));
    }

    #[test]
    fn inadmissible_epsilon_is_a_config_error() {
        let c = ExperimentConfig {
            epsilon: 0.9,
            ..small("example1:alpha=1")
        };
        let e = run_rates(&c).unwrap_err();
        assert_eq!(field_of(e.clone()), "epsilon");
        assert!(e.to_string().contains("choose epsilon < 0.693147"), "{e}");
    }

    #[test]
    fn outputs_are_deterministic_and_listed() {
        let root = std::env::temp_dir().join(format!("lltlab-exp-{}", std::process::id()));
        let mut c = small("example1:alpha=1");
        let mut read = |sub: &str| {
            c.outputs = root.join(sub);
            let r = run_rates(&c).unwrap();
            let m = write_rates(&c, &r).unwrap();
            let man: serde_json::Value = serde_json::from_str(&fs::read_to_string(&m).unwrap()).unwrap();
            let files: Vec<String> = man["files"]
                .as_array()
                .unwrap()
                .iter()
                .map(|v| v.as_str().unwrap().to_string())
                .collect();
            assert!(files.contains(&"rates.csv".to_string()));
            for f in &files {
                assert!(c.outputs.join(f).exists(), "{f}");
            }
            assert_eq!(man["version"], VERSION);
            fs::read(c.outputs.join("rates.csv")).unwrap()
        };
        let a = read("a");
        let b = read("b");
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert!(text.starts_with(crate::rates::RATE_CSV_HEADER));
        assert_eq!(text.lines().count(), 4);
        fs::remove_dir_all(&root).ok();
    }

    #[test]
    fn density_files() {
        let root = std::env::temp_dir().join(format!("lltlab-den-{}", std::process::id()));
        let c = ExperimentConfig {
            outputs: root.clone(),
            ..small("example2")
        };
        let r = run_density(&c, 32).unwrap();
        for i in [0usize, 100, 128, 255] {
            let x = r.limit.xs[i];
            let exact = 1.0 / (std::f64::consts::PI * x.cosh());
            assert!((r.limit.values[i] - exact).abs() < 1e-8, "x = {x}");
        }
        write_density(&c, &r).unwrap();
        let csv = fs::read_to_string(root.join("density_n32.csv")).unwrap();
        assert_eq!(csv.lines().next(), Some("x,p"));
        assert_eq!(csv.lines().count(), 257);
        let meta: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(root.join("density_n32.json")).unwrap()).unwrap();
        for k in ["z_max", "tail_bound", "tol"] {
            assert!(meta[k].is_number(), "{k}");
        }
        fs::remove_dir_all(&root).ok();
    }
}
