//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` cannot be met as stated; they are
//! evaluated in full, reported as FAIL, and the run only checks that they
//! fail for the documented reason. Any other failure exits non-zero.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;

use lltlab::array::ArrayModel;
use lltlab::experiment::{run_converge, run_density, ExperimentConfig};
use lltlab::inversion::{density_grid, Decay, FnCharFn, GridOptions};
use lltlab::rates::audit::{all_pass, condition_f_margin, default_kappa};
use lltlab::rates::closed::{asymptotic_probe, i1_closed, i1_quad, i2_closed, i2_quad, i_quad};
use lltlab::rates::{audit_all, chi, gamma_prime, AuditParams, ZGrid};

const KNOWN_FAILURES: [u32; 2] = [8, 9];

struct Outcome {
    id: u32,
    pass: bool,
    detail: String,
    /// For known failures: the failure has exactly the documented cause.
    expected_cause: bool,
}

impl Outcome {
    fn new(id: u32, pass: bool, detail: String) -> Self {
        Outcome {
            id,
            pass,
            detail,
            expected_cause: false,
        }
    }
}

fn sweep(model: &str) -> lltlab::experiment::ConvergeReport {
    let cfg = ExperimentConfig {
        model: model.into(),
        ..Default::default()
    };
    run_converge(&cfg).unwrap_or_else(|e| panic!("{model}: {e}"))
}

fn rate_criterion(id: u32, model: &str, slope_range: (f64, f64), r2_min: f64) -> Outcome {
    let t = Instant::now();
    let r = sweep(model);
    let fit = r.fits.iter().find(|f| f.quantity == "sup_error").and_then(|f| f.fit);
    match fit {
        Some(f) if r.errors.is_empty() => {
            let pass = f.slope >= slope_range.0 && f.slope <= slope_range.1 && f.r_squared >= r2_min;
            Outcome::new(
                id,
                pass,
                format!(
                    "{model}: slope {:.4} (want [{}, {}]), r2 {:.5} (want >= {r2_min}), {:.1?}",
                    f.slope,
                    slope_range.0,
                    slope_range.1,
                    f.r_squared,
                    t.elapsed()
                ),
            )
        }
        _ => Outcome::new(id, false, format!("{model}: no fit, errors {:?}", r.errors)),
    }
}

fn criterion_3() -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for model in ["example1:alpha=1", "example2"] {
        let r = sweep(model);
        let first = &r.records[0];
        let c = first.sup_error.unwrap() / first.rho;
        let worst = r
            .records
            .iter()
            .skip(1)
            .map(|x| x.sup_error.unwrap() / (c * x.rho))
            .fold(0.0, f64::max);
        pass &= worst <= 1.5 && r.records[0].n == 8;
        notes.push(format!("{model}: C = {c:.4}, max sup/(C rho) = {worst:.4}"));
    }
    Outcome::new(3, pass, notes.join("; "))
}

fn criterion_4() -> Outcome {
    let m = ArrayModel::example2().unwrap();
    let mut worst = 0.0f64;
    for z in [0.5, 1.0, 2.0, 5.0] {
        let psi = m.limit().re_part(z).unwrap();
        let exact = (PI * z / 2.0).cosh().ln();
        worst = worst.max((psi - exact).abs());
    }
    Outcome::new(4, worst < 1e-6, format!("max |psi - ln cosh(pi z/2)| = {worst:.3e}"))
}

fn criterion_5() -> Outcome {
    let mut tri = 0.0f64;
    for k in [0.0, 0.25, 0.5, 0.99, 1.0, 2.0] {
        let q = i_quad(1.0, k);
        tri = tri.max((q.value - 0.5 * PI * (1.0f64 - k).max(0.0)).abs());
    }
    let mut rel = 0.0f64;
    for alpha in [0.5, 1.5] {
        for k in [2.0, 10.0] {
            let a = i1_closed(alpha, k).unwrap();
            let b = i1_quad(alpha, k).value;
            let c = i2_closed(alpha, k).unwrap();
            let d = i2_quad(alpha, k).value;
            rel = rel.max(((a - b) / b).abs()).max(((c - d) / d).abs());
        }
    }
    Outcome::new(
        5,
        tri < 1e-8 && rel < 1e-5,
        format!("I(1,k) max abs error {tri:.3e}; I1/I2 closed vs quadrature max rel error {rel:.3e}"),
    )
}

fn criterion_6() -> Outcome {
    let opts = GridOptions::default();
    let gauss = FnCharFn::new(
        |z: f64| Complex64::new((-0.5 * z * z).exp(), 0.0),
        true,
        Decay::Stretched {
            amp: 1.0,
            c: 0.5,
            alpha: 2.0,
        },
    );
    let g = density_grid(&gauss, &opts).unwrap();
    let ge = g
        .xs
        .iter()
        .zip(&g.values)
        .map(|(x, p)| (p - (-0.5 * x * x).exp() / (2.0 * PI).sqrt()).abs())
        .fold(0.0, f64::max);
    let cauchy = FnCharFn::new(
        |z: f64| Complex64::new((-z.abs()).exp(), 0.0),
        true,
        Decay::Stretched {
            amp: 1.0,
            c: 1.0,
            alpha: 1.0,
        },
    );
    let c = density_grid(&cauchy, &opts).unwrap();
    let ce = c
        .xs
        .iter()
        .zip(&c.values)
        .map(|(x, p)| (p - 1.0 / (PI * (1.0 + x * x))).abs())
        .fold(0.0, f64::max);
    let allowance = 1e-6 + c.tail_bound;
    Outcome::new(
        6,
        ge < 1e-8 && ce < allowance && c.certified,
        format!(
            "gauss max error {ge:.3e}; cauchy max error {ce:.3e} (allowance {allowance:.3e}, tail {:.3e}, alias {:.3e})",
            c.tail_bound, c.alias_bound
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let mut checks = 0;
    let zs: Vec<f64> = (-400..=400).map(|i| i as f64 / 8.0).collect();
    let grid = ZGrid::default();
    for model in ["example1:alpha=1", "example2", "gauss"] {
        let m = ArrayModel::from_name(model).unwrap();
        let cfg = ExperimentConfig {
            model: model.into(),
            ..Default::default()
        };
        let mut gps = Vec::new();
        let mut chis = Vec::new();
        for &n in &[8u32, 32, 128] {
            let r = run_density(&cfg, n).unwrap();
            for (label, g) in [("p_n", &r.sn), ("p", &r.limit)] {
                let floor = -(g.certificate() + 1e-12);
                let min = g.values.iter().copied().fold(f64::INFINITY, f64::min);
                checks += 1;
                if min < floor {
                    failures.push(format!("{model} n={n} {label}: min {min:.3e} < {floor:.3e}"));
                }
                let mass = g.mass() + g.outside_mass();
                checks += 1;
                if !(0.999..=1.001).contains(&mass) {
                    failures.push(format!("{model} n={n} {label}: mass {mass:.6}"));
                }
                let k = g.values.len();
                let asym = (0..k / 2)
                    .map(|i| (g.values[i] - g.values[k - 1 - i]).abs())
                    .fold(0.0, f64::max);
                checks += 1;
                if asym > g.certificate() + 1e-12 {
                    failures.push(format!("{model} n={n} {label}: asymmetry {asym:.3e}"));
                }
            }
            let at0 = m.char_fn_sn(n, 0.0).unwrap();
            checks += 1;
            if at0 != Complex64::new(1.0, 0.0) {
                failures.push(format!("{model} n={n}: Phi_n(0) = {at0}"));
            }
            for &z in &zs {
                let v = m.char_fn_sn(n, z).unwrap();
                let w = m.char_fn_sn(n, -z).unwrap();
                if v.norm() > 1.0 + 1e-12 || (v - w.conj()).norm() > 1e-12 {
                    failures.push(format!("{model} n={n}: |Phi_n({z})| = {} or conjugacy broken", v.norm()));
                    break;
                }
            }
            checks += 1;
            gps.push(gamma_prime(&m, n, &grid).unwrap().value);
            chis.push(chi(&m, n).unwrap());
        }
        checks += 1;
        if !gps.windows(2).all(|w| w[1] <= w[0]) || !chis.windows(2).all(|w| w[1] <= w[0] + 1e-15) {
            failures.push(format!("{model}: gamma'/chi trend {gps:?} {chis:?}"));
        }
        let r = run_converge(&ExperimentConfig {
            model: model.into(),
            n_values: vec![8, 16, 32],
            ..Default::default()
        })
        .unwrap();
        for rec in &r.records {
            checks += 1;
            if rec.rho != rec.recompute_rho() {
                failures.push(format!("{model} n={}: rho {} != {}", rec.n, rec.rho, rec.recompute_rho()));
            }
        }
    }
    let detail = if failures.is_empty() {
        format!("{checks} invariant checks green")
    } else {
        failures.join("; ")
    };
    Outcome::new(7, failures.is_empty(), detail)
}

fn criterion_8() -> Outcome {
    let params = AuditParams::default();
    let mut pass = true;
    let mut lines = Vec::new();
    let mut only_d_at_1_5 = true;
    let mut f_positive = true;
    for model in ["example1:alpha=0.5", "example1:alpha=1", "example1:alpha=1.5", "example2", "gauss"] {
        let m = ArrayModel::from_name(model).unwrap();
        let audits = audit_all(&m, &params);
        let failed: Vec<&str> = audits.iter().filter(|a| a.gating && !a.pass).map(|a| a.id.as_str()).collect();
        pass &= all_pass(&audits);
        if model == "example1:alpha=1.5" {
            only_d_at_1_5 &= failed == ["D"];
        } else {
            only_d_at_1_5 &= failed.is_empty();
        }
        let kappa = default_kappa(&m);
        for &n in &params.n_values {
            f_positive &= condition_f_margin(&m, n, params.delta, kappa, params.f_points).unwrap().value > 0.0;
        }
        lines.push(format!("{model}: {}", if failed.is_empty() { "pass".to_string() } else { format!("fails {failed:?}") }));
    }
    let raw = audit_all(&ArrayModel::example2_raw().unwrap(), &params);
    let control = raw.iter().any(|a| a.id == "A" && !a.pass);
    pass &= control && f_positive;
    lines.push(format!("negative control fails A: {control}; F margins positive: {f_positive}"));
    Outcome {
        id: 8,
        pass,
        detail: lines.join("; "),
        expected_cause: only_d_at_1_5 && control && f_positive,
    }
}

fn criterion_9() -> Outcome {
    let mut pass = true;
    let mut corrected = true;
    let mut lines = Vec::new();
    for alpha in [0.5, 1.5] {
        let p = asymptotic_probe(alpha).unwrap();
        pass &= p.converges_to_claimed;
        let d = (p.scaled[2] - p.closed_form_limit).abs();
        corrected &= d < 1e-2 * p.closed_form_limit;
        lines.push(format!(
            "alpha {alpha}: I1 k^(1-a) = {:.5}, {:.5}, {:.5} vs c_a1 = {:.5} (alpha c_a1 = {:.5}); I exponent {:.4} vs stated {:.4}",
            p.scaled[0], p.scaled[1], p.scaled[2], p.claimed_limit, p.closed_form_limit, p.i_exponent, p.claimed_i_exponent
        ));
    }
    Outcome {
        id: 9,
        pass,
        detail: lines.join("; "),
        expected_cause: !pass && corrected,
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let outcomes = vec![
        rate_criterion(1, "example1:alpha=1", (-1.30, -0.75), 0.97),
        rate_criterion(2, "example2", (-1.30, -0.70), 0.95),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ];
    let mut ok = true;
    for o in &outcomes {
        let known = KNOWN_FAILURES.contains(&o.id);
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let suffix = match (o.pass, known) {
            (false, true) if o.expected_cause => " [known, documented cause]",
            (false, true) => " [known criterion, UNEXPECTED cause]",
            (true, true) => " [listed as unattainable but passed]",
            _ => "",
        };
        println!("criterion {}: {tag}{suffix} - {}", o.id, o.detail);
        ok &= if known { o.pass || o.expected_cause } else { o.pass };
    }
    println!("acceptance finished in {:.1?}", start.elapsed());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
