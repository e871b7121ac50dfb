//! `lltlab` command-line runner.
//!
//! Exit codes: 0 success, 1 configuration error, 2 numerical failure,
//! 3 audit failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lltlab::experiment::{
    audit_table, run_audit, run_converge, run_density, run_rates, write_audit, write_converge, write_density,
    write_rates, ExperimentConfig, FitEntry,
};
use lltlab::Error;

const EXIT_CONFIG: u8 = 1;
const EXIT_NUMERIC: u8 = 2;
const EXIT_AUDIT: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "lltlab", version, about = "Convergence-rate experiments for local limit theorems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invert Φₙ and Φ, record sup|pₙ − p| with the rate terms and fit the order.
    Converge(Overrides),
    /// Check the standing conditions for the model.
    Audit(Overrides),
    /// Write pₙ and p on the x grid.
    Density(Overrides),
    /// Rate terms only, without inversion.
    Rates(Overrides),
}

#[derive(Args, Debug)]
struct Overrides {
    /// JSON experiment config; missing fields take defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// example1:alpha=<f>, example2 or gauss.
    #[arg(long)]
    model: Option<String>,
    /// Comma-separated n values (a single n for `density`).
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<u32>>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    tol: Option<f64>,
    /// Worker threads.
    #[arg(long, env = "LLTLAB_JOBS")]
    jobs: Option<usize>,
}

impl Overrides {
    fn config(&self) -> Result<ExperimentConfig, Error> {
        let mut c = match &self.config {
            Some(p) => ExperimentConfig::load(p)?,
            None => ExperimentConfig::default(),
        };
        if let Some(m) = &self.model {
            c.model = m.clone();
        }
        if let Some(d) = self.delta {
            c.delta = d;
        }
        if let Some(e) = self.epsilon {
            c.epsilon = e;
        }
        if let Some(o) = &self.out {
            c.outputs = o.clone();
        }
        if let Some(t) = self.tol {
            c.tol = t;
        }
        Ok(c)
    }
}

fn code_for(e: &Error) -> u8 {
    if e.is_config() {
        EXIT_CONFIG
    } else {
        EXIT_NUMERIC
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("lltlab: {e}");
    ExitCode::from(code_for(e))
}

fn print_fits(fits: &[FitEntry]) {
    for f in fits {
        match (&f.fit, &f.skipped) {
            (Some(r), _) => println!(
                "fit {}: slope {:.4}, intercept {:.4}, r2 {:.5} ({} points)",
                f.quantity, r.slope, r.intercept, r.r_squared, r.n_used
            ),
            (None, Some(why)) => println!("fit {}: skipped, {why}", f.quantity),
            (None, None) => {}
        }
    }
}

fn run(cmd: &Command) -> Result<u8, Error> {
    let (o, kind) = match cmd {
        Command::Converge(o) => (o, "converge"),
        Command::Audit(o) => (o, "audit"),
        Command::Density(o) => (o, "density"),
        Command::Rates(o) => (o, "rates"),
    };
    if let Some(j) = o.jobs {
        lltlab::set_jobs(j)?;
    }
    let mut cfg = o.config()?;
    let single_n = match (&o.n, kind) {
        (Some(ns), "density") => match ns.as_slice() {
            [n] => Some(*n),
            _ => return Err(Error::config("n", "density takes a single n")),
        },
        (Some(ns), _) => {
            cfg.n_values = ns.clone();
            None
        }
        (None, _) => None,
    };
    cfg.validate()?;

    match kind {
        "converge" => {
            let r = run_converge(&cfg)?;
            println!("{} N(delta) = {:.6}", r.model, r.n_delta);
            println!("{:>6} {:>14} {:>14} {:>10}", "n", "sup_error", "rho", "ratio");
            for rec in &r.records {
                let s = rec.sup_error.unwrap_or(f64::NAN);
                println!("{:>6} {:>14.6e} {:>14.6e} {:>10.4}", rec.n, s, rec.rho, s / rec.rho);
            }
            for e in &r.errors {
                eprintln!("n = {}: {}", e.n, e.message);
            }
            print_fits(&r.fits);
            let m = write_converge(&cfg, &r)?;
            println!("manifest: {}", m.display());
            Ok(if r.errors.is_empty() { 0 } else { EXIT_NUMERIC })
        }
        "rates" => {
            let r = run_rates(&cfg)?;
            println!("{} N(delta) = {:.6}", r.model, r.n_delta.value);
            println!("{:>6} {:>14} {:>14} {:>14} {:>14}", "n", "gamma_prime", "chi", "1/a_n", "rho");
            for rec in &r.records {
                println!(
                    "{:>6} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e}",
                    rec.n, rec.gamma_prime, rec.chi, rec.inv_a_n, rec.rho
                );
            }
            for e in &r.errors {
                eprintln!("n = {}: {}", e.n, e.message);
            }
            print_fits(&r.fits);
            let m = write_rates(&cfg, &r)?;
            println!("manifest: {}", m.display());
            Ok(if r.errors.is_empty() { 0 } else { EXIT_NUMERIC })
        }
        "audit" => {
            let r = run_audit(&cfg)?;
            print!("{}", audit_table(&r));
            let m = write_audit(&cfg, &r)?;
            println!("manifest: {}", m.display());
            Ok(if r.pass { 0 } else { EXIT_AUDIT })
        }
        _ => {
            let n = single_n.unwrap_or(*cfg.n_values.last().unwrap_or(&1));
            let r = run_density(&cfg, n)?;
            println!(
                "{} n = {}: sup|p_n - p| = {:.6e} at x = {:.4} (certificate {:.3e})",
                r.model, n, r.distance.value, r.distance.argmax, r.distance.certificate
            );
            println!("p_n mass on grid {:.8}, p mass on grid {:.8}", r.sn.mass(), r.limit.mass());
            let m = write_density(&cfg, &r)?;
            println!("manifest: {}", m.display());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => fail(&e),
    }
}
