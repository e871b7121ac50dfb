//! Half-period panel summation for ∫ f(u)·trig(ωu) du.

use std::f64::consts::PI;

use super::{gk, tanh_sinh, QuadOptions, QuadResult, Trig};

const MAX_AVERAGED: usize = 24;
const MIN_PANELS: usize = 6;

fn first_zero_after(trig: Trig, omega: f64, a: f64) -> f64 {
    let period = PI / omega;
    let shift = match trig {
        Trig::Cos => 0.5,
        Trig::Sin => 0.0,
    };
    let mut k = (a / period - shift).ceil();
    let mut z = (k + shift) * period;
    // Avoid a degenerate sliver at the left end.
    while z <= a + 1e-9 * period {
        k += 1.0;
        z = (k + shift) * period;
    }
    z
}

/// Repeated averaging of the last partial sums (Euler transform).
fn euler_average(partials: &[f64]) -> f64 {
    let start = partials.len().saturating_sub(MAX_AVERAGED);
    let mut work: Vec<f64> = partials[start..].to_vec();
    while work.len() > 1 {
        for i in 0..work.len() - 1 {
            work[i] = 0.5 * (work[i] + work[i + 1]);
        }
        work.pop();
    }
    work[0]
}

pub(crate) fn integrate<F: Fn(f64) -> f64>(
    f: &F,
    trig: Trig,
    omega: f64,
    a: f64,
    b: f64,
    opts: &QuadOptions,
) -> QuadResult {
    debug_assert!(omega > 0.0);
    let g = |u: f64| f(u) * trig.eval(omega * u);
    let panel_opts = QuadOptions {
        abs_tol: opts.abs_tol / 100.0,
        rel_tol: opts.rel_tol / 10.0,
        max_evals: (opts.max_evals / 20).max(2000),
    };
    let half_period = PI / omega;

    // Leading piece up to the first zero: may contain an endpoint singularity.
    let z0 = first_zero_after(trig, omega, a).min(b);
    let mut head = tanh_sinh::integrate(&g, a, z0, &panel_opts);
    if !head.converged {
        let alt = gk::adaptive(&g, a, z0, &panel_opts);
        if alt.error_estimate < head.error_estimate {
            head = alt;
        }
    }
    let mut evals = head.evaluations;
    let mut error = head.error_estimate;
    let mut converged = head.converged;
    if z0 >= b {
        return QuadResult {
            value: head.value,
            error_estimate: error,
            evaluations: evals,
            converged,
        };
    }

    let mut partials: Vec<f64> = Vec::new();
    let mut sum = head.value;
    let mut lo = z0;
    let mut k = 0usize;
    let mut prev_accel = f64::NAN;
    let mut quiet_steps = 0;
    let mut small_terms = 0;

    loop {
        let hi = (lo + half_period).min(b);
        let p = gk::adaptive(&g, lo, hi, &panel_opts);
        evals += p.evaluations;
        error += p.error_estimate;
        converged &= p.converged;
        sum += p.value;
        partials.push(sum);
        k += 1;
        lo = hi;

        if lo >= b {
            return QuadResult {
                value: sum,
                error_estimate: error,
                evaluations: evals,
                converged,
            };
        }

        let target = opts.target(sum, sum.abs());
        if p.value.abs() < target / 10.0 {
            small_terms += 1;
        } else {
            small_terms = 0;
        }
        if small_terms >= 3 && k >= MIN_PANELS {
            return QuadResult {
                value: sum,
                error_estimate: error + p.value.abs(),
                evaluations: evals,
                converged,
            };
        }

        if k >= MIN_PANELS {
            let accel = euler_average(&partials);
            let delta = (accel - prev_accel).abs();
            prev_accel = accel;
            if delta < opts.target(accel, accel.abs()) / 10.0 {
                quiet_steps += 1;
            } else {
                quiet_steps = 0;
            }
            if quiet_steps >= 2 {
                return QuadResult {
                    value: accel,
                    error_estimate: error + delta,
                    evaluations: evals,
                    converged,
                };
            }
        }

        if evals > opts.max_evals {
            let accel = euler_average(&partials);
            return QuadResult {
                value: accel,
                error_estimate: error + (accel - sum).abs(),
                evaluations: evals,
                converged: false,
            };
        }
    }
}
