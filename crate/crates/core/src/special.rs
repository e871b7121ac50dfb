//! Special functions and cancellation-free elementary helpers.

use std::f64::consts::PI;

// Lanczos approximation, g = 607/128, n = 15 (Godfrey's coefficients).
const LANCZOS_G: f64 = 607.0 / 128.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 15] = [
    0.999_999_999_999_997_091_82,
    57.156_235_665_862_923_517,
    -59.597_960_355_475_491_248,
    14.136_097_974_741_747_174,
    -0.491_913_816_097_620_199_78,
    0.339_946_499_848_118_886_99e-4,
    0.465_236_289_270_485_756_65e-4,
    -0.983_744_753_048_795_646_77e-4,
    0.158_088_703_224_912_494_18e-3,
    -0.210_264_441_724_104_883_72e-3,
    0.217_439_618_115_212_643_20e-3,
    -0.164_318_106_536_763_890_22e-3,
    0.844_182_239_838_527_432_87e-4,
    -0.261_908_384_015_814_086_70e-4,
    0.368_991_826_595_316_227_85e-5,
];

/// Gamma function on the real line.
///
/// Arguments below 1/2 go through the reflection formula
/// Γ(x)Γ(1−x) = π / sin(πx). Poles (non-positive integers) return NaN.
pub fn gamma(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x <= 0.0 && x == x.floor() {
        return f64::NAN;
    }
    if x < 0.5 {
        return PI / ((PI * x).sin() * gamma(1.0 - x));
    }
    let x = x - 1.0;
    let mut sum = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        sum += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * sum * t.powf(x + 0.5) * (-t).exp()
}

/// Γ(−1−α) for α ∈ (0, 2) \ {1}, composed from reflection:
/// Γ(−1−α) = π / (sin(πα) · Γ(2+α)).
pub fn gamma_neg_one_minus(alpha: f64) -> f64 {
    PI / ((PI * alpha).sin() * gamma(2.0 + alpha))
}

/// Riemann zeta for s > 1 by direct summation plus an Euler–Maclaurin tail.
pub fn zeta(s: f64) -> f64 {
    assert!(s > 1.0, "zeta requires s > 1");
    const N: usize = 64;
    let mut sum = 0.0;
    for k in (1..N).rev() {
        sum += (k as f64).powf(-s);
    }
    let n = N as f64;
    // ∫_N^∞ x^{-s} dx + f(N)/2 − f'(N)/12 + f'''(N)/720
    sum + n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s) + s * n.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * n.powf(-s - 3.0) / 720.0
}

/// 1 − cos x without cancellation.
#[inline]
pub fn one_minus_cos(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        x2 * (0.5 - x2 / 24.0)
    } else {
        let s = (0.5 * x).sin();
        2.0 * s * s
    }
}

/// z·sin(u) − sin(zu), with a Taylor branch where both terms nearly cancel.
#[inline]
pub fn z_sin_u_minus_sin_zu(z: f64, u: f64) -> f64 {
    if u.abs() * z.abs().max(1.0) < 1e-3 {
        let u3 = u * u * u;
        let z3 = z * z * z;
        let z5 = z3 * z * z;
        (z3 - z) * u3 / 6.0 - (z5 - z) * u3 * u * u / 120.0
    } else {
        z * u.sin() - (z * u).sin()
    }
}

/// (1+w)^a − 1 accurate for small |w|.
#[inline]
pub fn pow1p_m1(w: f64, a: f64) -> f64 {
    (a * w.ln_1p()).exp_m1()
}

/// 1/(v sinh v) for v > 0.
#[inline]
pub fn inv_v_sinh_v(v: f64) -> f64 {
    if v > 700.0 {
        0.0
    } else {
        1.0 / (v * v.sinh())
    }
}
