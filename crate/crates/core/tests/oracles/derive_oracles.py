"""Independent high-precision reference values for the test suite.

Run with `python3 derive_oracles.py`; every value printed here is frozen
into the Rust tests. Nothing in this script shares code with the crate.
"""
from mpmath import mp, mpf, quad, quadosc, sin, cos, sinh, cosh, log, pi, inf, gamma, nstr
import numpy as np
from scipy import integrate

mp.dps = 30


def h(v):
    return 1 / (v * sinh(v))


def big_z(n):
    # normalising constant of the Example 2 row density
    return quad(h, [mpf(1) / n, 1, 10, 60, inf]) / n


def osc_half_line(f, lo, omega):
    return quad(f, [lo, lo + 1]) + quadosc(f, [lo + 1, inf], omega=omega)


print("== canonical")
for z in ["0.5", "1", "2", "5"]:
    z = mpf(z)
    val = quad(lambda u: (1 - cos(z * u)) * h(u), [0, 1, 5, 20, 60, inf])
    print("psi_ex2", z, nstr(val, 20), nstr(log(cosh(pi * z / 2)), 20))
print("M+ ex2 (2)", nstr(quad(lambda u: 1 / (2 * u * sinh(u)), [2, 10, 60, inf]), 20))
for n in [4, 16, 64]:
    zn = big_z(n)
    m_lim = quad(lambda u: u / sinh(u), [0, 1])
    m_n = quad(lambda u: u / sinh(u), [mpf(1) / n, 1]) / zn
    tail = quad(lambda u: 1 / (2 * u * sinh(u)), [1, 10, 60, inf])
    print("ex2 proper n", n, "Z", nstr(zn, 20), "dM[-1,1]", nstr(abs(m_n - m_lim), 20),
          "dM+(1)", nstr(abs(tail / zn - tail), 20))
for n in [4, 16, 64]:
    c = 1 / pi
    dtail = c * abs(quadosc(lambda u: cos(n * u) / u**2, [1, inf], omega=n))
    print("ex1 proper n", n, "dM[-1,1]", nstr(2 * c * abs(sin(n)) / n, 20), "dM+(1)", nstr(dtail, 20))

print("== array")
z1 = big_z(1)
raw = 2 * osc_half_line(lambda u: cos(u) / (2 * u * sinh(u)), 1, 1)
print("theta ex2 n=1 z=1 normalised", nstr(raw / z1, 20), "raw", nstr(raw, 20))
for n in [1, 4, 16]:
    print("ex2 raw mass n", n, nstr(2 * quad(lambda u: 1 / (2 * n * u * sinh(u / n)), [1, 10, 100, 1000, inf]), 20))
s = mpf("0.5")
for n in [4, 8]:
    zn = big_z(n)
    g = lambda u: 1 / (2 * n * u * sinh(u / n)) / zn
    # E sin((eta + s)/n), eta ~ g on |u| >= 1
    pos = osc_half_line(lambda u: sin((u + s) / n) * g(u), 1, mpf(1) / n)
    neg = osc_half_line(lambda u: sin((-u + s) / n) * g(u), 1, mpf(1) / n)
    beta = pos + neg
    print("shifted ex2 n", n, "beta_n", nstr(beta, 20), "chi", nstr(abs(n * beta - s), 20))
K = lambda a: pi / (2 * gamma(1 + a) * sin(pi * a / 2))
for a in ["0.5", "1", "1.5"]:
    a = mpf(a)
    c = 1 / (2 * K(a))
    # split off the non-oscillating part of the tail analytically
    direct = 2 * (quad(lambda u: (1 - cos(u)) / u**(1 + a), [0, mpf(1) / 4, 1]) + 1 / a
                  - quadosc(lambda u: cos(u) / u**(1 + a), [1, inf], omega=1))
    print("c_alpha", a, nstr(c, 20), "1/direct", nstr(1 / direct, 20))

print("== quad")
print("I(0.5,10) envelope u^-1.5(1-cos u) cos 10u:",
      nstr(quad(lambda v: (1 - cos(v)) * cos(10 * v) / v**1.5, [0, mpf(1) / 4, 1]) +
           quadosc(lambda v: (1 - cos(v)) * cos(10 * v) / v**1.5, [1, inf], omega=10), 20))

print("== rates")
def osc(f, k):
    return quad(f, [0, mpf(1) / 4, 1]) + quadosc(f, [1, inf], omega=max(k, 1))
for a, k in [("0.5", 2), ("0.5", 10), ("1.5", 2), ("1.5", 10), ("0.5", 3)]:
    a = mpf(a)
    print("alpha", a, "k", k,
          "I1", nstr(osc(lambda v: sin(k * v) * sin(v) / v**(1 + a), k), 20),
          "I2", nstr(osc(lambda v: sin(k * v) * sin(v / 2)**2 / v**(2 + a), k), 20),
          "I", nstr(osc(lambda v: (1 - cos(v)) * cos(k * v) / v**(1 + a), k), 20))

# gamma' for Example 2 at n = 4 on z in [0, 50], double resolution (8193 points)
n = 4
zn = float(big_z(n))
xg, wg = np.polynomial.legendre.leggauss(80)
def corr(z):
    v = (xg + 1) / 2 / n
    w = wg / 2 / n
    return np.sum(w * (1 - np.cos(z * v)) / (v * np.sinh(v)))
zs = np.linspace(0, 50, 8193)
psi = np.log(np.cosh(np.pi * zs / 2))
re_phi_n = np.array([(p - corr(z)) / zn for p, z in zip(psi, zs)])
gp = np.max(np.abs(psi - re_phi_n) / (1 + zs**2))
print("gamma_prime ex2 n=4 (8193 pts):", repr(gp))

# shifted Example 2 (s = 1/2): gamma'' at n = 4 over [0, 50], double resolution
s = 0.5
UPPER = 60.0 * n  # row density is below e^-60 beyond this point
def theta0_cos(w):
    g = lambda u: 1 / (2 * n * u * np.sinh(u / n)) / zn
    if w == 0:
        return 2 * integrate.quad(g, 1, UPPER, epsabs=1e-14, limit=400)[0]
    return 2 * integrate.quad(g, 1, UPPER, weight="cos", wvar=w, epsabs=1e-14, limit=400)[0]
beta4 = np.sin(s / n) * theta0_cos(1 / n)
zs2 = np.linspace(0, 50, 2049)
vals = [n * abs(z * beta4 - np.sin(s * z / n) * theta0_cos(z / n)) / (1 + z * z) for z in zs2]
print("beta_4 (scipy)", repr(beta4), "gamma_dprime shifted n=4 (2049 pts):", repr(max(vals)))
