#!/usr/bin/env python3
"""Generate a table of imaginary parts of the first nontrivial zeros of the
Riemann zeta function.

Method
------
* Zeros #1..#(seam) are computed with mpmath.zetazero (slow but certified).
* Above the seam, Z(t) is evaluated with the Riemann-Siegel formula
  (main sum plus the classical C0..C3 correction terms).  The correction
  terms were validated against mpmath.siegelz; the model error is below
  ~4e-9 for t > 1000.
* Zeros are located and *counted* with Gram blocks: between consecutive
  "good" Gram points g_m, g_n the block contains exactly n-m zeros
  (Rosser's rule, which has no exceptions below t ~ 6.8e6, far above the
  horizon used here).  Each block is subdivided until the expected number
  of sign changes is found, so the table provably contains every zero up
  to the horizon.
* Sign classifications too close to the model error margin are re-decided
  with mpmath.siegelz.
* The final table is spot-checked against mpmath.zetazero at random
  indices.

Output: one gamma per line, ascending, 9 decimal places.

Usage: python3 tools/gen_zeros.py [count] [outfile]
"""

import sys
import time

import numpy as np
import sympy
from mpmath import mp, siegelz, zetazero

mp.dps = 20

TWOPI = 2 * np.pi
AMBIG = 3e-6          # |Z| below this -> sign decided by mpmath
SING_RADIUS = 0.02    # fall back to Taylor series near p = 1/4, 3/4


def log(msg):
    print(f"[{time.strftime('%H:%M:%S')}] {msg}", flush=True)


# ----------------------------------------------------------------------
# Riemann-Siegel theta and Gram points
# ----------------------------------------------------------------------

def theta(t):
    t = np.asarray(t, dtype=float)
    return (t / 2 * np.log(t / TWOPI) - t / 2 - np.pi / 8
            + 1 / (48 * t) + 7 / (5760 * t ** 3) + 31 / (80640 * t ** 5))


def theta_deriv(t):
    return 0.5 * np.log(t / TWOPI) - 1 / (48 * t ** 2) - 21 / (5760 * t ** 4)


def gram_points(n):
    """Gram points g_n (theta(g_n) = n*pi) for an array of indices."""
    from scipy.special import lambertw
    n = np.asarray(n, dtype=float)
    target = n * np.pi
    u = (n + 0.125) / np.e
    g = TWOPI * np.exp(1 + np.real(lambertw(u)))
    for _ in range(4):
        g = g - (theta(g) - target) / theta_deriv(g)
    return g


# ----------------------------------------------------------------------
# Correction terms C0..C3 built from Psi(p) = cos(2pi(p^2-p-1/16))/cos(2pi p)
# ----------------------------------------------------------------------

def build_psi_callables():
    p = sympy.symbols('p')
    psi = sympy.cos(2 * sympy.pi * (p ** 2 - p - sympy.Rational(1, 16))) / \
        sympy.cos(2 * sympy.pi * p)
    need = [0, 1, 2, 3, 5, 6, 9]
    derivs = {0: psi}
    cur = psi
    for k in range(1, 10):
        cur = sympy.diff(cur, p)
        if k in need:
            derivs[k] = cur
    funcs = {k: sympy.lambdify(p, d, 'numpy') for k, d in derivs.items()}

    # Taylor fallbacks around the removable singularities p = 1/4, 3/4.
    taylors = {}
    for p0 in (sympy.Rational(1, 4), sympy.Rational(3, 4)):
        x = sympy.symbols('x')
        ser = psi.subs(p, p0 + x).series(x, 0, 26).removeO()
        poly = sympy.Poly(sympy.expand(ser), x)
        for k in need:
            dk = poly
            for _ in range(k):
                dk = dk.diff(x)
            coeffs = [float(c) for c in reversed(dk.all_coeffs())]
            taylors[(float(p0), k)] = np.array(coeffs)
    return funcs, taylors


PSI_FUNCS, PSI_TAYLORS = build_psi_callables()


def psi_deriv(k, p):
    """k-th derivative of Psi at points p in [0,1), singularities handled."""
    p = np.asarray(p, dtype=float)
    out = np.empty_like(p)
    near25 = np.abs(p - 0.25) < SING_RADIUS
    near75 = np.abs(p - 0.75) < SING_RADIUS
    regular = ~(near25 | near75)
    if regular.any():
        out[regular] = PSI_FUNCS[k](p[regular])
    for p0, mask in ((0.25, near25), (0.75, near75)):
        if mask.any():
            c = PSI_TAYLORS[(p0, k)]
            out[mask] = np.polynomial.polynomial.polyval(p[mask] - p0, c)
    return out


PI2 = np.pi ** 2
PI4 = np.pi ** 4
PI6 = np.pi ** 6


def z_model(t):
    """Vectorized Riemann-Siegel Z(t) with C0..C3 corrections."""
    t = np.asarray(t, dtype=float)
    tau = np.sqrt(t / TWOPI)
    N = np.floor(tau).astype(np.int64)
    p = tau - N
    th = theta(t)
    main = np.zeros_like(t)
    # bucket by main-sum length
    order = np.argsort(N, kind='stable')
    Ns = N[order]
    bounds = np.searchsorted(Ns, np.arange(Ns[0], Ns[-1] + 2))
    for i, nval in enumerate(range(Ns[0], Ns[-1] + 1)):
        lo, hi = bounds[i], bounds[i + 1]
        if lo == hi:
            continue
        idx = order[lo:hi]
        n = np.arange(1, nval + 1, dtype=float)
        ph = th[idx, None] - t[idx, None] * np.log(n)[None, :]
        main[idx] = 2 * np.sum(np.cos(ph) / np.sqrt(n)[None, :], axis=1)
    c0 = psi_deriv(0, p)
    c1 = -psi_deriv(3, p) / (96 * PI2)
    c2 = psi_deriv(2, p) / (64 * PI2) + psi_deriv(6, p) / (18432 * PI4)
    c3 = (-psi_deriv(1, p) / (64 * PI2) - psi_deriv(5, p) / (3840 * PI4)
          - psi_deriv(9, p) / (5308416 * PI6))
    x = t / TWOPI
    rem = c0 + c1 * x ** -0.5 + c2 / x + c3 * x ** -1.5
    sgn = np.where(N % 2 == 1, 1.0, -1.0)
    return main + sgn * x ** -0.25 * rem


def z_signs(t):
    """Signs of Z(t); values inside the ambiguity margin re-decided by mpmath."""
    v = z_model(t)
    s = np.sign(v)
    unsure = np.abs(v) < AMBIG
    n_mp = int(unsure.sum())
    if n_mp:
        for i in np.flatnonzero(unsure):
            s[i] = 1.0 if siegelz(float(t[i])) > 0 else -1.0
    return s, n_mp


# ----------------------------------------------------------------------
# Main driver
# ----------------------------------------------------------------------

def mp_zero(n):
    return float(zetazero(n).imag)


def main():
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 100_000
    outfile = sys.argv[2] if len(sys.argv) > 2 else 'data/zeros-100k.txt'

    # -- validation of the Z model against mpmath ----------------------
    rng = np.random.default_rng(20160901)
    ts = rng.uniform(1000.0, 76000.0, size=40)
    zm = z_model(ts)
    worst = max(abs(float(siegelz(float(t))) - float(z)) for t, z in zip(ts, zm))
    log(f"Z model vs mpmath on 40 samples: worst abs error {worst:.3e}")
    assert worst < 1e-7, "Riemann-Siegel model is off"

    # -- low zeros from mpmath ----------------------------------------
    n_low = 1050
    log(f"computing zeros 1..{n_low} with mpmath ...")
    from multiprocessing import Pool
    with Pool(2) as pool:
        low = pool.map(mp_zero, range(1, n_low + 1), chunksize=50)
    low = np.array(low)
    assert np.all(np.diff(low) > 0)

    # -- seam: first certified good Gram point above index 1004 -------
    m_star = None
    for m in range(1005, 1045):
        g = float(gram_points(np.array([m]))[0])
        zg = float(siegelz(g))
        if abs(zg) > 1e-8 and ((m % 2 == 0) == (zg > 0)):
            c = int(np.sum(low < g))
            if c == m + 1:
                m_star = m
                g_star = g
                break
    assert m_star is not None, "no good Gram anchor found"
    log(f"anchor: Gram index {m_star}, g = {g_star:.6f}, zeros below = {m_star + 1}")

    zeros = list(low[:m_star + 1])

    # -- Gram walk ------------------------------------------------------
    m_end = count + 60
    idx = np.arange(m_star, m_end + 1)
    g = gram_points(idx)
    g[0] = g_star
    log(f"classifying {len(g)} Gram points ...")
    s, n_mp = z_signs(g)
    log(f"  ({n_mp} signs decided by mpmath)")
    good = ((idx % 2 == 0) & (s > 0)) | ((idx % 2 == 1) & (s < 0))
    good_pos = np.flatnonzero(good)
    assert good_pos[0] == 0
    frac_good = good.mean()
    log(f"good Gram points: {frac_good * 100:.2f}%")

    # blocks between consecutive good Gram points
    blocks = []  # (t_lo, t_hi, expected_zero_count)
    for a, b in zip(good_pos[:-1], good_pos[1:]):
        blocks.append((g[a], g[b], int(b - a)))

    log(f"resolving {len(blocks)} Gram blocks ...")
    brackets = []  # (lo, hi) with exactly one sign change each, ascending
    unresolved = blocks
    level = 2
    total_mp = 0
    while unresolved and level <= 1 << 15:
        level *= 2
        still = []
        # batch all blocks at this subdivision level
        for (tlo, thi, expect) in unresolved:
            xs = np.linspace(tlo, thi, level + 1)
            ss, nmp = z_signs(xs)
            total_mp += nmp
            flips = np.flatnonzero(ss[:-1] * ss[1:] < 0)
            if len(flips) == expect:
                for f in flips:
                    brackets.append((xs[f], xs[f + 1]))
            elif len(flips) < expect:
                still.append((tlo, thi, expect))
            else:
                raise RuntimeError(
                    f"block ({tlo:.6f},{thi:.6f}) expected {expect}, "
                    f"found {len(flips)} sign changes")
        unresolved = still
        if still:
            log(f"  level {level}: {len(still)} blocks still unresolved")
    assert not unresolved, "unresolved Gram blocks remain"
    log(f"  ({total_mp} scan signs decided by mpmath)")
    brackets.sort()
    brackets = np.array(brackets)
    log(f"found {len(brackets)} brackets above the anchor")

    # -- lockstep bisection ----------------------------------------------
    lo = brackets[:, 0].copy()
    hi = brackets[:, 1].copy()
    slo = np.sign(z_model(lo))
    log("bisecting ...")
    for _ in range(46):
        mid = 0.5 * (lo + hi)
        sm = np.sign(z_model(mid))
        left = sm == slo
        lo = np.where(left, mid, lo)
        hi = np.where(left, hi, mid)
    found = 0.5 * (lo + hi)

    zeros = np.concatenate([np.array(zeros), found])
    assert np.all(np.diff(zeros) > 0), "zeros not strictly ascending"
    assert len(zeros) >= count
    zeros = zeros[:count]
    log(f"total zeros: {len(zeros)}, horizon {zeros[-1]:.6f}")

    # -- spot checks ------------------------------------------------------
    picks = sorted(set(
        [1, 2, 3, 100, 1000, 2000, count] +
        list(rng.integers(1051, count, size=25))))
    worst = 0.0
    for n in picks:
        ref = mp_zero(n)
        d = abs(ref - zeros[n - 1])
        worst = max(worst, d)
    log(f"spot check at {len(picks)} indices: worst |delta| = {worst:.3e}")
    assert worst < 1e-6, "spot check failed"

    with open(outfile, 'w') as f:
        for z in zeros:
            f.write(f"{z:.9f}\n")
    log(f"wrote {outfile}")


if __name__ == '__main__':
    main()
