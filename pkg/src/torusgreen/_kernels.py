"""Compiled scalar/array kernels for zeta, wp and the anti-holomorphic map.

All kernels work with a lattice (w1, w1*tau) and take the theta_1 series as
two arrays ``coef[n] = 2 (-1)^n q^{(n+1/2)^2}`` and ``freq[n] = (2n+1) pi``.
Arguments are reduced to the centered cell before summing, so the series
terms decrease monotonically. A NaN result means the series did not settle
within the supplied coefficients, or the argument hit a pole.
"""
import math
import os

import numba
import numpy as np
from numba import njit, prange

EPS_TERM = 1e-16

if "NUMBA_THREADING_LAYER" not in os.environ:
    # skip the TBB probe, which warns on older TBB installs
    numba.config.THREADING_LAYER = "omp"


def set_threads_from_env():
    n = os.environ.get("TORUSGREEN_THREADS")
    if n:
        numba.set_num_threads(max(1, min(int(n), numba.config.NUMBA_NUM_THREADS)))


@njit(cache=True)
def reduce_centered(v, tau):
    """v - m - n*tau with the lattice coordinates of the result in [-1/2, 1/2]."""
    n = round(v.imag / tau.imag)
    v = v - n * tau
    m = round(v.real)
    return v - m, m, n


@njit(cache=True)
def theta1_derivs(v, coef, freq):
    """theta_1 and its first three v-derivatives at a reduced argument."""
    t0 = 0j
    t1 = 0j
    t2 = 0j
    t3 = 0j
    ay = abs(v.imag)
    ok = False
    for n in range(coef.shape[0]):
        k = freq[n]
        c = coef[n]
        s = np.sin(k * v)
        co = np.cos(k * v)
        t0 += c * s
        t1 += c * k * co
        t2 -= c * k * k * s
        t3 -= c * k * k * k * co
        env = abs(c) * math.exp(k * ay) * k * k * k
        if n > 0 and env < EPS_TERM * (abs(t3) + 1.0):
            ok = True
            break
    if not ok:
        nan = complex(np.nan, np.nan)
        return nan, nan, nan, nan
    return t0, t1, t2, t3


@njit(cache=True)
def zeta_wp_norm(v, tau, eta1, eta2, coef, freq):
    """(zeta, wp, wp') of the normalized lattice (1, tau) at v."""
    vr, m, n = reduce_centered(v, tau)
    t0, t1, t2, t3 = theta1_derivs(vr, coef, freq)
    if t0 == 0:
        inf = complex(np.inf, np.inf)
        return inf, inf, inf
    L = t1 / t0
    L1 = t2 / t0 - L * L
    L2 = t3 / t0 - 3.0 * (t2 / t0) * L + 2.0 * L * L * L
    zeta = eta1 * vr + L + m * eta1 + n * eta2
    wp = -eta1 - L1
    dwp = -L2
    return zeta, wp, dwp


@njit(cache=True)
def zeta_wp(z, w1, tau, eta1, eta2, coef, freq):
    """(zeta, wp, wp') for the lattice (w1, w1*tau); eta's are normalized (w1 = 1)."""
    zn, wpn, dwpn = zeta_wp_norm(z / w1, tau, eta1, eta2, coef, freq)
    return zn / w1, wpn / (w1 * w1), dwpn / (w1 * w1 * w1)


@njit(cache=True)
def zeta_wp_array(z, w1, tau, eta1, eta2, coef, freq):
    zeta = np.empty(z.shape, dtype=np.complex128)
    wp = np.empty(z.shape, dtype=np.complex128)
    dwp = np.empty(z.shape, dtype=np.complex128)
    zf = z.ravel()
    zetaf = zeta.ravel()
    wpf = wp.ravel()
    dwpf = dwp.ravel()
    for i in range(zf.shape[0]):
        zetaf[i], wpf[i], dwpf[i] = zeta_wp(zf[i], w1, tau, eta1, eta2, coef, freq)
    return zeta, wp, dwp


@njit(cache=True)
def field_and_jac(z, w1, tau, eta1, eta2, coef, freq, a, b):
    """F(z) = zeta(z) + a z + b conj(z) and its holomorphic derivative a - wp(z)."""
    zeta, wp, _ = zeta_wp(z, w1, tau, eta1, eta2, coef, freq)
    return zeta + a * z + b * np.conj(z), a - wp


@njit(cache=True)
def newton_polish(z, w1, tau, eta1, eta2, coef, freq, a, b, max_iter, step_tol, eps_det):
    """Mixed Wirtinger Newton iteration for F(z) = 0.

    Returns (z, |F(z)|, iterations, converged, used_fallback, last_step), where
    last_step is the length of the last full Newton step: an estimate of the
    distance to the zero that stays honest when the residual stalls at
    roundoff near a multiple zero.
    """
    F, dF = field_and_jac(z, w1, tau, eta1, eta2, coef, freq, a, b)
    r = abs(F)
    fallback = False
    bb = b.real
    step = 0.0
    for it in range(max_iter):
        if r == 0.0:
            return z, r, it, True, fallback, 0.0
        det = dF.real * dF.real + dF.imag * dF.imag - bb * bb
        if abs(det) < eps_det:
            # gradient of |F|^2 w.r.t. conj(z) is conj(dF) F + b conj(F)
            grad = np.conj(dF) * F + bb * np.conj(F)
            g2 = abs(grad)
            if g2 == 0.0:
                return z, r, it, False, True, step
            delta = -grad * (r * r) / (g2 * g2)
            fallback = True
        else:
            delta = (-F * np.conj(dF) + bb * np.conj(F)) / det
        step = abs(delta)
        lam = 1.0
        accepted = False
        for _ in range(30):
            zn = z + lam * delta
            Fn, dFn = field_and_jac(zn, w1, tau, eta1, eta2, coef, freq, a, b)
            rn = abs(Fn)
            if rn <= r:
                accepted = True
                break
            lam *= 0.5
        if not accepted:
            # residual stagnates at roundoff level; caller judges by residual
            return z, r, it, True, fallback, step
        z, F, dF, r = zn, Fn, dFn, rn
        if abs(lam * delta) < step_tol:
            return z, r, it + 1, True, fallback, step
    return z, r, max_iter, False, fallback, step


@njit(cache=True, parallel=True)
def newton_batch(z0, w1, tau, eta1, eta2, coef, freq, a, b, max_iter, step_tol, eps_det):
    n = z0.shape[0]
    z = np.empty(n, dtype=np.complex128)
    res = np.empty(n)
    its = np.empty(n, dtype=np.int64)
    conv = np.empty(n, dtype=np.bool_)
    fb = np.empty(n, dtype=np.bool_)
    step = np.empty(n)
    for i in prange(n):
        z[i], res[i], its[i], conv[i], fb[i], step[i] = newton_polish(
            z0[i], w1, tau, eta1, eta2, coef, freq, a, b, max_iter, step_tol, eps_det
        )
    return z, res, its, conv, fb, step


@njit(cache=True)
def zeta_only(z, w1, tau, eta1, eta2, coef, freq):
    """zeta alone, with sin/cos of the odd multiples built by angle addition.

    The recurrence uses only sign-symmetric operations, so zeta(-z) == -zeta(z)
    holds bit for bit and rendered basins keep the z -> -z symmetry exactly.
    """
    v = z / w1
    vr, m, n = reduce_centered(v, tau)
    x = math.pi * vr
    s1 = np.sin(x)
    c1 = np.cos(x)
    s2 = 2.0 * s1 * c1
    c2 = c1 * c1 - s1 * s1
    s = s1
    c = c1
    t0 = 0j
    t1 = 0j
    ay = abs(vr.imag)
    ok = False
    for k in range(coef.shape[0]):
        ck = coef[k]
        t0 += ck * s
        t1 += ck * freq[k] * c
        env = abs(ck) * math.exp(freq[k] * ay) * freq[k]
        if k > 0 and env < EPS_TERM * (abs(t1) + 1.0):
            ok = True
            break
        s, c = s * c2 + c * s2, c * c2 - s * s2
    if not ok or t0 == 0:
        return complex(np.nan, np.nan)
    zn = eta1 * vr + t1 / t0 + m * eta1 + n * eta2
    return zn / w1


@njit(cache=True)
def g_map(z, w1, tau, eta1, eta2, coef, freq, a, b):
    """g(z) = -(conj(zeta(z)) + conj(a z)) / b."""
    zeta, _, _ = zeta_wp(z, w1, tau, eta1, eta2, coef, freq)
    return -(np.conj(zeta) + np.conj(a * z)) / b.real


@njit(cache=True)
def torus_dist(z, p, w1, tau):
    """Euclidean distance from z to the nearest translate of p (checked over neighbours)."""
    d, _, _ = reduce_centered((z - p) / w1, tau)
    best = abs(d)
    for i in range(-1, 2):
        for j in range(-1, 2):
            dd = abs(d + i + j * tau)
            if dd < best:
                best = dd
    return best * abs(w1)


@njit(cache=True)
def orbit_to_fixed(z, w1, tau, eta1, eta2, coef, freq, a, b, fixed, radii, max_iter, r0):
    """Iterate g from z until it comes within radii[k] of fixed[k].

    Returns (k + 1, iterations) or (0, max_iter) when no fixed point is reached.
    Iterates are kept in the centered cell; g commutes with lattice translations.
    """
    bb = b.real
    for it in range(max_iter):
        for k in range(fixed.shape[0]):
            if torus_dist(z, fixed[k], w1, tau) < radii[k]:
                return k + 1, it
        vr, _, _ = reduce_centered(z / w1, tau)
        if abs(vr) * abs(w1) < r0:
            # nudge off the pole without changing the orbit logic
            vr = vr + 1e-9
        z = vr * w1
        zeta = zeta_only(z, w1, tau, eta1, eta2, coef, freq)
        z = -(np.conj(zeta) + np.conj(a * z)) / bb
        if not (z.real == z.real and z.imag == z.imag):
            return 0, it
    return 0, max_iter


@njit(cache=True, parallel=True)
def render_basins(zgrid, w1, tau, eta1, eta2, coef, freq, a, b, fixed, radii, max_iter, r0):
    h, w = zgrid.shape
    codes = np.zeros((h, w), dtype=np.int64)
    iters = np.zeros((h, w), dtype=np.int64)
    for i in prange(h):
        for j in range(w):
            codes[i, j], iters[i, j] = orbit_to_fixed(
                zgrid[i, j], w1, tau, eta1, eta2, coef, freq, a, b, fixed, radii, max_iter, r0
            )
    return codes, iters
