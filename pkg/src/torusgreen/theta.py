"""Jacobi theta functions with quasi-periods 1 and tau.

Conventions (nome q = exp(i*pi*tau))::

    theta_1(v) = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1) pi v)
    theta_2(v) = 2 sum_{n>=0}        q^{(n+1/2)^2} cos((2n+1) pi v)
    theta_3(v) = 1 + 2 sum_{n>=1}        q^{n^2} cos(2 n pi v)
    theta_0(v) = 1 + 2 sum_{n>=1} (-1)^n q^{n^2} cos(2 n pi v)

so theta_1(v+1) = -theta_1(v) and theta_1(v+tau) = -q^{-1} e^{-2 pi i v} theta_1(v).
theta_0 is the function frequently written theta_4.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import PrecisionLoss

TAU_MIN = 0.05
EPS_TERM = 1e-16
N_MAX = 256


def check_tau(tau) -> complex:
    tau = complex(tau)
    if not tau.imag >= TAU_MIN:
        raise PrecisionLoss(
            f"Im(tau)={tau.imag:.4g} is below {TAU_MIN}; apply a modular transform first"
        )
    return tau


def _series_terms(k: int):
    """(sign, frequency, exponent) generators for theta_k, n = 0, 1, 2, ..."""
    if k in (1, 2):
        def term(n):
            sign = (-1) ** n if k == 1 else 1
            return 2 * sign, (2 * n + 1) * math.pi, (n + 0.5) ** 2
    elif k in (0, 3):
        def term(n):
            if n == 0:
                return 1, 0.0, 0.0
            sign = (-1) ** n if k == 0 else 1
            return 2 * sign, 2 * n * math.pi, float(n * n)
    else:
        raise ValueError(f"theta index must be 0, 1, 2 or 3, got {k}")
    return term


def _trig(k: int, deriv: int, x):
    """d^deriv/dx^deriv of sin (k=1) or cos (k=0,2,3), as a function of x = freq*v."""
    # derivatives of sin cycle sin, cos, -sin, -cos; of cos: cos, -sin, -cos, sin
    phase = deriv % 4
    if k == 1:
        return (np.sin, np.cos, lambda y: -np.sin(y), lambda y: -np.cos(y))[phase](x)
    return (np.cos, lambda y: -np.sin(y), lambda y: -np.cos(y), np.sin)[phase](x)


def theta(k: int, v, tau, deriv: int = 0):
    """Value (or ``deriv``-th derivative in v) of theta_k(v | tau).

    Accepts scalar or array ``v``. Terms are added until each is below
    ``EPS_TERM * (|partial sum| + 1)``; at most ``N_MAX`` terms.
    """
    tau = check_tau(tau)
    term = _series_terms(k)
    v_arr = np.asarray(v, dtype=complex)
    total = np.zeros_like(v_arr)
    for n in range(N_MAX):
        sign, freq, expo = term(n)
        coef = sign * cmath.exp(1j * math.pi * tau * expo)
        if freq == 0.0:
            t = np.full_like(v_arr, coef if deriv == 0 else 0.0)
        else:
            t = coef * freq**deriv * _trig(k, deriv, freq * v_arr)
        total = total + t
        # a term can vanish accidentally (e.g. v = 0 for theta_1); use the envelope instead
        envelope = abs(coef) * max(freq, 1.0) ** deriv * np.exp(freq * np.abs(v_arr.imag))
        if n > 0 and np.all(envelope < EPS_TERM * (np.abs(total) + 1.0)):
            break
    else:
        raise PrecisionLoss(f"theta_{k} series did not converge in {N_MAX} terms (tau={tau})")
    return complex(total) if v_arr.ndim == 0 else total


@dataclass(frozen=True)
class ThetaConstants:
    """Theta constants at v = 0 for one tau.

    ``th_k_0`` and ``th_k_pp0`` are ordered (theta_0, theta_2, theta_3).
    """

    tau: complex
    q: complex
    th1p0: complex
    th1ppp0: complex
    th_k_0: tuple
    th_k_pp0: tuple
    terms_used: int

    def value(self, k: int) -> complex:
        return self.th_k_0[(0, None, 1, 2)[k]]

    def second_derivative(self, k: int) -> complex:
        return self.th_k_pp0[(0, None, 1, 2)[k]]


def theta_constants(tau) -> ThetaConstants:
    """theta_1'(0), theta_1'''(0), theta_k(0) and theta_k''(0) for k = 0, 2, 3."""
    tau = check_tau(tau)
    q = cmath.exp(1j * math.pi * tau)
    # accumulators: th1', th1''', th0, th0'', th2, th2'', th3, th3''
    acc = [0j] * 8
    acc[2] = acc[6] = 1.0 + 0j
    for n in range(N_MAX):
        odd = (n + 0.5) ** 2
        k_odd = (2 * n + 1) * math.pi
        q_odd = cmath.exp(1j * math.pi * tau * odd)
        s = (-1) ** n
        new = [
            2 * s * q_odd * k_odd,
            -2 * s * q_odd * k_odd**3,
            0j, 0j,
            2 * q_odd,
            -2 * q_odd * k_odd**2,
            0j, 0j,
        ]
        if n >= 1:
            k_even = 2 * n * math.pi
            q_even = cmath.exp(1j * math.pi * tau * n * n)
            new[2] = 2 * s * q_even
            new[3] = -2 * s * q_even * k_even**2
            new[6] = 2 * q_even
            new[7] = -2 * q_even * k_even**2
        acc = [a + b for a, b in zip(acc, new)]
        if n > 0 and all(abs(b) < EPS_TERM * (abs(a) + 1.0) for a, b in zip(acc, new)):
            break
    else:
        raise PrecisionLoss(f"theta constants did not converge in {N_MAX} terms (tau={tau})")
    return ThetaConstants(
        tau=tau,
        q=q,
        th1p0=acc[0],
        th1ppp0=acc[1],
        th_k_0=(acc[2], acc[4], acc[6]),
        th_k_pp0=(acc[3], acc[5], acc[7]),
        terms_used=n + 1,
    )


def theta_constants_batch(tau):
    """Vectorized theta constants over an array of tau.

    Returns a dict of arrays with keys ``th1p0``, ``th1ppp0``, ``th0``, ``th0pp``,
    ``th2``, ``th2pp``, ``th3``, ``th3pp``. The number of terms is fixed by the
    smallest Im(tau) in the batch.
    """
    tau = np.asarray(tau, dtype=complex)
    im_min = float(np.min(tau.imag)) if tau.size else 1.0
    if not im_min >= TAU_MIN:
        raise PrecisionLoss(f"Im(tau)={im_min:.4g} is below {TAU_MIN}")
    # |q|^{n^2} < EPS_TERM / k^3 is ample for every accumulator
    n_terms = 2
    while math.exp(-math.pi * im_min * n_terms**2) * (2 * n_terms * math.pi) ** 3 > EPS_TERM * 1e-2:
        n_terms += 1
        if n_terms > N_MAX:
            raise PrecisionLoss("theta constants batch would exceed N_MAX terms")
    out = {key: np.zeros_like(tau) for key in ("th1p0", "th1ppp0", "th0pp", "th2", "th2pp", "th3pp")}
    out["th0"] = np.ones_like(tau)
    out["th3"] = np.ones_like(tau)
    ipt = 1j * math.pi * tau
    for n in range(n_terms + 1):
        s = (-1) ** n
        k_odd = (2 * n + 1) * math.pi
        q_odd = np.exp(ipt * (n + 0.5) ** 2)
        out["th1p0"] += 2 * s * k_odd * q_odd
        out["th1ppp0"] -= 2 * s * k_odd**3 * q_odd
        out["th2"] += 2 * q_odd
        out["th2pp"] -= 2 * k_odd**2 * q_odd
        if n >= 1:
            k_even = 2 * n * math.pi
            q_even = np.exp(ipt * n * n)
            out["th0"] += 2 * s * q_even
            out["th0pp"] -= 2 * s * k_even**2 * q_even
            out["th3"] += 2 * q_even
            out["th3pp"] -= 2 * k_even**2 * q_even
    return out
