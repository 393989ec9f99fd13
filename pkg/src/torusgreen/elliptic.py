"""Weierstrass zeta and wp for an arbitrary lattice, built on theta series."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .exceptions import PoleInput, PrecisionLoss
from .lattice import Lattice, dist_to_lattice, from_tau
from .theta import EPS_TERM, N_MAX, ThetaConstants, theta_constants

POLE_GUARD = 1e-6


def _theta1_series(tau: complex):
    """theta_1 coefficients long enough for any argument of the centered cell."""
    half = 0.5 * tau.imag + 1e-12
    coef, freq = [], []
    for n in range(N_MAX):
        k = (2 * n + 1) * math.pi
        c = 2 * (-1) ** n * cmath.exp(1j * math.pi * tau * (n + 0.5) ** 2)
        coef.append(c)
        freq.append(k)
        if n > 0 and abs(c) * math.exp(k * half) * k**3 < EPS_TERM * 1e-4:
            break
    else:
        raise PrecisionLoss(f"theta_1 series for tau={tau} needs more than {N_MAX} terms")
    return np.array(coef, dtype=np.complex128), np.array(freq, dtype=np.float64)


@dataclass(frozen=True)
class EllipticContext:
    """Precomputed data for one lattice.

    ``eta1``, ``eta2`` and ``e`` refer to the lattice itself. The ``*_norm``
    fields belong to the normalized lattice (1, tau) used by the kernels.
    """

    lattice: Lattice
    constants: ThetaConstants
    eta1: complex
    eta2: complex
    e: tuple
    eta1_norm: complex
    eta2_norm: complex
    coef: np.ndarray = field(repr=False)
    freq: np.ndarray = field(repr=False)

    @property
    def tau(self) -> complex:
        return self.lattice.tau

    @property
    def omega1(self) -> complex:
        return self.lattice.omega1

    @property
    def omega2(self) -> complex:
        return self.lattice.omega2

    def criterion_quantities(self) -> tuple:
        """e_j w1^2 + eta1 w1 for j = 1, 2, 3 (depends on tau only)."""
        w1 = self.omega1
        return tuple(ej * w1 * w1 + self.eta1 * w1 for ej in self.e)

    def kernel_args(self):
        return (self.omega1, self.tau, self.eta1_norm, self.eta2_norm, self.coef, self.freq)


def build_context(L: Lattice | complex) -> EllipticContext:
    """Elliptic data of ``L``; a bare complex number is read as tau with omega1 = 1."""
    if not isinstance(L, Lattice):
        L = from_tau(L)
    tau = L.tau
    th = theta_constants(tau)
    w1 = L.omega1
    eta1n = -th.th1ppp0 / (3 * th.th1p0)
    eta2n = eta1n * tau - 2j * math.pi
    # e_j w1^2 + eta1 w1 = -theta_k''(0)/theta_k(0), with theta_k the shifted theta_1 at the j-th half-period
    x1 = -th.second_derivative(2) / th.value(2)
    x2 = -th.second_derivative(3) / th.value(3)
    x3 = -th.second_derivative(0) / th.value(0)
    e = tuple((x - eta1n) / (w1 * w1) for x in (x1, x2, x3))
    coef, freq = _theta1_series(tau)
    return EllipticContext(
        lattice=L,
        constants=th,
        eta1=eta1n / w1,
        eta2=eta2n / w1,
        e=e,
        eta1_norm=eta1n,
        eta2_norm=eta2n,
        coef=coef,
        freq=freq,
    )


def _guard(z, ctx: EllipticContext):
    z = np.asarray(z, dtype=np.complex128)
    if np.any(dist_to_lattice(z, ctx.lattice) < POLE_GUARD * abs(ctx.omega1)):
        raise PoleInput("argument within the pole guard radius of a lattice point")
    return z


def _evaluate(z, ctx: EllipticContext):
    arr = _guard(z, ctx)
    zeta, wp, dwp = _kernels.zeta_wp_array(np.atleast_1d(arr), *ctx.kernel_args())
    if not (np.all(np.isfinite(zeta)) and np.all(np.isfinite(wp))):
        raise PrecisionLoss("theta_1 series failed to converge at some argument")
    if arr.ndim == 0:
        return complex(zeta[0]), complex(wp[0]), complex(dwp[0])
    return zeta, wp, dwp


def zeta(z, ctx: EllipticContext):
    """Weierstrass zeta: (eta1/w1) z + theta_1'(z/w1) / (w1 theta_1(z/w1))."""
    return _evaluate(z, ctx)[0]


def wp(z, ctx: EllipticContext):
    return _evaluate(z, ctx)[1]


def zeta_and_wp(z, ctx: EllipticContext):
    zt, p, _ = _evaluate(z, ctx)
    return zt, p


def _wp_prime(z, ctx: EllipticContext):
    # internal: Newton for wp(c) = a needs the derivative
    return _evaluate(z, ctx)[2]


def legendre_residual(ctx: EllipticContext) -> float:
    return abs(ctx.eta1 * ctx.omega2 - ctx.eta2 * ctx.omega1 - 2j * math.pi)
