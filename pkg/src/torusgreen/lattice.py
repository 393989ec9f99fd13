"""Lattices, reduction modulo the lattice, and a few modular transforms."""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DegenerateLattice

# tolerance for equality mod the lattice, in lattice coordinates
POINT_TOL = 1e-8


@dataclass(frozen=True)
class Lattice:
    omega1: complex
    omega2: complex
    tau: complex = field(init=False)

    def __post_init__(self):
        w1, w2 = complex(self.omega1), complex(self.omega2)
        if w1 == 0:
            raise DegenerateLattice("omega1 must be non-zero")
        tau = w2 / w1
        if not tau.imag > 0:
            raise DegenerateLattice(f"Im(omega2/omega1) must be positive, got tau={tau}")
        object.__setattr__(self, "omega1", w1)
        object.__setattr__(self, "omega2", w2)
        object.__setattr__(self, "tau", tau)

    @property
    def half_periods(self) -> tuple[complex, complex, complex]:
        """omega1/2, (omega1+omega2)/2, omega2/2 -- the order of e1, e2, e3."""
        w1, w2 = self.omega1, self.omega2
        return (w1 / 2, (w1 + w2) / 2, w2 / 2)

    @property
    def area(self) -> float:
        return abs(self.omega1) ** 2 * self.tau.imag

    def point(self, s, t):
        return s * self.omega1 + t * self.omega2

    def __repr__(self):
        return f"Lattice(omega1={self.omega1!r}, omega2={self.omega2!r})"


def make_lattice(omega1: complex, omega2: complex) -> Lattice:
    return Lattice(omega1, omega2)


def from_tau(tau: complex) -> Lattice:
    """The normalized lattice spanned by 1 and tau."""
    return Lattice(1.0, tau)


def lattice_coords(z, L: Lattice):
    """Real coordinates (s, t) with z = s*omega1 + t*omega2."""
    u = np.asarray(z, dtype=complex) / L.omega1
    t = u.imag / L.tau.imag
    s = u.real - t * L.tau.real
    return s, t


def reduce_mod_lattice(z, L: Lattice):
    """Representative of z in the half-open cell {s*omega1 + t*omega2 : s, t in [0, 1)}."""
    s, t = lattice_coords(z, L)
    s = s - np.floor(s)
    t = t - np.floor(t)
    # floor can leave exactly 1.0 after rounding of tiny negatives
    s = np.where(s >= 1.0, 0.0, s)
    t = np.where(t >= 1.0, 0.0, t)
    out = s * L.omega1 + t * L.omega2
    return complex(out) if np.ndim(out) == 0 else out


def lattice_distance(z, w, L: Lattice):
    """Distance between z and w on the torus, measured in lattice coordinates (sup norm)."""
    s, t = lattice_coords(np.asarray(z) - np.asarray(w), L)
    ds = np.abs(s - np.round(s))
    dt = np.abs(t - np.round(t))
    return np.maximum(ds, dt)


def torus_distance(z, w, L: Lattice):
    """Euclidean distance between z and the nearest translate of w."""
    d = np.asarray(z, dtype=complex) - np.asarray(w, dtype=complex)
    s, t = lattice_coords(d, L)
    base = d - (np.round(s) * L.omega1 + np.round(t) * L.omega2)
    best = np.abs(base)
    for i in (-1, 0, 1):
        for j in (-1, 0, 1):
            best = np.minimum(best, np.abs(base + i * L.omega1 + j * L.omega2))
    return best


def same_point(z, w, L: Lattice, tol: float = POINT_TOL) -> bool:
    return bool(lattice_distance(z, w, L) < tol)


def dist_to_lattice(z, L: Lattice):
    """Euclidean distance from z to the nearest lattice point."""
    s, t = lattice_coords(z, L)
    best = None
    s0, t0 = np.floor(s), np.floor(t)
    for ds in (0, 1):
        for dt in (0, 1):
            d = np.abs(np.asarray(z) - ((s0 + ds) * L.omega1 + (t0 + dt) * L.omega2))
            best = d if best is None else np.minimum(best, d)
    return best


_MODULAR = {
    "T": lambda tau: tau + 1,
    "S": lambda tau: -1 / tau,
    "T2": lambda tau: (tau - 1) / (2 * tau - 1),
}


def modular_apply(name: str, tau: complex) -> complex:
    """Apply T (tau+1), S (-1/tau) or T2 ((tau-1)/(2tau-1)) to tau."""
    try:
        f = _MODULAR[name]
    except KeyError:
        raise ValueError(f"unknown modular transform {name!r}; expected one of {sorted(_MODULAR)}") from None
    tau = complex(tau)
    if not tau.imag > 0:
        raise DegenerateLattice(f"tau must lie in the upper half-plane, got {tau}")
    return complex(f(tau))


def nome(tau: complex) -> complex:
    return cmath.exp(1j * cmath.pi * tau)
