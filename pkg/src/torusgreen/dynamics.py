"""The anti-holomorphic map g(z) = -(conj(zeta(z)) + conj(a z)) / b.

Fixed points of g are exactly the critical points of the Green function.
This module classifies them, follows the two critical orbits of g and
renders basins of attraction (the Julia set shows up as code 0).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .elliptic import EllipticContext, _guard, _wp_prime, wp
from .exceptions import NoConvergence
from .green import (
    ATTRACTING,
    NEUTRAL,
    GreenCoefficients,
    _setup,
    classify,
    find_critical_points,
    multiplier_modulus,
)
from .lattice import lattice_distance, reduce_mod_lattice

EPS_CONV = 1e-6
POLE_GUARD = 1e-6
# parabolic basins fill in polynomially slowly; see render_julia
PARABOLIC_MAX_ITER = 5000
PARABOLIC_EPS_CONV = 2e-2


@dataclass(frozen=True)
class FixedPointInfo:
    z: complex
    multiplier_modulus: float
    kind: str
    is_half_period: bool


@dataclass(frozen=True)
class OrbitSummary:
    start: complex
    limit: complex | None
    limit_index: int | None  # index into the attracting/neutral fixed points
    iterations: int
    converged: bool


@dataclass
class RasterImage:
    """Grid of small integer codes with the viewport it was sampled on.

    ``viewport`` is (re_lo, re_hi, im_lo, im_hi); row 0 is the top edge.
    """

    width: int
    height: int
    codes: np.ndarray
    viewport: tuple
    labels: tuple = ()
    kind: str = "basin"
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.codes = np.asarray(self.codes, dtype=np.uint8)
        if self.codes.shape != (self.height, self.width):
            raise ValueError(f"codes shape {self.codes.shape} != {(self.height, self.width)}")


def g_map(z, ctx: EllipticContext, coeffs: GreenCoefficients | None = None):
    ctx, coeffs = _setup(ctx, coeffs)
    arr = _guard(z, ctx)
    zeta, _, _ = _kernels.zeta_wp_array(np.atleast_1d(arr), *ctx.kernel_args())
    a1 = np.atleast_1d(arr)
    out = -(np.conj(zeta) + np.conj(coeffs.a * a1)) / coeffs.b.real
    return complex(out[0]) if arr.ndim == 0 else out


def fixed_points(ctx, coeffs: GreenCoefficients | None = None) -> list[FixedPointInfo]:
    """Fixed points of g (= critical points of G) with half-period flags."""
    ctx, coeffs = _setup(ctx, coeffs)
    L = ctx.lattice
    half = np.array([reduce_mod_lattice(h, L) for h in L.half_periods])
    out = []
    for p in find_critical_points(ctx, coeffs):
        is_half = bool(np.min(lattice_distance(half, p.z, L)) < 1e-8)
        out.append(FixedPointInfo(p.z, p.multiplier_modulus, p.kind, is_half))
    return out


def basin_points(ctx, coeffs: GreenCoefficients | None = None) -> list[FixedPointInfo]:
    """Attracting and neutral fixed points ordered by (Im, Re) of the cell representative."""
    pts = [p for p in fixed_points(ctx, coeffs) if p.kind in (ATTRACTING, NEUTRAL)]
    return sorted(pts, key=lambda p: (round(p.z.imag, 12), round(p.z.real, 12)))


def _solve_critical(ctx, coeffs, seeds_n: int = 12):
    """A solution c of wp(c) = a (the other one is -c)."""
    L = ctx.lattice
    a = coeffs.a
    scale = max(1.0, abs(a))
    for h, e in zip(L.half_periods, ctx.e):
        if abs(e - a) < 1e-9 * scale:
            return reduce_mod_lattice(h, L)
    s = (np.arange(seeds_n) + 0.5) / seeds_n
    S, T = np.meshgrid(s, s)
    best, best_res = None, np.inf
    for z0 in (S * L.omega1 + T * L.omega2).ravel():
        z = complex(z0)
        for _ in range(60):
            try:
                f = wp(z, ctx) - a
                d = _wp_prime(z, ctx)
            except Exception:
                break
            if d == 0:
                break
            step = f / d
            z -= step
            if abs(step) < 1e-14 * abs(L.omega1):
                break
        try:
            res = abs(wp(z, ctx) - a)
        except Exception:
            continue
        if res < best_res:
            best, best_res = z, res
        if res < 1e-11 * scale:
            return reduce_mod_lattice(best, L)
    if best is None or best_res > 1e-8 * scale:
        raise NoConvergence("could not solve wp(c) = a")
    return reduce_mod_lattice(best, L)


def critical_orbits(ctx, coeffs: GreenCoefficients | None = None, max_iter: int = 1000,
                    eps_conv: float | None = None):
    """Follow the orbits of the two critical points +-c of g (wp(c) = a).

    Returns two ``OrbitSummary`` objects. Raises NoConvergence if either orbit
    fails to reach an attracting or neutral fixed point within ``max_iter``.
    """
    ctx, coeffs = _setup(ctx, coeffs)
    targets = basin_points(ctx, coeffs)
    c = _solve_critical(ctx, coeffs)
    fixed = np.array([p.z for p in targets], dtype=np.complex128)
    radii = np.array([_radius(p, eps_conv) for p in targets])
    out = []
    for start in (c, -c):
        z = np.array([[start]], dtype=np.complex128)
        codes, its = _kernels.render_basins(
            z, *ctx.kernel_args(), coeffs.a, coeffs.b, fixed, radii, max_iter,
            POLE_GUARD * abs(ctx.omega1),
        )
        code, it = int(codes[0, 0]), int(its[0, 0])
        if code == 0:
            raise NoConvergence(f"critical orbit from {start} did not settle in {max_iter} steps")
        out.append(OrbitSummary(start=complex(start), limit=complex(fixed[code - 1]),
                                limit_index=code - 1, iterations=it, converged=True))
    return tuple(out)


def _radius(p: FixedPointInfo, eps_conv):
    if eps_conv is not None:
        return eps_conv
    return PARABOLIC_EPS_CONV if p.kind == NEUTRAL else EPS_CONV


def pixel_grid(viewport, px_w: int, px_h: int):
    """Pixel-centre coordinates; symmetric about the viewport centre to the last bit."""
    re_lo, re_hi, im_lo, im_hi = viewport
    cx, cy = (re_lo + re_hi) / 2, (im_lo + im_hi) / 2
    dx, dy = (re_hi - re_lo) / px_w, (im_hi - im_lo) / px_h
    x = cx + (np.arange(px_w) - (px_w - 1) / 2) * dx
    y = cy - (np.arange(px_h) - (px_h - 1) / 2) * dy
    X, Y = np.meshgrid(x, y)
    return X + 1j * Y


def default_viewport(ctx) -> tuple:
    """A square window centred at 0 that contains a full period cell."""
    w1, w2 = ctx.omega1, ctx.omega2
    r = max(abs(w1), abs(w2), abs(w1 + w2), abs(w1 - w2)) * 0.75
    return (-r, r, -r, r)


def render_julia(ctx, coeffs: GreenCoefficients | None = None, viewport=None, px_w: int = 400,
                 px_h: int = 400, max_iter: int | None = None, eps_conv: float | None = None,
                 targets: list[FixedPointInfo] | None = None, zgrid=None) -> RasterImage:
    """Basin-of-attraction picture of g.

    Each pixel is iterated until it lands within ``eps_conv`` of an attracting
    or neutral fixed point (code k + 1 for the k-th such point in (Im, Re)
    order) or until ``max_iter`` steps pass (code 0: Julia set and pixels not
    yet captured). Near a parabolic point the orbit distance decays like
    n^(-1/2), so neutral points use a wider capture radius and a larger
    iteration budget. ``zgrid`` (shape (px_h, px_w)) replaces the pixel grid
    when given.
    """
    ctx, coeffs = _setup(ctx, coeffs)
    _kernels.set_threads_from_env()
    if targets is None:
        targets = basin_points(ctx, coeffs)
    has_neutral = any(p.kind == NEUTRAL for p in targets)
    if max_iter is None:
        max_iter = PARABOLIC_MAX_ITER if has_neutral else 200
    if viewport is None:
        viewport = default_viewport(ctx)
    if zgrid is None:
        zgrid = pixel_grid(viewport, px_w, px_h)
    fixed = np.array([p.z for p in targets], dtype=np.complex128)
    radii = np.array([_radius(p, eps_conv) for p in targets], dtype=np.float64)
    codes, iters = _kernels.render_basins(
        np.ascontiguousarray(zgrid), *ctx.kernel_args(), coeffs.a, coeffs.b, fixed, radii,
        int(max_iter), POLE_GUARD * abs(ctx.omega1),
    )
    return RasterImage(
        width=px_w,
        height=px_h,
        codes=codes.astype(np.uint8),
        viewport=tuple(float(v) for v in viewport),
        labels=tuple(p.z for p in targets),
        kind="basin",
        meta={"tau": ctx.tau, "max_iter": int(max_iter), "mean_iterations": float(iters.mean()),
              "iterations": iters},
    )


def label_involution(targets, ctx) -> dict:
    """Code permutation induced by z -> -z on the basins (0 stays 0)."""
    L = ctx.lattice
    pts = np.array([p.z if isinstance(p, FixedPointInfo) else p for p in targets])
    perm = {0: 0}
    for k, p in enumerate(pts):
        j = int(np.argmin(lattice_distance(pts, -p, L)))
        perm[k + 1] = j + 1
    return perm


def h_multiplier_fd(z, ctx, coeffs: GreenCoefficients | None = None, h: float = 1e-6) -> complex:
    """d/dz of h = g o g at z by central differences (h is holomorphic)."""
    ctx, coeffs = _setup(ctx, coeffs)

    def hh(w):
        return g_map(g_map(w, ctx, coeffs), ctx, coeffs)

    return (hh(z + h) - hh(z - h)) / (2 * h)


def dbar_g_fd(z, ctx, coeffs: GreenCoefficients | None = None, h: float = 1e-6) -> complex:
    """Wirtinger derivative d/d(conj z) of g by central differences."""
    ctx, coeffs = _setup(ctx, coeffs)
    gx = (g_map(z + h, ctx, coeffs) - g_map(z - h, ctx, coeffs)) / (2 * h)
    gy = (g_map(z + 1j * h, ctx, coeffs) - g_map(z - 1j * h, ctx, coeffs)) / (2 * h)
    return 0.5 * (gx + 1j * gy)


__all__ = [
    "FixedPointInfo",
    "OrbitSummary",
    "RasterImage",
    "g_map",
    "multiplier_modulus",
    "fixed_points",
    "basin_points",
    "critical_orbits",
    "render_julia",
    "pixel_grid",
    "default_viewport",
    "label_involution",
    "h_multiplier_fd",
    "dbar_g_fd",
    "classify",
]
