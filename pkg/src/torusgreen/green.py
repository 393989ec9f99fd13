"""Critical points of the Green function of a torus.

Critical points of G solve F(z) = zeta(z) + a z + b conj(z) = 0, where a and b
make F periodic. Their number is 3 or 5; ``criterion`` predicts which from
theta constants and ``count_oracle`` counts them by brute force.
"""
from __future__ import annotations

import functools
import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .elliptic import EllipticContext, build_context, _guard
from .exceptions import (
    BoundaryWarning,
    DegenerateCriterion,
    OracleInconclusive,
    PoleInput,
    PrecisionLoss,
    SingularNewton,
)
from .lattice import (
    POINT_TOL,
    Lattice,
    lattice_coords,
    lattice_distance,
    reduce_mod_lattice,
    torus_distance,
)
from .theta import check_tau, theta, theta_constants, theta_constants_batch

NEUTRAL_BAND = 1e-9
BOUNDARY_EPS = 1e-9
DEGENERATE_EPS = 1e-12
NEWTON_MAX_ITER = 50
NEWTON_STEP_TOL = 1e-13
SEED_GRID = 64

ATTRACTING = "attracting"
NEUTRAL = "neutral"
REPELLING = "repelling"


@dataclass(frozen=True)
class GreenCoefficients:
    a: complex
    b: complex  # real and negative


@dataclass(frozen=True)
class CriticalPoint:
    z: complex
    residual: float
    multiplier_modulus: float
    kind: str

    @property
    def is_attracting(self) -> bool:
        return self.kind == ATTRACTING


@dataclass(frozen=True)
class CriterionReport:
    tau: complex
    values: tuple
    predicted_count: int
    on_boundary: bool
    criterion2: tuple  # Im(2 pi i / X_j - tau); None where X_j vanishes
    degenerate: bool = False

    @property
    def min_value(self) -> float:
        return min(self.values)


def coefficients(ctx: EllipticContext) -> GreenCoefficients:
    w1 = ctx.omega1
    im_tau = ctx.tau.imag
    b = -math.pi / (abs(w1) ** 2 * im_tau)
    a = math.pi / (w1 * w1 * im_tau) - ctx.eta1 / w1
    return GreenCoefficients(a=complex(a), b=complex(b, 0.0))


def _setup(ctx_or_tau, coeffs=None):
    ctx = ctx_or_tau if isinstance(ctx_or_tau, EllipticContext) else build_context(ctx_or_tau)
    return ctx, (coeffs if coeffs is not None else coefficients(ctx))


def field_F(z, ctx: EllipticContext, coeffs: GreenCoefficients | None = None):
    """zeta(z) + a z + b conj(z); periodic and odd."""
    ctx, coeffs = _setup(ctx, coeffs)
    arr = _guard(z, ctx)
    zeta, _, _ = _kernels.zeta_wp_array(np.atleast_1d(arr), *ctx.kernel_args())
    out = zeta + coeffs.a * np.atleast_1d(arr) + coeffs.b.real * np.conj(np.atleast_1d(arr))
    if not np.all(np.isfinite(out)):
        raise PrecisionLoss("zeta evaluation failed")
    return complex(out[0]) if arr.ndim == 0 else out


def multiplier_modulus(z, ctx: EllipticContext, coeffs: GreenCoefficients | None = None):
    """|wp(z) - a| / |b|, the modulus of d(bar)g at z."""
    ctx, coeffs = _setup(ctx, coeffs)
    arr = _guard(z, ctx)
    _, p, _ = _kernels.zeta_wp_array(np.atleast_1d(arr), *ctx.kernel_args())
    out = np.abs(p - coeffs.a) / abs(coeffs.b)
    return float(out[0]) if arr.ndim == 0 else out


def classify(mult: float) -> str:
    if abs(mult - 1.0) < NEUTRAL_BAND:
        return NEUTRAL
    return ATTRACTING if mult < 1.0 else REPELLING


# --- Green function -------------------------------------------------------

def _green_raw(z, tau: complex):
    z = np.asarray(z, dtype=complex)
    # G is periodic; evaluate at the centered representative
    n = np.round(z.imag / tau.imag)
    z = z - n * tau
    z = z - np.round(z.real)
    if np.any(np.abs(z) < 1e-12):
        raise PoleInput("Green function is singular on the lattice")
    th = theta(1, z, tau)
    return -np.log(np.abs(th)) / (2 * math.pi) + z.imag**2 / (2 * tau.imag)


@functools.lru_cache(maxsize=64)
def _green_offset(tau: complex, n: int = 256) -> float:
    s = (np.arange(n) + 0.5) / n
    S, T = np.meshgrid(s, s)
    return -float(np.mean(_green_raw(S + T * tau, tau)))


def green_value(z, tau, normalize: bool = False):
    """Green function of C/(Z + tau Z) up to the additive constant C(tau).

    With ``normalize`` the constant is chosen numerically so that the mean over
    the cell vanishes (midpoint rule on a 256 x 256 grid).
    """
    tau = check_tau(tau)
    g = _green_raw(z, tau)
    if normalize:
        g = g + _green_offset(tau)
    return float(g) if np.ndim(g) == 0 else g


# --- criterion ------------------------------------------------------------

def criterion(tau) -> CriterionReport:
    """Predict the number of critical points (3 or 5) from theta constants."""
    tau = check_tau(tau)
    th = theta_constants(tau)
    xs = [-th.second_derivative(k) / th.value(k) for k in (2, 3, 0)]
    values = tuple(float(abs(x / math.pi * tau.imag - 1.0)) for x in xs)
    m = min(values)
    crit2 = []
    degenerate = False
    for x in xs:
        if abs(x) < DEGENERATE_EPS:
            degenerate = True
            crit2.append(None)
        else:
            crit2.append(float((2j * math.pi / x - tau).imag))
    if degenerate:
        warnings.warn(f"e_j w1^2 + eta1 w1 vanishes at tau={tau}; count is 3", DegenerateCriterion)
    on_boundary = abs(m - 1.0) < BOUNDARY_EPS
    # equality in the criterion still gives three zeros
    predicted = 3 if (m <= 1.0 or on_boundary) else 5
    # the two forms of the criterion must agree away from the boundary
    form2_three = degenerate or any(c >= 0 for c in crit2 if c is not None)
    if abs(m - 1.0) > 1e-7 and form2_three != (predicted == 3):
        raise AssertionError(f"criterion forms disagree at tau={tau}: m={values}, Im F_j={crit2}")
    return CriterionReport(
        tau=tau,
        values=values,
        predicted_count=predicted,
        on_boundary=on_boundary,
        criterion2=tuple(crit2),
        degenerate=degenerate,
    )


def criterion_values_batch(tau):
    """Array of min_j m_j for an array of tau (vectorized criterion)."""
    tau = np.asarray(tau, dtype=complex)
    c = theta_constants_batch(tau)
    m = None
    for num, den in (("th2pp", "th2"), ("th3pp", "th3"), ("th0pp", "th0")):
        x = -c[num] / c[den]
        mj = np.abs(x / math.pi * tau.imag - 1.0)
        m = mj if m is None else np.minimum(m, mj)
    return m


# --- critical points ------------------------------------------------------

def _cell_grid(L: Lattice, n: int, offset: float = 0.5):
    s = (np.arange(n) + offset) / n
    S, T = np.meshgrid(s, s)
    return S * L.omega1 + T * L.omega2


def _polish(seeds, ctx, coeffs):
    """Newton-polish seeds; returns (points, residuals, uncertainty radii).

    The radius is 4 |F| / sigma_min, where sigma_min = ||F_z| - |b|| is the
    smallest singular value of the real Jacobian. For a simple zero this is
    the usual error bound; next to a k-fold zero (k <= 3) it is about
    4d/k, so iterates that stall at roundoff still cover the true zero.
    """
    w1 = ctx.omega1
    b = coeffs.b
    eps_det = 1e-12 * abs(b) ** 2
    z, res, its, conv, fb, step = _kernels.newton_batch(
        np.ascontiguousarray(seeds, dtype=np.complex128),
        *ctx.kernel_args(),
        coeffs.a,
        b,
        NEWTON_MAX_ITER,
        NEWTON_STEP_TOL * abs(w1),
        eps_det,
    )
    if np.any(fb):
        warnings.warn("Newton fell back to gradient steps near a singular Jacobian", SingularNewton)
    _, p, _ = _kernels.zeta_wp_array(z, *ctx.kernel_args())
    sigma = np.abs(np.abs(coeffs.a - p) - abs(b))
    with np.errstate(divide="ignore", invalid="ignore"):
        rad = np.where(res > 0, 4.0 * res / sigma, 0.0)
    return z, res, np.nan_to_num(rad, nan=np.inf, posinf=np.inf)


def _residual_tol(coeffs) -> float:
    return 1e-10 * max(1.0, abs(coeffs.a) + abs(coeffs.b))


def _anchor_radii(anchors, ctx, coeffs):
    """Merge radius around each half-period.

    Extra zeros bifurcate from a half-period h only on the side where h is
    repelling, at distance of order sqrt(mult(h) - 1). Around an attracting or
    neutral h nothing else can sit nearby, so stalled Newton iterates (which
    converge only linearly to a degenerate zero) are absorbed generously.
    """
    scale = abs(ctx.omega1)
    mult = multiplier_modulus(np.array(anchors), ctx, coeffs)
    out = []
    for m in mult:
        if m <= 1.0 + NEUTRAL_BAND:
            out.append(1e-3 * scale)
        else:
            out.append(min(1e-3, 0.1 * math.sqrt(m - 1.0)) * scale)
    return out


def _dedupe(points, residuals, radii, L: Lattice, anchors=(), anchor_radii=(), keep_anchors=True):
    """Unique points mod L, returned as representatives in the fundamental cell.

    Two points coincide when they agree to POINT_TOL in lattice coordinates or
    when their uncertainty radii overlap. ``anchors`` are known exact zeros
    that absorb nearby iterates; with ``keep_anchors=False`` an anchor is
    reported only if some point actually landed on it.
    """
    kept = [reduce_mod_lattice(p, L) for p in anchors]
    kept_rad = list(anchor_radii) if anchor_radii else [0.0] * len(kept)
    hit = [keep_anchors] * len(kept)
    for i in np.lexsort((radii, residuals)):
        p = reduce_mod_lattice(complex(points[i]), L)
        if kept:
            arr = np.array(kept)
            near = lattice_distance(arr, p, L) < POINT_TOL
            near |= torus_distance(arr, p, L) < np.array(kept_rad) + radii[i]
            if np.any(near):
                hit[int(np.argmax(near))] = True
                continue
        kept.append(p)
        kept_rad.append(float(radii[i]))
        hit.append(True)
    return [p for p, h in zip(kept, hit) if h]


def _make_points(zs, ctx, coeffs):
    if not zs:
        return []
    arr = np.array(zs, dtype=complex)
    F = field_F(arr, ctx, coeffs)
    mult = multiplier_modulus(arr, ctx, coeffs)
    pts = [
        CriticalPoint(z=complex(z), residual=float(abs(f)), multiplier_modulus=float(m), kind=classify(m))
        for z, f, m in zip(arr, F, mult)
    ]
    return pts


def _sort_key(p: CriticalPoint, L: Lattice):
    s, t = lattice_coords(p.z, L)
    return (round(float(t), 9), round(float(s), 9))


def find_critical_points(ctx, coeffs: GreenCoefficients | None = None, grid: int = SEED_GRID):
    """All critical points of G modulo the lattice, each polished and classified.

    Half-periods are always included. Points are returned sorted by lattice
    coordinates (t, then s) of their representative in the fundamental cell.
    """
    ctx, coeffs = _setup(ctx, coeffs)
    L = ctx.lattice
    half = L.half_periods
    thirds = ((L.omega1 + L.omega2) / 3, -(L.omega1 + L.omega2) / 3)
    grid_pts = _cell_grid(L, grid).ravel()
    far = _far_from_poles(grid_pts, L)
    seeds = np.concatenate([np.array(thirds), grid_pts[far]])
    z, res, rad = _polish(seeds, ctx, coeffs)
    good = res < _residual_tol(coeffs)
    zs = _dedupe(z[good], res[good], rad[good], L, anchors=half,
                 anchor_radii=_anchor_radii(half, ctx, coeffs))
    pts = sorted(_make_points(zs, ctx, coeffs), key=lambda p: _sort_key(p, L))
    if any(p.kind == NEUTRAL for p in pts):
        warnings.warn(f"neutral fixed point at tau={L.tau}; on the 3/5 boundary", BoundaryWarning)
    return pts


def _far_from_poles(zs, L: Lattice, frac: float = 0.03):
    s, t = lattice_coords(zs, L)
    ds = np.abs(s - np.round(s))
    dt = np.abs(t - np.round(t))
    return np.maximum(ds, dt) > frac


def count_oracle(ctx, coeffs: GreenCoefficients | None = None, grid_n: int = 128) -> int:
    """Count zeros of F by scanning |F| on a grid, independent of ``criterion``.

    Every discrete local minimum of |F| (periodic 8-neighbourhood) that is
    small enough to hide a zero within one grid cell is polished by Newton and
    must converge. Other grid points under the same bound are polished too
    and kept when they converge. The distinct limits are counted.
    """
    if grid_n < 64:
        raise ValueError("grid_n must be at least 64")
    ctx, coeffs = _setup(ctx, coeffs)
    L = ctx.lattice
    # offset keeps grid points off the lattice and off the half-periods
    zg = _cell_grid(L, grid_n, offset=0.25)
    zeta, p, _ = _kernels.zeta_wp_array(zg, *ctx.kernel_args())
    F = zeta + coeffs.a * zg + coeffs.b.real * np.conj(zg)
    mag = np.abs(F)
    if not np.all(np.isfinite(mag)):
        raise PrecisionLoss("zeta evaluation failed on the oracle grid")
    is_min = np.ones_like(mag, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di or dj:
                is_min &= mag <= np.roll(np.roll(mag, di, axis=0), dj, axis=1)
    # a zero within distance h of a grid point forces |F| <= (|a - wp| + |b|) h there
    h = abs(L.omega1) / grid_n + abs(L.omega2) / grid_n
    bound = 4.0 * (np.abs(coeffs.a - p) + abs(coeffs.b)) * h
    small = mag < bound
    cand = zg[is_min & small]
    if cand.size == 0:
        raise OracleInconclusive("no candidate minima found")
    z, res, rad = _polish(cand, ctx, coeffs)
    tol = 1e-8
    bad = res > tol
    if np.any(bad):
        raise OracleInconclusive(
            f"{int(bad.sum())} grid minima did not polish to a zero (worst residual {res.max():.3g})"
        )
    # near a degenerate zero |F| is flat along a valley and the zero need not
    # sit next to a discrete minimum; every grid point that passes the bound
    # also seeds Newton, and those that converge are kept
    extra = zg[small & ~is_min]
    if extra.size:
        z2, res2, rad2 = _polish(extra, ctx, coeffs)
        ok = res2 <= tol
        z, res, rad = (np.concatenate([z, z2[ok]]), np.concatenate([res, res2[ok]]),
                       np.concatenate([rad, rad2[ok]]))
    half = L.half_periods
    return len(_dedupe(z, res, rad, L, anchors=half,
                       anchor_radii=_anchor_radii(half, ctx, coeffs), keep_anchors=False))
