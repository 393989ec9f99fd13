"""The tau-plane map of where the Green function has three or five critical points."""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .dynamics import RasterImage, pixel_grid
from .exceptions import RootNotBracketed
from .green import criterion_values_batch
from .theta import TAU_MIN, check_tau

DEFAULT_RANGE = ((-1.0, 1.0), (0.15, 2.15))
DEFAULT_SIZE = (700, 700)
BOUNDARY_BAND = 0.002

CODE_BOUNDARY, CODE_THREE, CODE_FIVE = 0, 1, 2


@dataclass
class RegionScan:
    re_range: tuple
    im_range: tuple
    px_w: int
    px_h: int
    image: RasterImage
    min_m: np.ndarray

    def tau_grid(self):
        return pixel_grid(self.image.viewport, self.px_w, self.px_h)


def classify_taus(tau, boundary_band: float = BOUNDARY_BAND):
    """Codes (0 boundary, 1 three points, 2 five points) and min_j m_j for an array of tau."""
    m = criterion_values_batch(tau)
    codes = np.where(m > 1.0, CODE_FIVE, CODE_THREE)
    codes = np.where(np.abs(m - 1.0) < boundary_band, CODE_BOUNDARY, codes)
    return codes.astype(np.uint8), m


def render_region(re_range=DEFAULT_RANGE[0], im_range=DEFAULT_RANGE[1], px_w=DEFAULT_SIZE[0],
                  px_h=DEFAULT_SIZE[1], boundary_band: float = BOUNDARY_BAND,
                  chunk_rows: int = 64) -> RegionScan:
    if im_range[0] < TAU_MIN:
        raise ValueError(f"lower Im(tau) bound must be at least {TAU_MIN}")
    viewport = (re_range[0], re_range[1], im_range[0], im_range[1])
    taus = pixel_grid(viewport, px_w, px_h)
    codes = np.empty(taus.shape, dtype=np.uint8)
    m = np.empty(taus.shape)
    # chunks keep the temporaries small; each row is independent
    for r0 in range(0, px_h, chunk_rows):
        sl = slice(r0, min(px_h, r0 + chunk_rows))
        codes[sl], m[sl] = classify_taus(taus[sl], boundary_band)
    img = RasterImage(px_w, px_h, codes, viewport, kind="region")
    return RegionScan(tuple(re_range), tuple(im_range), px_w, px_h, img, m)


def write_region_csv(scan: RegionScan, path) -> None:
    taus = scan.tau_grid()
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["re_tau", "im_tau", "min_m"])
        for t, mv in zip(taus.ravel(), scan.min_m.ravel()):
            w.writerow([repr(float(t.real)), repr(float(t.imag)), repr(float(mv))])


def _f(b: float) -> float:
    return float(criterion_values_batch(np.array([0.5 + 1j * b]))[0]) - 1.0


def _bisect(lo: float, hi: float, flo: float, tol: float) -> float:
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = _f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def boundary_scan_halfline(b_lo: float = 0.2, b_hi: float = 1.0, tol: float = 1e-12,
                           samples: int = 81) -> tuple:
    """The two b where min_j m_j(1/2 + ib) crosses 1, found by bracketing + bisection.

    Expects five points at both ends and three in between.
    """
    check_tau(0.5 + 1j * b_lo)
    bs = np.linspace(b_lo, b_hi, samples)
    fs = [_f(b) for b in bs]
    changes = [i for i in range(samples - 1) if (fs[i] > 0) != (fs[i + 1] > 0)]
    if len(changes) != 2 or not fs[0] > 0:
        raise RootNotBracketed(f"expected two sign changes of min m - 1 on [{b_lo}, {b_hi}], got {len(changes)}")
    roots = tuple(_bisect(bs[i], bs[i + 1], fs[i], tol) for i in changes)
    return roots
