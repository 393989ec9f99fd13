"""The one-ninth constant and the endpoints b0, b1 of the three-point interval on Re tau = 1/2.

For tau = 1/2 + ib the quantity e1 w1^2 + eta1 w1 vanishes exactly when
sum_k (2k+1)^2 (-x)^{k(k+1)/2} = 0 with x = exp(-2 pi b). The smallest positive
root is the one-ninth constant; b0 = -log(x)/(2 pi) and b1 = 1/(4 b0).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import RootNotBracketed

TERM_TOL = 1e-18
BRACKET = (0.0, 0.5)


@dataclass(frozen=True)
class NinthReport:
    lambda_: float
    b0: float
    b1: float
    residual: float

    def as_dict(self) -> dict:
        return {"lambda": self.lambda_, "b0": self.b0, "b1": self.b1, "residual": self.residual}


def _series(x: float, deriv: bool):
    if not 0.0 <= x < 1.0:
        raise ValueError(f"series needs 0 <= x < 1, got {x}")
    total = 0.0
    k = 0
    while True:
        e = k * (k + 1) // 2
        w = (2 * k + 1) ** 2
        sign = -1.0 if e % 2 else 1.0
        if deriv:
            term = sign * w * e * x ** (e - 1) if e > 0 else 0.0
        else:
            term = sign * w * x**e
        total += term
        if k > 0 and abs(term) < TERM_TOL:
            return total
        if k > 0 and x == 0.0:
            return total
        k += 1


def series_S(x: float) -> float:
    """sum_{k>=0} (2k+1)^2 (-x)^{k(k+1)/2}."""
    return _series(x, deriv=False)


def series_S_prime(x: float) -> float:
    return _series(x, deriv=True)


def solve_lambda(scan_step: float = 0.01, bisect_width: float = 1e-4) -> NinthReport:
    """Smallest positive root of ``series_S`` and the derived b0, b1."""
    lo, hi = BRACKET
    if not (series_S(lo) > 0 > series_S(0.2)):
        raise RootNotBracketed("expected S(0) > 0 > S(0.2)")
    # first sign change from the left guarantees the smallest root
    x = lo
    while True:
        nxt = min(x + scan_step, hi)
        if series_S(nxt) <= 0:
            a, b = x, nxt
            break
        if nxt >= hi:
            raise RootNotBracketed(f"no sign change of S on {BRACKET}")
        x = nxt
    while b - a > bisect_width:
        m = 0.5 * (a + b)
        if series_S(m) > 0:
            a = m
        else:
            b = m
    r = 0.5 * (a + b)
    for _ in range(50):
        step = series_S(r) / series_S_prime(r)
        r -= step
        if abs(step) < 1e-16:
            break
    if not a <= r <= b:
        raise RootNotBracketed("Newton left the bisection bracket")
    b0 = -math.log(r) / (2 * math.pi)
    return NinthReport(lambda_=r, b0=b0, b1=1 / (4 * b0), residual=abs(series_S(r)))
