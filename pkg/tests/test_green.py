import cmath
import math

import numpy as np
import pytest

from torusgreen.elliptic import build_context
from torusgreen.exceptions import BoundaryWarning, DegenerateCriterion, PoleInput
from torusgreen.green import (
    ATTRACTING,
    NEUTRAL,
    REPELLING,
    classify,
    coefficients,
    count_oracle,
    criterion,
    criterion_values_batch,
    field_F,
    find_critical_points,
    green_value,
    multiplier_modulus,
)
from torusgreen.lattice import make_lattice
from torusgreen.ninth import solve_lambda

HEX = cmath.exp(1j * math.pi / 3)
TAUS = [1j, HEX, 0.5 + 0.6j, 0.3 + 1.7j, -0.4 + 0.5j]


def grad_fd(z, tau, h=1e-5):
    gx = (green_value(z + h, tau) - green_value(z - h, tau)) / (2 * h)
    gy = (green_value(z + 1j * h, tau) - green_value(z - 1j * h, tau)) / (2 * h)
    return complex(gx, gy)


@pytest.mark.parametrize("tau", TAUS)
def test_critical_points_are_critical_for_green(tau):
    for p in find_critical_points(build_context(tau)):
        assert abs(grad_fd(p.z, tau)) < 1e-7


@pytest.mark.parametrize("tau", [1j, 0.3 + 1.7j])
def test_green_laplacian_and_symmetry(tau):
    rng = np.random.default_rng(1)
    h = 1e-3
    for _ in range(10):
        z = complex(rng.uniform(0.2, 0.8), rng.uniform(0.2, 0.8) * tau.imag)
        lap = (green_value(z + h, tau) + green_value(z - h, tau) + green_value(z + 1j * h, tau)
               + green_value(z - 1j * h, tau) - 4 * green_value(z, tau)) / h**2
        # Delta G = 1/|T| away from the lattice
        assert lap == pytest.approx(1 / tau.imag, rel=1e-4)
        assert green_value(-z, tau) == pytest.approx(green_value(z, tau), abs=1e-12)
        assert green_value(z + 1 + tau, tau) == pytest.approx(green_value(z, tau), abs=1e-12)


def test_green_normalization_and_singularity():
    tau = 0.2 + 1.1j
    n = 200
    s = (np.arange(n) + 0.5) / n
    S, T = np.meshgrid(s, s)
    assert abs(np.mean(green_value(S + T * tau, tau, normalize=True))) < 1e-3
    r = 1e-4
    assert green_value(r, tau) + math.log(r) / (2 * math.pi) == pytest.approx(
        green_value(2 * r, tau) + math.log(2 * r) / (2 * math.pi), abs=1e-6)
    with pytest.raises(PoleInput):
        green_value(1 + tau, tau)


def test_field_is_gradient_direction():
    # F vanishes exactly where grad G does, and is odd and periodic
    tau = 0.5 + 0.6j
    ctx = build_context(tau)
    z = 0.27 + 0.31j
    assert field_F(-z, ctx) == pytest.approx(-field_F(z, ctx), abs=1e-12)
    assert field_F(z + 1, ctx) == pytest.approx(field_F(z, ctx), abs=1e-10)
    assert field_F(z + tau, ctx) == pytest.approx(field_F(z, ctx), abs=1e-10)


def test_square_lattice_points():
    pts = find_critical_points(build_context(1j))
    assert [p.kind for p in pts] == [REPELLING, REPELLING, ATTRACTING]
    assert pts[2].z == pytest.approx(0.5 + 0.5j, abs=1e-12)
    assert pts[2].multiplier_modulus < 1e-12


def test_hexagonal_points():
    pts = find_critical_points(build_context(HEX))
    assert len(pts) == 5
    extras = sorted((p.z for p in pts if p.kind == ATTRACTING), key=lambda z: z.imag)
    assert extras[0] == pytest.approx((1 + HEX) / 3, abs=1e-10)
    assert extras[1] == pytest.approx(2 * (1 + HEX) / 3, abs=1e-10)


def test_general_lattice_same_count():
    w1 = 0.7 * cmath.exp(1.1j)
    for tau in (1j, HEX):
        L = make_lattice(w1, w1 * tau)
        assert len(find_critical_points(build_context(L))) == criterion(tau).predicted_count


def test_parabolic_point():
    tau = 0.5 + 1j * solve_lambda().b1
    with pytest.warns(BoundaryWarning):
        pts = find_critical_points(build_context(tau))
    assert len(pts) == 3
    half = [p for p in pts if abs(p.z - 0.5) < 1e-9][0]
    assert half.kind == NEUTRAL
    rep = criterion(tau)
    assert rep.on_boundary and rep.predicted_count == 3


def test_criterion_values():
    assert criterion(1j).predicted_count == 3
    assert criterion(HEX).predicted_count == 5
    b0 = solve_lambda().b0
    assert criterion(0.5 + 1j * (b0 - 0.01)).predicted_count == 5
    assert criterion(0.5 + 1j * (b0 + 0.01)).predicted_count == 3
    taus = np.array(TAUS)
    assert criterion_values_batch(taus) == pytest.approx([criterion(t).min_value for t in TAUS], rel=1e-12)


def test_degenerate_criterion_warns():
    b0 = solve_lambda().b0
    with pytest.warns(DegenerateCriterion):
        rep = criterion(0.5 + 1j * b0)
    assert rep.degenerate and rep.predicted_count == 3


def test_multiplier_classes():
    assert classify(0.5) == ATTRACTING
    assert classify(1.0) == NEUTRAL
    assert classify(1.5) == REPELLING
    ctx = build_context(1j)
    co = coefficients(ctx)
    assert co.b.real == pytest.approx(-math.pi)
    assert multiplier_modulus(0.5, ctx) == pytest.approx(abs(ctx.e[0] - co.a) / math.pi)


@pytest.mark.parametrize("tau", TAUS)
def test_oracle_agrees(tau):
    ctx = build_context(tau)
    assert count_oracle(ctx) == len(find_critical_points(ctx)) == criterion(tau).predicted_count


def test_oracle_grid_too_coarse():
    with pytest.raises(ValueError):
        count_oracle(build_context(1j), grid_n=16)
