import numpy as np
import pytest
from hypothesis import given, strategies as st

from torusgreen.exceptions import DegenerateLattice
from torusgreen.lattice import (
    dist_to_lattice,
    from_tau,
    lattice_coords,
    lattice_distance,
    make_lattice,
    modular_apply,
    reduce_mod_lattice,
    same_point,
    torus_distance,
)

coord = st.floats(-5, 5, allow_nan=False)
taus = st.builds(complex, st.floats(-1, 1), st.floats(0.2, 2.5))


def test_degenerate_lattice_rejected():
    with pytest.raises(DegenerateLattice):
        make_lattice(1.0, 2.0)
    with pytest.raises(DegenerateLattice):
        make_lattice(1.0, -1j)
    with pytest.raises(DegenerateLattice):
        make_lattice(0, 1j)


def test_half_periods_and_area():
    L = make_lattice(2.0, 2j)
    assert L.tau == 1j
    assert L.half_periods == (1.0, 1 + 1j, 1j)
    assert L.area == pytest.approx(4.0)


@given(taus, coord, coord)
def test_coords_roundtrip(tau, s, t):
    L = from_tau(tau)
    s2, t2 = lattice_coords(L.point(s, t), L)
    assert s2 == pytest.approx(s, abs=1e-12)
    assert t2 == pytest.approx(t, abs=1e-12)


@given(taus, coord, coord, st.integers(-4, 4), st.integers(-4, 4))
def test_reduce_is_in_cell_and_translation_invariant(tau, s, t, m, n):
    L = from_tau(tau)
    z = L.point(s, t)
    r = reduce_mod_lattice(z, L)
    rs, rt = lattice_coords(r, L)
    assert 0 <= rs < 1 and 0 <= rt < 1
    assert lattice_distance(reduce_mod_lattice(z + m + n * tau, L), r, L) < 1e-9
    assert same_point(z, z + m + n * tau, L)


def test_distances():
    L = from_tau(1j)
    assert torus_distance(0.1, 0.9, L) == pytest.approx(0.2)
    assert lattice_distance(0.1 + 0.1j, 0.9 + 0.95j, L) == pytest.approx(0.2)
    assert dist_to_lattice(0.9 + 0.9j, L) == pytest.approx(np.hypot(0.1, 0.1))


def test_modular_maps():
    assert modular_apply("T", 0.2 + 1j) == pytest.approx(1.2 + 1j)
    assert modular_apply("S", 1j) == pytest.approx(1j)
    t = 0.3 + 0.8j
    assert modular_apply("T2", t) == pytest.approx((t - 1) / (2 * t - 1))
    with pytest.raises(ValueError):
        modular_apply("U", t)
