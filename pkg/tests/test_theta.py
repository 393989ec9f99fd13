import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from torusgreen.exceptions import PrecisionLoss
from torusgreen.theta import theta, theta_constants, theta_constants_batch

mpmath.mp.dps = 30
# our theta_0 is the classical theta_4; argument v corresponds to pi v
MP_INDEX = {0: 4, 1: 1, 2: 2, 3: 3}


def mp_theta(k, v, tau, deriv=0):
    q = mpmath.exp(1j * mpmath.pi * mpmath.mpc(tau))
    val = mpmath.jtheta(MP_INDEX[k], mpmath.pi * mpmath.mpc(v), q, deriv)
    return complex(val * mpmath.pi**deriv)


taus = st.builds(complex, st.floats(-1, 1), st.floats(0.3, 2.0))
args = st.builds(complex, st.floats(-0.5, 0.5), st.floats(-0.4, 0.4))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([0, 1, 2, 3]), args, taus, st.integers(0, 3))
def test_theta_matches_mpmath(k, v, tau, deriv):
    v = complex(v.real, v.imag * tau.imag)
    ref = mp_theta(k, v, tau, deriv)
    got = theta(k, v, tau, deriv)
    assert abs(got - ref) <= 1e-11 * max(1.0, abs(ref))


def test_known_value():
    assert theta(3, 0, 1j) == pytest.approx(1.0864348112133082, abs=1e-15)


@settings(max_examples=25, deadline=None)
@given(args, taus)
def test_quasi_periodicity(v, tau):
    v = complex(v.real, v.imag * tau.imag)
    t = theta(1, v, tau)
    assert theta(1, v + 1, tau) == pytest.approx(-t, abs=1e-11)
    # theta_1(v + tau) = -exp(-i pi tau - 2 pi i v) theta_1(v)
    factor = -cmath.exp(-1j * math.pi * tau - 2j * math.pi * v)
    assert theta(1, v + tau, tau) == pytest.approx(factor * t, rel=1e-9, abs=1e-11)


def test_derivative_by_finite_difference():
    tau, v, h = 0.2 + 0.9j, 0.13 + 0.05j, 1e-5
    for k in (0, 1, 2, 3):
        fd = (theta(k, v + h, tau) - theta(k, v - h, tau)) / (2 * h)
        assert fd == pytest.approx(theta(k, v, tau, 1), rel=1e-8)


def test_constants_and_batch_agree():
    tau = np.array([1j, 0.5 + 0.8j, -0.3 + 1.4j])
    batch = theta_constants_batch(tau)
    for i, t in enumerate(tau):
        c = theta_constants(t)
        assert batch["th1p0"][i] == pytest.approx(c.th1p0, rel=1e-13)
        assert batch["th3pp"][i] == pytest.approx(c.second_derivative(3), rel=1e-12)
        assert c.value(0) == pytest.approx(mp_theta(0, 0, t), rel=1e-13)
        assert c.second_derivative(2) == pytest.approx(mp_theta(2, 0, t, 2), rel=1e-12)
    assert theta_constants(1j).th1ppp0 / theta_constants(1j).th1p0 == pytest.approx(-3 * math.pi, rel=1e-13)


def test_jacobi_identity():
    c = theta_constants(0.4 + 0.7j)
    # theta_1' = pi theta_0 theta_2 theta_3
    assert c.th1p0 == pytest.approx(math.pi * c.value(0) * c.value(2) * c.value(3), rel=1e-13)


def test_small_imaginary_part_rejected():
    with pytest.raises(PrecisionLoss):
        theta(1, 0.1, 0.3 + 0.01j)
    with pytest.raises(PrecisionLoss):
        theta_constants(0.04j)
