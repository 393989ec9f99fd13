import math

import mpmath
import pytest

from torusgreen.ninth import series_S, series_S_prime, solve_lambda

mpmath.mp.dps = 40


def mp_S(x):
    return mpmath.nsum(lambda k: (2 * k + 1) ** 2 * (-x) ** (k * (k + 1) / 2), [0, mpmath.inf])


def test_series_against_mpmath():
    for x in (0.0, 0.05, 0.1, 0.3, 0.6):
        assert series_S(x) == pytest.approx(float(mp_S(mpmath.mpf(x))), rel=1e-13, abs=1e-14)
    h = 1e-6
    assert series_S_prime(0.2) == pytest.approx((series_S(0.2 + h) - series_S(0.2 - h)) / (2 * h), rel=1e-7)


def test_root_against_mpmath():
    ref = mpmath.findroot(mp_S, 0.1)
    r = solve_lambda()
    assert r.lambda_ == pytest.approx(float(ref), abs=1e-14)
    assert r.b0 == pytest.approx(-math.log(r.lambda_) / (2 * math.pi))
    assert 4 * r.b0 * r.b1 == pytest.approx(1.0, abs=1e-14)
    assert r.residual < 1e-14
    assert set(r.as_dict()) == {"lambda", "b0", "b1", "residual"}


def test_smallest_root():
    # no sign change before the returned root
    r = solve_lambda().lambda_
    assert all(series_S(x) > 0 for x in [i * r / 50 for i in range(50)])


def test_domain():
    with pytest.raises(ValueError):
        series_S(1.0)


def test_spec_values_and_identities():
    assert series_S(0.0) == 1.0
    assert series_S(0.1) == pytest.approx(0.075049, abs=1e-5)
    assert abs(series_S(0.10765391)) < 1e-6
    r = solve_lambda()
    assert r.lambda_ == pytest.approx(math.exp(-math.pi / (2 * r.b1)), abs=1e-10)
    xs = [i * r.lambda_ / 999 for i in range(1000)]
    vals = [series_S(x) for x in xs]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_cross_module_consistency():
    from torusgreen.green import criterion
    from torusgreen.theta import theta_constants

    r = solve_lambda()
    assert abs(theta_constants(0.5 + 1j * r.b0).second_derivative(2)) < 1e-6
    for b in (r.b0, r.b1):
        assert criterion(0.5 + 1j * (b - 1e-6)).predicted_count != criterion(0.5 + 1j * (b + 1e-6)).predicted_count
