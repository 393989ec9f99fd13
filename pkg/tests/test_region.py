import numpy as np
import pytest

from torusgreen.elliptic import build_context
from torusgreen.exceptions import RootNotBracketed
from torusgreen.green import count_oracle
from torusgreen.io import image_bytes
from torusgreen.region import (
    CODE_BOUNDARY,
    CODE_FIVE,
    CODE_THREE,
    boundary_scan_halfline,
    classify_taus,
    render_region,
    write_region_csv,
)


def test_classify_taus():
    codes, m = classify_taus(np.array([1j, np.exp(1j * np.pi / 3)]))
    assert codes.tolist() == [CODE_THREE, CODE_FIVE]
    codes, _ = classify_taus(np.array([0.5 + 0.7047615813324536j]))
    assert codes.tolist() == [CODE_BOUNDARY]


def test_region_translation_invariance():
    scan = render_region((-1.0, 1.0), (0.3, 1.5), 200, 60)
    c = scan.image.codes
    left, right = c[:, :100], c[:, 100:]
    diff = left != right
    zero = (left == 0) | (right == 0)
    near = zero.copy()
    for d in (-1, 1):
        near |= np.roll(zero, d, axis=1) | np.roll(zero, d, axis=0)
    assert not np.any(diff & ~near)


@pytest.mark.slow
def test_oracle_agreement_on_subgrid():
    scan = render_region((-1.0, 1.0), (0.2, 2.0), 64, 64)
    taus = scan.tau_grid()[::4, ::4]
    codes = scan.image.codes[::4, ::4]
    for t, c in zip(taus.ravel(), codes.ravel()):
        if c == CODE_BOUNDARY:
            continue
        assert count_oracle(build_context(complex(t))) == (3 if c == CODE_THREE else 5)


def test_region_deterministic_and_csv(tmp_path):
    a = render_region((-0.5, 0.5), (0.5, 1.0), 30, 20)
    b = render_region((-0.5, 0.5), (0.5, 1.0), 30, 20)
    assert image_bytes(a.image, "ppm") == image_bytes(b.image, "ppm")
    p = tmp_path / "r.csv"
    write_region_csv(a, p)
    lines = p.read_text().splitlines()
    assert lines[0] == "re_tau,im_tau,min_m" and len(lines) == 601


def test_region_rejects_low_window():
    with pytest.raises(ValueError):
        render_region((-1, 1), (0.01, 1.0), 10, 10)


def test_boundary_scan_needs_bracket():
    with pytest.raises(RootNotBracketed):
        boundary_scan_halfline(0.4, 0.6)
