import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from confspace._rng import make_rng
from confspace.intrinsic import (
    DimensionError,
    correlation_sum,
    correlation_sums,
    default_radius_range,
    intrinsic_dimension,
    pairwise_distances,
)


def c_oracle(points, r):
    pts = [np.asarray(p, float) for p in points]
    k = len(pts)
    hits = sum(1 for a, b in itertools.combinations(pts, 2) if math.dist(a, b) < r)
    return 2 * hits / (k * (k - 1))


def test_correlation_sum_examples():
    pts = [[0.0], [1.0], [2.0]]
    assert correlation_sum(pts, 1.5) == pytest.approx(2 / 3)
    assert correlation_sum(pts, 10.0) == 1.0
    assert correlation_sum(pts, 0.5) == 0.0
    # the boundary is strict
    assert correlation_sum(pts, 1.0) == 0.0


def test_boolean_points_use_hamming_root():
    pts = [[0, 0, 0], [1, 1, 0], [1, 1, 1]]
    assert correlation_sum(pts, 1.01) == pytest.approx(1 / 3)
    assert correlation_sum(pts, math.sqrt(3) + 1e-9) == 1.0


def test_errors():
    with pytest.raises(DimensionError):
        correlation_sum([[1.0]], 1.0)
    with pytest.raises(DimensionError):
        correlation_sum([[1.0], [2.0]], 0.0)
    with pytest.raises(DimensionError):
        intrinsic_dimension([[1.0], [2.0], [3.0]], r0=2, rmax=1)
    with pytest.raises(DimensionError):
        intrinsic_dimension([[1.0], [2.0]], steps=1)
    with pytest.raises(DimensionError, match="coincide"):
        default_radius_range(np.ones((5, 2)))
    with pytest.raises(DimensionError, match="usable"):
        intrinsic_dimension([[0.0], [10.0]], r0=1, rmax=2)


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 30), st.integers(1, 4), st.integers(0, 2**32))
def test_correlation_sums_match_oracle(k, d, seed):
    rng = make_rng(seed)
    pts = rng.integers(0, 3, (k, d)).astype(float)
    radii = np.sort(rng.uniform(0.1, 4.0, 6))
    got = correlation_sums(pts, radii)
    assert got.tolist() == pytest.approx([c_oracle(pts, r) for r in radii])
    assert (np.diff(got) >= 0).all() and ((got >= 0) & (got <= 1)).all()
    # order of the radii does not matter
    assert correlation_sums(pts, radii[::-1]).tolist() == got[::-1].tolist()


def test_pairwise_distances():
    d = pairwise_distances([[0.0, 0.0], [3.0, 4.0], [0.0, 1.0]])
    assert d.tolist() == [5.0, 1.0, pytest.approx(math.sqrt(18))]


@pytest.mark.parametrize("lam", [0.25, 0.5, 2.0, 8.0])
def test_scale_covariance(lam):
    # powers of two keep every distance comparison exact
    pts = make_rng(1).integers(0, 64, (80, 3)).astype(float) / 8
    radii = np.geomspace(0.2, 5.0, 12)
    assert correlation_sums(pts * lam, radii * lam).tolist() == correlation_sums(pts, radii).tolist()
    a = intrinsic_dimension(pts, 0.3, 3.0, 10).dimension
    b = intrinsic_dimension(pts * lam, 0.3 * lam, 3.0 * lam, 10).dimension
    assert a == pytest.approx(b, abs=1e-12)


def test_estimate_fields():
    est = intrinsic_dimension(make_rng(0).random((200, 2)), steps=8)
    assert len(est.r_values) == 8 == len(est.c_values) == len(est.slopes) + 1
    assert list(est.c_values) == sorted(est.c_values)
    finite = [s for s in est.slopes if np.isfinite(s)]
    assert est.dimension == pytest.approx(np.mean(finite))
    assert est.table_csv().splitlines()[0] == "r,C"
    assert len(est.log_c_values) == 8
    assert est.to_dict()["dimension"] == est.dimension


def test_segment_in_five_dims():
    rng = make_rng(0)
    t = rng.random(500)
    direction = rng.normal(size=5)
    pts = t[:, None] * direction / np.linalg.norm(direction)
    assert intrinsic_dimension(pts).dimension == pytest.approx(1.0, abs=0.25)


def test_unit_square():
    assert intrinsic_dimension(make_rng(0).random((500, 2))).dimension == pytest.approx(2.0, abs=0.3)


@pytest.mark.parametrize("ambient", [1, 2, 3])
def test_bounded_by_ambient(ambient):
    for seed in range(3):
        est = intrinsic_dimension(make_rng(seed).random((400, ambient)))
        assert est.dimension <= ambient + 0.3


def test_boolean_cube_default_range_counts_lattice_levels():
    from confspace.synthetic import full_space

    # 1st/10th percentiles sit on Hamming levels 1 and 2: C = 8/255 and 36/255
    est = intrinsic_dimension(full_space(8))
    assert est.dimension == pytest.approx(math.log(36 / 8) / math.log(math.sqrt(2)), rel=1e-6)
    # all pairs of the 3-cube's nearest level exceed 10%: range widens to level 2
    lo, hi = default_radius_range(full_space(3))
    assert lo == pytest.approx(1.0) and hi == pytest.approx(math.sqrt(2))
