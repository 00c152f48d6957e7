import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualbern import (
    DomainError,
    ParameterError,
    TriPatch,
    bernstein_eval,
    bernstein_matrix,
    elevate_degree,
    patch_eval,
    theta,
    theta_position,
    theta_size,
    weight_eval,
)
from helpers import interior_points, random_patch


def test_pyramid_matches_basis_expansion():
    rng = np.random.default_rng(0)
    for n in (0, 1, 3, 5):
        p = random_patch(rng, n, dim=3)
        pts = interior_points(rng, 25)
        got = patch_eval(p, pts)
        want = (p.values.T @ bernstein_matrix(n, pts)).T
        assert np.allclose(got, want, rtol=1e-12, atol=1e-13)


def test_corner_values_are_corner_coefficients():
    rng = np.random.default_rng(1)
    n = 4
    p = random_patch(rng, n, dim=2)
    corners = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
    got = patch_eval(p, corners)
    idx = [theta_position(n, n, 0), theta_position(n, 0, n), theta_position(n, 0, 0)]
    assert np.allclose(got, p.values[idx], rtol=0, atol=1e-15)


def test_constant_rational_patch_is_constant():
    rng = np.random.default_rng(2)
    n = 3
    w = np.exp(rng.uniform(-1, 1, theta_size(n)))
    p = TriPatch(n, np.ones((theta_size(n), 1)), w)
    pts = interior_points(rng, 40)
    assert np.allclose(patch_eval(p, pts), 1.0, rtol=0, atol=1e-13)


def test_equal_weights_match_polynomial_evaluation():
    rng = np.random.default_rng(3)
    n = 4
    vals = rng.standard_normal((theta_size(n), 2))
    poly = TriPatch(n, vals)
    rat = TriPatch(n, vals, np.full(theta_size(n), 2.5))
    pts = interior_points(rng, 30)
    assert np.allclose(patch_eval(poly, pts), patch_eval(rat, pts), rtol=1e-13, atol=1e-14)


@pytest.mark.parametrize("rational", [False, True])
def test_elevation_preserves_the_surface(rational):
    rng = np.random.default_rng(4)
    p = random_patch(rng, 3, dim=2, rational=rational)
    q = elevate_degree(p, 6)
    assert q.n == 6
    pts = interior_points(rng, 40)
    assert np.allclose(patch_eval(p, pts), patch_eval(q, pts), rtol=1e-11, atol=1e-12)
    same = elevate_degree(p, 3)
    assert np.allclose(same.values, p.values, rtol=0, atol=0)


def test_elevation_rejects_lower_target():
    p = TriPatch(2, np.ones((6, 1)))
    with pytest.raises(ParameterError):
        elevate_degree(p, 1)


@settings(max_examples=30, deadline=None)
@given(
    st.integers(0, 8),
    st.floats(0.0, 1.0, allow_nan=False),
    st.floats(0.0, 1.0, allow_nan=False),
)
def test_partition_of_unity(n, s, t):
    # map the unit square onto the triangle to get an arbitrary valid point
    x1 = s
    x2 = t * (1.0 - s)
    total = sum(bernstein_eval(n, (k1, k2), (x1, x2)) for k1, k2 in theta(n))
    assert total == pytest.approx(1.0, rel=1e-12)


def test_single_basis_matches_matrix_row():
    rng = np.random.default_rng(6)
    n = 5
    pts = interior_points(rng, 8)
    mat = bernstein_matrix(n, pts)
    for pos, k in enumerate(theta(n)):
        for j in range(pts.shape[0]):
            assert bernstein_eval(n, k, pts[j]) == pytest.approx(mat[pos, j], rel=1e-13)


def test_weight_values():
    pts = np.array([[0.25, 0.25], [0.5, 0.25]])
    # flat exponents: the normalized weight is the constant 2 / area = 2
    assert np.allclose(weight_eval((0.0, 0.0, 0.0), pts), 2.0, rtol=1e-15)
    got = weight_eval((1.0, 0.0, 0.0), np.array([[0.5, 0.25]]))
    assert got[0] == pytest.approx(3.0, rel=1e-14)


def test_weight_unbounded_at_edge():
    with pytest.raises(DomainError):
        weight_eval((-0.5, 0.0, 0.0), np.array([[0.0, 0.5]]))
    # a zero coordinate with a *positive* exponent is fine (weight is 0 there)
    out = weight_eval((1.0, 0.0, 0.0), np.array([[0.0, 0.5]]))
    assert out[0] == 0.0


def test_points_outside_triangle_rejected():
    p = TriPatch(1, np.zeros((3, 1)))
    with pytest.raises(DomainError):
        patch_eval(p, np.array([[0.7, 0.7]]))
    with pytest.raises(DomainError):
        patch_eval(p, np.array([[-0.1, 0.5]]))
    with pytest.raises(ParameterError):
        patch_eval(p, np.zeros((3, 3)))


def test_patch_validation():
    with pytest.raises(ParameterError):
        TriPatch(2, np.zeros((5, 1)))  # needs 6 rows
    with pytest.raises(ParameterError):
        TriPatch(1, np.zeros((3, 1)), np.array([1.0, -1.0, 1.0]))
    with pytest.raises(ParameterError):
        TriPatch(1, np.zeros((3, 1)), np.array([1.0, np.inf, 1.0]))
    p = TriPatch(2, np.arange(6.0))  # 1-d values become a single column
    assert p.values.shape == (6, 1)
    assert p.dim == 1 and not p.is_rational
