import math

import numpy as np
import pytest

from ptolemy.algebra import Field, KScalar, basis, omod
from ptolemy.errors import DomainError
from ptolemy.heisenberg import (
    INF_DIST,
    OctBoundaryPoint,
    dist,
    dist_group,
    dist_lift,
    gauge,
    group_inv,
    group_mul,
    oct_dist,
    oct_dist_direct,
    oct_group_mul,
    oct_inv,
)
from ptolemy.hermitian import BoundaryPoint
from ptolemy.sampling import random_point, real_line_point

ASSOC = [Field.R, Field.C, Field.H]


def test_complex_group_law_example():
    p = BoundaryPoint.finite("C", [1], 0)
    q = BoundaryPoint.finite("C", [[0, 1]], 0)
    r = group_mul(p, q)
    assert r.zeta[0].coeffs == (1.0, 1.0)
    assert r.v.coeffs == (0.0, -2.0)


def test_real_group_law_is_vector_addition(rng):
    for _ in range(20):
        p, q = random_point("R", 4, rng), random_point("R", 4, rng)
        r = group_mul(p, q)
        assert np.array_equal(r.zeta_array, p.zeta_array + q.zeta_array)
        assert not np.any(r.v_array)


@pytest.mark.parametrize("field", ASSOC)
@pytest.mark.parametrize("n", [2, 3])
def test_group_axioms(field, n, rng):
    o = BoundaryPoint.origin(field, n)
    for _ in range(100):
        p, q, s = (random_point(field, n, rng) for _ in range(3))
        assert group_mul(p, o) == p
        assert group_mul(o, p) == p
        assert group_mul(group_inv(p), p).isclose(o, 0.0)
        assert group_mul(p, group_inv(p)).isclose(o, 0.0)
        assert group_mul(group_mul(p, q), s).isclose(group_mul(p, group_mul(q, s)), 1e-11)


def test_inverse_examples():
    o = BoundaryPoint.origin("H", 2)
    assert group_inv(o).isclose(o, 0.0)
    p = BoundaryPoint.finite("H", [basis("H", 1)], basis("H", 2))
    inv = group_inv(p)
    assert inv.zeta[0] == -basis("H", 1) and inv.v == -basis("H", 2)
    with pytest.raises(DomainError):
        group_inv(BoundaryPoint.infinity("H", 2))
    with pytest.raises(DomainError):
        group_mul(p, BoundaryPoint.infinity("H", 2))


def test_gauge_examples():
    assert gauge(BoundaryPoint.origin("C", 3)) == 0.0
    p = BoundaryPoint.finite("C", [0, 0], [0, 4])
    assert gauge(p) == 2.0
    assert gauge(BoundaryPoint.finite("C", [1, 0], 0)) == 1.0


@pytest.mark.parametrize("field", ASSOC)
def test_distance_paths_agree(field, rng):
    for _ in range(200):
        p, q = random_point(field, 3, rng), random_point(field, 3, rng)
        d = dist(p, q)
        assert abs(dist_group(p, q) - d) <= 1e-10 * d
        assert abs(dist_lift(p, q) - d) <= 1e-10 * d
        assert dist(q, p) == pytest.approx(d, rel=1e-14)


@pytest.mark.parametrize("field", ASSOC)
def test_distance_from_origin_is_gauge(field, rng):
    o = BoundaryPoint.origin(field, 3)
    for _ in range(50):
        p = random_point(field, 3, rng)
        assert dist(o, p) == pytest.approx(gauge(p), rel=1e-14)
        assert dist(p, p) == 0.0


@pytest.mark.parametrize("field", ASSOC)
def test_triangle_inequality(field, rng):
    for _ in range(2000):
        a, b, c = (random_point(field, 3, rng) for _ in range(3))
        assert dist(a, c) <= dist(a, b) + dist(b, c) + 1e-10


def test_real_case_is_euclidean(rng):
    for _ in range(100):
        p, q = random_point("R", 4, rng), random_point("R", 4, rng)
        euclid = float(np.linalg.norm(p.zeta_array[:, 0] - q.zeta_array[:, 0]))
        assert dist(p, q) == pytest.approx(euclid, rel=1e-14)
        s = random_point("R", 4, rng)
        # right translations are isometries when K = R
        assert dist(group_mul(p, s), group_mul(q, s)) == pytest.approx(dist(p, q), rel=1e-12)


@pytest.mark.parametrize("field", ASSOC + [Field.O])
def test_r_circle_distance(field):
    for s, t in [(0.0, 1.0), (-1.5, 2.0), (0.25, 0.3)]:
        p, q = real_line_point(field, 2, s), real_line_point(field, 2, t)
        from ptolemy.heisenberg import any_dist
        assert any_dist(p, q) == pytest.approx(abs(s - t), rel=1e-14)


def test_infinity_conventions():
    inf = BoundaryPoint.infinity("C", 2)
    o = BoundaryPoint.origin("C", 2)
    assert dist(inf, o) is INF_DIST and math.isinf(INF_DIST)
    assert dist(inf, inf) == 0.0
    assert oct_dist(OctBoundaryPoint.infinity(), OctBoundaryPoint.origin()) is INF_DIST
    assert oct_dist(OctBoundaryPoint.infinity(), OctBoundaryPoint.infinity()) == 0.0
    with pytest.raises(DomainError):
        dist(o, BoundaryPoint.origin("C", 3))


def _oct_point(rng):
    y = rng.uniform(-1, 1, 8)
    x = rng.uniform(-1, 1, 8)
    return OctBoundaryPoint.from_imag(x, y)


def test_oct_variety_projection():
    p = OctBoundaryPoint([-1.0, 0, 0, 0, 0, 0, 0, 0], [math.sqrt(2), 0, 0, 0, 0, 0, 0, 0])
    assert p.x.coeffs[0] == -1.0
    with pytest.raises(DomainError):
        OctBoundaryPoint(np.zeros(8), np.eye(8)[0])


def test_oct_group_law(rng):
    o = OctBoundaryPoint.origin()
    assert oct_inv(o) == o
    for _ in range(100):
        p, q, s = _oct_point(rng), _oct_point(rng), _oct_point(rng)
        assert oct_group_mul(o, p) == p
        assert oct_group_mul(p, oct_inv(p)).isclose(o, 0.0)
        assert oct_inv(oct_inv(p)) == p
        for r in (oct_group_mul(p, q), oct_group_mul(oct_group_mul(p, q), s)):
            assert abs(r.variety_residual()) <= 1e-12 * max(1.0, float(np.sum(r.y_array ** 2)))


def test_oct_distance(rng):
    o = OctBoundaryPoint.origin()
    for _ in range(100):
        p, q, s = _oct_point(rng), _oct_point(rng), _oct_point(rng)
        assert oct_dist(p, o) == pytest.approx(math.sqrt(float(omod(p.x_array))), rel=1e-14)
        assert oct_dist(p, p) == 0.0
        assert oct_dist(p, q) == pytest.approx(oct_dist_direct(p, q), rel=1e-10)
        assert oct_dist(p, q) == pytest.approx(oct_dist(q, p), rel=1e-12)
        assert oct_dist(p, s) <= oct_dist(p, q) + oct_dist(q, s) + 1e-10


def test_oct_json_round_trip(rng):
    p = _oct_point(rng)
    assert OctBoundaryPoint.from_json(p.to_json()) == p
    assert OctBoundaryPoint.from_json("inf").is_infinity
    assert OctBoundaryPoint.from_json({"x": KScalar.zero("O").to_json(),
                                       "y": [0] * 8}).is_origin()
