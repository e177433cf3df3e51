import math

import pytest

from ptolemy.algebra import Field, KScalar
from ptolemy.crossratio import (
    CrossRatioTriple,
    Quadruple,
    cross_ratio,
    cross_ratio_from_lifts,
    cross_record,
    fundamental_residuals,
    metric_ratio,
    oct_cross_pair,
    oct_inequality_residual,
    oct_symmetry_residuals,
    symmetry_residuals,
    triple,
)
from ptolemy.errors import DomainError
from ptolemy.hermitian import BoundaryPoint, KVector, lift
from ptolemy.isometry import random_motion
from ptolemy.sampling import (
    equality_quadruple,
    random_quadruple,
    random_scalar,
    real_line_point,
)

ASSOC = [Field.R, Field.C, Field.H]


def normalized_example():
    return Quadruple(
        BoundaryPoint.infinity("R", 3),
        BoundaryPoint.finite("R", [1, 0], 0),
        BoundaryPoint.finite("R", [0, -1], 0),
        BoundaryPoint.origin("R", 3),
    )


def lambda_quadruple(lam, field="R", n=2):
    zeros = [0] * (n - 2)
    return Quadruple(
        BoundaryPoint.infinity(field, n),
        BoundaryPoint.finite(field, [lam] + zeros, 0),
        BoundaryPoint.finite(field, [1] + zeros, 0),
        BoundaryPoint.origin(field, n),
    )


def test_normalized_example_values_exact():
    t = triple(normalized_example())
    assert (t.X1.re, t.X2.re, t.X3.re) == (0.5, 0.5, 1.0)
    assert fundamental_residuals(normalized_example()) == (0.0, 1.0)
    assert all(r == 0.0 for r in symmetry_residuals(normalized_example()))
    q = normalized_example()
    assert cross_ratio(*q.points).re == 0.5


@pytest.mark.parametrize("lam", [1.5, 2.0, 5.0, -0.5])
def test_lambda_example(lam):
    t = triple(lambda_quadruple(lam))
    assert t.X1.re == pytest.approx(lam ** 2 / (lam - 1) ** 2, rel=1e-14)
    assert t.X2.re == pytest.approx(1 / (lam - 1) ** 2, rel=1e-14)


@pytest.mark.parametrize("field", ASSOC)
@pytest.mark.parametrize("n", [2, 3])
def test_fundamental_relations(field, n, rng):
    for _ in range(300):
        r1, r2 = fundamental_residuals(random_quadruple(field, n, rng))
        assert abs(r1) < 1e-9
        assert r2 >= -1e-9
        if n == 2:
            assert abs(r2) < 1e-8


@pytest.mark.parametrize("case,fields", [
    ("n1", [Field.C, Field.H]),
    ("n2", ASSOC),
    ("zeta_zero", [Field.C, Field.H]),
    ("parallel", ASSOC),
])
def test_variety_two_equality_cases(case, fields, rng):
    for field in fields:
        for _ in range(100):
            q = equality_quadruple(field, 3, case, rng)
            assert abs(fundamental_residuals(q)[1]) < 1e-9


def test_parallel_needs_scalar_on_the_right(rng):
    # with lam on the left the quaternionic case is generically strict
    worst = 0.0
    for _ in range(20):
        z3 = [random_scalar("H", rng) for _ in range(2)]
        lam = random_scalar("H", rng)
        p2 = BoundaryPoint.finite("H", [lam * z for z in z3], random_scalar("H", rng).im)
        p3 = BoundaryPoint.finite("H", z3, random_scalar("H", rng).im)
        q = Quadruple(BoundaryPoint.infinity("H", 3), p2, p3, BoundaryPoint.origin("H", 3))
        worst = max(worst, fundamental_residuals(q)[1])
    assert worst > 1e-3


def test_real_cross_ratios(rng):
    for _ in range(50):
        q = Quadruple(*random_quadruple("R", 3, rng))
        t = triple(q)
        assert t.X1.re > 0 and t.X2.re > 0
        assert t.X3.re == pytest.approx(t.X2.re / t.X1.re, rel=1e-10)


def test_one_dimensional_complex_relations(rng):
    for _ in range(50):
        t = triple(Quadruple(*random_quadruple("C", 1, rng)))
        assert (t.X1 + t.X2).isclose(KScalar.one("C"), 1e-10)
        assert t.X3.isclose(-(t.X2 * t.X1.inverse()), 1e-10)


def test_quaternionic_lift_dependence(rng):
    for _ in range(50):
        pts = random_quadruple("H", 3, rng)
        lifts = [lift(p) for p in pts]
        lam = random_scalar("H", rng)
        scaled = list(lifts)
        scaled[1] = KVector("H", [s * lam for s in lifts[1]])
        x = cross_ratio_from_lifts(*lifts)
        y = cross_ratio_from_lifts(*scaled)
        assert x.isclose(cross_ratio(*pts), 1e-12)
        assert abs(x.modulus() - y.modulus()) < 1e-10 * x.modulus()
        assert abs(x.re - y.re) < 1e-10 * x.modulus()
        expected = lam.conj() * x * lam.conj().inverse()
        assert y.isclose(expected, 1e-10 * x.modulus())


@pytest.mark.parametrize("field", ASSOC)
def test_symmetry_relations(field, rng):
    for _ in range(100):
        q = Quadruple(*random_quadruple(field, 3, rng))
        assert max(abs(r) for r in symmetry_residuals(q)) < 1e-9


def test_inverse_relation_direct_product(rng):
    for _ in range(50):
        q = Quadruple(*random_quadruple("C", 3, rng))
        x1 = triple(q).X1
        x1243 = cross_ratio(*q.permuted((1, 2, 4, 3)).points)
        assert (x1243 * x1).isclose(KScalar.one("C"), 1e-10)


@pytest.mark.parametrize("field", ASSOC + [Field.O])
def test_metric_ratio_identity(field, rng):
    for _ in range(100):
        q = Quadruple(*random_quadruple(field, 3, rng))
        if field is Field.O:
            x1 = oct_cross_pair(q)[0]
        else:
            x1 = triple(q).X1.modulus()
        assert metric_ratio(q) == pytest.approx(math.sqrt(x1), rel=1e-9)


@pytest.mark.parametrize("field", ASSOC)
def test_invariance_under_motions(field, rng):
    for seed in range(100):
        q = Quadruple(*random_quadruple(field, 3, rng))
        m = random_motion(field, 3, seed, word_length=4)
        a, b = triple(q), triple(q.map(m))
        for x, y in ((a.X1, b.X1), (a.X2, b.X2), (a.X3, b.X3)):
            scale = x.modulus()
            if field is Field.H:
                assert abs(x.modulus() - y.modulus()) <= 1e-9 * scale
                assert abs(x.re - y.re) <= 1e-9 * scale
            else:
                assert (x - y).modulus() <= 1e-9 * scale


def test_octonionic_r_circle_pair():
    q = Quadruple(*(real_line_point("O", 2, t) for t in (0, 1, 2, 3)))
    x1, x2 = oct_cross_pair(q)
    assert x1 == pytest.approx(16 / 9, rel=1e-15)
    assert x2 == pytest.approx(1 / 9, rel=1e-15)
    assert abs(oct_inequality_residual(q)) < 1e-14


def test_octonionic_pair_with_infinity(rng):
    from ptolemy.heisenberg import OctBoundaryPoint, oct_dist
    p2, p3, _ = random_quadruple("O", 2, rng)[:3]
    q = Quadruple(OctBoundaryPoint.infinity(), p2, p3, OctBoundaryPoint.origin())
    x1, _ = oct_cross_pair(q)
    assert x1 == pytest.approx(oct_dist(p2, OctBoundaryPoint.origin()) ** 2 / oct_dist(p3, p2) ** 2, rel=1e-14)
    assert oct_cross_pair(q.permuted((2, 1, 4, 3)))[0] == pytest.approx(x1, rel=1e-12)


def test_octonionic_inequality_and_invariance(rng):
    for seed in range(200):
        q = Quadruple(*random_quadruple("O", 2, rng))
        assert oct_inequality_residual(q) <= 1e-9
        assert max(abs(r) for r in oct_symmetry_residuals(q)) < 1e-10 * 100
        moved = q.map(random_motion("O", 2, seed))
        a, b = oct_cross_pair(q), oct_cross_pair(moved)
        assert b[0] == pytest.approx(a[0], rel=1e-9)
        assert b[1] == pytest.approx(a[1], rel=1e-9)


def test_coincident_points_rejected(rng):
    p = random_quadruple("C", 2, rng)[0]
    with pytest.raises(DomainError):
        Quadruple(p, p, BoundaryPoint.origin("C", 2), BoundaryPoint.infinity("C", 2))
    with pytest.raises(DomainError):
        Quadruple(BoundaryPoint.infinity("C", 2), BoundaryPoint.infinity("C", 2), p,
                  BoundaryPoint.origin("C", 2))
    with pytest.raises(DomainError):
        Quadruple(p, BoundaryPoint.origin("C", 3), p, p)


def test_records_and_json(rng):
    q = normalized_example()
    assert cross_record(q) == {"X1": 0.5, "X2": 0.5, "X3": 1.0, "r1": 0.0, "r2": 1.0}
    assert Quadruple.from_json(q.to_json()) == q
    qh = Quadruple(*random_quadruple("H", 2, rng))
    rec = cross_record(qh)
    assert set(rec) == {"X1", "X2", "X3", "r1", "r2"}
    assert KScalar.from_json(rec["X1"]) == triple(qh).X1
    qo = Quadruple(*random_quadruple("O", 2, rng))
    assert set(cross_record(qo)) == {"X1", "X2", "residual"}
    assert Quadruple.from_json(qo.to_json()) == qo
    assert isinstance(triple(q), CrossRatioTriple)
    with pytest.raises(DomainError):
        triple(qo)
