"""Cross-ratios of boundary quadruples.

For K in {R, C, H}::

    X(p1, p2, p3, p4) = <p4, p2> <p4, p1>^-1 <p3, p1> <p3, p2>^-1

on standard lifts, multiplied left to right. The three basic values are
``X1 = [1234]``, ``X2 = [1324]``, ``X3 = [2314]``.

For O only the real cross-ratio is available::

    X(p1, p2, p3, p4) = d(p4, p2)^2 d(p3, p1)^2 / (d(p4, p1)^2 d(p3, p2)^2)

with factors touching infinity cancelled, and ``X1 = [1234]``, ``X2 = [1324]``.

The ``*_arrays`` kernels work on a pairing table ``G[..., i, j, :] = <p_i, p_j>``
and broadcast over leading batch axes.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .algebra import Field, KScalar, oinv, omod, omul, onorm2
from .errors import DomainError
from .heisenberg import OctBoundaryPoint, any_dist, oct_dist_arrays
from .hermitian import BoundaryPoint, KVector, herm_form_arrays, pairing_array, pairing_arrays

__all__ = [
    "DISTINCT_TOL",
    "Quadruple",
    "CrossRatioTriple",
    "cross_ratio",
    "cross_ratio_from_lifts",
    "triple",
    "symmetry_residuals",
    "SYMMETRY_RELATIONS",
    "fundamental_residuals",
    "oct_cross_pair",
    "oct_inequality_residual",
    "oct_symmetry_residuals",
    "OCT_SYMMETRY_RELATIONS",
    "real_cross_ratio",
    "distance_table",
    "metric_ratio",
    "cross_record",
    "pairing_table",
]

DISTINCT_TOL = 1e-10

Point = Union[BoundaryPoint, OctBoundaryPoint]


# --------------------------------------------------------------------------
# kernels

def cross_ratio_arrays(g, i, j, k, l):
    """``X(p_i, p_j, p_k, p_l)`` from a pairing table (0-based indices)."""
    g = np.asarray(g, dtype=float)
    t = omul(g[..., l, j, :], oinv(g[..., l, i, :]))
    t = omul(t, g[..., k, i, :])
    return omul(t, oinv(g[..., k, j, :]))


def pairing_table_arrays(zeta, v):
    """Pairing table of finite K-points stacked on axis -3 (zeta) / -2 (v)."""
    zeta = np.asarray(zeta, dtype=float)
    v = np.asarray(v, dtype=float)
    return pairing_arrays(zeta[..., :, None, :, :], v[..., :, None, :],
                          zeta[..., None, :, :, :], v[..., None, :, :])


def oct_sqdist_table_arrays(x, y):
    """Squared-distance table of finite O-points stacked on axis -2."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return oct_dist_arrays(x[..., :, None, :], y[..., :, None, :],
                           x[..., None, :, :], y[..., None, :, :]) ** 2


def triple_arrays(g):
    return (cross_ratio_arrays(g, 0, 1, 2, 3),
            cross_ratio_arrays(g, 0, 2, 1, 3),
            cross_ratio_arrays(g, 1, 2, 0, 3))


def fundamental_arrays(x1, x2, x3):
    """Residuals ``r1 = |X2| - |X1||X3|`` and ``r2`` (RHS minus LHS slack >= 0)."""
    a1, a2, a3 = omod(x1), omod(x2), omod(x3)
    r1 = a2 - a1 * a3
    r2 = 2 * a1 ** 2 * x3[..., 0] - (a1 ** 2 + a2 ** 2 - 2 * x1[..., 0] - 2 * x2[..., 0] + 1)
    return r1, r2


def real_cross_arrays(d2, i, j, k, l):
    """Real cross-ratio from a table of squared distances (all finite)."""
    return (d2[..., l, j] * d2[..., k, i]) / (d2[..., l, i] * d2[..., k, j])


def oct_inequality_arrays(x1, x2):
    return x1 ** 2 + x2 ** 2 - 2 * x1 - 2 * x2 - 2 * x1 * x2 + 1


# --------------------------------------------------------------------------
# value types

def _space(p: Point):
    if isinstance(p, OctBoundaryPoint):
        return Field.O, 2
    if isinstance(p, BoundaryPoint):
        return p.field, p.n
    raise DomainError(f"not a boundary point: {type(p).__name__}")


@dataclass(frozen=True)
class Quadruple:
    """Four pairwise distinct boundary points of one space."""

    p1: Point
    p2: Point
    p3: Point
    p4: Point

    def __post_init__(self):
        pts = self.points
        space = _space(pts[0])
        for p in pts[1:]:
            if _space(p) != space:
                raise DomainError("quadruple points live in different spaces")
        for a in range(4):
            for b in range(a + 1, 4):
                if pts[a].is_infinity and pts[b].is_infinity:
                    raise DomainError(f"points {a + 1} and {b + 1} are both infinity")
                if any_dist(pts[a], pts[b]) <= DISTINCT_TOL:
                    raise DomainError(f"points {a + 1} and {b + 1} coincide")

    @classmethod
    def coerce(cls, q) -> "Quadruple":
        if isinstance(q, Quadruple):
            return q
        pts = tuple(q)
        if len(pts) != 4:
            raise DomainError(f"a quadruple needs four points, got {len(pts)}")
        return cls(*pts)

    @property
    def points(self) -> tuple:
        return (self.p1, self.p2, self.p3, self.p4)

    @property
    def field(self) -> Field:
        return _space(self.p1)[0]

    @property
    def n(self) -> int:
        return _space(self.p1)[1]

    def permuted(self, order: Sequence[int]) -> "Quadruple":
        """Reorder with 1-based indices, e.g. ``(2, 1, 4, 3)``."""
        pts = self.points
        return Quadruple(*(pts[i - 1] for i in order))

    def map(self, motion) -> "Quadruple":
        from .isometry import apply
        return Quadruple(*(apply(motion, p) for p in self.points))

    def to_json(self) -> dict:
        return {"field": self.field.name, "n": self.n,
                "points": [p.to_json() for p in self.points]}

    @classmethod
    def from_json(cls, obj) -> "Quadruple":
        try:
            field = Field.parse(obj["field"])
            pts = obj["points"]
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed quadruple {obj!r}") from exc
        if not isinstance(pts, list) or len(pts) != 4:
            raise DomainError("a quadruple needs a list of four points")
        if field is Field.O:
            return cls(*(OctBoundaryPoint.from_json(p) for p in pts))
        try:
            n = int(obj["n"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError("quadruple record needs an integer n") from exc
        return cls(*(BoundaryPoint.from_json(p, field, n) for p in pts))


def _real_json(x) -> Union[float, dict]:
    if isinstance(x, KScalar):
        return x.re if x.field is Field.R else x.to_json()
    return float(x)


@dataclass(frozen=True)
class CrossRatioTriple:
    """``(X1, X2, X3)``; for O the values are reals and ``X3`` is ``None``."""

    X1: Union[KScalar, float]
    X2: Union[KScalar, float]
    X3: Optional[KScalar] = None

    @property
    def octonionic(self) -> bool:
        return self.X3 is None

    def to_json(self) -> dict:
        out = {"X1": _real_json(self.X1), "X2": _real_json(self.X2)}
        if self.X3 is not None:
            out["X3"] = _real_json(self.X3)
        return out


# --------------------------------------------------------------------------
# K in {R, C, H}

def _k_quadruple(q) -> Quadruple:
    q = Quadruple.coerce(q)
    if q.field is Field.O:
        raise DomainError("K-cross-ratios need an associative field; use oct_cross_pair")
    return q


def pairing_table(q: Quadruple) -> np.ndarray:
    pts = q.points
    g = np.empty((4, 4, 8))
    for a in range(4):
        for b in range(4):
            g[a, b] = pairing_array(pts[a], pts[b])
    return g


def cross_ratio(p1: BoundaryPoint, p2: BoundaryPoint, p3: BoundaryPoint,
                p4: BoundaryPoint) -> KScalar:
    q = _k_quadruple((p1, p2, p3, p4))
    return KScalar._wrap(q.field, cross_ratio_arrays(pairing_table(q), 0, 1, 2, 3))


def cross_ratio_from_lifts(l1: KVector, l2: KVector, l3: KVector, l4: KVector) -> KScalar:
    """The cross-ratio of arbitrary (not necessarily standard) lifts."""
    lifts = (l1, l2, l3, l4)
    field = l1.field
    if any(l.field is not field or len(l) != len(l1) for l in lifts):
        raise DomainError("lifts live in different spaces")
    g = np.empty((4, 4, 8))
    for a in range(4):
        for b in range(4):
            g[a, b] = herm_form_arrays(lifts[a].array, lifts[b].array)
    for a, b in ((3, 1), (3, 0), (2, 0), (2, 1)):
        if onorm2(g[a, b]) == 0.0:
            raise DomainError("lifts of coincident points")
    return KScalar._wrap(field, cross_ratio_arrays(g, 0, 1, 2, 3))


def triple(q) -> CrossRatioTriple:
    q = _k_quadruple(q)
    x1, x2, x3 = triple_arrays(pairing_table(q))
    return CrossRatioTriple(*(KScalar._wrap(q.field, x) for x in (x1, x2, x3)))


SYMMETRY_RELATIONS = (
    "|[2143]| = |[1234]|",
    "|[3412]| = |[1234]|",
    "|[4321]| = |[1234]|",
    "Re[2143] = Re[1234]",
    "Re[3412] = Re[1234]",
    "Re[4321] = Re[1234]",
    "[1243] = X1^-1",
    "[1342] = X2^-1",
    "|[1432]| = 1/|X3|",
    "Re[1432] = Re(X3^-1)",
    "|[1423]| = |X3|",
    "Re[1423] = Re(X3)",
)


def symmetry_arrays(g):
    """Residuals of :data:`SYMMETRY_RELATIONS` stacked on a new last axis."""

    def cr(order):
        i, j, k, l = (o - 1 for o in order)
        return cross_ratio_arrays(g, i, j, k, l)

    x1, x2, x3 = triple_arrays(g)
    perms = [cr((2, 1, 4, 3)), cr((3, 4, 1, 2)), cr((4, 3, 2, 1))]
    c1432 = cr((1, 4, 3, 2))
    c1423 = cr((1, 4, 2, 3))
    out = [omod(p) - omod(x1) for p in perms]
    out += [p[..., 0] - x1[..., 0] for p in perms]
    out += [
        omod(cr((1, 2, 4, 3)) - oinv(x1)),
        omod(cr((1, 3, 4, 2)) - oinv(x2)),
        omod(c1432) - 1.0 / omod(x3),
        c1432[..., 0] - oinv(x3)[..., 0],
        omod(c1423) - omod(x3),
        c1423[..., 0] - x3[..., 0],
    ]
    return np.stack(out, axis=-1)


def symmetry_residuals(q) -> list[float]:
    """Left-minus-right residuals of the relations in :data:`SYMMETRY_RELATIONS`.

    For the two full-scalar relations the residual is the modulus of the
    difference.
    """
    q = _k_quadruple(q)
    return [float(r) for r in symmetry_arrays(pairing_table(q))]


def fundamental_residuals(q) -> tuple[float, float]:
    """``(r1, r2)``: ``r1 = |X2| - |X1||X3|`` (zero) and
    ``r2 = 2|X1|^2 Re X3 - (|X1|^2 + |X2|^2 - 2Re X1 - 2Re X2 + 1)`` (non-negative)."""
    q = _k_quadruple(q)
    r1, r2 = fundamental_arrays(*triple_arrays(pairing_table(q)))
    return float(r1), float(r2)


# --------------------------------------------------------------------------
# distances and real cross-ratios (all fields)

def distance_table(q) -> np.ndarray:
    """4x4 gauge distances; entries touching infinity are ``inf``."""
    q = Quadruple.coerce(q)
    pts = q.points
    d = np.zeros((4, 4))
    for a in range(4):
        for b in range(a + 1, 4):
            d[a, b] = d[b, a] = any_dist(pts[a], pts[b])
    return d


def _inf_index(q: Quadruple) -> Optional[int]:
    idx = [i for i, p in enumerate(q.points) if p.is_infinity]
    return idx[0] if idx else None


def real_cross_ratio(q, order: Sequence[int] = (1, 2, 3, 4), power: int = 2) -> float:
    """``d(pl,pj)^k d(pk,pi)^k / (d(pl,pi)^k d(pk,pj)^k)`` for ``order = (i, j, k, l)``.

    Each point occurs once upstairs and once downstairs, so the two factors
    containing an infinite point are dropped together.
    """
    q = Quadruple.coerce(q)
    d = distance_table(q)
    inf = _inf_index(q)
    i, j, k, l = (o - 1 for o in order)
    num = [(l, j), (k, i)]
    den = [(l, i), (k, j)]
    if inf is not None:
        num = [pr for pr in num if inf not in pr]
        den = [pr for pr in den if inf not in pr]
    val = 1.0
    for a, b in num:
        val *= d[a, b] ** power
    for a, b in den:
        val /= d[a, b] ** power
    return float(val)


def metric_ratio(q) -> float:
    """``d(p4,p2) d(p3,p1) / (d(p4,p1) d(p3,p2))``, equal to ``|X1|^(1/2)``."""
    return real_cross_ratio(q, (1, 2, 3, 4), power=1)


def _oct_quadruple(q) -> Quadruple:
    q = Quadruple.coerce(q)
    if q.field is not Field.O:
        raise DomainError("oct_cross_pair expects octonionic points")
    return q


def oct_cross_pair(q) -> tuple[float, float]:
    q = _oct_quadruple(q)
    return real_cross_ratio(q, (1, 2, 3, 4)), real_cross_ratio(q, (1, 3, 2, 4))


def oct_inequality_residual(q) -> float:
    """``X1^2 + X2^2 - 2X1 - 2X2 - 2X1X2 + 1``; never positive."""
    x1, x2 = oct_cross_pair(q)
    return float(oct_inequality_arrays(x1, x2))


OCT_SYMMETRY_RELATIONS = (
    "[2143] = X1",
    "[3412] = X1",
    "[4321] = X1",
    "[1243] = X1^-1",
    "[1342] = X2^-1",
    "[1432] = X1 X2^-1",
    "[1423] = X2 X1^-1",
)


def oct_symmetry_arrays(d2):
    """Residuals of :data:`OCT_SYMMETRY_RELATIONS` from finite squared-distance tables."""

    def cr(order):
        i, j, k, l = (o - 1 for o in order)
        return real_cross_arrays(d2, i, j, k, l)

    x1, x2 = cr((1, 2, 3, 4)), cr((1, 3, 2, 4))
    return np.stack([
        cr((2, 1, 4, 3)) - x1,
        cr((3, 4, 1, 2)) - x1,
        cr((4, 3, 2, 1)) - x1,
        cr((1, 2, 4, 3)) - 1.0 / x1,
        cr((1, 3, 4, 2)) - 1.0 / x2,
        cr((1, 4, 3, 2)) - x1 / x2,
        cr((1, 4, 2, 3)) - x2 / x1,
    ], axis=-1)


def oct_symmetry_residuals(q) -> list[float]:
    q = _oct_quadruple(q)
    x1, x2 = oct_cross_pair(q)

    def cr(order):
        return real_cross_ratio(q, order)

    return [
        cr((2, 1, 4, 3)) - x1,
        cr((3, 4, 1, 2)) - x1,
        cr((4, 3, 2, 1)) - x1,
        cr((1, 2, 4, 3)) - 1.0 / x1,
        cr((1, 3, 4, 2)) - 1.0 / x2,
        cr((1, 4, 3, 2)) - x1 / x2,
        cr((1, 4, 2, 3)) - x2 / x1,
    ]


def cross_record(q) -> dict:
    """JSON record: the triple plus fundamental residuals (or the octonionic pair)."""
    q = Quadruple.coerce(q)
    if q.field is Field.O:
        x1, x2 = oct_cross_pair(q)
        return {"X1": x1, "X2": x2, "residual": oct_inequality_residual(q)}
    t = triple(q)
    r1, r2 = fundamental_residuals(q)
    out = t.to_json()
    out.update({"r1": r1, "r2": r2})
    return out
