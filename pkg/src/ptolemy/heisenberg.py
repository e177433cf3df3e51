"""The boundary groups and their gauge metrics.

For K in {R, C, H} the finite boundary is the group ``K^{n-1} x Im(K)`` with

    (zeta, v) * (zeta', v') = (zeta + zeta', v + v' + 2 sum_i Im(conj(zeta'_i) zeta_i))

the gauge ``|(zeta, v)| = |-|zeta|^2 + v|^(1/2)`` and the left-invariant
metric ``d(p, q) = |p^-1 * q|``. For O the boundary is the variety
``{(x, y) : 2 Re(x) + |y|^2 = 0}`` with ``(t, s) * (x, y) = (t + x - conj(s) y, s + y)``
and ``d((x, y), (w, z)) = |x + conj(w) + conj(z) y|^(1/2)``.

Distances to infinity are :data:`INF_DIST`; ``d(inf, inf) = 0``.
"""
from __future__ import annotations

import math

import numpy as np

from .algebra import Field, KScalar, scalar_from_json, oconj, oim, omod, omul, onorm2, oreal
from .errors import DomainError
from .hermitian import (
    BoundaryPoint,
    herm_form_arrays,
    hermitian_dot_arrays,
    lift_arrays,
    pairing_arrays,
)

__all__ = [
    "INF_DIST",
    "InfiniteDistance",
    "OctBoundaryPoint",
    "group_mul",
    "group_inv",
    "gauge",
    "dist",
    "dist_group",
    "dist_lift",
    "oct_group_mul",
    "oct_inv",
    "oct_dist",
    "oct_dist_direct",
    "dist_arrays",
    "oct_dist_arrays",
]


class InfiniteDistance(float):
    """Marker type for the distance from a finite point to infinity.

    Compares like ``float('inf')`` but can be told apart from an overflow
    with ``d is INF_DIST``.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls, math.inf)
        return cls._instance

    def __repr__(self):
        return "INF_DIST"


INF_DIST = InfiniteDistance()


# --------------------------------------------------------------------------
# array kernels

def group_mul_arrays(z1, v1, z2, v2):
    z1 = np.asarray(z1, dtype=float)
    z2 = np.asarray(z2, dtype=float)
    v = np.asarray(v1, dtype=float) + v2
    z = z1 + z2
    if z1.shape[-2] > 0:
        # Im<z1, z2> = Im<z1, z1 + z2>; pair z1 with the smaller of the two so
        # that p * o and p * p^-1 both come out exact
        small = (onorm2(z).sum(axis=-1) < onorm2(z2).sum(axis=-1))[..., None, None]
        other = np.where(small, z, z2)
        v = v + 2.0 * oim(hermitian_dot_arrays(z1, other))
    return z, v


def gauge_arrays(z, v):
    return np.sqrt(omod(oreal(-onorm2(z).sum(axis=-1)) + v))


def dist_arrays(z1, v1, z2, v2):
    """Gauge distance between finite points, difference form."""
    return np.sqrt(omod(pairing_arrays(z1, v1, z2, v2)))


def dist_group_arrays(z1, v1, z2, v2):
    """``|p^-1 * q|`` through the group law."""
    z, v = group_mul_arrays(-np.asarray(z1, dtype=float), -np.asarray(v1, dtype=float), z2, v2)
    return gauge_arrays(z, v)


def dist_lift_arrays(z1, v1, z2, v2):
    """``|<lift p, lift q>|^(1/2)`` through the raw Hermitian form."""
    return np.sqrt(omod(herm_form_arrays(lift_arrays(z1, v1), lift_arrays(z2, v2))))


def oct_dist_direct_arrays(x, y, w, z):
    """The literal ``|x + conj(w) + conj(z) y|^(1/2)``."""
    return np.sqrt(omod(np.asarray(x, dtype=float) + oconj(w) + omul(oconj(z), y)))


def oct_pairing_arrays(x, y, w, z):
    """``x + conj(w) + conj(z) y`` evaluated on the variety.

    Uses ``Re = -|y - z|^2 / 2`` and ``Im(conj(z) y) = Im(conj(z)(y - z))``,
    both exact consequences of the variety equation, so that coincident
    points give exactly zero.
    """
    x = np.asarray(x, dtype=float)
    w = np.asarray(w, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    d = y - z
    return oreal(-0.5 * onorm2(d)) + oim(x) - oim(w) + oim(omul(oconj(z), d))


def oct_dist_arrays(x, y, w, z):
    return np.sqrt(omod(oct_pairing_arrays(x, y, w, z)))


# --------------------------------------------------------------------------
# K = R, C, H

def _finite_pair(p: BoundaryPoint, q: BoundaryPoint):
    if p.field is not q.field or p.n != q.n:
        raise DomainError("points live in different spaces")
    if p.is_infinity or q.is_infinity:
        raise DomainError("the group law is defined on finite points only")


def group_mul(p: BoundaryPoint, q: BoundaryPoint) -> BoundaryPoint:
    _finite_pair(p, q)
    z, v = group_mul_arrays(p.zeta_array, p.v_array, q.zeta_array, q.v_array)
    return BoundaryPoint.from_arrays(p.field, z, v)


def group_inv(p: BoundaryPoint) -> BoundaryPoint:
    if p.is_infinity:
        raise DomainError("infinity has no group inverse")
    return BoundaryPoint.from_arrays(p.field, -p.zeta_array, -p.v_array)


def gauge(p: BoundaryPoint) -> float:
    if p.is_infinity:
        raise DomainError("the gauge is defined on finite points only")
    return float(gauge_arrays(p.zeta_array, p.v_array))


def _inf_rule(p, q):
    if p.is_infinity and q.is_infinity:
        return 0.0
    if p.is_infinity or q.is_infinity:
        return INF_DIST
    return None


def dist(p: BoundaryPoint, q: BoundaryPoint) -> float:
    """Gauge distance on the compactified boundary.

    Evaluated as ``|<lift p, lift q>|^(1/2)`` with the pairing in difference
    form; :func:`dist_group` and :func:`dist_lift` are the literal formulas.
    """
    if p.field is not q.field or p.n != q.n:
        raise DomainError("points live in different spaces")
    r = _inf_rule(p, q)
    if r is not None:
        return r
    return float(dist_arrays(p.zeta_array, p.v_array, q.zeta_array, q.v_array))


def dist_group(p: BoundaryPoint, q: BoundaryPoint) -> float:
    """``|p^-1 * q|`` through the group law."""
    if p.field is not q.field or p.n != q.n:
        raise DomainError("points live in different spaces")
    r = _inf_rule(p, q)
    if r is not None:
        return r
    return float(dist_group_arrays(p.zeta_array, p.v_array, q.zeta_array, q.v_array))


def dist_lift(p: BoundaryPoint, q: BoundaryPoint) -> float:
    """``|<lift p, lift q>|^(1/2)`` through the raw Hermitian form."""
    if p.field is not q.field or p.n != q.n:
        raise DomainError("points live in different spaces")
    r = _inf_rule(p, q)
    if r is not None:
        return r
    return float(dist_lift_arrays(p.zeta_array, p.v_array, q.zeta_array, q.v_array))


# --------------------------------------------------------------------------
# K = O

_EPS = np.finfo(float).eps


class OctBoundaryPoint:
    """A point ``(x, y)`` of the octonionic boundary variety, or infinity.

    On construction ``Re(x)`` is reset to ``-|y|^2 / 2`` unless it already
    agrees to rounding, so the variety equation always holds; inputs that miss it by more than
    ``VARIETY_TOL`` (relative to the coordinate scale) are rejected.
    """

    __slots__ = ("_x", "_y")

    field = Field.O
    n = 2
    VARIETY_TOL = 1e-9

    def __init__(self, x=None, y=None, *, _trusted=False):
        if x is None and y is None:
            object.__setattr__(self, "_x", None)
            object.__setattr__(self, "_y", None)
            return
        xa = np.array(x.array if isinstance(x, KScalar) else x, dtype=float)
        ya = np.array(y.array if isinstance(y, KScalar) else y, dtype=float)
        if not _trusted:
            for s in (x, y):
                if isinstance(s, KScalar) and s.field is not Field.O:
                    raise DomainError(f"expected octonions, got {s.field}")
            if xa.shape != (8,) or ya.shape != (8,):
                raise DomainError("x and y must be 8-slot arrays")
            if not (np.all(np.isfinite(xa)) and np.all(np.isfinite(ya))):
                raise DomainError("non-finite coordinate")
            drift = abs(2 * xa[0] + float(onorm2(ya)))
            scale = max(1.0, float(onorm2(ya)), abs(xa[0]))
            if drift > self.VARIETY_TOL * scale:
                raise DomainError(f"(x, y) is off the variety: 2Re(x)+|y|^2 = {drift:g}")
        re = -0.5 * float(onorm2(ya))
        if abs(xa[0] - re) > 4 * _EPS * abs(re):
            xa[0] = re
        xa.setflags(write=False)
        ya.setflags(write=False)
        object.__setattr__(self, "_x", xa)
        object.__setattr__(self, "_y", ya)

    def __setattr__(self, name, value):
        raise AttributeError("OctBoundaryPoint is immutable")

    @classmethod
    def infinity(cls) -> "OctBoundaryPoint":
        return cls()

    @classmethod
    def origin(cls) -> "OctBoundaryPoint":
        return cls(np.zeros(8), np.zeros(8), _trusted=True)

    @classmethod
    def from_arrays(cls, x, y) -> "OctBoundaryPoint":
        return cls(x, y, _trusted=True)

    @classmethod
    def from_imag(cls, im_x, y) -> "OctBoundaryPoint":
        """Build ``(x, y)`` from ``Im(x)`` and ``y``; ``Re(x)`` is implied."""
        xa = np.array(im_x, dtype=float)
        xa[0] = 0.0
        return cls(xa, y, _trusted=True)

    @property
    def is_infinity(self) -> bool:
        return self._x is None

    @property
    def x_array(self) -> np.ndarray:
        if self._x is None:
            raise DomainError("operation undefined at infinity")
        return self._x

    @property
    def y_array(self) -> np.ndarray:
        if self._y is None:
            raise DomainError("operation undefined at infinity")
        return self._y

    @property
    def x(self) -> KScalar:
        return KScalar._wrap(Field.O, self.x_array)

    @property
    def y(self) -> KScalar:
        return KScalar._wrap(Field.O, self.y_array)

    def variety_residual(self) -> float:
        if self.is_infinity:
            return 0.0
        return float(2 * self._x[0] + onorm2(self._y))

    def is_origin(self) -> bool:
        return (not self.is_infinity) and not np.any(self._x) and not np.any(self._y)

    def __eq__(self, other):
        if not isinstance(other, OctBoundaryPoint):
            return NotImplemented
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        return np.array_equal(self._x, other._x) and np.array_equal(self._y, other._y)

    def __hash__(self):
        if self.is_infinity:
            return hash("oct-inf")
        return hash((self._x.tobytes(), self._y.tobytes()))

    def isclose(self, other: "OctBoundaryPoint", tol: float = 1e-10) -> bool:
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        err = max(np.max(np.abs(self._x - other._x)), np.max(np.abs(self._y - other._y)))
        return bool(err <= tol)

    def __repr__(self):
        if self.is_infinity:
            return "OctBoundaryPoint(inf)"
        return f"OctBoundaryPoint(x={self._x.tolist()}, y={self._y.tolist()})"

    def to_json(self):
        if self.is_infinity:
            return "inf"
        return {"x": self.x.to_json(), "y": self.y.to_json()}

    @classmethod
    def from_json(cls, obj) -> "OctBoundaryPoint":
        if obj == "inf":
            return cls.infinity()
        if not isinstance(obj, dict):
            raise DomainError(f"malformed octonionic point {obj!r}")
        try:
            x = scalar_from_json(obj["x"], Field.O)
            y = scalar_from_json(obj["y"], Field.O)
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed octonionic point {obj!r}") from exc
        return cls(x, y)


def oct_group_mul(p: OctBoundaryPoint, q: OctBoundaryPoint) -> OctBoundaryPoint:
    """``(t, s) * (x, y) = (t + x - conj(s) y, s + y)``."""
    if p.is_infinity or q.is_infinity:
        raise DomainError("the group law is defined on finite points only")
    t, s = p.x_array, p.y_array
    x, y = q.x_array, q.y_array
    sy = s + y
    # -conj(s) y = |s|^2 - conj(s)(s + y), exact when q is the inverse of p
    return OctBoundaryPoint.from_arrays(t + x + oreal(onorm2(s)) - omul(oconj(s), sy), sy)


def oct_inv(p: OctBoundaryPoint) -> OctBoundaryPoint:
    if p.is_infinity:
        raise DomainError("infinity has no group inverse")
    return OctBoundaryPoint.from_arrays(oconj(p.x_array), -p.y_array)


def oct_dist(p: OctBoundaryPoint, q: OctBoundaryPoint) -> float:
    r = _inf_rule(p, q)
    if r is not None:
        return r
    return float(oct_dist_arrays(p.x_array, p.y_array, q.x_array, q.y_array))


def oct_dist_direct(p: OctBoundaryPoint, q: OctBoundaryPoint) -> float:
    """The literal ``|x + conj(w) + conj(z) y|^(1/2)``, no variety rewriting."""
    r = _inf_rule(p, q)
    if r is not None:
        return r
    return float(oct_dist_direct_arrays(p.x_array, p.y_array, q.x_array, q.y_array))


def any_dist(p, q) -> float:
    """Dispatch to :func:`dist` or :func:`oct_dist` by point type."""
    if isinstance(p, OctBoundaryPoint) and isinstance(q, OctBoundaryPoint):
        return oct_dist(p, q)
    if isinstance(p, BoundaryPoint) and isinstance(q, BoundaryPoint):
        return dist(p, q)
    raise DomainError("points live in different spaces")
