"""Vectors in K^{n,1}, the Hermitian form of signature (n, 1), standard lifts.

The form is ``<z, w> = conj(w_{n+1}) z_1 + sum_{i=2..n} conj(w_i) z_i + conj(w_1) z_{n+1}``
with every product written scalar-of-``w`` on the left, which matters for H.

Boundary points of the Siegel domain are ``(zeta, v)`` with ``zeta`` in K^{n-1}
and ``v`` purely imaginary, plus the point at infinity. Their standard lift is
``(-|zeta|^2 + v, sqrt(2) zeta, 1)`` and infinity lifts to ``(1, 0, ..., 0)``.
"""
from __future__ import annotations

import math
from typing import Union

import numpy as np

from .algebra import (
    Field,
    KScalar,
    coerce_array,
    oconj,
    oim,
    omul,
    onorm2,
    oreal,
    scalar_from_json,
)
from .errors import DomainError, NumericalDomainError

__all__ = [
    "KVector",
    "BoundaryPoint",
    "InteriorPoint",
    "herm_form",
    "hermitian_dot",
    "lift",
    "pairing",
    "hyperbolic_distance",
    "herm_form_arrays",
    "hermitian_dot_arrays",
    "lift_arrays",
    "pairing_arrays",
]

SQRT2 = math.sqrt(2.0)


# --------------------------------------------------------------------------
# array kernels (leading axes broadcast; vectors are (..., m, 8))

def hermitian_dot_arrays(a, b):
    """``sum_i conj(b_i) a_i`` over the second-to-last axis."""
    return omul(oconj(b), a).sum(axis=-2)


def herm_form_arrays(z, w):
    z = np.asarray(z, dtype=float)
    w = np.asarray(w, dtype=float)
    out = omul(oconj(w[..., -1, :]), z[..., 0, :]) + omul(oconj(w[..., 0, :]), z[..., -1, :])
    if z.shape[-2] > 2:
        out = out + hermitian_dot_arrays(z[..., 1:-1, :], w[..., 1:-1, :])
    return out


def lift_arrays(zeta, v):
    """Standard lifts of finite boundary points, shape (..., n+1, 8)."""
    zeta = np.asarray(zeta, dtype=float)
    v = np.asarray(v, dtype=float)
    first = oreal(-onorm2(zeta).sum(axis=-1)) + v
    last = oreal(np.ones(first.shape[:-1]))
    return np.concatenate([first[..., None, :], SQRT2 * zeta, last[..., None, :]], axis=-2)


def pairing_arrays(zeta1, v1, zeta2, v2):
    """``<lift p1, lift p2>`` for finite points, in difference form.

    Algebraically equal to ``herm_form(lift p1, lift p2)``; the real part is
    ``-|zeta1 - zeta2|^2`` computed from the difference, so nearby points do
    not lose digits to cancellation.
    """
    zeta1 = np.asarray(zeta1, dtype=float)
    zeta2 = np.asarray(zeta2, dtype=float)
    d = zeta1 - zeta2
    out = oreal(-onorm2(d).sum(axis=-1)) + v1 - v2
    if d.shape[-2] > 0:
        out = out + 2.0 * oim(hermitian_dot_arrays(d, zeta2))
    return out


# --------------------------------------------------------------------------
# value types

def _stack(entries, field: Field) -> np.ndarray:
    rows = [coerce_array(field, e) for e in entries]
    return np.stack(rows) if rows else np.zeros((0, 8))


class KVector:
    """An immutable vector of scalars from one field."""

    __slots__ = ("field", "_a")

    def __init__(self, field: Union[Field, str], entries):
        field = Field.parse(field)
        if isinstance(entries, np.ndarray):
            arr = np.array(entries, dtype=float)
            if arr.ndim != 2 or arr.shape[1] != 8:
                raise DomainError(f"expected an (m, 8) array, got {arr.shape}")
            if np.any(arr[:, ~field.mask] != 0.0):
                raise DomainError(f"entries have components outside field {field}")
            if not np.all(np.isfinite(arr)):
                raise DomainError("non-finite entry")
        else:
            arr = _stack(entries, field)
        arr.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_a", arr)

    def __setattr__(self, name, value):
        raise AttributeError("KVector is immutable")

    @property
    def array(self) -> np.ndarray:
        return self._a

    def __len__(self):
        return self._a.shape[0]

    def __getitem__(self, i) -> KScalar:
        return KScalar._wrap(self.field, self._a[i])

    def __iter__(self):
        return (self[i] for i in range(len(self)))

    def __eq__(self, other):
        if not isinstance(other, KVector):
            return NotImplemented
        return self.field is other.field and np.array_equal(self._a, other._a)

    def __hash__(self):
        return hash((self.field, self._a.tobytes()))

    def norm(self) -> float:
        return math.sqrt(float(onorm2(self._a).sum()))

    def __repr__(self):
        return f"KVector({self.field.name}, {[list(s.coeffs) for s in self]})"

    def to_json(self) -> list:
        return [s.to_json() for s in self]


def _check_vectors(a: KVector, b: KVector):
    if a.field is not b.field:
        raise DomainError(f"field mismatch: {a.field} vs {b.field}")
    if len(a) != len(b):
        raise DomainError(f"length mismatch: {len(a)} vs {len(b)}")


class BoundaryPoint:
    """A point ``(zeta, v)`` of the generalized Heisenberg group, or infinity.

    ``n`` is the dimension of the hyperbolic space, so ``zeta`` has ``n - 1``
    entries. ``v`` is stored with an exactly zero real part.
    """

    __slots__ = ("field", "n", "_zeta", "_v")

    # tolerance for accepting a nonzero real part of v on construction
    RE_V_TOL = 1e-9

    def __init__(self, field, n, zeta=None, v=None, *, _trusted=False):
        field = Field.parse(field)
        n = int(n)
        if field is Field.O:
            raise DomainError("octonionic boundary points are OctBoundaryPoint")
        if n < 1 or (field is Field.R and n < 2):
            raise DomainError(f"n={n} is not allowed for field {field}")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "n", n)
        if zeta is None and v is None:
            object.__setattr__(self, "_zeta", None)
            object.__setattr__(self, "_v", None)
            return
        if _trusted:
            z = np.array(zeta, dtype=float)
            vv = np.array(v, dtype=float)
        else:
            z = zeta.array if isinstance(zeta, KVector) else (
                np.asarray(zeta, dtype=float) if isinstance(zeta, np.ndarray)
                else _stack(zeta, field))
            z = np.array(z, dtype=float).reshape(-1, 8) if z.size else np.zeros((0, 8))
            if isinstance(v, np.ndarray):
                vv = np.array(v, dtype=float)
            else:
                vv = coerce_array(field, v)
            if z.shape != (n - 1, 8):
                raise DomainError(f"zeta must have {n - 1} entries, got {z.shape[0]}")
            if vv.shape != (8,):
                raise DomainError(f"v must be an 8-slot array, got shape {vv.shape}")
            if np.any(z[:, ~field.mask] != 0.0) or np.any(vv[~field.mask] != 0.0):
                raise DomainError(f"coordinates have components outside field {field}")
            if not (np.all(np.isfinite(z)) and np.all(np.isfinite(vv))):
                raise DomainError("non-finite coordinate")
            scale = max(1.0, float(np.max(np.abs(vv))))
            if abs(vv[0]) > self.RE_V_TOL * scale:
                raise DomainError(f"v must be purely imaginary, Re(v)={vv[0]}")
        vv[0] = 0.0
        z.setflags(write=False)
        vv.setflags(write=False)
        object.__setattr__(self, "_zeta", z)
        object.__setattr__(self, "_v", vv)

    def __setattr__(self, name, value):
        raise AttributeError("BoundaryPoint is immutable")

    @classmethod
    def finite(cls, field, zeta, v) -> "BoundaryPoint":
        field = Field.parse(field)
        if isinstance(zeta, np.ndarray):
            m = zeta.reshape(-1, 8).shape[0] if zeta.size else 0
        else:
            m = len(zeta)
        return cls(field, m + 1, zeta, v)

    @classmethod
    def from_arrays(cls, field, zeta, v) -> "BoundaryPoint":
        """Trusted constructor used by internal kernels."""
        zeta = np.asarray(zeta, dtype=float)
        return cls(field, zeta.shape[0] + 1, zeta, v, _trusted=True)

    @classmethod
    def infinity(cls, field, n) -> "BoundaryPoint":
        return cls(field, n)

    @classmethod
    def origin(cls, field, n) -> "BoundaryPoint":
        return cls(field, n, np.zeros((n - 1, 8)), np.zeros(8), _trusted=True)

    @property
    def is_infinity(self) -> bool:
        return self._zeta is None

    def _need_finite(self):
        if self._zeta is None:
            raise DomainError("operation undefined at infinity")

    @property
    def zeta_array(self) -> np.ndarray:
        self._need_finite()
        return self._zeta

    @property
    def v_array(self) -> np.ndarray:
        self._need_finite()
        return self._v

    @property
    def zeta(self) -> KVector:
        self._need_finite()
        return KVector(self.field, self._zeta)

    @property
    def v(self) -> KScalar:
        self._need_finite()
        return KScalar._wrap(self.field, self._v)

    def is_origin(self) -> bool:
        return (not self.is_infinity) and not np.any(self._zeta) and not np.any(self._v)

    def __eq__(self, other):
        if not isinstance(other, BoundaryPoint):
            return NotImplemented
        if (self.field, self.n, self.is_infinity) != (other.field, other.n, other.is_infinity):
            return False
        if self.is_infinity:
            return True
        return np.array_equal(self._zeta, other._zeta) and np.array_equal(self._v, other._v)

    def __hash__(self):
        if self.is_infinity:
            return hash((self.field, self.n, "inf"))
        return hash((self.field, self.n, self._zeta.tobytes(), self._v.tobytes()))

    def isclose(self, other: "BoundaryPoint", tol: float = 1e-10) -> bool:
        if (self.field, self.n) != (other.field, other.n):
            return False
        if self.is_infinity or other.is_infinity:
            return self.is_infinity and other.is_infinity
        err = max(np.max(np.abs(self._zeta - other._zeta), initial=0.0),
                  np.max(np.abs(self._v - other._v)))
        return bool(err <= tol)

    def __repr__(self):
        if self.is_infinity:
            return f"BoundaryPoint({self.field.name}, n={self.n}, inf)"
        zs = [list(KScalar._wrap(self.field, r).coeffs) for r in self._zeta]
        return (f"BoundaryPoint({self.field.name}, zeta={zs}, "
                f"v={list(KScalar._wrap(self.field, self._v).coeffs)})")

    def to_json(self):
        if self.is_infinity:
            return "inf"
        return {"field": self.field.name, "n": self.n,
                "zeta": self.zeta.to_json(), "v": self.v.to_json()}

    @classmethod
    def from_json(cls, obj, field=None, n=None) -> "BoundaryPoint":
        if obj == "inf":
            if field is None or n is None:
                raise DomainError("'inf' needs field and n from the enclosing record")
            return cls.infinity(field, n)
        if not isinstance(obj, dict):
            raise DomainError(f"malformed boundary point {obj!r}")
        try:
            f = Field.parse(obj.get("field", field))
            pn = int(obj.get("n", n))
            zeta = [scalar_from_json(s, f) for s in obj["zeta"]]
            v = scalar_from_json(obj["v"], f)
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed boundary point {obj!r}") from exc
        if field is not None and Field.parse(field) is not f:
            raise DomainError(f"point field {f} differs from record field {field}")
        if n is not None and int(n) != pn:
            raise DomainError(f"point n={pn} differs from record n={n}")
        return cls(f, pn, zeta, v)


class InteriorPoint:
    """A point of the Siegel domain ``2 Re(z_1) + sum_{i>=2} |z_i|^2 < 0``."""

    __slots__ = ("field", "_z")

    def __init__(self, field, coords):
        field = Field.parse(field)
        if field is Field.O:
            raise DomainError("interior points are only modelled for R, C, H")
        if isinstance(coords, np.ndarray):
            z = np.array(coords, dtype=float).reshape(-1, 8)
        else:
            z = _stack(coords, field)
        if z.shape[0] < 1:
            raise DomainError("need at least one coordinate")
        if np.any(z[:, ~field.mask] != 0.0):
            raise DomainError(f"coordinates have components outside field {field}")
        if 2 * z[0, 0] + onorm2(z[1:]).sum() >= 0:
            raise DomainError("point is not inside the Siegel domain")
        z.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_z", z)

    def __setattr__(self, name, value):
        raise AttributeError("InteriorPoint is immutable")

    @property
    def n(self) -> int:
        return self._z.shape[0]

    @property
    def coords(self) -> KVector:
        return KVector(self.field, self._z)

    def lift(self) -> KVector:
        one = np.zeros((1, 8))
        one[0, 0] = 1.0
        return KVector(self.field, np.concatenate([self._z, one]))


# --------------------------------------------------------------------------
# operations

def herm_form(z: KVector, w: KVector) -> KScalar:
    _check_vectors(z, w)
    if z.field is Field.O:
        raise DomainError("the Hermitian form is only used for R, C, H")
    if len(z) < 2:
        raise DomainError("vectors in K^{n,1} have at least two entries")
    return KScalar._wrap(z.field, herm_form_arrays(z.array, w.array))


def hermitian_dot(a: KVector, b: KVector) -> KScalar:
    """Euclidean Hermitian product ``sum_i conj(b_i) a_i`` on K^{n-1}."""
    _check_vectors(a, b)
    if len(a) == 0:
        return KScalar.zero(a.field)
    return KScalar._wrap(a.field, hermitian_dot_arrays(a.array, b.array))


def lift(p: BoundaryPoint) -> KVector:
    if p.is_infinity:
        arr = np.zeros((p.n + 1, 8))
        arr[0, 0] = 1.0
        return KVector(p.field, arr)
    return KVector(p.field, lift_arrays(p.zeta_array, p.v_array))


def pairing_array(p: BoundaryPoint, q: BoundaryPoint) -> np.ndarray:
    """8-slot value of ``<lift p, lift q>`` including the infinite cases."""
    if p.is_infinity and q.is_infinity:
        return np.zeros(8)
    if p.is_infinity or q.is_infinity:
        # <inf, q> = conj(q_{n+1}) = 1 and <p, inf> = conj(1) p_{n+1} = 1
        return oreal(1.0)
    return pairing_arrays(p.zeta_array, p.v_array, q.zeta_array, q.v_array)


def pairing(p: BoundaryPoint, q: BoundaryPoint) -> KScalar:
    """``<lift p, lift q>`` for boundary points, computed in difference form."""
    if p.field is not q.field or p.n != q.n:
        raise DomainError("points live in different spaces")
    return KScalar._wrap(p.field, pairing_array(p, q))


def hyperbolic_distance(z: InteriorPoint, w: InteriorPoint) -> float:
    """Distance ``rho`` with ``cosh^2(rho/2) = <z,w><w,z> / (<z,z><w,w>)``."""
    if z.field is not w.field or z.n != w.n:
        raise DomainError("points live in different spaces")
    lz, lw = z.lift().array, w.lift().array
    zw = herm_form_arrays(lz, lw)
    zz = herm_form_arrays(lz, lz)[0]
    ww = herm_form_arrays(lw, lw)[0]
    c = float(onorm2(zw)) / (zz * ww)
    if c < 1.0:
        if c < 1.0 - 1e-12:
            raise NumericalDomainError(f"cosh^2 argument {c} < 1")
        c = 1.0
    return 2.0 * math.acosh(math.sqrt(c))
