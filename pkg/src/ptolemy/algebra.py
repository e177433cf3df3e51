"""Arithmetic in the normed division algebras R, C, H and O.

Every scalar is stored as an 8-slot coefficient array over the octonion basis
``e0 = 1, e1, ..., e7``; a field tag says which slots may be non-zero:

* R uses ``e0``
* C uses ``e0, e1``
* H uses ``e0, e1, e2, e4`` (``e1 e2 = e4`` closes a quaternion subalgebra)
* O uses all eight.

A single multiplication table therefore drives all four algebras and the
embedding R < C < H < O is literal.

Two layers live here. The ``o*`` kernels (``omul``, ``oconj``, ...) act on
float arrays whose last axis has length 8 and broadcast over leading axes;
the batch paths of the other modules are written against them.
:class:`KScalar` is the immutable, validated single-value type.
"""
from __future__ import annotations

from enum import Enum
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import DomainError

__all__ = [
    "Field",
    "KScalar",
    "FANO_TRIPLES",
    "basis_product",
    "omul",
    "oconj",
    "onorm2",
    "omod",
    "oinv",
    "mul",
    "conj",
    "modulus",
    "inverse",
    "re_triple",
    "basis",
]

# Triples ijk with epsilon_ijk = +1; the rest follows by total antisymmetry.
FANO_TRIPLES = ((1, 2, 4), (1, 3, 7), (1, 5, 6), (2, 3, 5), (2, 6, 7), (3, 4, 6), (4, 5, 7))


def _build_table():
    index = np.zeros((8, 8), dtype=np.intp)
    sign = np.zeros((8, 8))
    for i in range(8):
        index[0, i] = index[i, 0] = i
        sign[0, i] = sign[i, 0] = 1.0
    for i in range(1, 8):
        index[i, i] = 0
        sign[i, i] = -1.0
    for a, b, c in FANO_TRIPLES:
        for i, j, k in ((a, b, c), (b, c, a), (c, a, b)):
            index[i, j], sign[i, j] = k, 1.0
            index[j, i], sign[j, i] = k, -1.0
    struct = np.zeros((64, 8))
    for i in range(8):
        for j in range(8):
            struct[8 * i + j, index[i, j]] = sign[i, j]
    index.setflags(write=False)
    sign.setflags(write=False)
    struct.setflags(write=False)
    return index, sign, struct


_INDEX, _SIGN, _STRUCT = _build_table()

_CONJ_SIGNS = np.array([1.0, -1, -1, -1, -1, -1, -1, -1])


def basis_product(i: int, j: int) -> tuple[int, int]:
    """Return ``(k, s)`` with ``e_i e_j = s e_k``."""
    return int(_INDEX[i, j]), int(_SIGN[i, j])


# --------------------------------------------------------------------------
# array kernels

def omul(a, b):
    """Octonion product of coefficient arrays, broadcasting leading axes."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    outer = a[..., :, None] * b[..., None, :]
    return outer.reshape(outer.shape[:-2] + (64,)) @ _STRUCT


def oconj(a):
    return np.asarray(a, dtype=float) * _CONJ_SIGNS


def onorm2(a):
    a = np.asarray(a, dtype=float)
    return np.einsum("...i,...i->...", a, a)


def omod(a):
    return np.sqrt(onorm2(a))


def oinv(a):
    """Multiplicative inverse ``conj(a) / |a|^2``; zero entries give inf/nan."""
    a = np.asarray(a, dtype=float)
    return oconj(a) / onorm2(a)[..., None]


def oreal(x):
    """Embed real numbers (any shape) as coefficient arrays."""
    x = np.asarray(x, dtype=float)
    out = np.zeros(x.shape + (8,))
    out[..., 0] = x
    return out


def oim(a):
    out = np.array(a, dtype=float)
    out[..., 0] = 0.0
    return out


# --------------------------------------------------------------------------
# fields and scalars

_SLOTS = {1: (0,), 2: (0, 1), 4: (0, 1, 2, 4), 8: tuple(range(8))}


class Field(Enum):
    R = 1
    C = 2
    H = 4
    O = 8

    @property
    def dim(self) -> int:
        return self.value

    @property
    def slots(self) -> tuple[int, ...]:
        """Positions of this field's basis in the 8-slot storage."""
        return _SLOTS[self.value]

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(8, dtype=bool)
        m[list(self.slots)] = True
        return m

    @property
    def associative(self) -> bool:
        return self is not Field.O

    @classmethod
    def parse(cls, tag: Union["Field", str]) -> "Field":
        if isinstance(tag, Field):
            return tag
        try:
            return cls[str(tag).strip().upper()]
        except KeyError:
            raise DomainError(f"unknown field {tag!r}; expected one of R, C, H, O") from None

    def __str__(self) -> str:
        return self.name


Real = Union[int, float, np.floating, np.integer]


class KScalar:
    """An immutable element of R, C, H or O.

    ``coeffs`` lists the field's own coordinates: for H these are the
    coefficients of ``(1, e1, e2, e4)``, for C of ``(1, e1)``.

    >>> e1, e2 = KScalar.basis("O", 1), KScalar.basis("O", 2)
    >>> (e1 * e2).coeffs
    (0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0)
    """

    __slots__ = ("field", "_c")

    def __init__(self, field: Union[Field, str], coeffs: Sequence[float]):
        field = Field.parse(field)
        arr = np.asarray(coeffs, dtype=float)
        if arr.shape != (field.dim,):
            raise DomainError(
                f"field {field} takes {field.dim} coefficients, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise DomainError(f"non-finite coefficient in {list(arr)}")
        c = np.zeros(8)
        c[list(field.slots)] = arr
        c.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_c", c)

    @classmethod
    def from_array(cls, field: Union[Field, str], arr) -> "KScalar":
        """Wrap an 8-slot array; slots outside the field must be zero."""
        field = Field.parse(field)
        arr = np.asarray(arr, dtype=float)
        if arr.shape != (8,):
            raise DomainError(f"expected an 8-slot array, got shape {arr.shape}")
        if np.any(arr[~field.mask] != 0.0):
            raise DomainError(f"array has components outside field {field}")
        return cls(field, arr[list(field.slots)])

    @classmethod
    def _wrap(cls, field: Field, arr: np.ndarray) -> "KScalar":
        # trusted path: arr already lives in field's slots
        obj = cls.__new__(cls)
        c = np.array(arr, dtype=float)
        if not np.all(np.isfinite(c)):
            raise DomainError("operation produced a non-finite value")
        c.setflags(write=False)
        object.__setattr__(obj, "field", field)
        object.__setattr__(obj, "_c", c)
        return obj

    @classmethod
    def real(cls, field: Union[Field, str], x: float) -> "KScalar":
        field = Field.parse(field)
        return cls._wrap(field, oreal(float(x)))

    @classmethod
    def zero(cls, field: Union[Field, str]) -> "KScalar":
        return cls.real(field, 0.0)

    @classmethod
    def one(cls, field: Union[Field, str]) -> "KScalar":
        return cls.real(field, 1.0)

    @classmethod
    def basis(cls, field: Union[Field, str], i: int) -> "KScalar":
        """Basis vector ``e_i`` (octonion numbering) inside ``field``."""
        field = Field.parse(field)
        if i not in field.slots:
            raise DomainError(f"e{i} is not in field {field} (slots {field.slots})")
        c = np.zeros(8)
        c[i] = 1.0
        return cls._wrap(field, c)

    def __setattr__(self, name, value):
        raise AttributeError("KScalar is immutable")

    # -- views ----------------------------------------------------------------

    @property
    def array(self) -> np.ndarray:
        """Read-only 8-slot coefficient array."""
        return self._c

    @property
    def coeffs(self) -> tuple[float, ...]:
        return tuple(float(self._c[i]) for i in self.field.slots)

    @property
    def re(self) -> float:
        return float(self._c[0])

    @property
    def im(self) -> "KScalar":
        return KScalar._wrap(self.field, oim(self._c))

    def is_real(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self._c[1:]) <= tol))

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> np.ndarray:
        if isinstance(other, KScalar):
            if other.field is not self.field:
                raise DomainError(f"field mismatch: {self.field} vs {other.field}")
            return other._c
        if isinstance(other, (int, float, np.integer, np.floating)):
            return oreal(float(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return KScalar._wrap(self.field, self._c + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return KScalar._wrap(self.field, self._c - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return KScalar._wrap(self.field, o - self._c)

    def __neg__(self):
        return KScalar._wrap(self.field, -self._c)

    def __mul__(self, other):
        if isinstance(other, KScalar):
            return mul(self, other)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return KScalar._wrap(self.field, self._c * o[0])

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return KScalar._wrap(self.field, self._c * o[0])

    def __truediv__(self, other):
        if isinstance(other, KScalar):
            return mul(self, inverse(other))
        if isinstance(other, (int, float, np.integer, np.floating)):
            if other == 0:
                raise DomainError("division by zero")
            return KScalar._wrap(self.field, self._c / float(other))
        return NotImplemented

    def conj(self) -> "KScalar":
        return conj(self)

    def modulus(self) -> float:
        return modulus(self)

    def inverse(self) -> "KScalar":
        return inverse(self)

    # -- comparison / io ------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, KScalar):
            return NotImplemented
        return self.field is other.field and bool(np.array_equal(self._c, other._c))

    def __hash__(self):
        return hash((self.field, self._c.tobytes()))

    def isclose(self, other: "KScalar", tol: float = 1e-12) -> bool:
        if other.field is not self.field:
            return False
        return bool(np.max(np.abs(self._c - other._c)) <= tol)

    def __repr__(self):
        return f"KScalar({self.field.name}, {list(self.coeffs)})"

    def to_json(self) -> dict:
        return {"field": self.field.name, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj: dict) -> "KScalar":
        try:
            return cls(obj["field"], obj["coeffs"])
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed scalar {obj!r}") from exc


def _check_same(*xs: KScalar) -> Field:
    field = xs[0].field
    for x in xs[1:]:
        if x.field is not field:
            raise DomainError(f"field mismatch: {field} vs {x.field}")
    return field


def mul(a: KScalar, b: KScalar) -> KScalar:
    field = _check_same(a, b)
    return KScalar._wrap(field, omul(a._c, b._c))


def conj(a: KScalar) -> KScalar:
    return KScalar._wrap(a.field, oconj(a._c))


def modulus(a: KScalar) -> float:
    return float(omod(a._c))


def inverse(a: KScalar) -> KScalar:
    n2 = float(onorm2(a._c))
    if n2 == 0.0:
        raise DomainError("zero has no inverse")
    return KScalar._wrap(a.field, oconj(a._c) / n2)


def re_triple(x: KScalar, y: KScalar, z: KScalar) -> float:
    """``Re((xy)z)``; equal to ``Re(x(yz))`` and ``Re((yz)x)`` in every field."""
    _check_same(x, y, z)
    return float(omul(omul(x._c, y._c), z._c)[0])


def basis(field: Union[Field, str], i: int) -> KScalar:
    return KScalar.basis(field, i)


def coerce_array(field: Field, x) -> np.ndarray:
    """8-slot array from a KScalar of ``field``, a real number or a coefficient list."""
    if isinstance(x, KScalar):
        if x.field is not field:
            raise DomainError(f"field mismatch: {field} vs {x.field}")
        return np.array(x._c)
    if isinstance(x, (int, float, np.floating, np.integer)) and not isinstance(x, bool):
        return oreal(float(x))
    try:
        return np.array(KScalar(field, x)._c)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"cannot read {x!r} as a scalar of {field}") from exc


def scalar_from_json(obj, field: Union[Field, str]) -> KScalar:
    """Read a scalar of ``field``: a ``{"field","coeffs"}`` object, a coefficient list or a number."""
    field = Field.parse(field)
    if isinstance(obj, dict):
        s = KScalar.from_json(obj)
        if s.field is not field:
            raise DomainError(f"scalar field {s.field} differs from expected {field}")
        return s
    if isinstance(obj, bool):
        raise DomainError(f"malformed scalar {obj!r}")
    if isinstance(obj, (int, float)):
        return KScalar.real(field, obj)
    if isinstance(obj, list):
        return KScalar(field, obj)
    raise DomainError(f"malformed scalar {obj!r}")


def as_array_stack(scalars: Iterable[KScalar], field: Field) -> np.ndarray:
    """Stack scalars of ``field`` into an ``(m, 8)`` array."""
    rows = []
    for s in scalars:
        if not isinstance(s, KScalar):
            raise DomainError(f"expected KScalar, got {type(s).__name__}")
        if s.field is not field:
            raise DomainError(f"field mismatch: {field} vs {s.field}")
        rows.append(s._c)
    if not rows:
        return np.zeros((0, 8))
    return np.stack(rows)
