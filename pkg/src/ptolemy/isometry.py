"""Boundary actions of the isometry groups as words of generators.

A :class:`Motion` is an ordered word of generators applied right to left
(the last listed acts first). Generators and their actions:

======================  ===================================  ================================
generator               K in {R, C, H}                       O
======================  ===================================  ================================
Translation(b)          ``b * p``                            ``(t, s) * (x, y)``
Rotation(U)             ``(U zeta, v)``                      not available
SpinAction(mu)          ``(mu zeta_i mu^-1, mu v mu^-1)``    ``(mu x conj(mu), y conj(mu))``
Dilation(delta)         ``(delta zeta, delta^2 v)``          ``(delta^4 x, delta^2 y)``
Inversion               ``(zeta A^-1, conj(v) |A|^-2)``      ``(conj(x), -y conj(x)) / |x|^2``
======================  ===================================  ================================

with ``A = -|zeta|^2 + v``. Every generator except inversion fixes infinity;
inversion swaps the origin and infinity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .algebra import Field, KScalar, oconj, oinv, omul, onorm2, oreal
from .errors import DomainError
from .heisenberg import (
    OctBoundaryPoint,
    gauge_arrays,
    group_inv,
    group_mul,
    oct_group_mul,
    oct_inv,
)
from .hermitian import BoundaryPoint
from .sampling import as_rng, oct_point_arrays, point_arrays, unit_imaginary, unit_scalar

Point = Union[BoundaryPoint, OctBoundaryPoint]

__all__ = [
    "Translation",
    "Rotation",
    "SpinAction",
    "Dilation",
    "Inversion",
    "Motion",
    "apply",
    "normalize_pair",
    "random_motion",
    "random_isometry",
    "generator_kinds",
    "random_unitary",
    "is_unitary",
]

# below this gauge a point is treated as the origin by inversion
INVERSION_EPS = 1e-12


def _conj_transpose_product(u: np.ndarray) -> np.ndarray:
    """``(U* U)_kj = sum_i conj(U_ik) U_ij``."""
    return omul(oconj(u)[:, :, None, :], u[:, None, :, :]).sum(axis=0)


def is_unitary(u: np.ndarray, tol: float = 1e-10) -> bool:
    u = np.asarray(u, dtype=float)
    m = u.shape[0]
    eye = np.zeros((m, m, 8))
    eye[np.arange(m), np.arange(m), 0] = 1.0
    return bool(np.max(np.abs(_conj_transpose_product(u) - eye)) <= tol)


def random_unitary(field, size: int, seed=None) -> np.ndarray:
    """Unitary ``size x size`` matrix over R, C or H as an ``(m, m, 8)`` array.

    Gram-Schmidt on Gaussian columns, with projections taken with the scalar
    on the right so the construction is valid over the quaternions.
    """
    field = Field.parse(field)
    if field is Field.O:
        raise DomainError("no matrix rotations over O; use SpinAction")
    if size < 1:
        raise DomainError("size must be at least 1")
    rng = as_rng(seed)
    while True:
        a = np.zeros((size, size, 8))
        a[..., list(field.slots)] = rng.standard_normal((size, size, field.dim))
        cols = []
        ok = True
        for j in range(size):
            c = a[:, j, :]
            for e in cols:
                lam = omul(oconj(e), c).sum(axis=0)
                c = c - omul(e, lam[None, :])
            nrm = math.sqrt(float(onorm2(c).sum()))
            if nrm < 1e-8:
                ok = False
                break
            cols.append(c / nrm)
        if ok:
            return np.stack(cols, axis=1)


# --------------------------------------------------------------------------
# generators

@dataclass(frozen=True)
class Translation:
    point: Point

    def to_json(self):
        return {"kind": "translation", "point": self.point.to_json()}


@dataclass(frozen=True, eq=False)
class Rotation:
    field: Field
    matrix: np.ndarray

    def __post_init__(self):
        field = Field.parse(self.field)
        u = np.array(self.matrix, dtype=float)
        if field is Field.O:
            raise DomainError("no matrix rotations over O")
        if u.ndim != 3 or u.shape[0] != u.shape[1] or u.shape[2] != 8:
            raise DomainError(f"rotation matrix must be (m, m, 8), got {u.shape}")
        if np.any(u[..., ~field.mask] != 0.0):
            raise DomainError(f"matrix entries outside field {field}")
        if not is_unitary(u):
            raise DomainError("rotation matrix is not unitary")
        u.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "matrix", u)

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def to_json(self):
        rows = [[KScalar._wrap(self.field, e).to_json() for e in row] for row in self.matrix]
        return {"kind": "rotation", "matrix": rows}


@dataclass(frozen=True)
class SpinAction:
    mu: KScalar

    def __post_init__(self):
        if abs(self.mu.modulus() - 1.0) > 1e-12:
            raise DomainError("spin scalar must have modulus 1")
        if self.mu.field is Field.O and abs(self.mu.re) > 1e-12:
            raise DomainError("octonionic spin scalar must be purely imaginary")

    def to_json(self):
        return {"kind": "spin", "mu": self.mu.to_json()}


@dataclass(frozen=True)
class Dilation:
    delta: float

    def __post_init__(self):
        if not (self.delta > 0 and math.isfinite(self.delta)):
            raise DomainError("dilation factor must be a positive real")

    def to_json(self):
        return {"kind": "dilation", "delta": float(self.delta)}


@dataclass(frozen=True)
class Inversion:
    def to_json(self):
        return {"kind": "inversion"}


Generator = Union[Translation, Rotation, SpinAction, Dilation, Inversion]


# --------------------------------------------------------------------------
# inversion kernels (finite points away from the origin)

def inversion_arrays(z, v):
    """``(zeta A^-1, conj(v) / |A|^2)`` with ``A = -|zeta|^2 + v``."""
    z = np.asarray(z, dtype=float)
    v = np.asarray(v, dtype=float)
    a = oreal(-onorm2(z).sum(axis=-1)) + v
    nz = omul(z, oinv(a)[..., None, :])
    return nz, oconj(v) / onorm2(a)[..., None]


def oct_inversion_arrays(x, y):
    """``(conj(x) / |x|^2, -y conj(x) / |x|^2)``."""
    x = np.asarray(x, dtype=float)
    n2 = onorm2(x)[..., None]
    xb = oconj(x)
    return xb / n2, -omul(y, xb) / n2


# --------------------------------------------------------------------------
# actions on K-points

def _act_k(g: Generator, p: BoundaryPoint) -> BoundaryPoint:
    field = p.field
    if isinstance(g, Inversion):
        if p.is_infinity:
            return BoundaryPoint.origin(field, p.n)
        z, v = p.zeta_array, p.v_array
        if gauge_arrays(z, v) < INVERSION_EPS:
            return BoundaryPoint.infinity(field, p.n)
        return BoundaryPoint.from_arrays(field, *inversion_arrays(z, v))
    if p.is_infinity:
        return p
    if isinstance(g, Translation):
        return group_mul(g.point, p)
    if isinstance(g, Dilation):
        d = float(g.delta)
        return BoundaryPoint.from_arrays(field, d * p.zeta_array, d * d * p.v_array)
    if isinstance(g, Rotation):
        nz = omul(g.matrix, p.zeta_array[None, :, :]).sum(axis=1)
        return BoundaryPoint.from_arrays(field, nz, p.v_array)
    if isinstance(g, SpinAction):
        mu = g.mu.array
        mu_inv = oinv(mu)
        nz = omul(omul(mu, p.zeta_array), mu_inv)
        nv = omul(omul(mu, p.v_array), mu_inv)
        return BoundaryPoint.from_arrays(field, nz, nv)
    raise DomainError(f"unknown generator {g!r}")


def _act_o(g: Generator, p: OctBoundaryPoint) -> OctBoundaryPoint:
    if isinstance(g, Inversion):
        if p.is_infinity:
            return OctBoundaryPoint.origin()
        x, y = p.x_array, p.y_array
        n2 = float(onorm2(x))
        if math.sqrt(math.sqrt(n2)) < INVERSION_EPS:
            return OctBoundaryPoint.infinity()
        return OctBoundaryPoint.from_arrays(*oct_inversion_arrays(x, y))
    if p.is_infinity:
        return p
    if isinstance(g, Translation):
        return oct_group_mul(g.point, p)
    if isinstance(g, Dilation):
        d = float(g.delta)
        return OctBoundaryPoint.from_arrays(d ** 4 * p.x_array, d * d * p.y_array)
    if isinstance(g, SpinAction):
        mu = g.mu.array
        mub = oconj(mu)
        return OctBoundaryPoint.from_arrays(omul(omul(mu, p.x_array), mub), omul(p.y_array, mub))
    if isinstance(g, Rotation):
        raise DomainError("no matrix rotations over O")
    raise DomainError(f"unknown generator {g!r}")


def _check_generator(g: Generator, field: Field, n: int):
    if isinstance(g, Translation):
        p = g.point
        if p.is_infinity or p.field is not field or p.n != n:
            raise DomainError("translation base point must be a finite point of the same space")
    elif isinstance(g, Rotation):
        if field is Field.O or g.field is not field or g.size != n - 1:
            raise DomainError(f"rotation must be ({n - 1} x {n - 1}) over {field}")
    elif isinstance(g, SpinAction):
        if g.mu.field is not field:
            raise DomainError(f"spin scalar must lie in {field}")
    elif not isinstance(g, (Dilation, Inversion)):
        raise DomainError(f"unknown generator {g!r}")


@dataclass(frozen=True)
class Motion:
    """A word of generators; ``word[-1]`` acts first."""

    field: Field
    n: int
    word: tuple = ()

    def __post_init__(self):
        field = Field.parse(self.field)
        n = 2 if field is Field.O else int(self.n)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "word", tuple(self.word))
        for g in self.word:
            _check_generator(g, field, n)

    @classmethod
    def identity(cls, field, n) -> "Motion":
        return cls(field, n, ())

    def __call__(self, p: Point) -> Point:
        return apply(self, p)

    def then(self, other: "Motion") -> "Motion":
        """The motion ``other o self``."""
        if (other.field, other.n) != (self.field, self.n):
            raise DomainError("motions act on different spaces")
        return Motion(self.field, self.n, other.word + self.word)

    def __len__(self):
        return len(self.word)

    def to_json(self) -> dict:
        return {"field": self.field.name, "n": self.n, "word": [g.to_json() for g in self.word]}

    @classmethod
    def from_json(cls, obj, field=None, n=None) -> "Motion":
        try:
            field = Field.parse(obj.get("field", field))
            n = 2 if field is Field.O else int(obj.get("n", n))
            word = [_generator_from_json(g, field, n) for g in obj["word"]]
        except (KeyError, TypeError, AttributeError) as exc:
            raise DomainError(f"malformed motion {obj!r}") from exc
        return cls(field, n, tuple(word))


def _generator_from_json(obj, field: Field, n: int) -> Generator:
    kind = obj["kind"]
    if kind == "translation":
        if field is Field.O:
            return Translation(OctBoundaryPoint.from_json(obj["point"]))
        return Translation(BoundaryPoint.from_json(obj["point"], field, n))
    if kind == "rotation":
        rows = obj["matrix"]
        u = np.array([[KScalar.from_json(e).array for e in row] for row in rows])
        return Rotation(field, u)
    if kind == "spin":
        return SpinAction(KScalar.from_json(obj["mu"]))
    if kind == "dilation":
        return Dilation(float(obj["delta"]))
    if kind == "inversion":
        return Inversion()
    raise DomainError(f"unknown generator kind {kind!r}")


def apply(m: Motion, p: Point) -> Point:
    if isinstance(p, OctBoundaryPoint):
        if m.field is not Field.O:
            raise DomainError("octonionic point under a non-octonionic motion")
        act = _act_o
    elif isinstance(p, BoundaryPoint):
        if p.field is not m.field or p.n != m.n:
            raise DomainError("point and motion live in different spaces")
        act = _act_k
    else:
        raise DomainError(f"cannot apply a motion to {type(p).__name__}")
    for g in reversed(m.word):
        p = act(g, p)
    return p


# --------------------------------------------------------------------------
# constructions

def _space(p: Point):
    if isinstance(p, OctBoundaryPoint):
        return Field.O, 2
    return p.field, p.n


def _is_origin(p: Point) -> bool:
    return p.is_origin()


def normalize_pair(p: Point, q: Point) -> Motion:
    """A motion sending ``p`` to infinity and ``q`` to the origin."""
    field, n = _space(p)
    if _space(q) != (field, n):
        raise DomainError("points live in different spaces")
    if p.is_infinity and q.is_infinity:
        raise DomainError("points coincide")
    if not (p.is_infinity or q.is_infinity) and p.isclose(q, 0.0):
        raise DomainError("points coincide")
    inv = oct_inv if field is Field.O else group_inv
    if p.is_infinity:
        word = () if _is_origin(q) else (Translation(inv(q)),)
        return Motion(field, n, word)
    first = () if _is_origin(p) else (Translation(inv(p)),)
    if q.is_infinity:
        return Motion(field, n, (Inversion(),) + first)
    head = Motion(field, n, (Inversion(),) + first)
    q1 = apply(head, q)
    if q1.is_infinity:
        raise DomainError("points coincide")
    last = () if _is_origin(q1) else (Translation(inv(q1)),)
    return Motion(field, n, last + head.word)


def _random_translation(field: Field, n: int, rng) -> Translation:
    if field is Field.O:
        x, y = oct_point_arrays(rng)
        return Translation(OctBoundaryPoint.from_arrays(x, y))
    zeta, v = point_arrays(field, n, rng)
    return Translation(BoundaryPoint.from_arrays(field, zeta, v))


def generator_kinds(field, n) -> tuple[str, ...]:
    """Non-inversion generator kinds that act non-trivially on this space."""
    field = Field.parse(field)
    kinds = ["translation"]
    if field is not Field.O and n >= 2:
        kinds.append("rotation")
    if field in (Field.H, Field.O):
        kinds.append("spin")
    kinds.append("dilation")
    return tuple(kinds)


def random_generator(field: Field, n: int, rng, kinds=None, p_inversion: float = 0.25) -> Generator:
    kinds = generator_kinds(field, n) if kinds is None else tuple(kinds)
    if p_inversion > 0 and rng.uniform() < p_inversion:
        return Inversion()
    kind = kinds[int(rng.integers(len(kinds)))]
    if kind == "translation":
        return _random_translation(field, n, rng)
    if kind == "rotation":
        return Rotation(field, random_unitary(field, n - 1, rng))
    if kind == "spin":
        mu = unit_imaginary(field, rng) if field is Field.O else unit_scalar(field, rng)
        return SpinAction(mu)
    if kind == "dilation":
        return Dilation(math.exp(rng.uniform(-1.0, 1.0)))
    raise DomainError(f"unknown generator kind {kind!r}")


def random_motion(field, n, seed=None, word_length: int = 4, *, kinds=None,
                  p_inversion: float = 0.25) -> Motion:
    """Random word of ``word_length`` generators.

    Each slot is an inversion with probability ``p_inversion``, otherwise a
    kind drawn uniformly from ``kinds`` (default: all that act on the space).
    ``seed`` may be an int or a ``numpy.random.Generator``.
    """
    field = Field.parse(field)
    n = 2 if field is Field.O else int(n)
    if word_length < 0:
        raise DomainError("word_length must be non-negative")
    rng = as_rng(seed)
    word = tuple(random_generator(field, n, rng, kinds, p_inversion) for _ in range(word_length))
    return Motion(field, n, word)


def random_isometry(field, n, seed=None, word_length: int = 4) -> Motion:
    """Random word of translations, rotations and spin actions only."""
    kinds = [k for k in generator_kinds(field, n) if k != "dilation"]
    return random_motion(field, n, seed, word_length, kinds=kinds, p_inversion=0.0)
