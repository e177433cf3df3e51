"""Random scalars, points and quadruples for property checks and campaigns.

Every sampler takes a ``numpy.random.Generator``. Campaigns derive one
generator per sample from ``(seed, index)`` via :func:`sample_rng`, so a
sample's inputs do not depend on how work is split across threads.
"""
from __future__ import annotations

import numpy as np

from .algebra import Field, KScalar, omul, oreal
from .errors import DomainError
from .heisenberg import OctBoundaryPoint, dist_arrays, oct_dist_arrays
from .hermitian import BoundaryPoint

# a quadruple is rejected when min/max pairwise distance falls below this;
# it bounds every cross-ratio modulus by QUADRUPLE_SPREAD**-4
QUADRUPLE_SPREAD = 0.2
# candidates drawn per rejection round
_BATCH = 4


def sample_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng((int(seed), int(index)))


def as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def scalar_array(field: Field, rng, low=-2.0, high=2.0, size=()) -> np.ndarray:
    """Coefficients uniform in ``[low, high]`` in the field's slots."""
    size = tuple(np.atleast_1d(size)) if size != () else ()
    out = np.zeros(size + (8,))
    out[..., list(field.slots)] = rng.uniform(low, high, size + (field.dim,))
    return out


def random_scalar(field, rng, low=-2.0, high=2.0) -> KScalar:
    field = Field.parse(field)
    return KScalar._wrap(field, scalar_array(field, rng, low, high))


def imag_array(field: Field, rng, low=-1.0, high=1.0, size=()) -> np.ndarray:
    out = scalar_array(field, rng, low, high, size)
    out[..., 0] = 0.0
    return out


def unit_imaginary(field, rng) -> KScalar:
    """Uniformly distributed unit imaginary scalar (C, H or O)."""
    field = Field.parse(field)
    if field is Field.R:
        raise DomainError("R has no imaginary units")
    c = np.zeros(8)
    g = rng.standard_normal(field.dim - 1)
    c[list(field.slots[1:])] = g / np.linalg.norm(g)
    return KScalar._wrap(field, c)


def unit_scalar(field, rng) -> KScalar:
    field = Field.parse(field)
    c = np.zeros(8)
    g = rng.standard_normal(field.dim)
    c[list(field.slots)] = g / np.linalg.norm(g)
    return KScalar._wrap(field, c)


def point_arrays(field: Field, n: int, rng, size=()):
    """Raw ``(zeta, v)`` arrays with coefficients uniform in ``[-1, 1]``."""
    size = tuple(np.atleast_1d(size)) if size != () else ()
    zeta = scalar_array(field, rng, -1.0, 1.0, size + (n - 1,))
    v = imag_array(field, rng, -1.0, 1.0, size)
    return zeta, v


def oct_point_arrays(rng, size=()):
    """Raw ``(x, y)`` arrays on the variety: ``y``, ``Im x`` uniform in ``[-1, 1]``."""
    size = tuple(np.atleast_1d(size)) if size != () else ()
    y = rng.uniform(-1.0, 1.0, size + (8,))
    x = imag_array(Field.O, rng, -1.0, 1.0, size)
    x[..., 0] = -0.5 * np.einsum("...i,...i->...", y, y)
    return x, y


def random_point(field, n, rng):
    field = Field.parse(field)
    if field is Field.O:
        x, y = oct_point_arrays(rng)
        return OctBoundaryPoint.from_arrays(x, y)
    zeta, v = point_arrays(field, n, rng)
    return BoundaryPoint.from_arrays(field, zeta, v)


def _spread_ok(d: np.ndarray, spread: float) -> np.ndarray:
    iu = np.triu_indices(d.shape[-1], 1)
    off = d[..., iu[0], iu[1]]
    return off.min(axis=-1) >= spread * off.max(axis=-1)


def quadruple_arrays(field: Field, n: int, rng, spread: float = QUADRUPLE_SPREAD):
    """Four finite points whose pairwise distances are within a factor ``1/spread``.

    Returns ``(a, b)`` stacked over the four points: ``(zeta, v)`` for
    K in {R, C, H} and ``(x, y)`` for O. Rejection keeps cross-ratios
    bounded so absolute residual tolerances stay meaningful.
    """
    while True:
        if field is Field.O:
            a, b = oct_point_arrays(rng, (_BATCH, 4))
            d = oct_dist_arrays(a[:, :, None], b[:, :, None], a[:, None, :], b[:, None, :])
        else:
            a, b = point_arrays(field, n, rng, (_BATCH, 4))
            d = dist_arrays(a[:, :, None], b[:, :, None], a[:, None, :], b[:, None, :])
        ok = np.flatnonzero(_spread_ok(d, spread))
        if ok.size:
            return a[ok[0]], b[ok[0]]


def random_quadruple(field, n, rng, spread: float = QUADRUPLE_SPREAD):
    field = Field.parse(field)
    a, b = quadruple_arrays(field, n, rng, spread)
    if field is Field.O:
        return tuple(OctBoundaryPoint.from_arrays(a[i], b[i]) for i in range(4))
    return tuple(BoundaryPoint.from_arrays(field, a[i], b[i]) for i in range(4))


def real_line_point(field, n, t: float):
    """``((t, 0, ..., 0), 0)`` or ``(-t^2, sqrt(2) t)``: the standard R-circle."""
    field = Field.parse(field)
    if field is Field.O:
        return OctBoundaryPoint.from_arrays(oreal(0.0 - t * t), oreal(np.sqrt(2.0) * t))
    if n < 2:
        raise DomainError("the standard R-circle needs n >= 2")
    zeta = np.zeros((n - 1, 8))
    zeta[0, 0] = t
    return BoundaryPoint.from_arrays(field, zeta, np.zeros(8))


EQUALITY_CASES = ("n1", "n2", "zeta_zero", "parallel")


def equality_quadruple(field, n, case: str, rng, spread: float = QUADRUPLE_SPREAD):
    """A quadruple on which the variety-2 inequality is an equality.

    ``n1``: any quadruple with n = 1 (K != R). ``n2``: any quadruple with n = 2.
    ``zeta_zero`` and ``parallel`` use the normalization p1 = inf, p4 = o with
    ``zeta_2 = 0`` or ``zeta_2 = zeta_3 lam`` (scalar on the right) respectively.
    The three finite points are drawn subject to the same spread guard as
    :func:`quadruple_arrays`.
    """
    field = Field.parse(field)
    if field is Field.O:
        raise DomainError("equality cases are stated for associative fields")
    if case == "n1":
        if field is Field.R:
            raise DomainError("n = 1 is not available over R")
        n = 1
    elif case == "n2":
        n = 2
    elif case not in EQUALITY_CASES:
        raise DomainError(f"unknown equality case {case!r}; expected one of {EQUALITY_CASES}")
    if case in ("n1", "n2"):
        return random_quadruple(field, n, rng)
    if n < 2:
        raise DomainError("this equality case needs n >= 2")
    if case == "zeta_zero" and field is Field.R:
        raise DomainError("zeta_2 = 0 would put p2 at the origin over R")
    while True:
        z3, v3 = point_arrays(field, n, rng)
        _, v2 = point_arrays(field, n, rng)
        if case == "zeta_zero":
            z2 = np.zeros_like(z3)
        else:
            lam = scalar_array(field, rng)
            z2 = omul(z3, lam[None, :])
        z = np.stack([z2, z3, np.zeros_like(z3)])
        v = np.stack([v2, v3, np.zeros(8)])
        d = dist_arrays(z[:, None], v[:, None], z[None, :], v[None, :])
        if _spread_ok(d, spread):
            break
    return (BoundaryPoint.infinity(field, n),
            BoundaryPoint.from_arrays(field, z2, v2),
            BoundaryPoint.from_arrays(field, z3, v3),
            BoundaryPoint.origin(field, n))
