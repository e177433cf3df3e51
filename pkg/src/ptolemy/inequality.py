"""R-circles, separation on R u {inf}, and the Ptolemaean inequality checker.

The checker works with the three distance products::

    P1 = d13 d24,   P2 = d12 d34,   P3 = d23 d14

and the residuals ``P2 + P3 - P1``, ``P1 + P3 - P2``, ``P1 + P2 - P3``.
The metric is Ptolemaean when all three are non-negative; on an R-circle
the residual whose left side pairs the two separating point pairs vanishes.
Verdicts use residuals divided by ``max(P)``, which are invariant under
similarities and inversion. When one point is infinity its factor is dropped
from every product, and the residuals become the cross-ratio form
``X1^(1/2) + X2^(1/2) >= 1``, ``|X1^(1/2) - X2^(1/2)| <= 1`` scaled by ``d23``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .algebra import Field
from .crossratio import Quadruple, distance_table
from .errors import DomainError
from .heisenberg import OctBoundaryPoint
from .hermitian import BoundaryPoint
from .isometry import Motion, apply, random_motion
from .sampling import as_rng, real_line_point

__all__ = [
    "PAIRINGS",
    "VERDICTS",
    "RCircle",
    "rcircle_point",
    "parse_parameter",
    "separation",
    "PtolemyReport",
    "ptolemy_check",
    "ptolemy_residual_arrays",
    "sample_parameters",
]

# index k of the pairing whose product is P_(k+1)
PAIRINGS = ("pair_13_24", "pair_12_34", "pair_14_23")
VERDICTS = ("strict",) + tuple("equality_case_" + p[5:] for p in PAIRINGS) + ("violation",)

Param = Union[float, str, None]


def parse_parameter(t: Param) -> float:
    """Curve parameter as a float; ``None``, ``"inf"`` and +-inf all mean the point at infinity."""
    if t is None:
        return math.inf
    if isinstance(t, str):
        s = t.strip().lower()
        if s in ("inf", "+inf", "-inf", "infinity", "oo"):
            return math.inf
        try:
            t = float(s)
        except ValueError as exc:
            raise DomainError(f"bad curve parameter {t!r}") from exc
    t = float(t)
    if math.isnan(t):
        raise DomainError("curve parameter is NaN")
    return math.inf if math.isinf(t) else t


@dataclass(frozen=True)
class RCircle:
    """Image of the standard R-circle under ``motion``."""

    field: Field
    n: int
    motion: Motion

    def __post_init__(self):
        field = Field.parse(self.field)
        n = 2 if field is Field.O else int(self.n)
        if field is not Field.O and n < 2:
            raise DomainError("R-circles need n >= 2")
        if self.motion.field is not field or self.motion.n != n:
            raise DomainError("motion does not act on this space")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "n", n)

    @classmethod
    def standard(cls, field, n) -> "RCircle":
        field = Field.parse(field)
        return cls(field, n, Motion.identity(field, n))

    @classmethod
    def random(cls, field, n, seed=None, max_word_length: int = 6) -> "RCircle":
        """Motion word of uniformly random length ``1..max_word_length``."""
        field = Field.parse(field)
        rng = as_rng(seed)
        length = int(rng.integers(1, max_word_length + 1))
        return cls(field, n, random_motion(field, n, rng, length))

    def point(self, t: Param):
        return rcircle_point(self, t)

    def to_json(self) -> dict:
        return {"field": self.field.name, "n": self.n, "motion": self.motion.to_json()}


def rcircle_point(c: RCircle, t: Param):
    t = parse_parameter(t)
    if math.isinf(t):
        base = (OctBoundaryPoint.infinity() if c.field is Field.O
                else BoundaryPoint.infinity(c.field, c.n))
    else:
        base = real_line_point(c.field, c.n, t)
    return apply(c.motion, base)


def separation(t1: Param, t2: Param, t3: Param, t4: Param) -> str:
    """The pairing whose two pairs interleave on the circle R u {inf}."""
    ts = [parse_parameter(t) for t in (t1, t2, t3, t4)]
    if len(set(ts)) < 4:
        raise DomainError("curve parameters must be distinct")
    order = sorted(range(4), key=lambda i: ts[i])
    pos = [0] * 4
    for rank, i in enumerate(order):
        pos[i] = rank

    def interleaved(a, b, c, d):
        lo, hi = sorted((pos[a], pos[b]))
        return (lo < pos[c] < hi) != (lo < pos[d] < hi)

    if interleaved(0, 2, 1, 3):
        return "pair_13_24"
    if interleaved(0, 1, 2, 3):
        return "pair_12_34"
    return "pair_14_23"


def sample_parameters(rng, count: int = 4, low: float = -3.0, high: float = 3.0,
                      min_gap: float = 0.1) -> list[float]:
    """``count`` uniform parameters in ``[low, high]`` with pairwise gaps >= ``min_gap``."""
    if min_gap * (count - 1) >= high - low:
        raise DomainError("gap constraint cannot be met")
    while True:
        ts = rng.uniform(low, high, count)
        s = np.sort(ts)
        if np.all(np.diff(s) >= min_gap):
            return [float(t) for t in ts]


# --------------------------------------------------------------------------
# checker

def ptolemy_residual_arrays(d):
    """Products and relative residuals from finite distance tables ``(..., 4, 4)``."""
    d = np.asarray(d, dtype=float)
    p = np.stack([d[..., 0, 2] * d[..., 1, 3],
                  d[..., 0, 1] * d[..., 2, 3],
                  d[..., 1, 2] * d[..., 0, 3]], axis=-1)
    raw = p.sum(axis=-1, keepdims=True) - 2.0 * p
    return p, raw, raw / p.max(axis=-1, keepdims=True)


def _products(q: Quadruple) -> np.ndarray:
    d = distance_table(q)
    inf = [i for i, pt in enumerate(q.points) if pt.is_infinity]
    pairs = (((0, 2), (1, 3)), ((0, 1), (2, 3)), ((1, 2), (0, 3)))
    out = []
    for pr in pairs:
        val = 1.0
        for a, b in pr:
            if not (a in inf or b in inf):
                val *= d[a, b]
        out.append(val)
    return np.array(out)


@dataclass(frozen=True)
class PtolemyReport:
    """Products, residuals and verdict for one quadruple.

    ``residuals[k]`` is ``sum(products) - 2 products[k]``; ``relative`` divides
    by ``max(products)``. ``case`` is the 1-based index of the equality case.
    ``flagged`` marks inputs where two equality residuals fall within ``tol``.
    """

    products: tuple
    residuals: tuple
    relative: tuple
    verdict: str
    case: Optional[int]
    flagged: bool
    tol: float

    @property
    def pairing(self) -> Optional[str]:
        return None if self.case is None else PAIRINGS[self.case - 1]

    def to_json(self) -> dict:
        return {
            "products": list(self.products),
            "residuals": list(self.residuals),
            "relative": list(self.relative),
            "verdict": self.verdict,
            "case": self.case,
            "flagged": self.flagged,
            "tol": self.tol,
        }


def classify(relative: Sequence[float], tol: float):
    """``(verdict, case, flagged)`` with precedence violation > equality > strict."""
    rel = [float(r) for r in relative]
    if min(rel) < -tol:
        return "violation", None, False
    near = [k for k in range(3) if abs(rel[k]) <= tol]
    if not near:
        return "strict", None, False
    k = min(near, key=lambda j: abs(rel[j]))
    return "equality_case_" + PAIRINGS[k][5:], k + 1, len(near) > 1


def ptolemy_check(q, tol: float = 1e-9) -> PtolemyReport:
    q = Quadruple.coerce(q)
    if tol < 0 or not math.isfinite(tol):
        raise DomainError("tol must be a finite non-negative number")
    p = _products(q)
    raw = p.sum() - 2.0 * p
    rel = raw / p.max()
    verdict, case, flagged = classify(rel, tol)
    return PtolemyReport(
        products=tuple(float(x) for x in p),
        residuals=tuple(float(x) for x in raw),
        relative=tuple(float(x) for x in rel),
        verdict=verdict,
        case=case,
        flagged=flagged,
        tol=float(tol),
    )
