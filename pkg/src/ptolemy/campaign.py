"""Seeded verification campaigns.

Sample ``i`` of every suite draws its inputs from ``sample_rng(seed, i)``,
inputs are evaluated in fixed-size chunks, and reductions (max, count, first
argmax) run over the concatenated per-sample arrays. Reports are therefore
identical for any thread count.

Every check turns a sample into a non-negative deviation; the sample
violates the check when the deviation exceeds the check's tolerance.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Optional

import numpy as np

from .algebra import Field, oconj, omod, omul
from .crossratio import (
    Quadruple,
    fundamental_arrays,
    oct_inequality_arrays,
    oct_sqdist_table_arrays,
    oct_symmetry_arrays,
    oct_cross_pair,
    metric_ratio,
    pairing_table_arrays,
    real_cross_arrays,
    symmetry_arrays,
    triple,
    triple_arrays,
)
from .errors import ConfigError
from .heisenberg import (
    OctBoundaryPoint,
    any_dist,
    dist_arrays,
    dist_group_arrays,
    dist_lift_arrays,
    gauge_arrays,
    oct_dist_arrays,
    oct_dist_direct_arrays,
)
from .hermitian import BoundaryPoint
from .inequality import (
    PAIRINGS,
    RCircle,
    ptolemy_check,
    ptolemy_residual_arrays,
    sample_parameters,
    separation,
)
from .isometry import (
    inversion_arrays,
    oct_inversion_arrays,
    random_isometry,
    random_motion,
)
from .sampling import (
    oct_point_arrays,
    point_arrays,
    quadruple_arrays,
    sample_rng,
    scalar_array,
    unit_imaginary,
)

__all__ = [
    "SUITES",
    "CampaignConfig",
    "CampaignReport",
    "CampaignSummary",
    "run_suite",
    "verify_campaign",
]

SUITES = ("algebra", "metric", "isometry", "fundamental", "ptolemy", "rcircle")
CHUNK = 512
# converse evidence: quadruples with all relative residuals below this are
# treated as lying on an R-circle and excluded from the equality count
CIRCLE_GUARD = 1e-6


@dataclass(frozen=True)
class Check:
    name: str
    tol: float
    overridable: bool = True


def _arr(x):
    return np.asarray(x, dtype=float)


def _k_points_json(field: Field, zs, vs) -> list:
    return [BoundaryPoint.from_arrays(field, z, v).to_json() for z, v in zip(zs, vs)]


def _o_points_json(xs, ys) -> list:
    return [OctBoundaryPoint.from_arrays(x, y).to_json() for x, y in zip(xs, ys)]


def _quad_json(field: Field, n: int, a, b) -> dict:
    pts = _o_points_json(a, b) if field is Field.O else _k_points_json(field, a, b)
    return {"field": field.name, "n": n, "points": pts}


# --------------------------------------------------------------------------
# suites: make(field, n, rng) -> input; evaluate(field, n, inputs) -> {check: array}

class Suite:
    name = ""

    def applicable(self, field: Field, n: int) -> Optional[str]:
        return None

    def checks(self, field: Field, n: int) -> list[Check]:
        raise NotImplementedError

    def make(self, field: Field, n: int, rng):
        raise NotImplementedError

    def evaluate(self, field: Field, n: int, inputs: list) -> dict:
        raise NotImplementedError

    def describe(self, field: Field, n: int, inp) -> dict:
        raise NotImplementedError

    def extras(self, field: Field, n: int, values: dict) -> dict:
        return {}


class AlgebraSuite(Suite):
    name = "algebra"

    def checks(self, field, n):
        out = [Check("modulus_multiplicative", 1e-12), Check("conj_antihomomorphism", 1e-12),
               Check("re_triple", 1e-12), Check("moufang", 1e-12)]
        if field is not Field.R:
            out += [Check("spin_conjugation", 1e-12), Check("spin_right", 1e-12),
                    Check("spin_symmetric", 1e-12)]
        if field.associative:
            out.append(Check("associativity", 1e-12))
        return out

    def make(self, field, n, rng):
        x, y, z = scalar_array(field, rng, size=3)
        mu = unit_imaginary(field, rng).array if field is not Field.R else np.zeros(8)
        return np.stack([x, y, z, mu])

    def evaluate(self, field, n, inputs):
        a = np.stack(inputs)
        x, y, z, mu = a[:, 0], a[:, 1], a[:, 2], a[:, 3]
        xy = omul(x, y)
        yz = omul(y, z)
        mx, my = omod(x), omod(y)
        out = {
            "modulus_multiplicative": np.abs(omod(xy) - mx * my) / (mx * my),
            "conj_antihomomorphism": omod(oconj(xy) - omul(oconj(y), oconj(x))),
            "re_triple": np.maximum(np.abs(omul(xy, z)[:, 0] - omul(x, yz)[:, 0]),
                                    np.abs(omul(xy, z)[:, 0] - omul(yz, x)[:, 0])),
            "moufang": omod(omul(omul(z, xy), z) - omul(omul(z, x), yz)),
        }
        if field is not Field.R:
            mub = oconj(mu)
            lhs1 = omul(omul(omul(mu, x), mub), omul(mu, y))
            lhs2 = omul(omul(x, mu), omul(omul(mub, y), mu))
            rhs3 = omul(omul(x, mub), omul(mu, y)) + omul(omul(y, mub), omul(mu, x))
            out["spin_conjugation"] = omod(lhs1 - omul(mu, xy))
            out["spin_right"] = omod(lhs2 - omul(xy, mu))
            out["spin_symmetric"] = omod(xy + omul(y, x) - rhs3)
        if field.associative:
            out["associativity"] = omod(omul(xy, z) - omul(x, yz))
        return out

    def describe(self, field, n, inp):
        names = ("x", "y", "z", "mu")
        return {k: list(v[list(field.slots)]) for k, v in zip(names, inp)}


class MetricSuite(Suite):
    name = "metric"

    def checks(self, field, n):
        return [Check("triangle", 1e-10), Check("distance_paths", 1e-10),
                Check("inversion_origin", 1e-9), Check("inversion_pair", 1e-9),
                Check("dilation", 1e-9)]

    def make(self, field, n, rng):
        if field is Field.O:
            a, b = oct_point_arrays(rng, 3)
        else:
            a, b = point_arrays(field, n, rng, 3)
        return a, b, math.exp(rng.uniform(-1.0, 1.0))

    def evaluate(self, field, n, inputs):
        a = np.stack([i[0] for i in inputs])
        b = np.stack([i[1] for i in inputs])
        delta = np.array([i[2] for i in inputs])
        p, q, r = (slice(None), 0), (slice(None), 1), (slice(None), 2)
        if field is Field.O:
            d = oct_dist_arrays
            other = [oct_dist_direct_arrays]
            norm = lambda x, y: np.sqrt(omod(x))
            rp = oct_inversion_arrays(a[p], b[p])
            rq = oct_inversion_arrays(a[q], b[q])
            k = 2.0
            dp = (delta[:, None] ** 4 * a[p], delta[:, None] ** 2 * b[p])
            dq = (delta[:, None] ** 4 * a[q], delta[:, None] ** 2 * b[q])
        else:
            d = dist_arrays
            other = [dist_group_arrays, dist_lift_arrays]
            norm = gauge_arrays
            rp = inversion_arrays(a[p], b[p])
            rq = inversion_arrays(a[q], b[q])
            k = 1.0
            dp = (delta[:, None, None] * a[p], delta[:, None] ** 2 * b[p])
            dq = (delta[:, None, None] * a[q], delta[:, None] ** 2 * b[q])
        dpq = d(a[p], b[p], a[q], b[q])
        dqr = d(a[q], b[q], a[r], b[r])
        dpr = d(a[p], b[p], a[r], b[r])
        tri = np.maximum.reduce([dpr - dpq - dqr, dpq - dpr - dqr, dqr - dpq - dpr])
        paths = np.zeros_like(dpq)
        for f in other:
            paths = np.maximum(paths, np.abs(f(a[p], b[p], a[q], b[q]) - dpq))
        dpo, dqo = norm(a[p], b[p]), norm(a[q], b[q])
        inv_o = np.abs(norm(*rp) * dpo - 1.0)
        inv_pair = np.abs(d(*rp, *rq) * dpo * dqo / dpq - 1.0)
        dil = np.abs(d(*dp, *dq) / (delta ** k * dpq) - 1.0)
        return {"triangle": np.maximum(tri, 0.0), "distance_paths": paths,
                "inversion_origin": inv_o, "inversion_pair": inv_pair, "dilation": dil}

    def describe(self, field, n, inp):
        a, b, delta = inp
        pts = _o_points_json(a, b) if field is Field.O else _k_points_json(field, a, b)
        return {"points": pts, "delta": delta}


def _invariants(q: Quadruple):
    if q.field is Field.O:
        return np.array(oct_cross_pair(q))
    t = triple(q)
    return [t.X1, t.X2, t.X3]


class IsometrySuite(Suite):
    name = "isometry"

    def checks(self, field, n):
        return [Check("cross_ratio_invariance", 1e-9), Check("metric_ratio", 1e-9),
                Check("distance_preserved", 1e-9)]

    def make(self, field, n, rng):
        a, b = quadruple_arrays(field, n, rng)
        motion = random_motion(field, n, rng, int(rng.integers(1, 7)))
        iso = random_isometry(field, n, rng)
        return a, b, motion, iso

    def _quad(self, field, a, b):
        if field is Field.O:
            return Quadruple(*(OctBoundaryPoint.from_arrays(a[i], b[i]) for i in range(4)))
        return Quadruple(*(BoundaryPoint.from_arrays(field, a[i], b[i]) for i in range(4)))

    def evaluate(self, field, n, inputs):
        inv, mr, iso = [], [], []
        for a, b, motion, isom in inputs:
            q = self._quad(field, a, b)
            gq = q.map(motion)
            x0, x1 = _invariants(q), _invariants(gq)
            if field is Field.O:
                dev = float(np.max(np.abs(x1 - x0) / x0))
            else:
                devs = []
                for u, w in zip(x0, x1):
                    scale = u.modulus()
                    if field is Field.H:
                        devs.append(abs(w.modulus() - scale) / scale)
                        devs.append(abs(w.re - u.re) / scale)
                    else:
                        devs.append((w - u).modulus() / scale)
                dev = max(devs)
            inv.append(dev)
            worst = 0.0
            for qq, xs in ((q, x0), (gq, x1)):
                x = xs[0] if field is Field.O else xs[0].modulus()
                ratio = metric_ratio(qq)
                worst = max(worst, abs(ratio - math.sqrt(x)) / ratio)
            mr.append(worst)
            p0, p1 = q.p1, q.p2
            d0 = any_dist(p0, p1)
            iso.append(abs(any_dist(isom(p0), isom(p1)) - d0) / d0)
        return {"cross_ratio_invariance": _arr(inv), "metric_ratio": _arr(mr),
                "distance_preserved": _arr(iso)}

    def describe(self, field, n, inp):
        a, b, motion, iso = inp
        return {"quadruple": _quad_json(field, n, a, b), "motion": motion.to_json(),
                "isometry": iso.to_json()}


class FundamentalSuite(Suite):
    name = "fundamental"

    def checks(self, field, n):
        if field is Field.O:
            return [Check("oct_inequality", 1e-9), Check("oct_symmetry", 1e-10)]
        out = [Check("r1", 1e-9), Check("r2_lower", 1e-9), Check("symmetry", 1e-9)]
        if n <= 2:
            out.append(Check("r2_equality", 1e-8))
        return out

    def make(self, field, n, rng):
        return quadruple_arrays(field, n, rng)

    def evaluate(self, field, n, inputs):
        a = np.stack([i[0] for i in inputs])
        b = np.stack([i[1] for i in inputs])
        if field is Field.O:
            d2 = oct_sqdist_table_arrays(a, b)
            x1 = real_cross_arrays(d2, 0, 1, 2, 3)
            x2 = real_cross_arrays(d2, 0, 2, 1, 3)
            res = oct_inequality_arrays(x1, x2)
            sym = np.abs(oct_symmetry_arrays(d2)).max(axis=-1)
            return {"oct_inequality": np.maximum(res, 0.0), "oct_symmetry": sym}
        g = pairing_table_arrays(a, b)
        r1, r2 = fundamental_arrays(*triple_arrays(g))
        out = {"r1": np.abs(r1), "r2_lower": np.maximum(-r2, 0.0),
               "symmetry": np.abs(symmetry_arrays(g)).max(axis=-1)}
        if n <= 2:
            out["r2_equality"] = np.abs(r2)
        return out

    def describe(self, field, n, inp):
        return {"quadruple": _quad_json(field, n, *inp)}


class PtolemySuite(Suite):
    name = "ptolemy"

    def checks(self, field, n):
        return [Check("product_inequality", 1e-9), Check("cross_ratio_inequality", 1e-9)]

    def make(self, field, n, rng):
        return quadruple_arrays(field, n, rng)

    def evaluate(self, field, n, inputs):
        a = np.stack([i[0] for i in inputs])
        b = np.stack([i[1] for i in inputs])
        if field is Field.O:
            d = np.sqrt(oct_sqdist_table_arrays(a, b))
            x1 = real_cross_arrays(d ** 2, 0, 1, 2, 3)
            x2 = real_cross_arrays(d ** 2, 0, 2, 1, 3)
        else:
            d = dist_arrays(a[:, :, None], b[:, :, None], a[:, None, :], b[:, None, :])
            x1, x2, _ = triple_arrays(pairing_table_arrays(a, b))
            x1, x2 = omod(x1), omod(x2)
        _, _, rel = ptolemy_residual_arrays(d)
        s1, s2 = np.sqrt(x1), np.sqrt(x2)
        cr = np.maximum(1.0 - (s1 + s2), np.abs(s1 - s2) - 1.0)
        return {"product_inequality": np.maximum(-rel.min(axis=-1), 0.0),
                "cross_ratio_inequality": np.maximum(cr, 0.0),
                "_relative": rel}

    def extras(self, field, n, values):
        rel = values["_relative"]
        generic = ~np.all(np.abs(rel) < CIRCLE_GUARD, axis=-1)
        equal = np.any(np.abs(rel) <= 1e-9, axis=-1)
        return {"equality_verdicts_off_circle": int(np.count_nonzero(generic & equal)),
                "min_abs_relative_residual": float(np.abs(rel).min())}

    def describe(self, field, n, inp):
        return {"quadruple": _quad_json(field, n, *inp)}


class RCircleSuite(Suite):
    name = "rcircle"
    # the non-matching relative residuals must stay above this
    SEPARATION_GAP = 1e-3

    def applicable(self, field, n):
        if field is not Field.O and n < 2:
            return "R-circles need n >= 2"
        return None

    def checks(self, field, n):
        return [Check("matching_equality", 1e-7), Check("cross_ratio_equality", 1e-7),
                Check("separation_gap", 0.0, overridable=False)]

    def make(self, field, n, rng):
        circle = RCircle.random(field, n, rng)
        ts: list = sample_parameters(rng)
        if rng.uniform() < 0.125:
            ts[int(rng.integers(4))] = math.inf
        return circle, ts

    def evaluate(self, field, n, inputs):
        match, crs, gap = [], [], []
        for circle, ts in inputs:
            q = Quadruple(*(circle.point(t) for t in ts))
            k = PAIRINGS.index(separation(*ts))
            rep = ptolemy_check(q)
            match.append(abs(rep.relative[k]))
            other = min(abs(rep.relative[j]) for j in range(3) if j != k)
            gap.append(max(self.SEPARATION_GAP - other, 0.0))
            if field is Field.O:
                x1, x2 = oct_cross_pair(q)
            else:
                t = triple(q)
                x1, x2 = t.X1.modulus(), t.X2.modulus()
            s1, s2 = math.sqrt(x1), math.sqrt(x2)
            crs.append(abs((s1 - s2 - 1.0, s2 - s1 - 1.0, s1 + s2 - 1.0)[k]))
        return {"matching_equality": _arr(match), "cross_ratio_equality": _arr(crs),
                "separation_gap": _arr(gap)}

    def describe(self, field, n, inp):
        circle, ts = inp
        return {"circle": circle.to_json(),
                "params": ["inf" if math.isinf(t) else t for t in ts]}


_SUITES: dict = {s.name: s for s in (AlgebraSuite(), MetricSuite(), IsometrySuite(),
                                      FundamentalSuite(), PtolemySuite(), RCircleSuite())}


# --------------------------------------------------------------------------
# driver

@dataclass(frozen=True)
class CampaignConfig:
    suites: tuple = SUITES
    fields: tuple = (Field.R, Field.C, Field.H, Field.O)
    n: int = 2
    samples: int = 1000
    seed: int = 0
    tol: Optional[float] = None
    threads: int = 1

    def __post_init__(self):
        suites = tuple(self.suites)
        for s in suites:
            if s not in _SUITES:
                raise ConfigError(f"unknown suite {s!r}; choose from {', '.join(SUITES)}")
        if not suites:
            raise ConfigError("no suites selected")
        try:
            fields = tuple(Field.parse(f) for f in self.fields)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if not fields:
            raise ConfigError("no fields selected")
        for name, value, low in (("n", self.n, 1), ("samples", self.samples, 1),
                                 ("seed", self.seed, 0), ("threads", self.threads, 1)):
            if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < low:
                raise ConfigError(f"{name} must be an integer >= {low}, got {value!r}")
        if self.tol is not None and not (math.isfinite(self.tol) and self.tol >= 0):
            raise ConfigError(f"tol must be a finite non-negative number, got {self.tol!r}")
        object.__setattr__(self, "suites", suites)
        object.__setattr__(self, "fields", fields)

    def spaces(self) -> list:
        """``(field, n)`` pairs: O always has n = 2, R needs n >= 2."""
        out = []
        for f in self.fields:
            n = 2 if f is Field.O else self.n
            if f is Field.R and n < 2:
                raise ConfigError("n = 1 is not available over R")
            out.append((f, n))
        return out


@dataclass
class CampaignReport:
    suite: str
    field: str
    n: Optional[int]
    samples: int
    seed: int
    violations: int
    max_abs_residual: float
    worst_input: Optional[dict]
    checks: dict = dc_field(default_factory=dict)
    extras: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_json(self) -> dict:
        out = {
            "suite": self.suite,
            "field": self.field,
            "n": self.n,
            "samples": self.samples,
            "seed": self.seed,
            "violations": self.violations,
            "max_abs_residual": self.max_abs_residual,
            "worst_input": self.worst_input,
            "checks": self.checks,
        }
        if self.extras:
            out["extras"] = self.extras
        return out


@dataclass
class CampaignSummary:
    reports: list

    @property
    def violations(self) -> int:
        return sum(r.violations for r in self.reports)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_json(self) -> dict:
        return {"passed": self.passed, "violations": self.violations,
                "reports": [r.to_json() for r in self.reports]}


def _evaluate_chunk(suite: Suite, field: Field, n: int, seed: int, lo: int, hi: int) -> dict:
    inputs = [suite.make(field, n, sample_rng(seed, i)) for i in range(lo, hi)]
    return suite.evaluate(field, n, inputs)


def run_suite(suite_name: str, field, n: int, samples: int, seed: int,
              tol: Optional[float] = None, threads: int = 1) -> CampaignReport:
    suite = _SUITES[suite_name]
    field = Field.parse(field)
    if field is Field.O:
        n = 2
    reason = suite.applicable(field, n)
    if reason:
        raise ConfigError(f"suite {suite_name} on {field.name}, n={n}: {reason}")
    bounds = [(lo, min(lo + CHUNK, samples)) for lo in range(0, samples, CHUNK)]
    if threads > 1 and len(bounds) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda b: _evaluate_chunk(suite, field, n, seed, *b), bounds))
    else:
        parts = [_evaluate_chunk(suite, field, n, seed, *b) for b in bounds]
    values = {k: np.concatenate([p[k] for p in parts]) for k in parts[0]}

    checks = {}
    violated = np.zeros(samples, dtype=bool)
    score = np.zeros(samples)
    max_dev = 0.0
    for chk in suite.checks(field, n):
        t = tol if (tol is not None and chk.overridable) else chk.tol
        dev = np.nan_to_num(values[chk.name], nan=np.inf)
        bad = dev > t
        violated |= bad
        score = np.maximum(score, dev / t if t > 0 else np.where(dev > 0, np.inf, 0.0))
        m = float(dev.max())
        max_dev = max(max_dev, m)
        checks[chk.name] = {"max": m, "tol": t, "violations": int(np.count_nonzero(bad))}
    worst = int(np.argmax(score))
    inp = suite.make(field, n, sample_rng(seed, worst))
    worst_input = {"index": worst, **suite.describe(field, n, inp)}
    return CampaignReport(
        suite=suite_name,
        field=field.name,
        n=None if suite_name == "algebra" else n,
        samples=samples,
        seed=seed,
        violations=int(np.count_nonzero(violated)),
        max_abs_residual=max_dev,
        worst_input=worst_input,
        checks=checks,
        extras=suite.extras(field, n, values),
    )


def verify_campaign(config: CampaignConfig) -> CampaignSummary:
    reports = []
    spaces = config.spaces()
    for name in config.suites:
        for field, n in spaces:
            if _SUITES[name].applicable(field, n):
                continue
            reports.append(run_suite(name, field, n, config.samples, config.seed,
                                     config.tol, config.threads))
    return CampaignSummary(reports)
