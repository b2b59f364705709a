"""Enumeration of integral points on A(t) y^2 = f(x).

Separable points have d/3 <= deg F <= d - 2, so they form a finite set that
can be listed exhaustively.  ``naive_enumerate`` is the slow oracle (every
F and every G of the forced degree); ``search_separable`` only tries F,
reads G off from a polynomial square root, and prunes leading coefficients.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .curve import EllipticCurve, IntegralPoint, TwistedCurve, classify, j_invariant, validate_point
from .errors import BudgetExceeded, DecompositionFailed, InvalidCurve, InvalidFilter
from .field import FieldElement, FieldSpec, embed, parse_field
from .poly import Polynomial, is_squarefree, parse_poly, poly_sqrt

__all__ = [
    "DEFAULT_BUDGET",
    "SearchReport",
    "naive_enumerate",
    "search_separable",
    "frobenius_lift",
    "SweepSpec",
    "SweepReport",
    "sweep",
    "enumerate_A",
    "enumerate_f",
    "CSV_COLUMNS",
]

DEFAULT_BUDGET = 10**8

CSV_COLUMNS = [
    "field",
    "d",
    "A",
    "f",
    "n_separable",
    "n_inseparable",
    "bound",
    "lemma32_ok",
    "thm34_applicable",
    "thm34_ok",
    "j_invariant",
]


def _polys_of_degree(spec: FieldSpec, m: int, lcs=None):
    """All polynomials of exact degree m: by leading coefficient, then lower
    coefficients in little-endian lexicographic order."""
    lcs = range(1, spec.q) if lcs is None else lcs
    for lc in lcs:
        for low in itertools.product(range(spec.q), repeat=m):
            yield Polynomial._raw(spec, low + (lc,))


@dataclass
class SearchReport:
    curve: TwistedCurve
    points: list[IntegralPoint]
    window: tuple[int, int]
    candidates_scanned: int
    wall_time: float
    bound_value: int = field(init=False)

    def __post_init__(self):
        self.points.sort(key=IntegralPoint.sort_key)
        self.bound_value = self.curve.spec.q ** (2 * self.curve.d - 3)

    @property
    def separable(self) -> list[IntegralPoint]:
        return [P for P in self.points if P.is_separable]

    @property
    def inseparable(self) -> list[IntegralPoint]:
        return [P for P in self.points if P.kind == "inseparable"]

    @property
    def counts(self) -> dict[str, int]:
        out = {"separable": 0, "inseparable": 0, "constant": 0}
        for P in self.points:
            out[P.kind] += 1
        return out

    @property
    def covers_window(self) -> bool:
        return self.window[1] >= self.curve.d - 2

    @property
    def bound_respected(self) -> bool:
        return len(self.separable) <= self.bound_value

    @property
    def max_deg_F(self) -> int | None:
        sep = self.separable
        return max(P.F.degree for P in sep) if sep else None

    def to_json(self) -> dict:
        return {
            "curve": self.curve.to_json(),
            "window": list(self.window),
            "points": [P.to_json() for P in self.points],
            "counts": self.counts,
            "bound_value": self.bound_value,
            "bound_respected": self.bound_respected,
            "candidates_scanned": self.candidates_scanned,
            "wall_time": round(self.wall_time, 6),
        }


def naive_enumerate(c: TwistedCurve, degF_max: int, budget: int = DEFAULT_BUDGET) -> list[IntegralPoint]:
    """Every nonconstant (F, G) with deg F <= degF_max, by testing A G^2 = f(F) directly."""
    q, d = c.spec.q, c.d
    plan = []
    total = 0
    for m in range(1, degF_max + 1):
        twice_g = 3 * m - d
        if twice_g < 0 or twice_g % 2:
            continue
        plan.append((m, twice_g // 2))
        total += (q - 1) * q**m * (q - 1) * q ** (twice_g // 2)
    if total > budget:
        raise BudgetExceeded(f"naive enumeration needs {total} candidates > budget {budget}")
    A, f = c.A, c.f
    found = []
    for m, dg in plan:
        Gs = [(G, A * G * G) for G in _polys_of_degree(c.spec, dg)]
        for F in _polys_of_degree(c.spec, m):
            rhs = f.compose(F)
            for G, lhs in Gs:
                if lhs == rhs:
                    found.append(IntegralPoint(F, G, classify(F, G)))
    found.sort(key=IntegralPoint.sort_key)
    return found


def search_window(d: int) -> list[int]:
    """Degrees m with ceil(d/3) <= m <= d - 2 and m = d (mod 2)."""
    return [m for m in range(-(-d // 3), d - 1) if (m - d) % 2 == 0]


def admissible_leading(c: TwistedCurve, m: int) -> list[FieldElement]:
    """Leading coefficients a of F for which lc(f) a^3 / lc(A) is a nonzero square."""
    lf, lA = c.f.lc, c.A.lc
    return [a for a in c.spec.nonzero_elements() if (lf * a * a * a / lA).is_square()]


def _search_stratum(c: TwistedCurve, m: int, lc: FieldElement) -> tuple[list[IntegralPoint], int]:
    A, f = c.A, c.f
    out = []
    scanned = 0
    for F in _polys_of_degree(c.spec, m, [lc._v]):
        scanned += 1
        quo, rem = divmod(f.compose(F), A)
        if rem:
            continue
        G = poly_sqrt(quo)
        if G is None:
            continue
        kind = classify(F, G)
        out.append(IntegralPoint(F, G, kind))
        if G:
            out.append(IntegralPoint(F, -G, kind))
    return out, scanned


def _run_stratum(args):
    return _search_stratum(*args)


def search_separable(c: TwistedCurve, budget: int = DEFAULT_BUDGET, jobs: int = 1) -> SearchReport:
    """All integral points with deg F in the separable window, classified.

    Work is split into one unit per (degree, leading coefficient) stratum;
    with ``jobs > 1`` the strata run in a process pool.
    """
    start = time.perf_counter()
    q, d = c.spec.q, c.d
    window = search_window(d)
    total = sum((q - 1) * q**m for m in window)
    if total > budget:
        raise BudgetExceeded(f"search needs {total} candidate F > budget {budget}")
    units = [(c, m, lc) for m in window for lc in admissible_leading(c, m)]
    if jobs > 1 and len(units) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_stratum, units))
    else:
        results = [_run_stratum(u) for u in units]
    points = [P for pts, _ in results for P in pts]
    scanned = sum(n for _, n in results)
    lo = -(-d // 3)
    return SearchReport(c, points, (lo, d - 2), scanned, time.perf_counter() - start)


def frobenius_lift(c: TwistedCurve, P: IntegralPoint) -> IntegralPoint:
    """(F, G) -> (F^q, A^((q-1)/2) G^q), the composition with q-Frobenius on E.

    A (A^((q-1)/2) G^q)^2 = (A G^2)^q = f(F)^q = f(F^q) because the
    coefficients of f are fixed by x -> x^q.
    """
    q = c.spec.q
    F = P.F**q
    G = c.A ** ((q - 1) // 2) * P.G**q
    return validate_point(c, F, G)


# -- sweeps over families of curves --


def enumerate_A(spec: FieldSpec, d: int, mode: str) -> list[Polynomial]:
    if mode == "monic":
        lcs = [1]
    elif mode == "all":
        lcs = None
    elif mode == "constant_derivative":
        from .family import all_constant_derivative_A

        return all_constant_derivative_A(spec, d, monic=True)
    else:
        raise InvalidFilter(f"unknown A filter {mode!r}")
    return [A for A in _polys_of_degree(spec, d, lcs) if is_squarefree(A)]


def enumerate_f(spec: FieldSpec, mode: str) -> list[Polynomial]:
    if mode == "all":
        lcs = None
    elif mode == "monic":
        lcs = [1]
    else:
        raise InvalidFilter(f"unknown f filter {mode!r}")
    return [f for f in _polys_of_degree(spec, 3, lcs) if is_squarefree(f)]


@dataclass
class SweepSpec:
    """Configuration of a sweep over curves (A, f) over one field and degree d.

    ``A_filter``: monic | all | constant_derivative | explicit (uses ``A_list``).
    ``f_filter``: all | monic | fixed (uses ``f_list``).
    ``sample``: if set, a seeded sample of that many (A, f) pairs.
    """

    field: FieldSpec
    d: int
    A_filter: str = "monic"
    f_filter: str = "all"
    A_list: list[Polynomial] = field(default_factory=list)
    f_list: list[Polynomial] = field(default_factory=list)
    sample: int | None = None
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    oracle: bool = False
    lifts: bool = False

    def pairs(self) -> list[tuple[Polynomial, Polynomial]]:
        if self.A_filter == "explicit":
            As = list(self.A_list)
        else:
            As = enumerate_A(self.field, self.d, self.A_filter)
        if self.f_filter == "fixed":
            fs = list(self.f_list)
        else:
            fs = enumerate_f(self.field, self.f_filter)
        total = len(As) * len(fs)
        if self.sample is not None and self.sample < total:
            idx = sorted(random.Random(self.seed).sample(range(total), self.sample))
        else:
            idx = range(total)
        return [(As[i // len(fs)], fs[i % len(fs)]) for i in idx]

    @classmethod
    def from_json(cls, obj) -> "SweepSpec":
        if isinstance(obj, str):
            obj = json.loads(obj)
        fld = obj["field"]
        spec = FieldSpec.from_json(fld) if isinstance(fld, dict) else parse_field(str(fld))
        As = [parse_poly(s, spec, "t") for s in obj.get("A_list", [])]
        fs = [parse_poly(s, spec, "x") for s in obj.get("f_list", [])]
        A_filter = obj.get("A_filter", "explicit" if "A_list" in obj else "monic")
        f_filter = obj.get("f_filter", "fixed" if "f_list" in obj else "all")
        if A_filter not in ("monic", "all", "constant_derivative", "explicit"):
            raise InvalidFilter(f"unknown A filter {A_filter!r}")
        if f_filter not in ("all", "monic", "fixed"):
            raise InvalidFilter(f"unknown f filter {f_filter!r}")
        return cls(
            spec,
            int(obj["d"]),
            A_filter,
            f_filter,
            As,
            fs,
            obj.get("sample"),
            int(obj.get("seed", 0)),
            int(obj.get("budget", DEFAULT_BUDGET)),
            bool(obj.get("oracle", False)),
            bool(obj.get("lifts", False)),
        )

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "d": self.d,
            "A_filter": self.A_filter,
            "f_filter": self.f_filter,
            "A_list": [A.to_text("t") for A in self.A_list],
            "f_list": [f.to_text("x") for f in self.f_list],
            "sample": self.sample,
            "seed": self.seed,
            "budget": self.budget,
            "oracle": self.oracle,
            "lifts": self.lifts,
        }


def _sweep_unit(args) -> dict:
    """Search one curve and run every theorem check on its separable points."""
    from .theorems import check_conditions, check_lemma_gdf, decompose

    A, f, budget, oracle, lifts = args
    spec = A.spec
    row = {
        "field": spec.to_text(),
        "d": A.degree,
        "A": A.to_text("t"),
        "f": f.to_text("x"),
    }
    violations = []
    try:
        c = TwistedCurve.from_polys(A, f)
    except InvalidCurve as exc:
        violations.append(f"invalid curve: {exc}")
        row.update(n_separable=0, n_inseparable=0, bound=0, lemma32_ok=False,
                   thm34_applicable=False, thm34_ok="", j_invariant="")
        return {"row": row, "violations": violations, "max_deg_F": None, "n_cond_true": 0,
                "n_points_checked": 0}
    report = search_separable(c, budget)
    sep = report.separable
    lemma_ok = True
    for P in sep:
        if not check_lemma_gdf(c, P).ok:
            lemma_ok = False
            violations.append(f"G | F' or degree window fails at {P.to_json()} on {c.label()}")
        if P.G.degree > P.F.degree - 1:
            violations.append(f"deg G > deg F - 1 at {P.to_json()}")
    if not report.bound_respected:
        violations.append(f"bound exceeded on {c.label()}")
    applicable = c.gamma is not None
    thm_ok: object = ""
    n_cond_true = 0
    if applicable:
        thm_ok = True
        for P in sep:
            cr = check_conditions(c, P)
            n_cond_true += cr.condC
            if not cr.ok:
                thm_ok = False
                violations.append(f"(A)/(B)/(C) check fails at {P.to_json()}: {cr.to_json()}")
            try:
                dec = decompose(c, P)
            except DecompositionFailed as exc:
                thm_ok = False
                violations.append(f"decomposition failed: {exc}")
                continue
            if not dec.ok:
                thm_ok = False
                violations.append(f"decomposition identity fails at {P.to_json()}: {dec.checks}")
            if cr.condC and dec.beta_l is not None and dec.beta_l[1] != embed(cr.beta, dec.field):
                thm_ok = False
                violations.append(f"beta mismatch at {P.to_json()}")
    if oracle:
        naive = naive_enumerate(c, c.d - 2, budget)
        if naive != report.points:
            violations.append(f"oracle mismatch on {c.label()}")
    if lifts:
        for P in sep:
            L = frobenius_lift(c, P)
            if L.kind != "inseparable" or L.F.degree != spec.q * P.F.degree:
                violations.append(f"frobenius lift wrong at {P.to_json()}")
    row.update(
        n_separable=len(sep),
        n_inseparable=len(report.inseparable),
        bound=report.bound_value,
        lemma32_ok=lemma_ok,
        thm34_applicable=applicable,
        thm34_ok=thm_ok,
        j_invariant=j_invariant(c.E).to_text(),
    )
    return {
        "row": row,
        "violations": violations,
        "max_deg_F": report.max_deg_F,
        "n_cond_true": n_cond_true,
        "n_points_checked": len(sep),
    }


@dataclass
class SweepReport:
    spec: SweepSpec
    rows: list[dict]
    violations: list[str]
    max_deg_F: int | None
    n_cond_true: int
    n_points: int
    complete: bool = True

    @property
    def bound(self) -> int:
        return self.spec.field.q ** (2 * self.spec.d - 3)

    @property
    def max_separable(self) -> int:
        return max((r["n_separable"] for r in self.rows), default=0)

    @property
    def ok(self) -> bool:
        return not self.violations

    def aggregate(self) -> dict:
        applicable = [r for r in self.rows if r["thm34_applicable"]]
        return {
            "schema": 1,
            "spec": self.spec.to_json(),
            "n_curves": len(self.rows),
            "n_separable_points": self.n_points,
            "max_separable": self.max_separable,
            "bound": self.bound,
            "bound_respected": self.max_separable <= self.bound,
            "max_deg_F_observed": self.max_deg_F,
            "n_thm34_applicable": len(applicable),
            "n_thm34_verified": sum(1 for r in applicable if r["thm34_ok"] is True),
            "n_points_conditions_true": self.n_cond_true,
            "n_violations": len(self.violations),
            "violations": list(self.violations),
            "complete": self.complete,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for r in self.rows:
            writer.writerow({k: _csv_cell(r[k]) for k in CSV_COLUMNS})
        return buf.getvalue()


def _csv_cell(v):
    if v is True:
        return "true"
    if v is False:
        return "false"
    return v


def sweep(spec: SweepSpec, jobs: int = 1) -> SweepReport:
    """Run search and all checks over every curve in ``spec``.

    Curves are independent work units; results are merged in curve order,
    so the report does not depend on ``jobs``.  A BudgetExceeded error carries
    the partial report in its ``partial`` attribute.
    """
    pairs = spec.pairs()
    units = [(A, f, spec.budget, spec.oracle, spec.lifts) for A, f in pairs]
    results = []
    error = None
    try:
        if jobs > 1 and len(units) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                chunk = max(1, math.ceil(len(units) / (4 * jobs)))
                for res in pool.map(_sweep_unit, units, chunksize=chunk):
                    results.append(res)
        else:
            for u in units:
                results.append(_sweep_unit(u))
    except BudgetExceeded as exc:
        error = exc
    degs = [r["max_deg_F"] for r in results if r["max_deg_F"] is not None]
    report = SweepReport(
        spec,
        [r["row"] for r in results],
        [v for r in results for v in r["violations"]],
        max(degs) if degs else None,
        sum(r["n_cond_true"] for r in results),
        sum(r["n_points_checked"] for r in results),
        complete=error is None,
    )
    if error is not None:
        error.partial = report
        raise error
    return report
