"""Exact random points on ``V(f_b(c))`` and inclusion checks at those points.

Product forms are handled by fixing segment sums first: a chain of
products ``S1 S2 = c, S2 S3 = c, ..`` gets ``t, c/t, t, ..`` for a random
nonzero ``t``.  Every segment sum then becomes one more linear equation, and
the whole linear system is solved exactly with random values for the free
variables.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .continuant import u_eval
from .linalg import solve_affine
from .polyalg import SparsePoly, as_scalar
from .polysets import LinearForm, PolySet, QuadForm

MAX_RETRIES = 32

PointQ = tuple[Fraction, ...]


class SamplingError(RuntimeError):
    UNSATISFIABLE_CHAIN = "UNSATISFIABLE_CHAIN"
    RETRY_EXHAUSTED = "RETRY_EXHAUSTED"

    def __init__(self, code: str, detail: str = ""):
        super().__init__(f"{code}: {detail}" if detail else code)
        self.code = code


@dataclass(frozen=True)
class SampleConfig:
    count: int = 25
    height: int = 9
    seed: int = 0xC0FFEE

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be at least 1")
        if self.height < 2:
            raise ValueError("height must be at least 2")

    def rng(self, stream: int | str = 0) -> random.Random:
        """Independent generator per work unit, stable across runs."""
        return random.Random(f"{self.seed}:{stream}")


def random_rational(rng: random.Random, height: int, nonzero: bool = False) -> Fraction:
    while True:
        v = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if v or not nonzero:
            return v


def _rows(forms: Sequence[tuple[tuple[int, ...], Fraction]], nvars: int):
    rows, rhs = [], []
    for idx, c in forms:
        row = [Fraction(0)] * nvars
        for k in idx:
            row[k - 1] = Fraction(1)
        rows.append(row)
        rhs.append(c)
    return rows, rhs


def _forced_zero(linear: list[tuple[tuple[int, ...], Fraction]], seg: tuple[int, ...], nvars: int) -> bool:
    """True when the linear forms alone force ``sum(seg) = 0``."""
    base = linear + [(seg, Fraction(0))]
    bumped = linear + [(seg, Fraction(1))]
    return solve_affine(*_rows(base, nvars), nvars) is not None and solve_affine(*_rows(bumped, nvars), nvars) is None


def _segment_values(quads: list[QuadForm], rng: random.Random, height: int) -> dict | None:
    """Assign a value to every segment of the product graph, or None on a clash."""
    adj: dict[tuple, list[tuple[tuple, Fraction]]] = {}
    for q in quads:
        adj.setdefault(q.left, []).append((q.right, q.constant))
        adj.setdefault(q.right, []).append((q.left, q.constant))
    values: dict[tuple, Fraction] = {}
    for root in sorted(adj):
        if root in values:
            continue
        needs_nonzero = any(c != 0 for _, c in adj[root])
        values[root] = (random_rational(rng, height, nonzero=True)
                        if needs_nonzero or rng.random() < 0.5 else Fraction(0))
        queue = deque([root])
        while queue:
            a = queue.popleft()
            for b, c in adj[a]:
                va = values[a]
                if b in values:
                    if va * values[b] != c:
                        return None
                    continue
                if c != 0:
                    if va == 0:
                        return None
                    values[b] = c / va
                elif va != 0:
                    values[b] = Fraction(0)
                else:
                    values[b] = (random_rational(rng, height, nonzero=True)
                                 if rng.random() < 0.5 else Fraction(0))
                queue.append(b)
    return values


def _draw(s: PolySet, rng: random.Random, height: int) -> PointQ | None:
    n = s.ambient
    linear = [(f.indices, f.constant) for f in s.linear()]
    segs = _segment_values(s.quadratic(), rng, height)
    if segs is None:
        return None
    system = linear + [(seg, v) for seg, v in sorted(segs.items())]
    solved = solve_affine(*_rows(system, n), n)
    if solved is None:
        return None
    pivots, reduced = solved
    pset = set(pivots)
    point = [Fraction(0)] * n
    for j in range(n):
        if j not in pset:
            point[j] = random_rational(rng, height)
    for p, row in zip(pivots, reduced):
        point[p] = row[n] - sum(row[j] * point[j] for j in range(n) if j not in pset and row[j])
    return tuple(point)


def sample_point(s: PolySet, cfg: SampleConfig, stream: int | str = 0) -> list[PointQ]:
    """``cfg.count`` exact points, each satisfying every form of ``s``."""
    linear = [(f.indices, f.constant) for f in s.linear()]
    for q in s.quadratic():
        if q.constant != 0:
            for seg in (q.left, q.right):
                if _forced_zero(linear, seg, s.ambient):
                    raise SamplingError(SamplingError.UNSATISFIABLE_CHAIN,
                                        f"segment {seg} is forced to 0 but {q} needs it nonzero")
    rng = cfg.rng(stream)
    points = []
    for _ in range(cfg.count):
        for _attempt in range(MAX_RETRIES):
            pt = _draw(s, rng, cfg.height)
            if pt is not None and s.satisfied_by(pt):
                points.append(pt)
                break
        else:
            raise SamplingError(SamplingError.RETRY_EXHAUSTED, f"no point on {s} after {MAX_RETRIES} draws")
    return points


# --- symbolic solution of linear sets -------------------------------------------------

def affine_solution(s: PolySet) -> list[SparsePoly] | None:
    """General solution of a purely linear set as affine polynomials in the free variables.

    Pivot variables are replaced by their solved expressions; free variables
    stay as themselves.  Returns None when the set has no solution.
    """
    if not s.is_linear():
        raise ValueError("only linear sets have an affine solution")
    n = s.ambient
    linear = [(f.indices, f.constant) for f in s.linear()]
    if not linear:
        return [SparsePoly.var(j, n) for j in range(1, n + 1)]
    solved = solve_affine(*_rows(linear, n), n)
    if solved is None:
        return None
    pivots, reduced = solved
    pset = set(pivots)
    sol = [SparsePoly.var(j + 1, n) for j in range(n)]
    for p, row in zip(pivots, reduced):
        expr = SparsePoly.const(row[n], n)
        for j in range(n):
            if j not in pset and row[j]:
                expr = expr - row[j] * SparsePoly.var(j + 1, n)
        sol[p] = expr
    return sol


# --- inclusion claims ---------------------------------------------------------------

@dataclass(frozen=True)
class InclusionClaim:
    """``V(source)`` lies in ``{u[lo, hi] = expected}`` inside ``ambient``-space."""

    source: PolySet
    target_range: tuple[int, int]
    expected: Fraction
    ambient: int = 0
    label: str = ""

    def __post_init__(self):
        lo, hi = self.target_range
        amb = self.ambient or self.source.ambient
        object.__setattr__(self, "ambient", amb)
        object.__setattr__(self, "expected", as_scalar(self.expected))
        if not (1 <= lo and hi <= amb and hi >= lo - 1):
            raise ValueError(f"target range [{lo},{hi}] outside ambient {amb}")
        if self.source.ambient > amb:
            raise ValueError("source uses more variables than the ambient space")

    def residual(self, point) -> object:
        lo, hi = self.target_range
        return u_eval(list(point[lo - 1:hi])) - self.expected

    def describe(self) -> str:
        lo, hi = self.target_range
        return self.label or f"u[{lo},{hi}] = {self.expected}"


@dataclass
class InclusionReport:
    checked: int = 0
    symbolic: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: "InclusionReport") -> None:
        self.checked += other.checked
        self.symbolic += other.symbolic
        self.failures.extend(other.failures)

    def to_json(self) -> dict:
        return {"checked": self.checked, "symbolic": self.symbolic, "failures": self.failures}


def _pad(point: PointQ, ambient: int) -> list[Fraction]:
    return list(point) + [Fraction(0)] * (ambient - len(point))


def check_inclusion(claim: InclusionClaim, cfg: SampleConfig, stream: int | str = 0,
                    points: list[PointQ] | None = None) -> InclusionReport:
    """Evaluate the target continuant exactly at sampled points of the source.

    Linear sources are also checked symbolically: the target continuant of
    the general solution must reduce to the expected constant.
    """
    return check_predicates(claim.source, [(claim.describe(), claim.residual)], cfg, stream,
                            ambient=claim.ambient, points=points)


Predicate = tuple[str, Callable[[Sequence], object]]


def check_predicates(source: PolySet, predicates: list[Predicate], cfg: SampleConfig,
                     stream: int | str = 0, ambient: int | None = None,
                     points: list[PointQ] | None = None) -> InclusionReport:
    """Every predicate must vanish on ``V(source)``.

    Each predicate maps a coordinate vector to a residual; it is applied to
    sampled rational points and, for linear sources, to the affine general
    solution, where the residual must be the zero polynomial.
    """
    ambient = ambient or source.ambient
    report = InclusionReport()
    if points is None:
        points = sample_point(source, cfg, stream)
    for pt in points:
        full = _pad(pt, ambient)
        for name, fn in predicates:
            report.checked += 1
            r = fn(full)
            if r != 0:
                report.failures.append({"check": name, "point": [str(v) for v in full], "residual": str(r)})
    if source.is_linear():
        sol = affine_solution(source)
        if sol is None:
            report.failures.append({"check": "affine-solution", "detail": "linear system is inconsistent"})
            return report
        sol = [p.with_nvars(ambient) for p in sol] + [SparsePoly.var(j, ambient)
                                                       for j in range(len(sol) + 1, ambient + 1)]
        for name, fn in predicates:
            report.symbolic += 1
            r = fn(sol)
            if not _is_zero(r):
                report.failures.append({"check": name, "symbolic": True, "residual": str(r)})
    return report


def _is_zero(v) -> bool:
    return v.is_zero() if isinstance(v, SparsePoly) else v == 0


def form_predicate(form: LinearForm | QuadForm) -> Predicate:
    return str(form), form.value
