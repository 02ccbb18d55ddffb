"""End-to-end acceptance checks, one test per criterion.

Each test prints ``criterion N: PASS`` or ``criterion N: FAIL`` (visible in
``pytest -v`` output) and then asserts, so a failure is both reported and
counted.
"""

import math
import random
import time
from fractions import Fraction
from math import comb

import pytest

from acvariety.batteries import verify_theorem_battery
from acvariety.brackets import Kind, content, enumerate_strings, parse
from acvariety.continuant import identity_failures, u_eval, verify_identities
from acvariety.polygons import QuadCenter, area_report, quad_classify, regular_star, star_admissible, synthesize
from acvariety.polysets import par_set, shift_plus_one
from acvariety.sampling import SampleConfig
from acvariety.transforms import ass, ass_braket, ass_to_tbra, bra
from acvariety.varieties import (
    ac_generators,
    certificate_check,
    jacobian_rank,
    on_ac,
    origin_membership,
    rational_parametrization,
)

SEED = 0xC0FFEE
BATTERY_CFG = SampleConfig(count=25, seed=SEED)
QUAD_BASE = [(0, 1), (-1, 0), (0, -1)]


@pytest.fixture
def verdict(capsys):
    """Print one pass/fail line per criterion, outside pytest's capture."""
    def report(number: int, ok: bool, detail: str = "") -> None:
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}{' (' + detail + ')' if detail else ''}")
        assert ok, detail
    return report


def _tail(rng: random.Random, n: int) -> list[Fraction]:
    while True:
        tail = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n - 3)]
        if u_eval(tail) != 0:
            return tail


def parametrized_points() -> dict[int, list[list[Fraction]]]:
    """50 points per n in 5..9, from random tails under a fixed seed."""
    rng = random.Random(SEED)
    return {n: [rational_parametrization(n, _tail(rng, n)) for _ in range(50)] for n in range(5, 10)}


def test_continuant_identities(verdict):
    start = time.perf_counter()
    report = verify_identities(10)
    elapsed = time.perf_counter() - start
    bad = identity_failures(report)
    verdict(1, not bad and elapsed < 10, f"{len(report)} identities, {len(bad)} failures, {elapsed:.2f}s")


def test_basis_certificates(verdict):
    start = time.perf_counter()
    reports = [certificate_check(n) for n in range(4, 11)]
    elapsed = time.perf_counter() - start
    ok = all(r["ok"] for r in reports) and all(len(r["certificates"]) == 8 for r in reports)
    verdict(2, ok and elapsed < 10, f"n=4..10, {elapsed:.2f}s")


def test_small_varieties(verdict):
    ok = on_ac([-1, -1, -1])
    # AC_3 is a single point: x1 x2 = x2 x3 = 1 leaves a one-parameter family with only t = -1 on it
    for t in [Fraction(a, b) for a in range(-12, 13) for b in range(1, 7) if a]:
        ok &= on_ac([1 / t, t, 1 / t]) == (t == -1)
    rng = random.Random(SEED)
    for _ in range(200):
        s = Fraction(rng.randint(-50, 50), rng.randint(1, 20))
        for pt in ([0, s, 0, -s], [s, 0, -s, 0]):
            ok &= all(g.eval(pt) == 0 for g in ac_generators(4))
    verdict(3, ok)


def test_rational_parametrization(verdict):
    points = parametrized_points()
    ok = all(all(g.eval(pt) == 0 for g in ac_generators(n)) for n, pts in points.items() for pt in pts)
    ok &= rational_parametrization(5, [1, 2]) == [0, -1, 1, 1, 2]
    verdict(4, ok, f"{sum(map(len, points.values()))} points")


CONTENT_EXAMPLES = [
    ("(()())", "{{1,3,5},{2},{4}}"),
    ("(())()(())", "{{1,3},{7,9},{2},{5},{8}}"),
    ("(())<()()>()", "{{2},{6},{8},{11},{1,3},<5,7,9>}"),
    ("()<()|()()>()", "{{1},{4},{7},{9},{12},<3,5|6,8,10>}"),
    ("()<(())|()|>", "{{1},{5},{9},{4,6},<3,7|8,10|11>}"),
]


def test_content_engine(verdict):
    ok = all(content(parse(text)).render() == out for text, out in CONTENT_EXAMPLES)
    ok &= all(len(enumerate_strings(Kind.PAR, n)) == comb(2 * n, n) // (n + 1) for n in range(1, 9))
    checked = 0
    for n in range(1, 7):
        for b in enumerate_strings(Kind.PAR, n):
            seen: set[int] = set()
            for block in content(b).rounds().values():
                ok &= len({k % 2 for k in block}) == 1 and not seen & set(block)
                seen |= set(block)
            checked += 1
    ok &= len(enumerate_strings(Kind.PAR, 6)) == 132
    verdict(5, ok, f"{checked} strings checked for parity and disjointness")


TRANSFORM_EXAMPLES = [
    (ass, "(())()(())", "()(()(()))"),
    (bra, "(())()(())", "<()|()(())>"),
    (ass_braket, "<()|(())>()", "()<(())|()>"),
    (ass_to_tbra, "<()|(())>()", "<()|(())|()>"),
]


def test_transformations(verdict):
    ok = True
    for fn, src, out in TRANSFORM_EXAMPLES:
        got = fn(src)
        ok &= got.text == out and parse(got.text).kind == got.kind
    for n in range(1, 7):
        for b in enumerate_strings(Kind.PAR, n):
            image = ass(b)
            ok &= parse(image.text).kind is Kind.PAR and parse(bra(b).text).kind is Kind.BRA
            ok &= len(par_set(b).union(shift_plus_one(par_set(image)))) == n + 1
    verdict(6, ok)


def _run(theorem, sizes, consts=None):
    failures, cases = [], 0
    for n in sizes:
        rep = verify_theorem_battery(theorem, n, BATTERY_CFG, consts)
        failures += rep["failures"]
        cases += rep["cases"]
    return failures, cases


def test_inclusion_batteries(verdict):
    start = time.perf_counter()
    consts = [0, 1, -2, Fraction(3, 7)]
    runs = [
        _run("ang-value", range(1, 6), consts),
        _run("bra-value", range(1, 6), consts),
        _run("tbra-eps-value", range(1, 5), [1, -1]),
        _run("qbra-value", range(2, 5)),
        _run("tbra-two-value", range(1, 5)),
    ]
    elapsed = time.perf_counter() - start
    failures = [f for fails, _ in runs for f in fails]
    cases = sum(c for _, c in runs)
    verdict(7, not failures and elapsed < 60, f"{cases} cases, {len(failures)} failures, {elapsed:.1f}s")


def test_subvariety_batteries(verdict):
    start = time.perf_counter()
    runs = [
        _run("ac-mod4-0", [8, 12]),
        _run("ac-odd", [2, 3, 4]),
        _run("tbra-step", [2, 3, 4]),
        _run("ac-mod4-2", [2, 4]),
        _run("qbra-step", [2, 3, 4]),
    ]
    elapsed = time.perf_counter() - start
    failures = [f for fails, _ in runs for f in fails]
    cases = sum(c for _, c in runs)
    verdict(8, not failures and elapsed < 120, f"{cases} cases, {len(failures)} failures, {elapsed:.1f}s")


def test_singularities(verdict):
    ok = [n for n in range(3, 14) if origin_membership(n)] == [4, 8, 12]
    rng = random.Random(SEED + 9)
    for n in (5, 6, 7, 9):
        ok &= all(jacobian_rank(rational_parametrization(n, _tail(rng, n))) == 3 for _ in range(20))
    ok &= all(jacobian_rank([0] * n) < 3 for n in (8, 12))
    verdict(9, ok)


def test_polygon_synthesis(verdict):
    rng = random.Random(SEED + 10)
    ok = True
    count = 0
    for n, pts in parametrized_points().items():
        for pt in pts:
            while True:
                p0 = (Fraction(rng.randint(-9, 9), rng.randint(1, 5)), Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
                p1 = (Fraction(rng.randint(-9, 9), rng.randint(1, 5)), Fraction(rng.randint(-9, 9), rng.randint(1, 5)))
                det = p0[0] * p1[1] - p0[1] * p1[0]
                if det:
                    break
            chain = synthesize(pt, p0, p1)
            ok &= chain.closed and area_report(chain).areas == (det,) * n
            count += 1
    stars = 0
    for n in range(3, 13):
        for k in range(1, n):
            if star_admissible(n, k):
                chain = regular_star(n, k)
                rep = area_report(chain)
                ok &= chain.closure_residual() < 1e-9 and rep.max_deviation < 1e-9
                stars += 1
    ok &= abs(regular_star(5, 1).coeffs[0] - (math.sqrt(5) - 1) / 2) < 1e-12
    verdict(10, ok, f"{count} exact polygons, {stars} stars")


def test_quadrilateral_classifier(verdict):
    ok = quad_classify(*QUAD_BASE, (1, 5)).kind is QuadCenter.DIAGONAL_13_BISECTED
    ok &= quad_classify(*QUAD_BASE, (3, 0)).kind is QuadCenter.DIAGONAL_02_BISECTED
    ok &= quad_classify(*QUAD_BASE, (2, 3)).kind is QuadCenter.NONE
    rng = random.Random(SEED + 11)

    def r():
        return Fraction(rng.randint(-100, 100), rng.randint(1, 30))

    on_line = [(Fraction(1), r()) for _ in range(1000)]
    ok &= all(quad_classify(*QUAD_BASE, p).has_center for p in on_line)
    off = []
    while len(off) < 1000:
        p = (r(), r())
        if p[0] != 1 and p[1] != 0:
            off.append(p)
    ok &= all(quad_classify(*QUAD_BASE, p).kind is QuadCenter.NONE for p in off)
    verdict(11, ok)
