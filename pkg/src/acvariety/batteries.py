"""Exhaustive inclusion checks over whole string families.

Each battery walks every string of a family, builds the hypothesis set,
samples exact points on it and checks the conclusion there (plus
symbolically when the hypothesis is linear).  Work units get their own RNG
stream keyed by theorem, constant and string index, so a report depends only
on the seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .brackets import BracketString, Kind, enumerate_strings, starts_with_angle
from .continuant import u_eval
from .polyalg import as_scalar
from .polysets import (
    PolySet,
    ang_set,
    bra_set,
    linear_rank,
    par_set,
    qbra_two_set,
    shift_plus_one,
    tbra_eps_set,
    tbra_two_set,
)
from .sampling import InclusionReport, Predicate, SampleConfig, check_predicates, form_predicate
from .transforms import ass, ass_braket, ass_tbra, ass_to_qbra, ass_to_tbra, bra


def u_equals(lo: int, hi: int, value) -> Predicate:
    value = as_scalar(value)
    return f"u[{lo},{hi}] = {value}", lambda x: u_eval(list(x[lo - 1:hi])) - value


def ac_predicates(n: int) -> list[Predicate]:
    return [u_equals(1, n, 1), u_equals(1, n - 1, 0), u_equals(2, n, 0)]


def set_predicates(s: PolySet) -> list[Predicate]:
    return [form_predicate(f) for f in s.forms]


def sign(k: int) -> int:
    return -1 if k % 2 else 1


@dataclass(frozen=True)
class Case:
    """One hypothesis set with the conclusions to check on it."""

    string: str
    const: Fraction | None
    source: PolySet
    predicates: list[Predicate]
    extra: dict | None = None


@dataclass(frozen=True)
class Battery:
    id: str
    alias: str | None
    summary: str
    size_label: str
    min_n: int
    cases: Callable[[int, tuple], Iterable[Case]]
    default_consts: tuple = (None,)
    valid_n: Callable[[int], bool] = lambda n: True


# --- case generators -------------------------------------------------------------

def _ang_value(n, consts):
    for c in consts:
        for b in enumerate_strings(Kind.ANG, n):
            yield Case(b.text, c, ang_set(b, c), [u_equals(1, 2 * n - 1, sign(n - 1) * c)])


def _bra_value(n, consts):
    for c in consts:
        for b in enumerate_strings(Kind.BRA, n):
            yield Case(b.text, c, bra_set(b, c), [u_equals(1, 2 * n, sign(n - 1) * (c - 1))])


def _par_pair(n, consts):
    for b in enumerate_strings(Kind.PAR, n):
        first, second = par_set(b), shift_plus_one(par_set(ass(b)))
        joint = first.union(second)
        rank = linear_rank(joint.forms, joint.ambient)
        yield Case(b.text, None, joint, [u_equals(1, 2 * n - 1, 0), u_equals(2, 2 * n, 0)],
                   extra={"forms": len(joint), "rank": rank, "expected_rank": n + 1})


def _bra_ketting(n, consts):
    for b in enumerate_strings(Kind.PAR, n):
        joint = par_set(b).union(shift_plus_one(par_set(ass(b))))
        yield Case(b.text, None, joint, set_predicates(bra_set(bra(b), 0)))


def _ac_mod4_zero(n, consts):
    for b in enumerate_strings(Kind.PAR, n // 2):
        joint = par_set(b).union(shift_plus_one(par_set(ass(b))))
        yield Case(b.text, None, joint, ac_predicates(n))


def _tbra_eps_value(n, consts):
    for eps in consts:
        for b in enumerate_strings(Kind.TBRA, n):
            yield Case(b.text, eps, tbra_eps_set(b, eps), [u_equals(1, 2 * n + 1, sign(n) * eps)])


def _leading_bra(n):
    return [b for b in enumerate_strings(Kind.BRA, n) if starts_with_angle(b)]


def _leading_tbra(n):
    return [b for b in enumerate_strings(Kind.TBRA, n) if starts_with_angle(b)]


def _tbra_step(n, consts):
    for eps in consts:
        for b in _leading_bra(n):
            b2 = ass_to_tbra(b)
            target = bra_set(b, 1).union(shift_plus_one(bra_set(ass_braket(b), 1)))
            yield Case(b.text, eps, tbra_eps_set(b2, eps), set_predicates(target), extra={"image": b2.text})


def _ac_odd(n, consts):
    eps = sign(n)
    for b in _leading_bra(n):
        b2 = ass_to_tbra(b)
        target = bra_set(b, 1).union(shift_plus_one(bra_set(ass_braket(b), 1)))
        preds = ac_predicates(2 * n + 1) + set_predicates(target)
        yield Case(b.text, Fraction(eps), tbra_eps_set(b2, eps), preds, extra={"image": b2.text})


def _qbra_value(n, consts):
    for b in enumerate_strings(Kind.QBRA, n):
        yield Case(b.text, Fraction(2), qbra_two_set(b), [u_equals(1, 2 * n, sign(n - 1))])


def _tbra_two_value(n, consts):
    for b in enumerate_strings(Kind.TBRA, n):
        yield Case(b.text, Fraction(2), tbra_two_set(b), [u_equals(1, 2 * n + 1, 0)])


def _qbra_targets(b: BracketString) -> PolySet:
    return tbra_two_set(b).union(shift_plus_one(tbra_two_set(ass_tbra(b))))


def _qbra_step(n, consts):
    for b in _leading_tbra(n):
        b2 = ass_to_qbra(b)
        yield Case(b.text, Fraction(2), qbra_two_set(b2), set_predicates(_qbra_targets(b)),
                   extra={"image": b2.text})


def _ac_two_mod4(n, consts):
    for b in _leading_tbra(n):
        b2 = ass_to_qbra(b)
        preds = [u_equals(1, 2 * n + 1, 0), u_equals(2, 2 * n + 2, 0), u_equals(1, 2 * n + 2, sign(n))]
        yield Case(b.text, Fraction(2), qbra_two_set(b2), preds + set_predicates(_qbra_targets(b)),
                   extra={"image": b2.text, "on_ac": n % 2 == 0})


BATTERIES: dict[str, Battery] = {b.id: b for b in [
    Battery("ang-value", "4.1", "angle strings: u[1,2n-1] = (-1)^(n-1) c", "Ang_n", 1, _ang_value,
            default_consts=(Fraction(0), Fraction(1), Fraction(-2), Fraction(3, 7))),
    Battery("bra-value", "5.1", "bra-ket strings: u[1,2n] = (-1)^(n-1) (c-1)", "Bra_n", 1, _bra_value,
            default_consts=(Fraction(0), Fraction(1), Fraction(-2), Fraction(3, 7))),
    Battery("par-pair", "6.1", "a string and its shifted rotation: u[1,2n-1] = u[2,2n] = 0, rank n+1",
            "Par_n", 2, _par_pair),
    Battery("bra-ketting", "7.1", "a string and its shifted rotation lie on the bra-ketted set at c=0",
            "Par_n", 1, _bra_ketting),
    Battery("ac-mod4-0", "7.2", "pairs of round strings land on AC_n for n = 0 mod 4", "AC index n",
            4, _ac_mod4_zero, valid_n=lambda n: n % 4 == 0),
    Battery("tbra-eps-value", "8.1", "triple bra-ket strings: u[1,2n+1] = (-1)^n eps", "Tbra_n", 1,
            _tbra_eps_value, default_consts=(Fraction(1), Fraction(-1))),
    Battery("tbra-step", "9.2", "triple bra-ket image lies on both bra-ket sets at c=1", "Bra_n", 1,
            _tbra_step, default_consts=(Fraction(1), Fraction(-1))),
    Battery("ac-odd", "9.1", "triple bra-ket images land on AC_(2n+1)", "Bra_n", 1, _ac_odd),
    Battery("qbra-value", "10.1", "quadruple bra-ket strings: u[1,2n] = (-1)^(n-1)", "Qbra_n", 2,
            _qbra_value),
    Battery("tbra-two-value", "10.2", "triple bra-ket product strings: u[1,2n+1] = 0", "Tbra_n", 1,
            _tbra_two_value),
    Battery("qbra-step", None, "quadruple bra-ket image lies on both triple product sets", "Tbra_n", 1,
            _qbra_step),
    Battery("ac-mod4-2", "11.1", "quadruple bra-ket images land on AC_(2n+2) for even n", "Tbra_n", 1,
            _ac_two_mod4),
]}

ALIASES = {b.alias: b.id for b in BATTERIES.values() if b.alias}


def resolve(theorem_id: str) -> Battery:
    key = ALIASES.get(theorem_id, theorem_id)
    if key not in BATTERIES:
        known = sorted(BATTERIES) + sorted(ALIASES)
        raise KeyError(f"unknown theorem id {theorem_id!r}; expected one of {', '.join(known)}")
    return BATTERIES[key]


def verify_theorem_battery(theorem_id: str, n: int, cfg: SampleConfig, consts: Iterable | None = None) -> dict:
    """Run one battery at size ``n``; failures are collected, never raised."""
    battery = resolve(theorem_id)
    if n < battery.min_n or not battery.valid_n(n):
        raise ValueError(f"{battery.id} is not defined for n={n}")
    consts = tuple(as_scalar(c) for c in consts) if consts is not None else battery.default_consts
    total = InclusionReport()
    strings = []
    for index, case in enumerate(battery.cases(n, consts)):
        rep = check_predicates(case.source, case.predicates, cfg, stream=f"{battery.id}:{n}:{index}")
        entry = {"string": case.string, "const": None if case.const is None else str(case.const),
                 "points": cfg.count,
                 "checked": rep.checked, "symbolic": rep.symbolic, "ok": rep.ok}
        if case.extra:
            entry.update(case.extra)
            if "rank" in case.extra and case.extra["rank"] != case.extra["expected_rank"]:
                rep.failures.append({"check": "linear rank", "rank": case.extra["rank"],
                                     "expected": case.extra["expected_rank"]})
                entry["ok"] = False
            if "forms" in case.extra and case.extra["forms"] != case.extra["expected_rank"]:
                rep.failures.append({"check": "union size", "size": case.extra["forms"],
                                     "expected": case.extra["expected_rank"]})
                entry["ok"] = False
        for f in rep.failures:
            f["string"] = case.string
            if case.const is not None:
                f["const"] = str(case.const)
        total.merge(rep)
        strings.append(entry)
    return {
        "theorem": battery.id,
        "alias": battery.alias,
        "summary": battery.summary,
        "n": n,
        "family": battery.size_label,
        "strings": strings,
        "cases": len(strings),
        "checked": total.checked,
        "symbolic": total.symbolic,
        "failures": total.failures,
        "ok": total.ok,
    }
