"""Constraint sets attached to bracket strings.

Every left round bracket contributes the linear form ``sum(x_k for k in
content)``.  The chain ``< | ... >`` contributes, depending on the style,
shifted linear forms (``sum - c``) or products of consecutive segment sums
(``(sum_A)(sum_B) - c``).  Constants are stored in the forms so a single
structure serves every value of the constant.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .brackets import BracketString, Kind, content, parse_as
from .polyalg import SparsePoly, as_scalar


@dataclass(frozen=True, order=True)
class LinearForm:
    indices: tuple[int, ...]
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        if not self.indices:
            raise ValueError("linear form needs at least one variable")
        object.__setattr__(self, "indices", tuple(sorted(set(self.indices))))
        object.__setattr__(self, "constant", as_scalar(self.constant))

    def shifted(self, by: int = 1) -> "LinearForm":
        return LinearForm(tuple(k + by for k in self.indices), self.constant)

    def support(self) -> set[int]:
        return set(self.indices)

    def to_poly(self, nvars: int) -> SparsePoly:
        return SparsePoly.linear(self.indices, nvars, self.constant)

    def value(self, point) -> Fraction:
        return sum(point[k - 1] for k in self.indices) - self.constant

    def __str__(self):
        s = "+".join(f"x{k}" for k in self.indices)
        return s if not self.constant else f"{s}-{self.constant}" if self.constant > 0 else f"{s}+{-self.constant}"


@dataclass(frozen=True, order=True)
class QuadForm:
    """``(sum over left)(sum over right) - constant``; left holds the smaller index."""

    left: tuple[int, ...]
    right: tuple[int, ...]
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        left, right = tuple(sorted(set(self.left))), tuple(sorted(set(self.right)))
        if not left or not right:
            raise ValueError("product form needs two nonempty factors")
        if set(left) & set(right):
            raise ValueError("product form factors must be disjoint")
        if right[0] < left[0]:
            left, right = right, left
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "constant", as_scalar(self.constant))

    def shifted(self, by: int = 1) -> "QuadForm":
        return QuadForm(tuple(k + by for k in self.left), tuple(k + by for k in self.right), self.constant)

    def support(self) -> set[int]:
        return set(self.left) | set(self.right)

    def to_poly(self, nvars: int) -> SparsePoly:
        return SparsePoly.linear(self.left, nvars) * SparsePoly.linear(self.right, nvars) - self.constant

    def value(self, point) -> Fraction:
        return sum(point[k - 1] for k in self.left) * sum(point[k - 1] for k in self.right) - self.constant

    def __str__(self):
        a = "+".join(f"x{k}" for k in self.left)
        b = "+".join(f"x{k}" for k in self.right)
        a = a if len(self.left) == 1 else f"({a})"
        b = b if len(self.right) == 1 else f"({b})"
        tail = "" if not self.constant else (f"-{self.constant}" if self.constant > 0 else f"+{-self.constant}")
        return f"{a}{b}{tail}" if len(self.left) > 1 or len(self.right) > 1 else f"{a}*{b}{tail}"


Form = Union[LinearForm, QuadForm]


def _form_key(f: Form):
    return (0, f.indices, (), f.constant) if isinstance(f, LinearForm) else (1, f.left, f.right, f.constant)


@dataclass(frozen=True)
class PolySet:
    """A finite set of forms in ``x_1 .. x_ambient``.  Equality ignores order."""

    forms: tuple[Form, ...]
    ambient: int

    def __post_init__(self):
        uniq = tuple(sorted(set(self.forms), key=_form_key))
        object.__setattr__(self, "forms", uniq)
        top = max((max(f.support()) for f in uniq), default=0)
        if top > self.ambient:
            raise ValueError(f"form uses x{top} beyond ambient {self.ambient}")

    def __len__(self):
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)

    def __contains__(self, f):
        return f in self.forms

    def union(self, other: "PolySet") -> "PolySet":
        return PolySet(self.forms + other.forms, max(self.ambient, other.ambient))

    def linear(self) -> list[LinearForm]:
        return [f for f in self.forms if isinstance(f, LinearForm)]

    def quadratic(self) -> list[QuadForm]:
        return [f for f in self.forms if isinstance(f, QuadForm)]

    def is_linear(self) -> bool:
        return not self.quadratic()

    def to_polys(self) -> list[SparsePoly]:
        return [f.to_poly(self.ambient) for f in self.forms]

    def poly_set(self) -> frozenset[SparsePoly]:
        return frozenset(self.to_polys())

    def residuals(self, point) -> list[Fraction]:
        return [f.value(point) for f in self.forms]

    def satisfied_by(self, point) -> bool:
        return all(v == 0 for v in self.residuals(point))

    def restrict_to(self, lo: int, hi: int) -> "PolySet":
        """Forms whose variables all lie in ``x_lo .. x_hi``."""
        return PolySet(tuple(f for f in self.forms if all(lo <= k <= hi for k in f.support())), self.ambient)

    def to_json(self) -> dict:
        out = []
        for f in self.forms:
            if isinstance(f, LinearForm):
                out.append({"type": "linear", "indices": list(f.indices), "constant": str(f.constant)})
            else:
                out.append({"type": "product", "left": list(f.left), "right": list(f.right),
                            "constant": str(f.constant)})
        return {"ambient": self.ambient, "forms": out, "polys": [str(p) for p in self.to_polys()]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict) -> "PolySet":
        forms: list[Form] = []
        for f in data["forms"]:
            if f["type"] == "linear":
                forms.append(LinearForm(tuple(f["indices"]), Fraction(f["constant"])))
            else:
                forms.append(QuadForm(tuple(f["left"]), tuple(f["right"]), Fraction(f["constant"])))
        return cls(tuple(forms), int(data["ambient"]))

    def __str__(self):
        return "{" + ", ".join(str(f) for f in self.forms) + "}"


def form_from_poly(p: SparsePoly) -> Form:
    """Recover a form from its polynomial; inverse of ``to_poly``."""
    const = -p.constant_term()
    body = {m: c for m, c in p.terms.items() if m.exps}
    if any(c != 1 for c in body.values()):
        raise ValueError(f"{p} is not a 0/1 form")
    deg = max((m.degree for m in body), default=0)
    if deg == 1:
        return LinearForm(tuple(sorted(m.exps[0][0] for m in body)), const)
    if deg != 2 or any(m.degree != 2 or len(m.exps) != 2 for m in body):
        raise ValueError(f"{p} is not a product of two disjoint sums")
    edges = [tuple(v for v, _ in m.exps) for m in body]
    lo = min(v for e in edges for v in e)
    right = {b if a == lo else a for a, b in edges if lo in (a, b)}
    left = {b if a == min(right) else a for a, b in edges if min(right) in (a, b)}
    form = QuadForm(tuple(left), tuple(right), const)
    if form.to_poly(p.nvars) != p:
        raise ValueError(f"{p} is not a product of two disjoint sums")
    return form


def polyset_from_polys(polys: Iterable[SparsePoly], ambient: int) -> PolySet:
    return PolySet(tuple(form_from_poly(p) for p in polys), ambient)


# --- constructors per kind ------------------------------------------------------

def ambient_size(b: BracketString) -> int:
    return len(b) - 1


def _round_forms(b: BracketString) -> list[LinearForm]:
    cmap = content(b)
    return [LinearForm(c) for i, c in cmap.rounds().items()]


def par_set(b: BracketString | str) -> PolySet:
    b = parse_as(b, Kind.PAR)
    return PolySet(tuple(_round_forms(b)), ambient_size(b))


def ang_set(b: BracketString | str, c=0) -> PolySet:
    b = parse_as(b, Kind.ANG)
    seg = content(b).special[0]
    return PolySet(tuple(_round_forms(b)) + (LinearForm(seg, as_scalar(c)),), ambient_size(b))


def bra_set(b: BracketString | str, c=0) -> PolySet:
    b = parse_as(b, Kind.BRA)
    s0, s1 = content(b).special
    return PolySet(tuple(_round_forms(b)) + (QuadForm(s0, s1, as_scalar(c)),), ambient_size(b))


def tbra_eps_set(b: BracketString | str, eps=1) -> PolySet:
    b = parse_as(b, Kind.TBRA)
    eps = as_scalar(eps)
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    segs = content(b).special
    return PolySet(tuple(_round_forms(b)) + tuple(LinearForm(s, eps) for s in segs), ambient_size(b))


def _chain_products(segs, c) -> tuple[QuadForm, ...]:
    return tuple(QuadForm(a, b, c) for a, b in zip(segs, segs[1:]))


def tbra_two_set(b: BracketString | str, c=2) -> PolySet:
    b = parse_as(b, Kind.TBRA)
    return PolySet(tuple(_round_forms(b)) + _chain_products(content(b).special, as_scalar(c)), ambient_size(b))


def qbra_two_set(b: BracketString | str, c=2) -> PolySet:
    b = parse_as(b, Kind.QBRA)
    return PolySet(tuple(_round_forms(b)) + _chain_products(content(b).special, as_scalar(c)), ambient_size(b))


def shift_plus_one(s: PolySet) -> PolySet:
    """Rename ``x_k -> x_{k+1}`` in every form."""
    return PolySet(tuple(f.shifted(1) for f in s.forms), s.ambient + 1)


STYLES = {
    "par": lambda b, c: par_set(b),
    "ang": ang_set,
    "bra": bra_set,
    "tbra-eps": tbra_eps_set,
    "tbra-two": lambda b, c: tbra_two_set(b),
    "qbra-two": lambda b, c: qbra_two_set(b),
}

DEFAULT_STYLE = {
    Kind.PAR: "par",
    Kind.ANG: "ang",
    Kind.BRA: "bra",
    Kind.TBRA: "tbra-eps",
    Kind.QBRA: "qbra-two",
}


def polyset(b: BracketString | str, style: str | None = None, c=None) -> PolySet:
    """Dispatch on ``style``; ``c`` defaults to 0, or 1 for ``tbra-eps``."""
    b = b if isinstance(b, BracketString) else parse_as(b)
    style = style or DEFAULT_STYLE[b.kind]
    if style not in STYLES:
        raise ValueError(f"unknown style {style!r}")
    if c is None:
        c = 1 if style == "tbra-eps" else 0
    return STYLES[style](b, as_scalar(c))


def linear_rank(forms: Iterable[Form], nvars: int) -> int:
    """Rank of the linear parts (constants dropped) over the rationals."""
    from .linalg import rank

    rows = []
    for f in forms:
        if not isinstance(f, LinearForm):
            raise ValueError("rank is only defined for linear forms")
        row = [Fraction(0)] * nvars
        for k in f.indices:
            row[k - 1] = Fraction(1)
        rows.append(row)
    return rank(rows)

