"""Exact sparse multivariate polynomials over the rationals.

Variables are 1-based (``x1, x2, ...``) and monomials are ordered
lexicographically with ``x1 > x2 > ... > xn``.  Every polynomial is kept in
canonical form: no zero coefficients are stored, so two polynomials are equal
exactly when their term maps are equal.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

Scalar = Fraction


def as_scalar(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: silently turning ``0.1`` into a 55-bit fraction is
    never what a caller of the exact layer wants.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


class Monomial:
    """A power product, stored as a sorted tuple of ``(var, exp)`` pairs."""

    __slots__ = ("exps", "_hash")

    def __init__(self, exps: Iterable[tuple[int, int]] | Mapping[int, int] = ()):
        if isinstance(exps, Mapping):
            exps = exps.items()
        merged: dict[int, int] = {}
        for var, e in exps:
            if var < 1:
                raise ValueError(f"variable index must be >= 1, got {var}")
            if e < 0:
                raise ValueError("negative exponent")
            if e:
                merged[var] = merged.get(var, 0) + e
        self.exps = tuple(sorted(merged.items()))
        self._hash = hash(self.exps)

    @classmethod
    def var(cls, i: int) -> "Monomial":
        return cls(((i, 1),))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exps == other.exps

    def __repr__(self):
        return f"Monomial({dict(self.exps)!r})"

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.exps + other.exps)

    def __str__(self):
        if not self.exps:
            return "1"
        return "*".join(f"x{v}" if e == 1 else f"x{v}^{e}" for v, e in self.exps)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.exps)

    @property
    def max_var(self) -> int:
        return self.exps[-1][0] if self.exps else 0

    def exponent(self, var: int) -> int:
        for v, e in self.exps:
            if v == var:
                return e
        return 0

    def variables(self) -> set[int]:
        return {v for v, _ in self.exps}

    def is_coprime(self, other: "Monomial") -> bool:
        return not (self.variables() & other.variables())

    def lex_key(self) -> tuple[tuple[int, int], ...]:
        # Comparing (var, -exp) pairs ascending reproduces lex with x1 largest:
        # at the first differing variable the larger exponent must win, and a
        # monomial that still has factors where the other has run out wins.
        return tuple((v, -e) for v, e in self.exps) + ((1 << 62, 0),)


def _lex_desc_key(mono: Monomial):
    return mono.lex_key()


class SparsePoly:
    """Immutable polynomial in ``x1..x_nvars`` with Fraction coefficients."""

    __slots__ = ("terms", "nvars", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, nvars: int = 0):
        clean: dict[Monomial, Fraction] = {}
        top = 0
        for mono, coef in (terms or {}).items():
            c = as_scalar(coef)
            if c:
                clean[mono] = clean.get(mono, Fraction(0)) + c
                if not clean[mono]:
                    del clean[mono]
        for mono in clean:
            top = max(top, mono.max_var)
        if top > nvars:
            raise ValueError(f"term uses x{top} but nvars={nvars}")
        self.terms = clean
        self.nvars = nvars
        self._hash = None

    # constructors -----------------------------------------------------
    @classmethod
    def const(cls, c, nvars: int = 0) -> "SparsePoly":
        return cls({Monomial(): c}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int | None = None) -> "SparsePoly":
        return cls({Monomial.var(i): 1}, i if nvars is None else nvars)

    @classmethod
    def zero(cls, nvars: int = 0) -> "SparsePoly":
        return cls({}, nvars)

    @classmethod
    def linear(cls, indices: Iterable[int], nvars: int, constant=0) -> "SparsePoly":
        """``sum(x_k for k in indices) - constant``."""
        terms: dict[Monomial, Fraction] = {Monomial.var(k): Fraction(1) for k in indices}
        if constant:
            terms[Monomial()] = -as_scalar(constant)
        return cls(terms, nvars)

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "SparsePoly":
        p = object.__new__(cls)
        p.terms = terms
        p.nvars = nvars
        p._hash = None
        return p

    def _coerce(self, other) -> "SparsePoly | None":
        if isinstance(other, SparsePoly):
            return other
        try:
            return SparsePoly.const(as_scalar(other), self.nvars)
        except TypeError:
            return None

    # ring operations --------------------------------------------------
    def __add__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        terms = dict(self.terms)
        for mono, c in q.terms.items():
            s = terms.get(mono, 0) + c
            if s:
                terms[mono] = s
            else:
                terms.pop(mono, None)
        return SparsePoly._raw(terms, max(self.nvars, q.nvars))

    __radd__ = __add__

    def __neg__(self):
        return SparsePoly._raw({m: -c for m, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return q + (-self)

    def __mul__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in q.terms.items():
                m = m1 * m2
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return SparsePoly._raw(terms, max(self.nvars, q.nvars))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = SparsePoly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            return self.terms == other.terms
        try:
            return self.terms == SparsePoly.const(as_scalar(other)).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # inspection -------------------------------------------------------
    def monomials_lex(self) -> list[Monomial]:
        """Monomials from lex-greatest to lex-smallest."""
        return sorted(self.terms, key=_lex_desc_key)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading monomial")
        return min(self.terms, key=_lex_desc_key)

    def leading_coefficient(self) -> Fraction:
        return self.terms[self.leading_monomial()]

    def constant_term(self) -> Fraction:
        return self.terms.get(Monomial(), Fraction(0))

    def variables(self) -> set[int]:
        out: set[int] = set()
        for m in self.terms:
            out |= m.variables()
        return out

    @property
    def degree(self) -> int:
        return max((m.degree for m in self.terms), default=-1)

    def is_linear(self) -> bool:
        return self.degree <= 1

    # calculus and substitution ---------------------------------------
    def eval(self, point: Sequence):
        """Value at ``point`` (``point[0]`` is x1).  Exact for rational input."""
        if len(point) < self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, need {self.nvars}")
        total = 0
        for mono, c in self.terms.items():
            t = c
            for v, e in mono.exps:
                t = t * point[v - 1] ** e
            total = total + t
        return total

    def substitute(self, assignments: Mapping[int, "SparsePoly"], nvars: int | None = None) -> "SparsePoly":
        """Simultaneously replace ``x_i`` by ``assignments[i]``.

        Variables not mentioned are kept.  ``nvars`` fixes the ambient size of
        the result; by default it is the largest of the inputs.
        """
        subs = {i: (q if isinstance(q, SparsePoly) else SparsePoly.const(q)) for i, q in assignments.items()}
        if nvars is None:
            nvars = max([self.nvars] + [q.nvars for q in subs.values()])
        out = SparsePoly.zero(nvars)
        powers: dict[tuple[int, int], SparsePoly] = {}
        for mono, c in self.terms.items():
            term = SparsePoly.const(c, nvars)
            for v, e in mono.exps:
                if v in subs:
                    key = (v, e)
                    if key not in powers:
                        powers[key] = subs[v] ** e
                    term = term * powers[key]
                else:
                    term = term * SparsePoly({Monomial(((v, e),)): 1}, nvars)
            out = out + term
        return SparsePoly._raw(out.terms, nvars)

    def diff(self, k: int) -> "SparsePoly":
        """Formal partial derivative with respect to ``x_k``."""
        if not 1 <= k <= max(self.nvars, 1):
            raise ValueError(f"x{k} is outside 1..{self.nvars}")
        terms: dict[Monomial, Fraction] = {}
        for mono, c in self.terms.items():
            e = mono.exponent(k)
            if e:
                rest = Monomial((v, ee - 1 if v == k else ee) for v, ee in mono.exps)
                terms[rest] = terms.get(rest, 0) + c * e
        return SparsePoly(terms, self.nvars)

    def with_nvars(self, nvars: int) -> "SparsePoly":
        return SparsePoly(self.terms, nvars)

    # rendering --------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, mono in enumerate(self.monomials_lex()):
            c = self.terms[mono]
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not mono.exps:
                body = str(a)
            elif a == 1:
                body = str(mono)
            else:
                body = f"{a}*{mono}"
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"SparsePoly({str(self)!r}, nvars={self.nvars})"

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [
                {"exps": {str(v): e for v, e in m.exps}, "coef": str(self.terms[m])}
                for m in self.monomials_lex()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SparsePoly":
        terms = {}
        for t in data["terms"]:
            terms[Monomial((int(v), int(e)) for v, e in t["exps"].items())] = Fraction(t["coef"])
        return cls(terms, int(data.get("nvars", 0)) or max((m.max_var for m in terms), default=0))


def var(i: int, nvars: int | None = None) -> SparsePoly:
    return SparsePoly.var(i, nvars)


def const(c, nvars: int = 0) -> SparsePoly:
    return SparsePoly.const(c, nvars)


def add(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    return p + q


def mul(p: SparsePoly, q: SparsePoly) -> SparsePoly:
    return p * q


def evaluate(p: SparsePoly, point: Sequence):
    return p.eval(point)


def leading_monomial_lex(p: SparsePoly) -> Monomial:
    return p.leading_monomial()


def substitute(p: SparsePoly, assignments: Mapping[int, SparsePoly]) -> SparsePoly:
    return p.substitute(assignments)


def partial_derivative(p: SparsePoly, k: int) -> SparsePoly:
    return p.diff(k)


def parse_poly(text: str, nvars: int | None = None) -> SparsePoly:
    """Parse the textual rendering produced by ``str(SparsePoly)``.

    Accepts sums of terms like ``3/7*x1*x2^2``; meant for golden files and the
    command line, not as a general expression parser.
    """
    src = text.replace(" ", "")
    if not src:
        raise ValueError("empty polynomial text")
    if src[0] not in "+-":
        src = "+" + src
    chunks = []
    start = 0
    for i in range(1, len(src)):
        if src[i] in "+-" and src[i - 1] != "^":
            chunks.append(src[start:i])
            start = i
    chunks.append(src[start:])
    terms: dict[Monomial, Fraction] = {}
    for chunk in chunks:
        sign = -1 if chunk[0] == "-" else 1
        coef = Fraction(sign)
        exps = []
        for factor in chunk[1:].split("*"):
            if factor.startswith("x"):
                name, _, power = factor.partition("^")
                exps.append((int(name[1:]), int(power) if power else 1))
            else:
                coef *= Fraction(factor)
        mono = Monomial(exps)
        terms[mono] = terms.get(mono, 0) + coef
    top = max((m.max_var for m in terms), default=0)
    return SparsePoly(terms, top if nvars is None else nvars)
