"""The variety of n-gons with the origin as area center, and its triangular basis.

A point ``(x_1, .., x_n)`` lies on ``AC_n`` when

    u[1,n] = 1,   u[1,n-1] = 0,   u[2,n] = 0.

For ``n >= 4`` the same ideal is generated by

    g1 = u[3,n] + 1,   g2 = u[4,n] + x_2,   g3 = u[3,n-1] + x_1,

whose lex leading monomials ``x_3..x_n``, ``x_2`` and ``x_1`` share no
variables, so the triple is a Groebner basis.  Both inclusions of the ideals
are checked here with explicit cofactors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .continuant import du_range, u_eval, u_poly, u_range
from .linalg import rank
from .polyalg import SparsePoly, as_scalar


class DenominatorZero(ZeroDivisionError):
    code = "DENOMINATOR_ZERO"


def _need(n: int, lo: int) -> None:
    if n < lo:
        raise ValueError(f"n must be at least {lo}, got {n}")


def ac_generators(n: int) -> tuple[SparsePoly, SparsePoly, SparsePoly]:
    """``(u[1,n] - 1, u[1,n-1], u[2,n])``."""
    _need(n, 3)
    return u_poly(1, n, n) - 1, u_poly(1, n - 1, n), u_poly(2, n, n)


def ac_generators_alt(n: int) -> tuple[SparsePoly, SparsePoly, SparsePoly]:
    """Same variety with the first equation swapped for ``u[2,n-1] = -1``."""
    _need(n, 3)
    return u_poly(2, n - 1, n) + 1, u_poly(1, n - 1, n), u_poly(2, n, n)


def groebner_basis(n: int) -> tuple[SparsePoly, SparsePoly, SparsePoly]:
    _need(n, 4)
    x1, x2 = SparsePoly.var(1, n), SparsePoly.var(2, n)
    return u_poly(3, n, n) + 1, u_poly(4, n, n) + x2, u_poly(3, n - 1, n) + x1


def on_ac(point: Sequence, n: int | None = None) -> bool:
    """Exact membership test by direct recurrence evaluation."""
    n = len(point) if n is None else n
    pt = list(point[:n])
    return u_range(pt, 1, n) == 1 and u_range(pt, 1, n - 1) == 0 and u_range(pt, 2, n) == 0


def ac_residuals(point: Sequence, n: int | None = None):
    n = len(point) if n is None else n
    pt = list(point[:n])
    return u_range(pt, 1, n) - 1, u_range(pt, 1, n - 1), u_range(pt, 2, n)


def origin_membership(n: int) -> bool:
    _need(n, 3)
    return on_ac([Fraction(0)] * n)


# --- certificates ---------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    """``target == sum(cofactor_i * generator_i)`` as an exact polynomial identity."""

    name: str
    direction: str
    target: SparsePoly
    terms: tuple[tuple[SparsePoly, SparsePoly], ...]

    def combination(self) -> SparsePoly:
        out = SparsePoly.zero(self.target.nvars)
        for cof, gen in self.terms:
            out = out + cof * gen
        return out

    def holds(self) -> bool:
        return self.combination() == self.target


def certificates(n: int) -> list[Certificate]:
    """Cofactor certificates for both ideal inclusions.

    ``f`` are the defining generators and ``g`` the triangular basis.
    """
    _need(n, 4)
    u = lambda i, j: u_poly(i, j, n)  # noqa: E731
    x1, x2 = SparsePoly.var(1, n), SparsePoly.var(2, n)
    one = SparsePoly.const(1, n)
    f1, f2, f3 = u(1, n) - 1, u(1, n - 1), u(2, n)
    g1, g2, g3 = groebner_basis(n)

    # u[2,n-1] + 1 = u[1,n-1] u[2,n] - (u[1,n] - 1) u[2,n-1], from the determinant identity
    h_in_f = ((-u(2, n - 1), f1), (u(1, n - 1), f3))
    # the same element through the triangular basis, using f1 and f3 expressed in g
    f3_in_g = ((x2, g1), (-one, g2))
    f1_in_g = ((x1 * x2 - 1, g1), (-x1, g2))
    h_in_g = tuple((-u(2, n - 1) * c, g) for c, g in f1_in_g) + tuple((u(1, n - 1) * c, g) for c, g in f3_in_g)

    certs = [
        Certificate("g1", "basis-in-defining", g1, ((x1, f3), (-one, f1))),
        Certificate("g2", "basis-in-defining", g2, ((x1 * x2 - 1, f3), (-x2, f1))),
        Certificate("g3", "basis-in-defining", g3,
                    tuple((x1 * c, g) for c, g in h_in_f) + ((-one, f2),)),
        Certificate("f1", "defining-in-basis", f1, f1_in_g),
        Certificate("f2", "defining-in-basis", f2,
                    tuple((x1 * c, g) for c, g in h_in_g) + ((-one, g3),)),
        Certificate("f3", "defining-in-basis", f3, f3_in_g),
        Certificate("u[2,n-1]+1", "intermediate-defining", u(2, n - 1) + 1, h_in_f),
        Certificate("u[2,n-1]+1", "intermediate-basis", u(2, n - 1) + 1, h_in_g),
    ]
    return certs


def leading_monomials(n: int):
    return tuple(g.leading_monomial() for g in groebner_basis(n))


def certificate_check(n: int) -> dict:
    """Verify every cofactor identity and pairwise coprimality of the leading monomials."""
    certs = certificates(n)
    lms = leading_monomials(n)
    pairs = [(a, b) for a in range(3) for b in range(a + 1, 3)]
    coprime = {f"{a + 1},{b + 1}": lms[a].is_coprime(lms[b]) for a, b in pairs}
    results = [{"certificate": c.name, "direction": c.direction, "status": "pass" if c.holds() else "fail"}
               for c in certs]
    return {
        "n": n,
        "basis": [str(g) for g in groebner_basis(n)],
        "leading_monomials": [str(m) for m in lms],
        "coprime": coprime,
        "certificates": results,
        "ok": all(coprime.values()) and all(r["status"] == "pass" for r in results),
    }


# --- rational parametrization -----------------------------------------------------

def rational_parametrization(n: int, tail: Sequence) -> list[Fraction]:
    """Complete ``(x_4, .., x_n)`` to a point of ``AC_n``.

    ``x_2 = -u[4,n]``, ``x_3 = (u[5,n] - 1) / u[4,n]``,
    ``x_1 = (u[4,n-1] - 1) / u[4,n]``.
    """
    _need(n, 5)
    tail = [as_scalar(v) for v in tail]
    if len(tail) != n - 3:
        raise ValueError(f"need {n - 3} tail values for n={n}, got {len(tail)}")
    d = u_eval(tail)
    if d == 0:
        raise DenominatorZero("u[4,n] vanishes on this tail")
    x3 = (u_eval(tail[1:]) - 1) / d
    x1 = (u_eval(tail[:-1]) - 1) / d
    return [x1, -d, x3] + tail


# --- Jacobian ----------------------------------------------------------------------

def jacobian(point: Sequence, n: int | None = None) -> list[list]:
    """3 x n matrix of partials of ``(x_1 + u[3,n-1], x_2 + u[4,n], u[3,n] + 1)``.

    Partials of a continuant come from ``d u[i,j] / d x_k = u[i,k-1] u[k+1,j]``.
    """
    n = len(point) if n is None else n
    pt = list(point[:n])
    rows = []
    for lo, hi, lead in ((3, n - 1, 1), (4, n, 2), (3, n, None)):
        row = []
        for k in range(1, n + 1):
            v = du_range(pt, lo, hi, k)
            if k == lead:
                v = v + 1
            row.append(v)
        rows.append(row)
    return rows


def jacobian_symbolic(n: int) -> list[list[SparsePoly]]:
    """Same rows as :func:`jacobian`, by formal differentiation."""
    g1, g2, g3 = groebner_basis(n)
    return [[g.diff(k) for k in range(1, n + 1)] for g in (g3, g2, g1)]


def jacobian_rank(point: Sequence, n: int | None = None) -> int:
    return rank(jacobian(point, n))
