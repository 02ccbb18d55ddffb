"""Continuants ``u[i, j]`` and products of the matrices ``A(x) = [[0, -1], [1, x]]``.

``u[i, j]`` is the determinant of the tridiagonal matrix with ``x_i .. x_j`` on
the diagonal and ``-1`` beside it, with ``u[i, i-1] = 1`` and ``u[i, i] = x_i``.
The same code runs on exact rationals, floats and ``SparsePoly`` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

from .polyalg import SparsePoly


def _check_range(lo: int, hi: int, nvars: int | None = None) -> None:
    if lo < 1 or hi < lo - 1:
        raise ValueError(f"invalid continuant range [{lo}, {hi}]")
    if nvars is not None and hi > nvars:
        raise ValueError(f"range [{lo}, {hi}] exceeds nvars={nvars}")


@lru_cache(maxsize=None)
def u_poly(lo: int, hi: int, nvars: int | None = None) -> SparsePoly:
    """``u[lo, hi]`` as a polynomial, built by ``u[lo,j] = x_j u[lo,j-1] - u[lo,j-2]``."""
    if nvars is None:
        nvars = max(hi, 0)
    _check_range(lo, hi, nvars)
    if hi == lo - 1:
        return SparsePoly.const(1, nvars)
    prev, cur = SparsePoly.const(1, nvars), SparsePoly.var(lo, nvars)
    for j in range(lo + 1, hi + 1):
        prev, cur = cur, SparsePoly.var(j, nvars) * cur - prev
    return cur


def u_poly_left(lo: int, hi: int, nvars: int | None = None) -> SparsePoly:
    """Same polynomial, peeled from the left: ``u[i,hi] = x_i u[i+1,hi] - u[i+2,hi]``.

    Kept separate from :func:`u_poly` so the two recurrences can check each other.
    """
    if nvars is None:
        nvars = max(hi, 0)
    _check_range(lo, hi, nvars)
    if hi == lo - 1:
        return SparsePoly.const(1, nvars)
    nxt, cur = SparsePoly.const(1, nvars), SparsePoly.var(hi, nvars)
    for i in range(hi - 1, lo - 1, -1):
        nxt, cur = cur, SparsePoly.var(i, nvars) * cur - nxt
    return cur


def u_eval(values: Sequence[Any]):
    """Continuant of a concrete sequence in O(len) steps; ``()`` gives 1.

    Works for any ring-like element type (Fraction, float, SparsePoly).
    """
    prev, cur = 0, 1
    for v in values:
        prev, cur = cur, v * cur - prev
    return cur


def u_range(values: Sequence[Any], lo: int, hi: int):
    """``u[lo, hi]`` of a full coordinate vector (1-based, inclusive)."""
    _check_range(lo, hi)
    return u_eval(values[lo - 1:hi])


def du_range(values: Sequence[Any], lo: int, hi: int, k: int):
    """``d u[lo,hi] / d x_k`` at a point, via ``u[lo,k-1] * u[k+1,hi]``."""
    if not lo <= k <= hi:
        return 0
    return u_range(values, lo, k - 1) * u_range(values, k + 1, hi)


@dataclass(frozen=True)
class TransferMatrix:
    """A 2x2 matrix whose entries may be scalars or polynomials."""

    a: Any
    b: Any
    c: Any
    d: Any

    @classmethod
    def identity(cls) -> "TransferMatrix":
        return cls(1, 0, 0, 1)

    @classmethod
    def step(cls, x) -> "TransferMatrix":
        return cls(0, -1, 1, x)

    def __matmul__(self, o: "TransferMatrix") -> "TransferMatrix":
        return TransferMatrix(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __neg__(self):
        return TransferMatrix(-self.a, -self.b, -self.c, -self.d)

    def transpose(self) -> "TransferMatrix":
        return TransferMatrix(self.a, self.c, self.b, self.d)

    def det(self):
        return self.a * self.d - self.b * self.c

    def entries(self):
        return ((self.a, self.b), (self.c, self.d))

    def __eq__(self, o):
        if not isinstance(o, TransferMatrix):
            return NotImplemented
        return all(_eq(x, y) for x, y in zip(self._flat(), o._flat()))

    def _flat(self):
        return (self.a, self.b, self.c, self.d)

    __hash__ = None


def _eq(x, y) -> bool:
    if isinstance(x, SparsePoly) or isinstance(y, SparsePoly):
        return (x - y) == 0 if isinstance(x, SparsePoly) else (y - x) == 0
    return x == y


def transfer_product(values: Sequence[Any]) -> TransferMatrix:
    """``A(v_1) A(v_2) ... A(v_n)``; the empty product is the identity."""
    m = TransferMatrix.identity()
    for v in values:
        m = m @ TransferMatrix.step(v)
    return m


def transfer_product_reversed(values: Sequence[Any]) -> TransferMatrix:
    """``A(v_n) ... A(v_1)``."""
    return transfer_product(list(reversed(values)))


SIGN_FLIP = TransferMatrix(-1, 0, 0, 1)


def variables(n: int, nvars: int | None = None) -> list[SparsePoly]:
    nv = n if nvars is None else nvars
    return [SparsePoly.var(i, nv) for i in range(1, n + 1)]


# --- identity suite ----------------------------------------------------------

def _record(report: list, identity: str, n: int, ok: bool, **extra) -> bool:
    report.append({"identity": identity, "n": n, "status": "pass" if ok else "fail", **extra})
    return ok


def _zero_insertion_holds(n: int, k: int) -> bool:
    """u(x1..x_{k-1}, 0, x_{k+1}..x_n) == -u(x1..x_{k-2}, x_{k-1}+x_{k+1}, x_{k+2}..x_n)."""
    lhs = u_poly(1, n, n).substitute({k: SparsePoly.zero(n)}, nvars=n)
    y = {}
    for j in range(1, n - 1):
        if j <= k - 2:
            y[j] = SparsePoly.var(j, n)
        elif j == k - 1:
            y[j] = SparsePoly.var(k - 1, n) + SparsePoly.var(k + 1, n)
        else:
            y[j] = SparsePoly.var(j + 2, n)
    rhs = -u_poly(1, n - 2, n - 2).substitute(y, nvars=n)
    return lhs == rhs


def verify_identities(n_max: int, n_min: int = 2) -> list[dict]:
    """Check every structural continuant identity symbolically for ``n_min <= n <= n_max``.

    Returns one ``{identity, n, status}`` record per check; a mismatch is
    reported, never raised.
    """
    if n_max < 3:
        raise ValueError("n_max must be at least 3")
    report: list[dict] = []

    x, y = SparsePoly.var(1, 2), SparsePoly.var(2, 2)
    lhs = TransferMatrix.step(x) @ TransferMatrix.step(0) @ TransferMatrix.step(y)
    _record(report, "zero-insertion-matrix", 2, lhs == -TransferMatrix.step(x + y))
    _record(
        report, "transpose-conjugation", 1,
        TransferMatrix.step(x).transpose() == SIGN_FLIP @ TransferMatrix.step(x) @ SIGN_FLIP,
    )

    for n in range(max(n_min, 2), n_max + 1):
        u = lambda i, j: u_poly(i, j, n)  # noqa: E731
        xs = variables(n)
        _record(report, "recurrence-left", n, u_poly(1, n, n) == xs[0] * u(2, n) - u(3, n))
        _record(report, "recurrence-right", n, u_poly(1, n, n) == xs[-1] * u(1, n - 1) - u(1, n - 2))
        _record(report, "recurrences-agree", n, u_poly(1, n, n) == u_poly_left(1, n, n))

        rev = transfer_product_reversed(xs)
        _record(report, "product-reversed", n,
                rev == TransferMatrix(-u(2, n - 1), -u(1, n - 1), u(2, n), u(1, n)))
        fwd = transfer_product(xs)
        _record(report, "product-forward", n,
                fwd == TransferMatrix(-u(2, n - 1), -u(2, n), u(1, n - 1), u(1, n)))
        _record(report, "reversal-by-transpose", n, fwd == SIGN_FLIP @ rev.transpose() @ SIGN_FLIP)
        _record(report, "determinant-one", n,
                -u(1, n) * u(2, n - 1) + u(1, n - 1) * u(2, n) == 1 and fwd.det() == 1)
        for k in range(2, n):
            _record(report, "zero-insertion", n, _zero_insertion_holds(n, k), k=k)
        for k in range(1, n + 1):
            _record(report, "partial-derivative", n,
                    u_poly(1, n, n).diff(k) == u(1, k - 1) * u(k + 1, n), k=k)
    return report


def identity_failures(report: list[dict]) -> list[dict]:
    return [r for r in report if r["status"] != "pass"]


def to_fraction_list(values: Sequence) -> list[Fraction]:
    return [Fraction(v) for v in values]
