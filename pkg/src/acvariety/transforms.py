"""String rewrites that line up one string's polynomial set with a shifted copy of another's.

Each rule is written position by position, then the result is parsed again,
so a malformed output raises instead of propagating.
"""

from __future__ import annotations

from typing import Callable

from .brackets import BAR, LANGLE, LROUND, RANGLE, RROUND, BracketError, BracketString, Kind, parse, parse_as


def _revalidate(text: str, kind: Kind) -> BracketString:
    out = parse(text)
    if out.kind is not kind:
        raise BracketError(BracketError.WRONG_KIND, f"rewrite produced {out.kind.value}: {text}")
    return out


def _require_leading_angle(b: BracketString) -> None:
    if b.text[0] != LANGLE:
        raise BracketError(BracketError.WRONG_KIND, f"{b.text} does not start with '<'")


def ass(b: BracketString | str) -> BracketString:
    """Drop ``b_1``; its partner ``b_i`` becomes ``(`` one slot earlier and ``)`` closes the string."""
    b = parse_as(b, Kind.PAR)
    n2 = len(b)
    i = b.partner[1]
    out = []
    for j in range(1, n2 + 1):
        if j <= i - 2:
            out.append(b[j + 1])
        elif j == i - 1:
            out.append(LROUND)
        elif j <= n2 - 1:
            out.append(b[j + 1])
        else:
            out.append(RROUND)
    return _revalidate("".join(out), Kind.PAR)


def bra(b: BracketString | str) -> BracketString:
    """``b_1 -> <``, its partner ``-> |``, and ``>`` appended."""
    b = parse_as(b, Kind.PAR)
    n2 = len(b)
    i = b.partner[1]
    out = []
    for j in range(1, n2 + 2):
        if j == 1:
            out.append(LANGLE)
        elif j == i:
            out.append(BAR)
        elif j == n2 + 1:
            out.append(RANGLE)
        else:
            out.append(b[j])
    return _revalidate("".join(out), Kind.BRA)


def _shift_chain(b: BracketString, marks: list[str]) -> str:
    """Shared left-rotation rule: drop ``b_1``, re-emit each chain mark one slot early, close with ``>``.

    ``marks`` are the symbols written at positions ``c - 1`` for every chain
    position ``c`` after the first, except the final closing mark which
    goes at the end.
    """
    chain = b.chain[1:]
    length = len(b)
    out = []
    for m in range(1, length):
        hit = next((t for t, c in enumerate(chain) if m == c - 1), None)
        out.append(marks[hit] if hit is not None else b[m + 1])
    out.append(RANGLE)
    return "".join(out)


def ass_braket(b: BracketString | str) -> BracketString:
    """Rotation for ``< | >`` strings that start with ``<``."""
    b = parse_as(b, Kind.BRA)
    _require_leading_angle(b)
    return _revalidate(_shift_chain(b, [LANGLE, BAR]), Kind.BRA)


def ass_tbra(b: BracketString | str) -> BracketString:
    """Rotation for ``< | | >`` strings that start with ``<``."""
    b = parse_as(b, Kind.TBRA)
    _require_leading_angle(b)
    return _revalidate(_shift_chain(b, [LANGLE, BAR, BAR]), Kind.TBRA)


def _add_bar(b: BracketString) -> str:
    """Keep ``b_1 = <``, turn every later chain mark into a bar and append ``>``."""
    later = set(b.chain[1:])
    return "".join(BAR if j in later else b[j] for j in range(1, len(b) + 1)) + RANGLE


def ass_to_tbra(b: BracketString | str) -> BracketString:
    """``< X | Y > Z`` becomes ``< X | Y | Z >``."""
    b = parse_as(b, Kind.BRA)
    _require_leading_angle(b)
    return _revalidate(_add_bar(b), Kind.TBRA)


def ass_to_qbra(b: BracketString | str) -> BracketString:
    """``< X | Y | Z > W`` becomes ``< X | Y | Z | W >``."""
    b = parse_as(b, Kind.TBRA)
    _require_leading_angle(b)
    return _revalidate(_add_bar(b), Kind.QBRA)


TRANSFORMS: dict[str, Callable[[BracketString | str], BracketString]] = {
    "ass": ass,
    "bra": bra,
    "ass-braket": ass_braket,
    "ass-to-tbra": ass_to_tbra,
    "ass-tbra": ass_tbra,
    "ass-to-qbra": ass_to_qbra,
}
