"""Balanced bracket strings with an optional angle/bar chain.

Surface syntax is ASCII over ``( ) < > |``; the Unicode angle brackets
``⟨ ⟩`` are accepted on input.  Token positions are 1-based.

Five kinds are recognised:

========  ==========================  =============  ==================
kind      chain                       length         round pairs
========  ==========================  =============  ==================
``Par``   none                        ``2n``         ``n``
``Ang``   ``< >``                     ``2n``         ``n - 1``
``Bra``   ``< | >``                   ``2n + 1``     ``n - 1``
``Tbra``  ``< | | >``                 ``2n + 2``     ``n - 1``
``Qbra``  ``< | | | >``               ``2n + 1``     ``n - 2``
========  ==========================  =============  ==================

In the chain, ``<`` matches the first bar, each bar matches the next bar and
the last bar matches ``>``; bars therefore count both as left and as right
brackets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import product
from typing import Iterator

LROUND, RROUND, LANGLE, RANGLE, BAR = "(", ")", "<", ">", "|"
ALPHABET = LROUND + RROUND + LANGLE + RANGLE + BAR
_ALIASES = {"⟨": LANGLE, "⟩": RANGLE, "〈": LANGLE, "〉": RANGLE}


class Kind(str, Enum):
    PAR = "Par"
    ANG = "Ang"
    BRA = "Bra"
    TBRA = "Tbra"
    QBRA = "Qbra"

    @classmethod
    def from_name(cls, name: str) -> "Kind":
        for k in cls:
            if k.value.lower() == name.lower():
                return k
        raise ValueError(f"unknown kind {name!r}")


_BARS_TO_KIND = {0: Kind.ANG, 1: Kind.BRA, 2: Kind.TBRA, 3: Kind.QBRA}
KIND_BARS = {Kind.ANG: 0, Kind.BRA: 1, Kind.TBRA: 2, Kind.QBRA: 3}


class BracketError(ValueError):
    """Parse or structural error.  ``code`` is one of the constants below."""

    UNBALANCED = "UNBALANCED"
    MULTIPLE_ANGLE_PAIRS = "MULTIPLE_ANGLE_PAIRS"
    NESTED_ANGLES = "NESTED_ANGLES"
    BAR_OUTSIDE_ANGLES = "BAR_OUTSIDE_ANGLES"
    BAR_NOT_TOP_LEVEL = "BAR_NOT_TOP_LEVEL"
    TOO_MANY_BARS = "TOO_MANY_BARS"
    EMPTY_INPUT = "EMPTY_INPUT"
    BAD_CHARACTER = "BAD_CHARACTER"
    WRONG_KIND = "WRONG_KIND"
    NOT_LEFT_BRACKET = "NOT_LEFT_BRACKET"
    NOT_COLLAPSIBLE = "NOT_COLLAPSIBLE"
    SIZE_GUARD = "SIZE_GUARD"

    def __init__(self, code: str, detail: str = ""):
        self.code = code
        self.detail = detail
        super().__init__(f"{code}: {detail}" if detail else code)


def _normalise(text: str) -> str:
    out = []
    for ch in text:
        if ch.isspace():
            continue
        ch = _ALIASES.get(ch, ch)
        if ch not in ALPHABET:
            raise BracketError(BracketError.BAD_CHARACTER, repr(ch))
        out.append(ch)
    return "".join(out)


def _balanced(seg: str) -> bool:
    depth = 0
    for ch in seg:
        depth += 1 if ch == LROUND else -1
        if depth < 0:
            return False
    return depth == 0


def _size(kind: Kind, length: int) -> int:
    if kind in (Kind.PAR, Kind.ANG):
        return length // 2
    if kind is Kind.TBRA:
        return (length - 2) // 2
    return (length - 1) // 2


@dataclass(frozen=True)
class BracketString:
    """A validated string together with its kind and size parameter ``n``."""

    text: str
    kind: Kind
    n: int

    def __str__(self):
        return self.text

    def __len__(self):
        return len(self.text)

    def __getitem__(self, i: int) -> str:
        """1-based token access."""
        if not 1 <= i <= len(self.text):
            raise IndexError(i)
        return self.text[i - 1]

    # structure ------------------------------------------------------------
    @cached_property
    def chain(self) -> tuple[int, ...]:
        """Positions of ``<``, the bars and ``>`` in order (empty for Par)."""
        return tuple(i for i, ch in enumerate(self.text, 1) if ch in (LANGLE, BAR, RANGLE))

    @cached_property
    def partner(self) -> dict[int, int]:
        """Left-bracket position -> matching right-bracket position."""
        out: dict[int, int] = {}
        stack: list[int] = []
        for i, ch in enumerate(self.text, 1):
            if ch == LROUND:
                stack.append(i)
            elif ch == RROUND:
                out[stack.pop()] = i
        ch = self.chain
        for a, b in zip(ch, ch[1:]):
            out[a] = b
        return dict(sorted(out.items()))

    @property
    def left_brackets(self) -> list[int]:
        return list(self.partner)

    @cached_property
    def parent(self) -> dict[int, int | None]:
        """Upper cover of each left bracket in the nesting order (None if maximal)."""
        out: dict[int, int | None] = {}
        for i, r in self.partner.items():
            best = None
            for j, s in self.partner.items():
                if j < i and r < s and (best is None or j > best):
                    best = j
            out[i] = best
        return out

    @cached_property
    def children(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {i: [] for i in self.partner}
        for i, p in self.parent.items():
            if p is not None:
                out[p].append(i)
        return out

    def inner_left(self, i: int) -> list[int]:
        """Left brackets strictly between ``i`` and its partner."""
        r = self._partner_of(i)
        return [j for j in self.partner if i < j < r]

    def _partner_of(self, i: int) -> int:
        try:
            return self.partner[i]
        except KeyError:
            raise BracketError(BracketError.NOT_LEFT_BRACKET, f"position {i}") from None

    def is_minimal(self, i: int) -> bool:
        return self._partner_of(i) == i + 1 or not self.inner_left(i)

    def is_maximal(self, i: int) -> bool:
        self._partner_of(i)
        return self.parent[i] is None

    @cached_property
    def _ranks(self) -> dict[int, int]:
        ranks: dict[int, int] = {}
        # Shorter intervals first, so every inner bracket is ranked before its container.
        for i in sorted(self.partner, key=lambda j: self.partner[j] - j):
            inner = self.inner_left(i)
            ranks[i] = 1 if not inner else 1 + max(ranks[j] for j in inner)
        return ranks

    def rank(self, i: int) -> int:
        self._partner_of(i)
        return self._ranks[i]

    @property
    def height(self) -> int:
        return max(self._ranks.values(), default=0)

    def collapse(self, k: int) -> "BracketString":
        """Delete the pair ``(k, k+1)``; ``b_k`` must be a minimal, non-maximal round bracket."""
        if not (1 <= k < len(self.text) and self.text[k - 1] == LROUND
                and self.text[k] == RROUND and self.parent.get(k) is not None):
            raise BracketError(BracketError.NOT_COLLAPSIBLE, f"position {k} in {self.text}")
        return BracketString(self.text[:k - 1] + self.text[k + 1:], self.kind, self.n - 1)

    def collapsible(self) -> list[int]:
        return [k for k in self.partner if self.text[k - 1] == LROUND
                and self.partner[k] == k + 1 and self.parent[k] is not None]

    def content(self) -> "ContentMap":
        return content(self)


def parse(text: str) -> BracketString:
    """Validate ``text`` and classify it.

    Raises :class:`BracketError` with a specific ``code`` on malformed input.
    """
    s = _normalise(text)
    if not s:
        raise BracketError(BracketError.EMPTY_INPUT)
    n_lang, n_rang = s.count(LANGLE), s.count(RANGLE)
    nbars = s.count(BAR)
    if n_lang > 1 or n_rang > 1:
        raise BracketError(BracketError.MULTIPLE_ANGLE_PAIRS)
    if n_lang != n_rang:
        raise BracketError(BracketError.UNBALANCED, "unmatched angle bracket")
    if n_lang == 0:
        if nbars:
            raise BracketError(BracketError.BAR_OUTSIDE_ANGLES)
        if not _balanced(s):
            raise BracketError(BracketError.UNBALANCED)
        return BracketString(s, Kind.PAR, len(s) // 2)

    lo, hi = s.index(LANGLE), s.index(RANGLE)
    if hi < lo:
        raise BracketError(BracketError.UNBALANCED, "'>' before '<'")
    bar_pos = [i for i, ch in enumerate(s) if ch == BAR]
    if any(p < lo or p > hi for p in bar_pos):
        raise BracketError(BracketError.BAR_OUTSIDE_ANGLES)
    if not _balanced(s[:lo]):
        if s[:lo].count(LROUND) > s[:lo].count(RROUND) and _prefix_ok(s[:lo]):
            raise BracketError(BracketError.NESTED_ANGLES)
        raise BracketError(BracketError.UNBALANCED)
    # depth relative to the inside of the angle pair
    depth = 0
    for i in range(lo + 1, hi):
        ch = s[i]
        if ch == LROUND:
            depth += 1
        elif ch == RROUND:
            depth -= 1
            if depth < 0:
                raise BracketError(BracketError.UNBALANCED)
        elif ch == BAR and depth != 0:
            raise BracketError(BracketError.BAR_NOT_TOP_LEVEL)
    if nbars > 3:
        raise BracketError(BracketError.TOO_MANY_BARS, str(nbars))
    cuts = [lo] + bar_pos + [hi]
    segments = [s[a + 1:b] for a, b in zip(cuts, cuts[1:])] + [s[hi + 1:]]
    if not all(_balanced(seg) for seg in segments):
        raise BracketError(BracketError.UNBALANCED)
    kind = _BARS_TO_KIND[nbars]
    return BracketString(s, kind, _size(kind, len(s)))


def _prefix_ok(seg: str) -> bool:
    depth = 0
    for ch in seg:
        depth += 1 if ch == LROUND else -1
        if depth < 0:
            return False
    return True


def parse_as(text: str, *kinds: Kind) -> BracketString:
    b = text if isinstance(text, BracketString) else parse(text)
    if kinds and b.kind not in kinds:
        want = "/".join(k.value for k in kinds)
        raise BracketError(BracketError.WRONG_KIND, f"{b.text} is {b.kind.value}, need {want}")
    return b


# --- content ---------------------------------------------------------------

@dataclass(frozen=True)
class ContentMap:
    """Contents of every left bracket plus the chain segments in order."""

    content: dict[int, tuple[int, ...]]
    special: tuple[tuple[int, ...], ...] = ()
    round_ranks: dict[int, int] = field(default_factory=dict)

    @property
    def num(self) -> set[int]:
        out: set[int] = set()
        for c in self.content.values():
            out.update(c)
        return out

    def rounds(self) -> dict[int, tuple[int, ...]]:
        return {i: c for i, c in self.content.items() if i in self.round_ranks}

    def as_sets(self) -> tuple[frozenset, tuple[tuple[int, ...], ...]]:
        """Order-free view: the set of round contents and the chain segments."""
        return frozenset(frozenset(c) for c in self.rounds().values()), self.special

    def to_json(self) -> str:
        data: dict[str, list] = {str(i): list(c) for i, c in self.content.items()}
        data["special"] = [list(seg) for seg in self.special]
        return json.dumps(data, sort_keys=False)

    def render(self) -> str:
        """Text form, e.g. ``{{1,3,5},{2},{4}}`` or ``{{2},{6},<5,7,9>}``.

        Without a chain the sets are listed by decreasing rank; with a chain
        by increasing rank, then the chain segment.  Ties go by position.
        """
        sign = -1 if not self.special else 1
        order = sorted(self.round_ranks, key=lambda i: (sign * self.round_ranks[i], i))
        parts = ["{" + ",".join(map(str, self.content[i])) + "}" for i in order]
        if self.special:
            parts.append("<" + "|".join(",".join(map(str, seg)) for seg in self.special) + ">")
        return "{" + ",".join(parts) + "}"


def content(b: BracketString) -> ContentMap:
    """``cont(b_i) = {i, .., r(b_i) - 1}`` minus the spans of the inner pairs."""
    out: dict[int, tuple[int, ...]] = {}
    for i, r in b.partner.items():
        covered: set[int] = set()
        for j in b.inner_left(i):
            covered.update(range(j, b.partner[j]))
        out[i] = tuple(k for k in range(i, r) if k not in covered)
    chain = b.chain
    special = tuple(out[i] for i in chain[:-1])
    ranks = {i: b.rank(i) for i in out if b.text[i - 1] == LROUND}
    return ContentMap(out, special, ranks)


# --- enumeration -------------------------------------------------------------

MAX_ENUM_N = 8


def dyck_words(pairs: int) -> list[str]:
    """All balanced round strings with ``pairs`` pairs, in lexicographic order."""
    if pairs == 0:
        return [""]
    out = []
    for inner in range(pairs):
        for a in dyck_words(inner):
            for rest in dyck_words(pairs - 1 - inner):
                out.append(LROUND + a + RROUND + rest)
    return sorted(out)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


_CHAIN_GLUE = {
    Kind.ANG: [LANGLE, RANGLE],
    Kind.BRA: [LANGLE, BAR, RANGLE],
    Kind.TBRA: [LANGLE, BAR, BAR, RANGLE],
    Kind.QBRA: [LANGLE, BAR, BAR, BAR, RANGLE],
}


def round_pairs(kind: Kind, n: int) -> int:
    return n - 2 if kind is Kind.QBRA else (n if kind is Kind.PAR else n - 1)


def enumerate_strings(kind: Kind | str, n: int) -> list[BracketString]:
    """Every balanced string of the given kind and size, without duplicates."""
    kind = Kind.from_name(kind) if isinstance(kind, str) else kind
    if n > MAX_ENUM_N:
        raise BracketError(BracketError.SIZE_GUARD, f"n={n} > {MAX_ENUM_N}")
    pairs = round_pairs(kind, n)
    if n < 1 or pairs < 0:
        return []
    if kind is Kind.PAR:
        return [BracketString(w, kind, n) for w in dyck_words(n)]
    glue = _CHAIN_GLUE[kind]
    out = []
    for comp in _compositions(pairs, len(glue) + 1):
        for words in product(*(dyck_words(c) for c in comp)):
            text = words[0] + "".join(g + w for g, w in zip(glue, words[1:]))
            out.append(BracketString(text, kind, n))
    return out


def starts_with_angle(b: BracketString) -> bool:
    return b.text.startswith(LANGLE)
