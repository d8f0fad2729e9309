"""Symbolic words for Lorenz maps, kneading pairs and the *-product.

Words live in the space of sequences over ``L < 0 < R``. A finite word is
written with its terminal ``0`` (``"LRR0"``); a purely periodic word is
written ``"(LR)^"`` for ``LRLRLR...``.

>>> str(star_word(KneadingPair.admissible("LR0", "RL0"), parse_word("LR0")))
'LRRL0'
"""

from __future__ import annotations

import functools
import itertools
import re
from dataclasses import dataclass
from typing import Iterator

from .errors import BoundTooLarge, InadmissiblePair, MalformedWord, ShiftPastEnd

__all__ = [
    "Word",
    "KneadingPair",
    "parse_word",
    "parse_pair",
    "compare_words",
    "word_key",
    "shift",
    "is_admissible_pair",
    "is_admissible_periodic",
    "star_word",
    "star_pair",
    "word_stats",
    "common_suffix_len",
    "finite_periodic_equivalence",
    "candidate_words",
    "enumerate_admissible_pairs",
    "canonical_rotation",
    "DEFAULT_ENUM_BOUND",
]

DEFAULT_ENUM_BOUND = 6

_RANK = {"L": 0, "0": 1, "R": 2}
# maps the finite sequence onto characters whose string order is L < 0 < R
_ORDER_TABLE = str.maketrans("L0R", "abc")

_FINITE_RE = re.compile(r"[LR]*0")
_PERIODIC_RE = re.compile(r"\(([LR]+)\)\^")
_PAIR_RE = re.compile(r"\s*(?:\(\s*([^,]*?)\s*,\s*([^,]*?)\s*\)|([^,()]*?)\s*,\s*([^,()]*?))\s*")


@dataclass(frozen=True)
class Word:
    """A finite word (letters before the terminal 0) or a periodic word."""

    letters: str
    periodic: bool = False

    def __post_init__(self):
        if any(c not in "LR" for c in self.letters):
            raise MalformedWord(f"illegal letters in {self.letters!r}")
        if self.periodic and not self.letters:
            raise MalformedWord("periodic word needs a nonempty pattern")

    def __str__(self) -> str:
        if self.periodic:
            return f"({self.letters})^"
        return self.letters + "0"

    def __len__(self) -> int:
        return len(self.letters)

    def symbol(self, i: int) -> str:
        """Symbol at position ``i`` of the (possibly infinite) expansion."""
        if self.periodic:
            return self.letters[i % len(self.letters)]
        if i < len(self.letters):
            return self.letters[i]
        if i == len(self.letters):
            return "0"
        raise IndexError(i)


@dataclass(frozen=True)
class KneadingPair:
    x: Word
    y: Word
    verified: bool = False

    def __post_init__(self):
        if self.x.periodic or self.y.periodic:
            raise MalformedWord("kneading pairs hold finite words only")
        if self.verified and not is_admissible_pair(self.x, self.y):
            raise InadmissiblePair(f"{self} is not admissible")

    @classmethod
    def admissible(cls, x: Word | str, y: Word | str) -> KneadingPair:
        """Build a verified pair, raising :class:`InadmissiblePair` otherwise."""
        x = parse_word(x) if isinstance(x, str) else x
        y = parse_word(y) if isinstance(y, str) else y
        if not is_admissible_pair(x, y):
            raise InadmissiblePair(f"({x},{y}) is not admissible")
        return cls(x, y, True)

    def __str__(self) -> str:
        return f"({self.x},{self.y})"


def parse_word(text: str) -> Word:
    if _FINITE_RE.fullmatch(text):
        return Word(text[:-1])
    m = _PERIODIC_RE.fullmatch(text)
    if m:
        return Word(m.group(1), periodic=True)
    raise MalformedWord(f"cannot parse word {text!r}")


def parse_pair(text: str, verify: bool = True) -> KneadingPair:
    """Parse ``"X,Y"`` or ``"(X,Y)"``; verify admissibility by default."""
    m = _PAIR_RE.fullmatch(text)
    if not m:
        raise MalformedWord(f"cannot parse pair {text!r}")
    gx, gy = (m.group(1), m.group(2)) if m.group(1) is not None else (m.group(3), m.group(4))
    x, y = parse_word(gx), parse_word(gy)
    if verify:
        return KneadingPair.admissible(x, y)
    return KneadingPair(x, y)


def compare_words(a: Word, b: Word) -> int:
    """Lexicographic comparison with ``L < 0 < R``; returns -1, 0 or 1."""
    if not a.periodic and not b.periodic:
        ka, kb = _finite_key(a), _finite_key(b)
        return (ka > kb) - (ka < kb)
    if a.periodic and b.periodic:
        # Fine-Wilf: agreement on |p|+|q| symbols means the expansions agree
        span = len(a) + len(b)
    else:
        # the finite word's terminal 0 never matches a periodic letter
        span = min(len(w) for w in (a, b) if not w.periodic) + 1
    for i in range(span):
        ra, rb = _RANK[a.symbol(i)], _RANK[b.symbol(i)]
        if ra != rb:
            return -1 if ra < rb else 1
    return 0


def _finite_key(w: Word) -> str:
    return (w.letters + "0").translate(_ORDER_TABLE)


word_key = functools.cmp_to_key(compare_words)


def shift(w: Word, k: int = 1) -> Word:
    if k < 0:
        raise ValueError("shift amount must be nonnegative")
    if w.periodic:
        k %= len(w)
        return Word(w.letters[k:] + w.letters[:k], periodic=True)
    if k > len(w) or (k > 0 and not w.letters):
        raise ShiftPastEnd(f"cannot shift {w} by {k}")
    return Word(w.letters[k:])


def is_admissible_pair(x: Word, y: Word) -> bool:
    """Combinatorial admissibility of a pair of finite words.

    Only proper shifts are tested; the comparisons are strict because both
    words are finite.
    """
    if x.periodic or y.periodic:
        raise ValueError("is_admissible_pair expects finite words")
    if not x.letters.startswith("L") or not y.letters.startswith("R"):
        return False
    kx, ky = _finite_key(x), _finite_key(y)
    for z in (x, y):
        full = _finite_key(z)
        for i in range(1, len(z)):
            tail = full[i:]
            if z.letters[i] == "L":
                if not tail < kx:
                    return False
            elif not tail > ky:
                return False
    return True


def is_admissible_periodic(x: Word, y: Word) -> bool:
    """Admissibility test for periodic words, with non-strict comparisons."""
    if not (x.periodic and y.periodic):
        raise ValueError("is_admissible_periodic expects periodic words")
    if x.letters[0] != "L" or y.letters[0] != "R":
        return False
    for z in (x, y):
        for i, c in enumerate(z.letters):
            s = shift(z, i)
            if c == "L" and compare_words(s, x) > 0:
                return False
            if c == "R" and compare_words(s, y) < 0:
                return False
    return True


def _require_verified(p: KneadingPair) -> None:
    if not p.verified:
        raise InadmissiblePair(f"{p} has not been verified admissible")


def star_word(p: KneadingPair, u: Word) -> Word:
    """Substitute the patterns of ``p`` for the letters of ``u``."""
    _require_verified(p)
    table = {"L": p.x.letters, "R": p.y.letters}
    return Word("".join(table[c] for c in u.letters), periodic=u.periodic)


def star_pair(p: KneadingPair, q: KneadingPair) -> KneadingPair:
    x, y = star_word(p, q.x), star_word(p, q.y)
    # the product is admissible exactly when q is
    return KneadingPair(x, y, is_admissible_pair(q.x, q.y))


def word_stats(z: Word) -> tuple[int, int]:
    """``(n_L, n_R)``: how many letters of ``z`` are L and R."""
    n_l = z.letters.count("L")
    return n_l, len(z.letters) - n_l


def common_suffix_len(a: Word, b: Word) -> int:
    """Length of the longest common suffix of the two letter patterns."""
    k = 0
    limit = min(len(a), len(b))
    while k < limit and a.letters[-1 - k] == b.letters[-1 - k]:
        k += 1
    return k


def finite_periodic_equivalence(p: KneadingPair) -> bool:
    """Whether finite and periodic admissibility agree on ``p``."""
    if not p.x.letters or not p.y.letters:
        raise ValueError("patterns must be nonempty")
    finite = is_admissible_pair(p.x, p.y)
    periodic = is_admissible_periodic(Word(p.x.letters, True), Word(p.y.letters, True))
    return finite == periodic


def candidate_words(first: str, max_len: int) -> Iterator[Word]:
    """All finite words starting with ``first`` of length 1..max_len."""
    for n in range(max_len):
        for tail in itertools.product("LR", repeat=n):
            yield Word(first + "".join(tail))


def enumerate_admissible_pairs(
    max_x: int, max_y: int, bound: int = DEFAULT_ENUM_BOUND
) -> list[KneadingPair]:
    """Brute-force list of admissible pairs with ``|x| <= max_x``, ``|y| <= max_y``.

    Output is sorted by ``(x, y)`` in the symbolic order.
    """
    for name, val in (("max_x", max_x), ("max_y", max_y)):
        if val < 1:
            raise ValueError(f"{name} must be at least 1")
        if val > bound:
            raise BoundTooLarge(f"{name}={val} exceeds the bound {bound}")
    xs = sorted(candidate_words("L", max_x), key=_finite_key)
    ys = sorted(candidate_words("R", max_y), key=_finite_key)
    return [KneadingPair(x, y, True) for x in xs for y in ys if is_admissible_pair(x, y)]


def canonical_rotation(letters: str) -> str:
    """Lexicographically least rotation (``L < R``)."""
    if not letters:
        raise ValueError("empty word has no rotation")
    return min(letters[i:] + letters[:i] for i in range(len(letters)))
