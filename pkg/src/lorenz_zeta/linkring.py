"""Williams' link ring: necklaces, link-det and the exp-trace series.

An element of the ring is a finite sum of products of necklaces with
rational coefficients. Letters inside a necklace do not commute; distinct
necklaces in a product do.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

from .errors import EmptyWord, NonIntegerCoefficient
from .graph import DEFAULT_CYCLE_BUDGET, disjoint_families
from .symbolic import KneadingPair, canonical_rotation, star_pair
from .template import TemplateModel, build_template, cycle_words
from .twist import TwistPolynomial

__all__ = [
    "Necklace",
    "LinkRingElement",
    "EmptyWord",
    "canonical_necklace",
    "link_det",
    "star_substitute",
    "closed_walk_terms",
    "exp_trace_series",
    "abelianize",
    "WilliamsReport",
    "verify_williams_factorization",
    "verify_williams_exp",
    "DEFAULT_DEGREE",
]

DEFAULT_DEGREE = 12

Key = tuple[str, ...]
Number = Union[int, Fraction]


@dataclass(frozen=True, order=True)
class Necklace:
    """A word over {L, R} up to rotation, stored as its least rotation."""

    word: str

    def __post_init__(self):
        if not self.word:
            raise EmptyWord("a necklace needs at least one letter")
        if canonical_rotation(self.word) != self.word:
            raise ValueError(f"{self.word} is not in canonical rotation")

    def __str__(self) -> str:
        return f"({self.word})"

    def __len__(self) -> int:
        return len(self.word)


def canonical_necklace(word: Union[str, Iterable[str]]) -> Necklace:
    word = "".join(word)
    if not word:
        raise EmptyWord("a necklace needs at least one letter")
    if set(word) - {"L", "R"}:
        raise ValueError(f"necklace letters must be L or R, got {word!r}")
    return Necklace(canonical_rotation(word))


def _necklace_order(w: str):
    return (len(w), w)


def _key(words: Iterable[str]) -> Key:
    return tuple(sorted(words, key=_necklace_order))


class LinkRingElement:
    """Finite rational combination of necklace multisets; ``()`` is the unit."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Iterable[str], Number] = ()):
        acc: dict[Key, Number] = {}
        for words, c in dict(terms).items():
            k = _key(words)
            acc[k] = acc.get(k, 0) + c
        self._terms = {k: _normal(c) for k, c in acc.items() if c}

    @classmethod
    def one(cls) -> LinkRingElement:
        return cls({(): 1})

    @classmethod
    def of(cls, *necklaces: Union[str, Necklace], coef: Number = 1) -> LinkRingElement:
        """Monomial ``coef * (w1)(w2)...``; words are canonicalised."""
        words = [n.word if isinstance(n, Necklace) else canonical_necklace(n).word for n in necklaces]
        return cls({tuple(words): coef})

    @property
    def terms(self) -> dict[Key, Number]:
        return dict(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    @staticmethod
    def degree_of(key: Key) -> int:
        return sum(len(w) for w in key)

    def degree(self) -> int:
        return max((self.degree_of(k) for k in self._terms), default=-1)

    def truncate(self, max_degree: int) -> LinkRingElement:
        return LinkRingElement({k: c for k, c in self._terms.items() if self.degree_of(k) <= max_degree})

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def _coerce(self, other) -> LinkRingElement:
        if isinstance(other, LinkRingElement):
            return other
        if isinstance(other, Rational):
            return LinkRingElement({(): other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0) + c
        return LinkRingElement(acc)

    __radd__ = __add__

    def __neg__(self):
        return LinkRingElement({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        return self.mul(other)

    __rmul__ = __mul__

    def mul(self, other, max_degree: int | None = None) -> LinkRingElement:
        """Product, optionally dropping terms above ``max_degree``."""
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[Key, Number] = {}
        for k1, c1 in self._terms.items():
            d1 = self.degree_of(k1)
            for k2, c2 in other._terms.items():
                if max_degree is not None and d1 + self.degree_of(k2) > max_degree:
                    continue
                k = _key(k1 + k2)
                acc[k] = acc.get(k, 0) + c1 * c2
        return LinkRingElement(acc)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    __hash__ = None

    def _sorted_keys(self) -> list[Key]:
        return sorted(self._terms, key=lambda k: (self.degree_of(k), [_necklace_order(w) for w in k]))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k in self._sorted_keys():
            c = self._terms[k]
            mag = abs(c)
            mono = "".join(f"({w})" for w in k)
            if mono:
                body = mono if mag == 1 else f"{mag}{mono}"
            else:
                body = str(mag)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LinkRingElement({str(self)!r})"

    def to_dict(self) -> dict:
        terms = []
        for k in self._sorted_keys():
            c = self._terms[k]
            terms.append({"coef": c if isinstance(c, int) else str(c), "necklaces": list(k)})
        return {"terms": terms}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _normal(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def link_det(t: TemplateModel, budget: int = DEFAULT_CYCLE_BUDGET) -> LinkRingElement:
    """Signed sum of free-link symbols over families of node-disjoint simple cycles."""
    cycles = cycle_words(t, budget)
    acc: dict[Key, int] = {}
    for family in disjoint_families([c for c, _ in cycles]):
        k = _key(cycles[i][1] for i in family)
        acc[k] = acc.get(k, 0) + (-1) ** len(family)
    return LinkRingElement(acc)


def star_substitute(p: KneadingPair, e: LinkRingElement) -> LinkRingElement:
    """Replace every necklace ``w`` by the necklace of ``p * w``."""
    if not p.verified:
        raise ValueError(f"{p} must be verified admissible")
    table = {"L": p.x.letters, "R": p.y.letters}
    sub = lambda w: canonical_rotation("".join(table[c] for c in w))  # noqa: E731
    return LinkRingElement({tuple(sub(w) for w in k): c for k, c in e})


def _primitive_root(word: str) -> tuple[str, int]:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return word[:d], n // d
    raise AssertionError("unreachable")


def closed_walk_terms(t: TemplateModel, length: int, projection: str = "cycles") -> dict[Key, int]:
    """``tr(A(L,R)^length)`` as a multiset count of projected closed walks.

    With ``projection="cycles"`` a walk based at ``v`` is read in the link
    ring by popping each simple cycle as soon as it closes (loop erasure);
    the walk contributes the product of the popped necklaces. With
    ``projection="words"`` the walk's cyclic label word ``w^k`` (``w``
    primitive) contributes the k-th power of the necklace of ``w``.
    """
    if projection not in ("cycles", "words"):
        raise ValueError(f"unknown projection {projection!r}")
    succ = [[j for j, a in enumerate(row) if a] for row in t.transition]
    sides = t.sides
    counts: dict[Key, int] = {}

    def record(key: Key):
        counts[key] = counts.get(key, 0) + 1

    def walk_words(base, v, depth, path):
        if depth == length:
            if base in succ[v]:
                root, k = _primitive_root("".join(sides[x] for x in path))
                record((canonical_rotation(root),) * k)
            return
        for w in succ[v]:
            path.append(w)
            walk_words(base, w, depth + 1, path)
            path.pop()

    def walk_cycles(base, v, depth, stack, popped):
        if depth == length:
            if base in succ[v]:
                record(_key(popped + [canonical_rotation("".join(sides[x] for x in stack))]))
            return
        for w in succ[v]:
            if w in stack:
                i = stack.index(w)
                cyc = canonical_rotation("".join(sides[x] for x in stack[i:]))
                walk_cycles(base, w, depth + 1, stack[: i + 1], popped + [cyc])
            else:
                walk_cycles(base, w, depth + 1, stack + [w], popped)

    for base in range(len(succ)):
        if projection == "words":
            walk_words(base, base, 1, [base])
        else:
            walk_cycles(base, base, 1, [base], [])
    return counts


def exp_trace_series(t: TemplateModel, max_degree: int = DEFAULT_DEGREE, projection: str = "cycles") -> LinkRingElement:
    """``exp(-sum_i tr(A(L,R)^i) / i)`` truncated to letter-degree ``max_degree``.

    Raises :class:`NonIntegerCoefficient` if any coefficient of the result
    fails to be an integer.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    # graded pieces of g = -sum_i tr_i / i; walks of length i have letter-degree i
    g = [LinkRingElement()]
    for i in range(1, max_degree + 1):
        g.append(LinkRingElement({k: Fraction(-c, i) for k, c in closed_walk_terms(t, i, projection).items()}))
    # n f_n = sum_{k=1}^n k g_k f_{n-k}
    f = [LinkRingElement.one()]
    for n in range(1, max_degree + 1):
        acc = LinkRingElement()
        for k in range(1, n + 1):
            if len(g[k]) and len(f[n - k]):
                acc = acc + (g[k] * f[n - k]) * k
        f.append(acc * Fraction(1, n))
    total = LinkRingElement()
    for piece in f:
        total = total + piece
    if not total.is_integral():
        bad = next(k for k, c in total if not isinstance(c, int))
        raise NonIntegerCoefficient(f"coefficient {total.terms[bad]} on {''.join(f'({w})' for w in bad)}")
    return total


def abelianize(e: LinkRingElement) -> TwistPolynomial:
    """Map each necklace to ``u^{n_L} v^{n_R}``."""
    out: dict[tuple[int, int], int] = {}
    for k, c in e:
        if not isinstance(c, int):
            raise NonIntegerCoefficient(f"cannot abelianize coefficient {c}")
        n_l = sum(w.count("L") for w in k)
        n_r = sum(len(w) for w in k) - n_l
        out[(n_l, n_r)] = out.get((n_l, n_r), 0) + c
    return TwistPolynomial(("u", "v"), out)


@dataclass(frozen=True)
class WilliamsReport:
    passed: bool
    lhs: LinkRingElement
    rhs: LinkRingElement
    detail: str = ""

    def to_dict(self) -> dict:
        return {"pass": self.passed, "lhs": str(self.lhs), "rhs": str(self.rhs), "detail": self.detail}


def verify_williams_factorization(
    outer: KneadingPair, inner: KneadingPair, budget: int = DEFAULT_CYCLE_BUDGET
) -> WilliamsReport:
    """``link_det(T_{outer*inner}) == link_det(T_outer) * (outer * link_det(T_inner))``."""
    product = star_pair(outer, inner)
    lhs = link_det(build_template(product), budget)
    rhs = link_det(build_template(outer), budget) * star_substitute(outer, link_det(build_template(inner), budget))
    return WilliamsReport(lhs == rhs, lhs, rhs)


def verify_williams_exp(
    t: TemplateModel, max_degree: int = DEFAULT_DEGREE, budget: int = DEFAULT_CYCLE_BUDGET
) -> WilliamsReport:
    """Compare the exp-trace series with link-det truncated to the same degree."""
    lhs = exp_trace_series(t, max_degree)
    rhs = link_det(t, budget).truncate(max_degree)
    return WilliamsReport(lhs == rhs, lhs, rhs, f"degree <= {max_degree}")
