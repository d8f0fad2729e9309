"""Markov partitions, transition matrices and block structure of sub-Lorenz templates."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from .errors import DuplicatePoint, StructureMismatch, TooSmall
from .graph import DEFAULT_CYCLE_BUDGET, simple_cycles
from .symbolic import (
    KneadingPair,
    Word,
    _finite_key,
    canonical_rotation,
    shift,
    star_pair,
)

__all__ = [
    "PartitionPoint",
    "Cell",
    "TemplateModel",
    "FactorDecomposition",
    "partition_points",
    "build_template",
    "factor_structure",
]

INHERITED = "inherited"
BAND = "band"


@dataclass(frozen=True)
class PartitionPoint:
    word: Word
    # ("X", i) for shift(X, i), ("Y", j) for shift(Y, j); several when shifts coincide
    origins: tuple[tuple[str, int], ...]
    rank: int

    @property
    def origin(self) -> tuple[str, int]:
        return self.origins[0]


@dataclass(frozen=True)
class Cell:
    lower: PartitionPoint
    upper: PartitionPoint
    side: str  # "L" left of zero, "R" right of zero


@dataclass(frozen=True)
class TemplateModel:
    pair: KneadingPair
    points: tuple[PartitionPoint, ...]
    cells: tuple[Cell, ...]
    transition: tuple[tuple[int, ...], ...]
    labels: tuple[tuple[str, ...], ...]

    def __len__(self) -> int:
        return len(self.cells)

    @property
    def sides(self) -> tuple[str, ...]:
        return tuple(c.side for c in self.cells)

    def to_dict(self) -> dict:
        return {
            "pair": str(self.pair),
            "points": [str(p.word) for p in self.points],
            "cells": [{"lo": str(c.lower.word), "hi": str(c.upper.word), "side": c.side} for c in self.cells],
            "transition": [list(r) for r in self.transition],
            "labels": [list(r) for r in self.labels],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def partition_points(p: KneadingPair, merge_coincident: bool = True) -> list[PartitionPoint]:
    """Shifts of X and Y sorted in the symbolic order, ranked from 1.

    When a shift of X coincides with a shift of Y (the two patterns share a
    suffix) the copies are merged into one point carrying both origins,
    unless ``merge_coincident`` is false, in which case
    :class:`DuplicatePoint` is raised.
    """
    by_word: dict[str, list[tuple[str, int]]] = {}
    for name, w in (("X", p.x), ("Y", p.y)):
        for i in range(len(w)):
            by_word.setdefault(w.letters[i:], []).append((name, i))
    dups = [w for w, origins in by_word.items() if len(origins) > 1]
    if dups and not merge_coincident:
        raise DuplicatePoint(f"coinciding shifts {', '.join(d + '0' for d in sorted(dups))} in {p}")
    ordered = sorted(by_word, key=lambda s: _finite_key(Word(s)))
    return [PartitionPoint(Word(s), tuple(by_word[s]), r) for r, s in enumerate(ordered, 1)]


def build_template(p: KneadingPair, merge_coincident: bool = True) -> TemplateModel:
    """Sub-Lorenz template of an admissible pair of finite words.

    Cells are the gaps between consecutive partition points other than the
    gap from X to Y. Cell ``j`` is in the image of cell ``i`` when it lies
    between the shifts of the endpoints of ``i``.
    """
    if not p.verified:
        raise ValueError(f"{p} must be verified admissible")
    if len(p.x) + len(p.y) < 3:
        raise TooSmall(f"{p} has no Markov cells")
    points = partition_points(p, merge_coincident)
    rank = {pt.word.letters: pt.rank for pt in points}
    if rank[p.x.letters] + 1 != rank[p.y.letters]:
        raise StructureMismatch(f"X and Y are not adjacent partition points of {p}")

    cells = []
    for lo, hi in zip(points, points[1:]):
        if lo.word == p.x and hi.word == p.y:
            continue
        side = lo.word.letters[0]
        if hi.word.letters[0] != side:
            raise StructureMismatch(f"cell [{lo.word},{hi.word}] straddles zero")
        cells.append(Cell(lo, hi, side))

    keys = [(_finite_key(c.lower.word), _finite_key(c.upper.word)) for c in cells]
    rows = []
    for c in cells:
        lo_img, hi_img = shift(c.lower.word), shift(c.upper.word)
        for w in (lo_img, hi_img):
            if w.letters and w.letters not in rank:
                raise StructureMismatch(f"shift {w} of a cell endpoint is not a partition point")
        a, b = _finite_key(lo_img), _finite_key(hi_img)
        row = []
        for lo_j, hi_j in keys:
            if a <= lo_j and hi_j <= b:
                row.append(1)
            elif hi_j <= a or b <= lo_j:
                row.append(0)
            else:
                raise StructureMismatch(f"image of [{c.lower.word},{c.upper.word}] cuts a cell")
        hits = [j for j, v in enumerate(row) if v]
        if hits and hits[-1] - hits[0] + 1 != len(hits):
            raise StructureMismatch("image of a cell is not an interval of cells")
        rows.append(tuple(row))

    labels = tuple(tuple(c.side if v else "0" for v in row) for c, row in zip(cells, rows))
    return TemplateModel(p, tuple(points), tuple(cells), tuple(rows), labels)


def cycle_words(t: TemplateModel, budget: int = DEFAULT_CYCLE_BUDGET) -> list[tuple[tuple[int, ...], str]]:
    """Simple cycles of ``t`` with their canonical label words."""
    sides = t.sides
    return [(c, canonical_rotation("".join(sides[v] for v in c))) for c in simple_cycles(t.transition, budget)]


@dataclass(frozen=True)
class FactorDecomposition:
    outer: KneadingPair
    inner: KneadingPair
    product_template: TemplateModel
    outer_template: TemplateModel
    # outer pattern suffix shared by all points of a block, in point order
    block_prefixes: tuple[str, ...]
    point_block: tuple[int, ...]
    cell_class: tuple[str, ...]
    cell_block: tuple[Optional[int], ...]
    inherited_bijection: dict[int, int] = field(hash=False)

    @property
    def inherited(self) -> list[int]:
        return [i for i, c in enumerate(self.cell_class) if c == INHERITED]

    @property
    def band(self) -> list[int]:
        return [i for i, c in enumerate(self.cell_class) if c == BAND]

    def block_points(self, b: int) -> set[str]:
        pts = self.product_template.points
        return {pts[k].word.letters for k, blk in enumerate(self.point_block) if blk == b}

    def block_shift_law_holds(self) -> bool:
        """Shifting a block lands in the block of the shortened prefix.

        Blocks whose prefix is a whole outer pattern are images of the
        one-letter blocks; every other block is exactly the union of the
        shifts of the blocks one letter longer.
        """
        index = {pre: b for b, pre in enumerate(self.block_prefixes)}
        full = {self.outer.x.letters, self.outer.y.letters}
        images: dict[int, set[str]] = {b: set() for b in index.values()}
        for b, pre in enumerate(self.block_prefixes):
            if len(pre) == 1:
                continue
            target = index.get(pre[1:])
            if target is None:
                return False
            shifted = {w[1:] for w in self.block_points(b)}
            if not shifted <= self.block_points(target):
                return False
            images[target] |= shifted
        return all(images[b] == self.block_points(b) for b, pre in enumerate(self.block_prefixes) if pre not in full)


def _point_prefixes(outer: KneadingPair, inner: KneadingPair) -> dict[str, set[str]]:
    # each shift of a product word is (suffix of an outer pattern) + (outer * inner tail)
    patterns = {"L": outer.x.letters, "R": outer.y.letters}
    found: dict[str, set[str]] = {}
    for u in (inner.x.letters, inner.y.letters):
        word = "".join(patterns[c] for c in u)
        pos = 0
        for c in u:
            pat = patterns[c]
            for off in range(len(pat)):
                found.setdefault(word[pos + off :], set()).add(pat[off:])
            pos += len(pat)
    return found


def factor_structure(
    outer: KneadingPair, inner: KneadingPair, budget: int = DEFAULT_CYCLE_BUDGET
) -> FactorDecomposition:
    """Split the cells of the template of ``outer * inner`` into inherited and band cells.

    Raises :class:`StructureMismatch` if the inherited cells do not
    reproduce the outer template, if a simple cycle mixes the two classes,
    or if the band cycles do not match the substituted inner cycles.
    """
    product = star_pair(outer, inner)
    big = build_template(product)
    small = build_template(outer)

    prefixes = _point_prefixes(outer, inner)
    point_prefix = []
    for pt in big.points:
        pre = prefixes.get(pt.word.letters, set())
        if len(pre) != 1:
            raise StructureMismatch(f"point {pt.word} has prefixes {sorted(pre)}")
        point_prefix.append(next(iter(pre)))

    runs: list[str] = []
    for pre in point_prefix:
        if not runs or runs[-1] != pre:
            runs.append(pre)
    expected = [pt.word.letters for pt in small.points]
    if runs != expected:
        raise StructureMismatch(f"block order {runs} does not follow the outer points {expected}")
    block_of = {pre: b for b, pre in enumerate(runs)}
    point_block = tuple(block_of[pre] for pre in point_prefix)
    rank_index = {pt.rank: k for k, pt in enumerate(big.points)}

    cell_class, cell_block, bijection = [], [], {}
    outer_cell = {(c.lower.rank, c.upper.rank): k for k, c in enumerate(small.cells)}
    for i, c in enumerate(big.cells):
        b_lo = point_block[rank_index[c.lower.rank]]
        b_hi = point_block[rank_index[c.upper.rank]]
        if b_lo == b_hi:
            cell_class.append(BAND)
            cell_block.append(b_lo)
            continue
        k = outer_cell.get((b_lo + 1, b_hi + 1))
        if k is None:
            raise StructureMismatch(f"cell {i} spans blocks {b_lo}, {b_hi} with no outer counterpart")
        cell_class.append(INHERITED)
        cell_block.append(None)
        bijection[i] = k
    if sorted(bijection.values()) != list(range(len(small))):
        raise StructureMismatch("inherited cells do not cover the outer template")

    for i, k in bijection.items():
        for j, l in bijection.items():
            if big.labels[i][j] != small.labels[k][l]:
                raise StructureMismatch(f"inherited entry ({i},{j}) differs from outer ({k},{l})")

    band_words = Counter()
    for cyc, word in cycle_words(big, budget):
        classes = {cell_class[v] for v in cyc}
        if len(classes) > 1:
            raise StructureMismatch(f"cycle {cyc} mixes inherited and band cells")
        if classes == {BAND}:
            band_words[word] += 1
    expected_words = Counter()
    if len(inner.x) + len(inner.y) >= 3:
        patterns = {"L": outer.x.letters, "R": outer.y.letters}
        for _, word in cycle_words(build_template(inner), budget):
            expected_words[canonical_rotation("".join(patterns[c] for c in word))] += 1
    if band_words != expected_words:
        raise StructureMismatch("band cycles differ from the substituted inner cycles")

    return FactorDecomposition(
        outer,
        inner,
        big,
        small,
        tuple(runs),
        point_block,
        tuple(cell_class),
        tuple(cell_block),
        bijection,
    )
