"""Cycle enumeration on small directed graphs given by 0/1 matrices."""

from __future__ import annotations

from typing import Iterator, Sequence

from .errors import CycleBudgetExceeded

DEFAULT_CYCLE_BUDGET = 100_000

Matrix = Sequence[Sequence[int]]


def successors(matrix: Matrix) -> list[list[int]]:
    return [[j for j, a in enumerate(row) if a] for row in matrix]


def simple_cycles(matrix: Matrix, budget: int = DEFAULT_CYCLE_BUDGET) -> list[tuple[int, ...]]:
    """All simple cycles, each listed once starting at its smallest node.

    Depth-first search from every anchor ``s`` through nodes larger than
    ``s`` only. Nodes that cannot reach ``s`` inside the allowed set are
    pruned before the search.
    """
    succ = successors(matrix)
    n = len(succ)
    pred: list[list[int]] = [[] for _ in range(n)]
    for i, row in enumerate(succ):
        for j in row:
            pred[j].append(i)

    found: list[tuple[int, ...]] = []
    for s in range(n):
        # nodes > s that can walk back to s without dipping below s
        back = {s}
        stack = [s]
        while stack:
            v = stack.pop()
            for w in pred[v]:
                if w > s and w not in back:
                    back.add(w)
                    stack.append(w)
        path = [s]
        on_path = {s}
        iters = [iter(succ[s])]
        while iters:
            for w in iters[-1]:
                if w == s:
                    found.append(tuple(path))
                    if len(found) > budget:
                        raise CycleBudgetExceeded(f"more than {budget} simple cycles")
                elif w > s and w in back and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    iters.append(iter(succ[w]))
                    break
            else:
                iters.pop()
                on_path.discard(path.pop())
    return found


def disjoint_families(cycles: Sequence[Sequence[int]]) -> Iterator[tuple[int, ...]]:
    """Index tuples of pairwise node-disjoint cycles, the empty family first."""
    node_sets = [frozenset(c) for c in cycles]

    def extend(start: int, used: frozenset, chosen: tuple[int, ...]):
        yield chosen
        for k in range(start, len(node_sets)):
            if not (node_sets[k] & used):
                yield from extend(k + 1, used | node_sets[k], chosen + (k,))

    yield from extend(0, frozenset(), ())
