import itertools
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import corpus
from lorenz_zeta.errors import CycleBudgetExceeded, EmptyWord
from lorenz_zeta.linkring import (
    LinkRingElement,
    Necklace,
    abelianize,
    canonical_necklace,
    closed_walk_terms,
    exp_trace_series,
    link_det,
    star_substitute,
    verify_williams_exp,
    verify_williams_factorization,
)
from lorenz_zeta.symbolic import enumerate_admissible_pairs, parse_pair, star_pair
from lorenz_zeta.template import build_template
from lorenz_zeta.twist import twist_char_poly

N = LinkRingElement.of
ONE = LinkRingElement.one()


def neck(w):
    return canonical_necklace(w).word


def oracle_link_det(t):
    g = nx.DiGraph()
    g.add_nodes_from(range(len(t)))
    g.add_edges_from((i, j) for i, row in enumerate(t.transition) for j, a in enumerate(row) if a)
    cycles = list(nx.simple_cycles(g))
    acc = {}
    for r in range(len(cycles) + 1):
        for fam in itertools.combinations(cycles, r):
            nodes = [v for c in fam for v in c]
            if len(nodes) != len(set(nodes)):
                continue
            key = tuple(sorted((neck("".join(t.sides[v] for v in c)) for c in fam), key=lambda w: (len(w), w)))
            acc[key] = acc.get(key, 0) + (-1) ** r
    return LinkRingElement(acc)


class TestNecklace:
    @pytest.mark.parametrize("w, want", [("RLR", "LRR"), ("LR", "LR"), ("RRL", "LRR")])
    def test_examples(self, w, want):
        assert canonical_necklace(w) == Necklace(want)
        assert str(canonical_necklace(w)) == f"({want})"

    def test_empty(self):
        with pytest.raises(EmptyWord):
            canonical_necklace("")

    def test_non_canonical_rejected(self):
        with pytest.raises(ValueError):
            Necklace("RL")

    @given(st.text("LR", min_size=1, max_size=16), st.integers(0, 100))
    def test_rotation_invariant(self, w, k):
        k %= len(w)
        assert canonical_necklace(w[k:] + w[:k]) == canonical_necklace(w)


class TestRing:
    def test_commutative_products(self):
        assert N("LR", "LRR") == N("LRR", "LR")
        assert str(N("LRR", "LR", coef=-2)) == "-2(LR)(LRR)"

    def test_arithmetic(self):
        a = ONE - N("LR")
        b = ONE - N("LRR")
        assert a * b == ONE - N("LR") - N("LRR") + N("LR", "LRR")
        assert a - a == LinkRingElement()
        assert str(LinkRingElement()) == "0"
        assert (a * Fraction(1, 2)).is_integral() is False

    def test_json(self):
        e = ONE - N("LR")
        assert e.to_dict() == {"terms": [{"coef": 1, "necklaces": []}, {"coef": -1, "necklaces": ["LR"]}]}

    def test_truncate(self):
        e = ONE - N("LR") - N("LRR") + N("LR", "LRR")
        assert e.truncate(3) == ONE - N("LR") - N("LRR")


class TestLinkDet:
    def test_worked_template(self, inner_pair):
        assert link_det(build_template(inner_pair)) == ONE - N("LR") - N("LRR")

    def test_two_cycle(self):
        e = link_det(build_template(parse_pair("LR0,RL0")))
        assert e == ONE - N("LR")
        assert str(e) == "1 - (LR)"

    def test_lrrl(self):
        e = link_det(build_template(parse_pair("LRRL0,RLLR0")))
        assert e == ONE - N("LR") - N("LRRL") + N("LR", "LRRL")
        # printed with least rotations
        assert str(e) == "1 - (LR) - (LLRR) + (LR)(LLRR)"

    @pytest.mark.parametrize("p", corpus(4), ids=str)
    def test_against_oracle(self, p):
        t = build_template(p)
        e = link_det(t)
        assert e == oracle_link_det(t)
        assert e.terms[()] == 1

    def test_budget(self, outer_pair):
        with pytest.raises(CycleBudgetExceeded):
            link_det(build_template(outer_pair), budget=1)


class TestStarSubstitute:
    def test_examples(self, outer_pair):
        p = parse_pair("LR0,RL0")
        assert star_substitute(p, ONE - N("LR")) == ONE - N("LRRL")
        assert star_substitute(outer_pair, ONE) == ONE
        assert star_substitute(outer_pair, -N("LR")) == -N("LRRRLRLLR")
        assert str(star_substitute(outer_pair, -N("LR"))) == "-(LLRLRRRLR)"

    @given(st.text("LR", min_size=1, max_size=8), st.integers(0, 8))
    def test_rotation_compatible(self, w, k):
        p = parse_pair("LRRRL0,RLLR0")
        k %= len(w)
        assert star_substitute(p, N(w)) == star_substitute(p, N(w[k:] + w[:k]))


class TestExpSeries:
    def test_two_cycle(self):
        t = build_template(parse_pair("LR0,RL0"))
        assert exp_trace_series(t, 8) == ONE - N("LR")
        assert exp_trace_series(t, 0) == ONE

    def test_worked_template(self, inner_pair):
        t = build_template(inner_pair)
        assert exp_trace_series(t, 6) == ONE - N("LR") - N("LRR")

    def test_word_projection_leaves_spurious_terms(self, inner_pair):
        # reading traces as raw cyclic words keeps the composite orbit LRLRR
        t = build_template(inner_pair)
        e = exp_trace_series(t, 6, projection="words")
        assert str(e) == "1 - (LR) - (LRR) + (LR)(LRR) - (LRLRR)"
        assert e != link_det(t).truncate(6)

    def test_traces_are_necklace_counts(self, inner_pair):
        t = build_template(inner_pair)
        for n in range(1, 7):
            walks = closed_walk_terms(t, n)
            tr = sum(walks.values())
            a = [list(r) for r in t.transition]
            power = a
            for _ in range(n - 1):
                power = [[sum(x * y for x, y in zip(row, col)) for col in zip(*a)] for row in power]
            assert tr == sum(power[i][i] for i in range(len(a)))

    def test_unknown_projection(self, inner_pair):
        with pytest.raises(ValueError):
            closed_walk_terms(build_template(inner_pair), 2, projection="bogus")

    @pytest.mark.parametrize(
        "p", [p for p in enumerate_admissible_pairs(6, 6) if 3 <= len(p.x) + len(p.y) <= 7], ids=str
    )
    def test_identity_small_templates(self, p):
        t = build_template(p)
        report = verify_williams_exp(t, 10)
        assert report.passed, (report.lhs, report.rhs)


class TestAbelianize:
    def test_examples(self):
        assert str(abelianize(ONE - N("LR") - N("LRR"))) == "1 - u*v - u*v^2"
        assert str(abelianize(N("LR", "LRRL"))) == "u^3*v^3"
        assert str(abelianize(ONE)) == "1"

    @pytest.mark.parametrize("p", corpus(4), ids=str)
    def test_duality(self, p):
        t = build_template(p)
        assert abelianize(link_det(t)) == twist_char_poly(t)

    def test_homomorphism(self):
        a = ONE - N("LR") + N("LRR", "LLR")
        b = N("LRRL") - 3
        assert abelianize(a * b) == abelianize(a) * abelianize(b)


class TestWilliamsFactorization:
    def test_worked_pairs(self, outer_pair, inner_pair):
        r = verify_williams_factorization(outer_pair, inner_pair)
        assert r.passed

    def test_self_product(self):
        p = parse_pair("LR0,RL0")
        r = verify_williams_factorization(p, p)
        assert r.passed
        assert r.lhs == ONE - N("LR") - N("LRRL") + N("LR", "LRRL")

    def test_sweep_length_three(self):
        pairs = corpus(3)
        for outer, inner in itertools.product(pairs, repeat=2):
            assert verify_williams_factorization(outer, inner).passed, (outer, inner)

    def test_lhs_is_product_template(self, outer_pair, inner_pair):
        r = verify_williams_factorization(outer_pair, inner_pair)
        assert r.lhs == link_det(build_template(star_pair(outer_pair, inner_pair)))
