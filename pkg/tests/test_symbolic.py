import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import corpus
from lorenz_zeta.errors import BoundTooLarge, InadmissiblePair, MalformedWord, ShiftPastEnd
from lorenz_zeta.symbolic import (
    KneadingPair,
    Word,
    candidate_words,
    canonical_rotation,
    common_suffix_len,
    compare_words,
    enumerate_admissible_pairs,
    finite_periodic_equivalence,
    is_admissible_pair,
    parse_pair,
    parse_word,
    shift,
    star_pair,
    star_word,
    word_stats,
)

RANK = {"L": 0, "0": 1, "R": 2}


def expansion(w: Word, n: int) -> list[int]:
    if w.periodic:
        return [RANK[w.letters[i % len(w.letters)]] for i in range(n)]
    seq = [RANK[c] for c in w.letters] + [RANK["0"]]
    return seq[:n]


def oracle_compare(a: Word, b: Word) -> int:
    """Compare long prefixes of the expansions; finite words end at their 0."""
    ea, eb = expansion(a, 200), expansion(b, 200)
    return (ea > eb) - (ea < eb)


def oracle_admissible(x: str, y: str) -> bool:
    # literal transcription of the shift conditions on the full sequences
    X, Y = x + "0", y + "0"
    if X[0] != "L" or Y[0] != "R":
        return False

    def key(s):
        return [RANK[c] for c in s]

    for Z in (X, Y):
        for i in range(1, len(Z) - 1):
            if Z[i] == "L" and not key(Z[i:]) < key(X):
                return False
            if Z[i] == "R" and not key(Z[i:]) > key(Y):
                return False
    return True


finite_words = st.text("LR", max_size=12).map(Word)
periodic_words = st.text("LR", min_size=1, max_size=6).map(lambda s: Word(s, periodic=True))
any_words = st.one_of(finite_words, periodic_words)


class TestParse:
    @pytest.mark.parametrize(
        "text, letters, periodic",
        [("LRR0", "LRR", False), ("0", "", False), ("(LR)^", "LR", True)],
    )
    def test_examples(self, text, letters, periodic):
        w = parse_word(text)
        assert (w.letters, w.periodic) == (letters, periodic)
        assert str(w) == text

    @pytest.mark.parametrize("bad", ["", "L0R0", "LX0", "LR", "()^", "(L0)^", "0L"])
    def test_malformed(self, bad):
        with pytest.raises(MalformedWord):
            parse_word(bad)

    @given(any_words)
    def test_round_trip(self, w):
        assert parse_word(str(w)) == w

    @pytest.mark.parametrize("text", ["LRR0,RL0", "(LRR0,RL0)", " ( LRR0 , RL0 ) "])
    def test_pair_syntax(self, text):
        assert str(parse_pair(text)) == "(LRR0,RL0)"

    def test_pair_rejects_inadmissible(self):
        with pytest.raises(InadmissiblePair):
            parse_pair("LR0,R0")
        assert not parse_pair("LR0,R0", verify=False).verified


class TestCompare:
    @pytest.mark.parametrize(
        "a, b, expected",
        [("LLR0", "L0", -1), ("L0", "LRR0", -1), ("LRR0", "LRR0", 0), ("(LR)^", "(LRLR)^", 0)],
    )
    def test_examples(self, a, b, expected):
        assert compare_words(parse_word(a), parse_word(b)) == expected
        assert compare_words(parse_word(b), parse_word(a)) == -expected

    @given(any_words, any_words)
    def test_matches_expansion_oracle(self, a, b):
        assert compare_words(a, b) == oracle_compare(a, b)

    @given(any_words, any_words, any_words)
    def test_total_order(self, a, b, c):
        assert compare_words(a, a) == 0
        assert compare_words(a, b) == -compare_words(b, a)
        if compare_words(a, b) <= 0 and compare_words(b, c) <= 0:
            assert compare_words(a, c) <= 0


class TestShift:
    def test_examples(self):
        assert str(shift(parse_word("LRR0"))) == "RR0"
        assert str(shift(parse_word("LRR0"), 3)) == "0"
        assert str(shift(parse_word("(LRR)^"), 4)) == "(RRL)^"

    @pytest.mark.parametrize("text, k", [("0", 1), ("LR0", 3)])
    def test_past_end(self, text, k):
        with pytest.raises(ShiftPastEnd):
            shift(parse_word(text), k)


class TestAdmissible:
    @pytest.mark.parametrize(
        "x, y, expected",
        [("L0", "R0", True), ("LRR0", "RL0", True), ("LR0", "R0", False), ("LL0", "R0", False)],
    )
    def test_examples(self, x, y, expected):
        assert is_admissible_pair(parse_word(x), parse_word(y)) is expected

    def test_matches_literal_oracle(self):
        for x in candidate_words("L", 5):
            for y in candidate_words("R", 5):
                assert is_admissible_pair(x, y) == oracle_admissible(x.letters, y.letters), (x, y)

    def test_first_letters_required(self):
        assert not is_admissible_pair(Word("RL"), Word("R"))
        assert not is_admissible_pair(Word("L"), Word("L"))


class TestStar:
    def test_worked_words(self, outer_pair):
        assert str(star_word(outer_pair, parse_word("LRR0"))) == "LRRRLRLLRRLLR0"
        assert str(star_word(outer_pair, parse_word("RL0"))) == "RLLRLRRRL0"

    def test_single_letter(self):
        for p in corpus():
            assert star_word(p, parse_word("L0")) == p.x
            assert star_word(p, parse_word("R0")) == p.y

    def test_periodic(self):
        p = parse_pair("LR0,RL0")
        assert str(star_word(p, parse_word("(LR)^"))) == "(LRRL)^"

    def test_pairs(self, outer_pair, inner_pair):
        assert str(star_pair(outer_pair, inner_pair)) == "(LRRRLRLLRRLLR0,RLLRLRRRL0)"
        assert star_pair(outer_pair, parse_pair("L0,R0")) == outer_pair
        p = parse_pair("LR0,RL0")
        assert str(star_pair(p, p)) == "(LRRL0,RLLR0)"

    def test_unverified_outer_rejected(self):
        with pytest.raises(InadmissiblePair):
            star_word(KneadingPair(Word("LR"), Word("R")), Word("L"))

    def test_length_law(self):
        for p in corpus():
            for u in itertools.chain(candidate_words("L", 4), candidate_words("R", 4)):
                n_l, n_r = word_stats(u)
                assert len(star_word(p, u)) == len(p.x) * n_l + len(p.y) * n_r

    def test_order_preserved(self):
        words = [Word("".join(t)) for n in range(7) for t in itertools.product("LR", repeat=n)]
        for p in corpus(3):
            images = [star_word(p, z) for z in words]
            for (z1, s1), (z2, s2) in itertools.combinations(zip(words, images), 2):
                assert compare_words(s1, s2) == compare_words(z1, z2)

    @settings(max_examples=60)
    @given(st.text("LR", max_size=8), st.text("LR", max_size=8), st.sampled_from(corpus(4, 2)))
    def test_order_preserved_random(self, a, b, p):
        z1, z2 = Word(a), Word(b)
        assert compare_words(star_word(p, z1), star_word(p, z2)) == compare_words(z1, z2)

    def test_associative(self):
        pairs = enumerate_admissible_pairs(3, 3)
        for p, q, r in itertools.product(pairs, repeat=3):
            assert star_pair(p, star_pair(q, r)) == star_pair(star_pair(p, q), r)

    def test_admissibility_equivalence(self):
        candidates = [
            KneadingPair(x, y) for x in candidate_words("L", 4) for y in candidate_words("R", 4)
        ]
        for p in corpus(3, 2):
            for q in candidates:
                r = star_pair(p, q)
                assert is_admissible_pair(r.x, r.y) == is_admissible_pair(q.x, q.y), (p, q)


class TestStats:
    @pytest.mark.parametrize("w, expected", [("LRR0", (1, 2)), ("0", (0, 0)), ("LRRRL0", (2, 3))])
    def test_word_stats(self, w, expected):
        assert word_stats(parse_word(w)) == expected

    @pytest.mark.parametrize("a, b, expected", [("LRRRL0", "RLLR0", 0), ("LRRL0", "RLRL0", 2), ("LR0", "LR0", 2)])
    def test_common_suffix(self, a, b, expected):
        assert common_suffix_len(parse_word(a), parse_word(b)) == expected


def primitive(s: str) -> bool:
    return all(s != s[d:] + s[:d] for d in range(1, len(s)))


class TestFinitePeriodic:
    @pytest.mark.parametrize("x, y", [("LRR0", "RL0"), ("L0", "R0"), ("LR0", "R0")])
    def test_examples(self, x, y):
        assert finite_periodic_equivalence(KneadingPair(parse_word(x), parse_word(y)))

    def test_primitive_patterns_agree(self):
        for x in candidate_words("L", 6):
            for y in candidate_words("R", 6):
                if primitive(x.letters) and primitive(y.letters):
                    assert finite_periodic_equivalence(KneadingPair(x, y)), (x, y)

    def test_proper_power_breaks_agreement(self):
        # (LR)^2 repeats itself after two letters: strict test fails, periodic test passes
        p = KneadingPair(parse_word("LRLR0"), parse_word("RL0"))
        assert not is_admissible_pair(p.x, p.y)
        assert not finite_periodic_equivalence(p)


class TestEnumerate:
    def test_small(self):
        assert [str(p) for p in enumerate_admissible_pairs(1, 1)] == ["(L0,R0)"]
        assert [str(p) for p in enumerate_admissible_pairs(2, 2)] == ["(L0,R0)", "(LR0,RL0)"]
        assert "(LRR0,RL0)" in {str(p) for p in enumerate_admissible_pairs(3, 2)}

    def test_against_oracle(self):
        got = {(p.x.letters, p.y.letters) for p in enumerate_admissible_pairs(5, 4)}
        want = {
            (x.letters, y.letters)
            for x in candidate_words("L", 5)
            for y in candidate_words("R", 4)
            if oracle_admissible(x.letters, y.letters)
        }
        assert got == want

    def test_bounds(self):
        with pytest.raises(BoundTooLarge):
            enumerate_admissible_pairs(7, 2)
        with pytest.raises(ValueError):
            enumerate_admissible_pairs(0, 2)


@given(st.text("LR", min_size=1, max_size=16), st.integers(0, 32))
def test_rotation_canonical(w, k):
    k %= len(w)
    assert canonical_rotation(w[k:] + w[:k]) == canonical_rotation(w)
    assert canonical_rotation(w) == min(w[i:] + w[:i] for i in range(len(w)))
