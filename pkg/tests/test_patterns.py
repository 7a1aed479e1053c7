from fractions import Fraction
from math import comb

import pytest

from pseudochain.patterns import (
    MergerPattern,
    binomial_deltas,
    brute_force_count,
    enumerate_counts,
    level_labels,
    noncrossing_matchings,
    pattern_counts,
    symmetric_patterns,
    validate_pattern,
)


def test_shorthand_roundtrip():
    p = MergerPattern(((1, 3), (-3, -1)))
    assert p.shorthand() == "{[-3,-1],[1,3]}"
    assert MergerPattern.parse(p.shorthand()).pairs == ((-3, -1), (1, 3))
    assert str(MergerPattern(())) == "{}"


def test_small_table():
    t = enumerate_counts(3)
    assert t.p4k == (1, 2, 6, 20)
    assert t.p4k2 == (1, 3, 10, 35)


def test_table_tail():
    t = enumerate_counts(9)
    assert t.p4k[-1] == 33656
    assert t.p4k2[-1] == 62498


def test_single_row():
    t = enumerate_counts(0)
    assert (t.p4k, t.p4k2, t.r, t.r_minus_s) == ((1,), (1,), (0,), (0,))


def test_negative_max_k():
    with pytest.raises(ValueError):
        enumerate_counts(-1)


def test_deltas():
    t = enumerate_counts(9)
    d = binomial_deltas(t)
    assert all(r == 0 for r in d.r_signed[:4])
    assert d.r_signed[4] == Fraction(-1)  # 68 vs C(8,4) = 70
    assert t.r[4] == 1
    assert t.r_minus_s[8] == 1
    assert all(isinstance(x, Fraction) for x in d.s_signed)


def test_pattern_counts_keys():
    P = pattern_counts(10)
    assert sorted(P) == [0, 2, 4, 6, 8, 10]


@pytest.mark.parametrize("J, expected", [(1, 1), (2, 2), (3, 3)])
def test_brute_force_small(J, expected):
    assert brute_force_count(J) == expected


def test_brute_force_limits():
    with pytest.raises(ValueError):
        brute_force_count(11)
    with pytest.raises(ValueError):
        brute_force_count(0)


def test_brute_force_is_central_binomial():
    # symmetric non-crossing matchings of 2J points
    for J in range(1, 9):
        assert brute_force_count(J) == comb(J, J // 2)


def test_noncrossing_catalan():
    catalan = [1, 1, 2, 5, 14, 42]
    for n, c in enumerate(catalan):
        assert sum(1 for _ in noncrossing_matchings(list(range(2 * n)))) == c


def test_three_patterns_for_six_levels():
    got = {p.shorthand() for p in symmetric_patterns(3)}
    assert got == {
        "{[-5,-3],[-1,1],[3,5]}",
        "{[-5,5],[-3,-1],[1,3]}",
        "{[-5,5],[-3,3],[-1,1]}",
    }
    assert all(validate_pattern(p, 3) for p in symmetric_patterns(3))


def test_level_labels():
    assert level_labels(2) == [-3, -1, 1, 3]


@pytest.mark.parametrize("text, ok", [
    ("{[-3,-1],[1,3]}", True),
    ("{[-3,1],[-1,3]}", False),
    ("{[-5,5],[-3,-1],[1,3]}", True),
    ("{[-1,1]}", True),
    ("{[-2,2]}", False),
    ("{[-3,-1]}", False),
    ("{[-3,-1],[1,3],[1,3]}", False),
    ("{}", True),
])
def test_validate_pattern(text, ok):
    assert validate_pattern(MergerPattern.parse(text)) is ok


def test_validate_out_of_range():
    assert not validate_pattern(MergerPattern.parse("{[-5,5]}"), J=2)
