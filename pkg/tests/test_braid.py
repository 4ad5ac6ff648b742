import random

import pytest
from hypothesis import given, settings, strategies as st

from morsenov.braid import (
    BraidInputError,
    Braidword,
    NonStrictWordError,
    exponent_table,
    inhomogeneity,
    is_strict,
    minimize_inhomogeneity,
    parse_braidword,
    random_strict_braidword,
    rewrite_neighbors,
)


def w(strands, *ints):
    return Braidword.from_ints(strands, list(ints))


def test_parse_plain_tokens():
    b = parse_braidword("s1 s1 s1", 2)
    assert b == w(2, 1, 1, 1)


def test_parse_mixed_separators_and_bare_ints():
    b = parse_braidword("1, -2 s1 -s2", 3)
    assert b == w(3, 1, -2, 1, -2)


def test_parse_rejects_out_of_range_index():
    with pytest.raises(BraidInputError):
        parse_braidword("s5", 3)


def test_parse_rejects_malformed_token():
    with pytest.raises(BraidInputError):
        parse_braidword("sigma_1", 3)


def test_strictness():
    assert not is_strict(w(3, 1, 1))
    assert is_strict(w(3, 1, -2, 1, -2))
    assert not is_strict(Braidword(2, ()))
    assert is_strict(Braidword(1, ()))


def test_inhomogeneity_values():
    assert inhomogeneity(w(2, 1, 1, 1)) == 0
    # v(1,+) = 3, v(1,-) = 1, so exactly one unavoidable mixed pair
    assert inhomogeneity(w(2, 1, 1, -1, 1)) == 1
    assert inhomogeneity(w(3, 1, -2, 1, -2)) == 0


def test_inhomogeneity_rejects_non_strict():
    with pytest.raises(NonStrictWordError):
        inhomogeneity(w(3, 1, 1))


def test_exponent_table_sums_to_length():
    word = w(3, 1, -2, 1, -2, 2)
    table = exponent_table(word)
    assert sum(table.values()) == len(word)
    assert table[(1, 1)] == 2 and table[(2, -1)] == 2 and table[(2, 1)] == 1


def test_neighbors_free_reduction_reaches_empty_word():
    assert Braidword(2, ()) in rewrite_neighbors(w(2, 1, -1))


def test_neighbors_distant_commutation():
    assert w(4, 3, 1) in rewrite_neighbors(w(4, 1, 3))


def test_neighbors_braid_relation():
    assert w(3, 2, 1, 2) in rewrite_neighbors(w(3, 1, 2, 1))


def test_neighbors_cyclic_rotation():
    nbs = rewrite_neighbors(w(3, 1, 2, -1))
    assert w(3, 2, -1, 1) in nbs
    assert w(3, -1, 1, 2) in nbs


def test_minimize_free_reduces_to_homogeneous():
    best, value = minimize_inhomogeneity(w(2, 1, 1, -1, 1), budget=1000)
    assert value == 0
    assert best == w(2, 1, 1)


def test_minimize_homogeneous_input_returned():
    word = w(3, 1, 1, 2)
    best, value = minimize_inhomogeneity(word, budget=100)
    assert value == 0 and best == word


def test_minimize_budget_one_is_no_exploration():
    word = w(2, 1, 1, -1, 1)
    best, value = minimize_inhomogeneity(word, budget=1)
    assert best == word and value == inhomogeneity(word)


def test_minimize_deterministic():
    word = w(3, 1, -2, -1, 2, 1)
    assert minimize_inhomogeneity(word, 500) == minimize_inhomogeneity(word, 500)


letters_st = st.lists(
    st.tuples(st.integers(1, 3), st.sampled_from((-1, 1))), min_size=0, max_size=10
)


@given(letters_st)
@settings(max_examples=200, deadline=None)
def test_neighbor_moves_preserve_or_shrink(letters):
    word = Braidword(4, tuple(letters))
    k = len(word)
    table = exponent_table(word)
    for nb in rewrite_neighbors(word):
        assert len(nb) in (k, k - 2)
        nb_table = exponent_table(nb)
        if len(nb) == k - 2:
            # free reduction removes one +1 and one -1 of the same index
            assert all(nb_table[key] <= table[key] for key in table)
        else:
            assert nb_table == table


@given(letters_st.filter(lambda ls: {i for i, _ in ls} >= {1, 2, 3}))
@settings(max_examples=150, deadline=None)
def test_inhomogeneity_bounds_and_invariance(letters):
    word = Braidword(4, tuple(letters))
    value = inhomogeneity(word)
    assert 0 <= value <= len(word) // 2
    rotated = Braidword(4, word.letters[1:] + word.letters[:1])
    assert inhomogeneity(rotated) == value


@given(st.integers(0, 2**31 - 1))
@settings(max_examples=30, deadline=None)
def test_minimize_never_exceeds_input(seed):
    rng = random.Random(seed)
    word = random_strict_braidword(rng, rng.randint(2, 4), rng.randint(3, 8))
    _best, value = minimize_inhomogeneity(word, budget=300)
    assert value <= inhomogeneity(word)


def test_json_round_trip():
    word = w(3, 1, -2, 1, -2)
    assert Braidword.from_json(word.to_json()) == word
