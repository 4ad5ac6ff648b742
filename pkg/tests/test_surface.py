import itertools
import random

import pytest

from morsenov.braid import Braidword, NonStrictWordError, is_strict, random_strict_braidword
from morsenov.laurent import LaurentPoly, ONE, ZERO
from morsenov.surface import (
    OracleMismatchError,
    alexander_cross_checked,
    alexander_from_seifert,
    alexander_via_burau,
    boundary_components,
    seifert_from_braid,
    seifert_matrix_from_braid,
    SeifertMatrix,
)


def w(strands, *ints):
    return Braidword.from_ints(strands, list(ints))


TREFOIL = w(2, 1, 1, 1)
FIG8 = w(3, 1, -2, 1, -2)
HOPF = w(2, 1, 1)

TREFOIL_DELTA = LaurentPoly.from_dict({0: 1, 1: -1, 2: 1})
FIG8_DELTA = LaurentPoly.from_dict({0: 1, 1: -3, 2: 1})
HOPF_DELTA = LaurentPoly.from_dict({0: 1, 1: -1})


def test_handle_decomposition_counts():
    hd = seifert_from_braid(TREFOIL)
    assert hd.disks == 2 and len(hd.bands) == 3 and hd.chi == -1
    empty = seifert_from_braid(Braidword(2, ()))
    assert empty.disks == 2 and empty.chi == 2
    hd3 = seifert_from_braid(FIG8)
    assert hd3.disks == 3 and len(hd3.bands) == 4 and hd3.chi == -1


def test_boundary_components():
    # (12)^3 = (12): one cycle; (12)^2 = id: two cycles
    assert boundary_components(seifert_from_braid(TREFOIL)) == 1
    assert boundary_components(seifert_from_braid(HOPF)) == 2
    assert boundary_components(seifert_from_braid(Braidword(2, ()))) == 2


def test_trefoil_matrix_pinned():
    v = seifert_matrix_from_braid(TREFOIL)
    assert v.entries == ((-1, 1), (0, -1))
    assert v.chi == -1 and v.h1 == 2 and v.boundary_components == 1
    # chi = 2 - 2g - b with b = 1 gives genus 1
    assert (2 - v.chi - v.boundary_components) // 2 == 1


def test_hopf_matrix():
    v = seifert_matrix_from_braid(HOPF)
    assert v.entries == ((-1,),)
    assert alexander_from_seifert(v) == HOPF_DELTA


def test_fig8_delta():
    v = seifert_matrix_from_braid(FIG8)
    assert v.h1 == 2
    assert alexander_from_seifert(v) == FIG8_DELTA


def test_matrix_rejects_non_strict():
    with pytest.raises(NonStrictWordError):
        seifert_matrix_from_braid(w(3, 1, 1))


def test_alexander_from_seifert_edge_cases():
    annulus0 = SeifertMatrix.from_rows([[0]], chi=0, boundary_components=2)
    assert alexander_from_seifert(annulus0) == ZERO
    capped = SeifertMatrix.from_rows([[5, 1], [0, 0]], chi=-1)
    assert alexander_from_seifert(capped) == ONE
    disk = SeifertMatrix.from_rows([], chi=1, boundary_components=1)
    assert alexander_from_seifert(disk) == ONE


def test_burau_route_values():
    assert alexander_via_burau(w(2, 1)) == ONE
    assert alexander_via_burau(TREFOIL) == TREFOIL_DELTA
    assert alexander_via_burau(FIG8) == FIG8_DELTA


def test_burau_rejects_non_strict():
    with pytest.raises(NonStrictWordError):
        alexander_via_burau(w(3, 1, 1))


def test_cross_check_agrees_on_named_knots():
    for word in (TREFOIL, FIG8, HOPF, w(2, 1)):
        assert alexander_cross_checked(word) == alexander_via_burau(word)


def test_cross_check_exhaustive_small():
    # quick subset; the full exhaustive sweep lives in the acceptance suite
    for n, maxlen in ((2, 4), (3, 3)):
        gens = [(i, s) for i in range(1, n) for s in (-1, 1)]
        for k in range(1, maxlen + 1):
            for letters in itertools.product(gens, repeat=k):
                word = Braidword(n, letters)
                if is_strict(word):
                    alexander_cross_checked(word)


def test_h1_matches_chi_on_random_words():
    rng = random.Random(4)
    for _ in range(50):
        n = rng.randint(2, 4)
        word = random_strict_braidword(rng, n, rng.randint(n - 1, 10))
        v = seifert_matrix_from_braid(word)
        assert v.h1 == len(word) - n + 1 == 1 - v.chi


def test_mirror_reverses_alexander():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(2, 4)
        word = random_strict_braidword(rng, n, rng.randint(n - 1, 9))
        mirror = Braidword(n, tuple((i, -s) for i, s in word.letters))
        assert alexander_via_burau(mirror) == alexander_via_burau(word).reverse().normalize()


def test_one_strand_word_is_unknot():
    trivial = Braidword(1, ())
    v = seifert_matrix_from_braid(trivial)
    assert v.h1 == 0
    assert alexander_from_seifert(v) == ONE
    assert alexander_via_burau(trivial) == ONE
