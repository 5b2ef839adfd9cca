from fractions import Fraction
from math import comb

import pytest

from hetcache.core import SubfileId, SystemConfig
from hetcache.errors import InvalidConfig, InvalidStreamSplit, NonIntegerRedundancy
from hetcache.placement import (place_cacheless, place_cacheless_copies, place_homogeneous, place_twotype,
                                place_twotype_copies)

A = SystemConfig(5, Fraction(1, 5), 2, Fraction(0), 2)
B = SystemConfig(5, Fraction(2, 5), 4, Fraction(1, 4), 3)


def test_cacheless_subpacketization():
    pl = place_cacheless(A)
    assert pl.copies == 4 and pl.num_classes == 5 and pl.S == 20
    assert pl.labels((1,)) == [(2, None), (3, None), (4, None), (5, None)]


def test_cacheless_caches():
    pl = place_cacheless(A)
    assert pl.cached_fraction(1) == Fraction(1, 5)
    assert pl.cached_fraction(6) == 0
    assert len(pl.cache(6)) == 0
    sid = SubfileId(3, (1,), (), 2)
    assert sid in pl.cache(1)
    assert sid not in pl.cache(2)
    assert SubfileId(3, (1,), (), 1) not in pl.cache(1)   # label 1 is not a copy of class {1}


def test_cache_view_iterates_what_it_contains():
    pl = place_cacheless(A)
    items = list(pl.cache(2))
    assert len(items) == len(pl.cache(2)) == 7 * 4
    assert all(s in pl.cache(2) for s in items)


def test_twotype_example_subpacketization():
    pl = place_twotype(B, 1, 2)
    # C(5,2) * C(4,1) classes, (t1+L1) x (K2-t2) copies each
    assert pl.num_classes == 40 and pl.copies == 9 and pl.S == 360


def test_twotype_cache_fractions_match_gamma():
    pl = place_twotype(B, 1, 2)
    assert pl.cached_fraction(1) == Fraction(2, 5)
    assert pl.cached_fraction(7) == Fraction(1, 4)


def test_equal_gammas_rejected_before_placement():
    with pytest.raises(InvalidConfig):
        SystemConfig(4, Fraction(1, 4), 4, Fraction(1, 4), 2)


def test_twotype_split_validation():
    with pytest.raises(InvalidStreamSplit):
        place_twotype(B, 2, 2)
    with pytest.raises(InvalidStreamSplit):
        place_twotype(B, Fraction(1, 2), Fraction(5, 2))
    with pytest.raises(InvalidStreamSplit):
        place_twotype(B, Fraction(3, 2), Fraction(3, 2))   # one round of a half split is not whole


def test_non_integer_placement():
    with pytest.raises(NonIntegerRedundancy):
        place_cacheless(SystemConfig(5, Fraction(1, 3), 1))


def test_homogeneous_placement():
    pl = place_homogeneous(7, Fraction(1, 7), 2)
    assert pl.S == 7 * 3
    assert pl.cached_fraction(4) == Fraction(1, 7)


@pytest.mark.parametrize("K1,t1,K2,t2", [(6, 2, 4, 1), (5, 3, 3, 0), (4, 2, 5, 1)])
def test_brute_force_cache_fraction(K1, t1, K2, t2):
    cfg = SystemConfig(K1, Fraction(t1, K1), K2, Fraction(t2, K2), 2)
    pl = place_twotype_copies(cfg, 2, 3) if t2 else place_cacheless_copies(cfg, 3)
    universe = list(pl.universe(1))
    assert len(universe) == pl.S == comb(K1, t1) * comb(K2, t2) * pl.copies
    for u in pl.users():
        held = sum(1 for s in universe if s in pl.cache(u))
        assert Fraction(held, pl.S) == (Fraction(t1, K1) if u <= K1 else Fraction(t2, K2))
