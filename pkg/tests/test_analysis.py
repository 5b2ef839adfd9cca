from fractions import Fraction as F

import pytest

from hetcache import analysis as an
from hetcache.converse import (converse_counting_oracle, converse_xi_bound, counting_closed_form,
                               profile_minimum)
from hetcache.errors import InfeasibleProfile, InstanceTooLarge, RegimeMismatch
from oracles import delay_cacheless, delay_two_groups, inclusion_fraction


@pytest.mark.parametrize("args,value", [
    ((5, F(1, 5), 2), 4),
    ((7, F(1, 7), 10), 13),
    ((6, F(1, 3), 0), F(4, 3)),
])
def test_single_antenna_delay(args, value):
    assert an.delay_single_antenna(*args) == value


def test_single_stream_envelope():
    # t = 3/2 sits halfway between t=1 (3/2) and t=2 (2/3)
    assert an.single_stream_delay(4, F(3, 8)) == F(13, 12)
    assert an.single_stream_delay(4, F(1, 4)) < an.single_stream_delay(4, F(3, 16))


@pytest.mark.parametrize("args,value", [
    ((5, F(1, 5), 2, 2), 2),
    ((7, F(1, 7), 10, 2), F(13, 2)),
    ((5, F(1, 5), 4, 2), 3),
    ((7, F(1, 7), 10, 1), 13),
    ((5, F(1, 5), 1, 2), F(5, 3)),
    ((6, F(1, 3), 0, 2), 1),
])
def test_zero_cache_group_delay(args, value):
    assert an.delay_zero_cache_group(*args) == value == delay_cacheless(*args)


@pytest.mark.parametrize("args,value", [
    ((7, F(1, 7), 10, F(1, 10), 2), 4),
    ((5, F(2, 5), 4, F(1, 4), 3), 1),
    ((3, F(2, 3), 3, F(1, 3), 3), F(2, 3)),
])
def test_two_cache_groups_delay(args, value):
    assert an.delay_two_cache_groups(*args) == value == delay_two_groups(*args)


def test_two_groups_balanced_matches_equal_cache_system():
    for args in [(7, F(1, 7), 10, F(1, 10), 2), (5, F(2, 5), 4, F(1, 4), 3), (8, F(1, 2), 6, F(1, 3), 4)]:
        if an.single_stream_delay(args[0], args[1]) >= args[2] * (1 - args[3]) / (args[4] - 1 + args[2] * args[3]):
            assert an.delay_two_cache_groups(*args) == an.equivalent_delay(*args)


def test_dof():
    assert an.dof(2, 6) == 3
    assert an.dof(an.delay_zero_cache_group(4, F(1, 4), 0, 1), 3) == 2
    assert an.dof(5, 5) == 1
    with pytest.raises(ValueError):
        an.dof(0, 1)
    # balanced two-group regime: DoF = L + K1 g1 + K2 g2
    d = an.delay_two_cache_groups(5, F(2, 5), 4, F(1, 4), 3)
    assert an.dof(d, an.served_load(5, F(2, 5), 4, F(1, 4))) == 3 + 2 + 1
    # the residual regime falls short of that
    d = an.delay_two_cache_groups(7, F(1, 7), 10, F(1, 10), 2)
    assert an.dof(d, an.served_load(7, F(1, 7), 10, F(1, 10))) == F(15, 4) < 2 + 1 + 1


def test_lower_bound_and_gap():
    assert an.lower_bound(5, F(1, 5), 2, 1) == an.delay_single_antenna(5, F(1, 5), 2)
    assert an.lower_bound(5, F(1, 5), 2, 2) == 1
    assert an.gap_ratio(5, F(1, 5), 2, 2) == 2
    assert an.lower_bound(6, F(1, 3), 0, 2) == F(1, 2) * 4 / 4
    assert an.gap_ratio(5, F(1, 5), 1, 2) == F(5, 3) <= 3
    assert an.gap_limit(5, F(1, 5), 1, 2) == 3 and an.gap_limit(5, F(1, 5), 2, 2) == 2


def test_alpha_form():
    assert an.alpha_gap(1, 2) == 2
    assert an.alpha_gap(1000, 2) == F(1001, 1000)
    # K2 = alpha (L-1) T with K2 >= L: the ratio equals the alpha form
    for alpha, L in [(1, 2), (2, 2), (3, 3), (F(3, 2), 3)]:
        K2 = alpha * (L - 1) * 2
        assert an.gap_ratio(5, F(1, 5), int(K2), L) == an.alpha_gap(alpha, L)


def test_optimal_stream_allocation():
    assert an.optimal_stream_allocation(5, F(1, 5), 2, 2) == (1, 2)
    assert an.optimal_stream_allocation(5, F(1, 5), 4, 2) == (F(2, 3), 3)
    assert an.optimal_stream_allocation(5, F(1, 5), 4, 3) == (1, 2)
    assert an.optimal_stream_allocation(5, F(1, 5), 4, 2)[1] == an.delay_zero_cache_group(5, F(1, 5), 4, 2)
    with pytest.raises(RegimeMismatch):
        an.optimal_stream_allocation(5, F(1, 5), 2, 3)


@pytest.mark.parametrize("L_tilde", [2, 3, 4])
def test_multiplicative_boost(L_tilde):
    K2 = (L_tilde - 1) * 2
    for L in range(1, L_tilde + 1):
        assert an.delay_single_antenna(5, F(1, 5), K2) / an.delay_zero_cache_group(5, F(1, 5), K2, L) == L


def test_homogeneous_equivalent():
    assert an.homogeneous_equivalent(5, F(1, 5), 2, 0) == (7, F(1, 7))
    assert an.homogeneous_equivalent(5, F(2, 5), 4, F(1, 4)) == (9, F(1, 3))
    assert an.homogeneous_delay(9, F(1, 3), 3) == 1
    assert an.homogeneous_equivalent(4, F(1, 2), 6, F(1, 2))[1] == F(1, 2)


def test_small_regime_equals_equal_cache_system():
    assert an.delay_zero_cache_group(5, F(1, 5), 2, 2) == an.equivalent_delay(5, F(1, 5), 2, 0, 2) == 2


def test_extra_antenna_versus_unit_cache():
    # K2 = L*T: one more antenna and K2*gamma2 = 1 both add one to the DoF
    d1 = an.delay_zero_cache_group(7, F(3, 7), 4, 5)
    d2 = an.delay_two_cache_groups(7, F(3, 7), 4, F(1, 4), 4)
    assert an.dof(d1, 8) == an.dof(d2, 7) == 4 + 1 + 3


def test_more_cache_cuts_cacheless_penalty():
    for K1 in range(3, 13):
        for t in range(1, K1):
            if F(t, K1) >= F(1, 2):
                assert an.delay_zero_cache_group(K1, F(t, K1), 6, 3) <= 3


@pytest.mark.parametrize("K1,K2,N,i,value", [(2, 1, 3, 0, F(2, 3)), (2, 1, 3, 2, 0), (3, 1, 4, 1, F(1, 4))])
def test_counting_oracle_examples(K1, K2, N, i, value):
    assert converse_counting_oracle(K1, K2, N, i) == value == inclusion_fraction(K1, K2, N, i)
    assert counting_closed_form(K1, N, i) == value


def test_counting_oracle_limits():
    with pytest.raises(InstanceTooLarge):
        converse_counting_oracle(4, 2, 6, 0)


def test_xi_bound():
    assert converse_xi_bound([0, 4, 0, 0, 0], 4, 1, 4) == F(3, 2) + 1
    assert converse_xi_bound([0, 4, 0, 0, 0], 4, 1, 4, F(1, 4)) == F(5, 2)
    with pytest.raises(InfeasibleProfile):
        converse_xi_bound([F(4, 5)] * 5, 4, 1, 4, F(1, 4))
    with pytest.raises(InfeasibleProfile):
        converse_xi_bound([1, 1], 4, 1, 4)
    with pytest.raises(InfeasibleProfile):
        converse_xi_bound([5, -1, 0, 0, 0], 4, 1, 4)


def test_profile_minimum():
    value, x = profile_minimum(4, F(1, 4), 1, 4)
    assert value == F(5, 2) and x == [0, 4, 0, 0, 0]
    assert profile_minimum(4, F(3, 8), 0, 4)[0] == an.delay_single_antenna(4, F(3, 8), 0)
