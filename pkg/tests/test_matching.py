from fractions import Fraction

import pytest

from hetcache.core import SystemConfig
from hetcache.delivery import build_matching, is_valid_matching, matching_instance, verify_perfect_matching


def test_instance_sizes():
    inst = matching_instance(5, Fraction(1, 5))
    assert len(inst.left) == 10 * 4 and len(inst.right) == 5 * 4
    # each (tau, phi) node sees the K1 - t sets chi containing tau, times the multiplicity
    degrees = {}
    for u, v in inst.edges:
        degrees[v] = degrees.get(v, 0) + 1
    assert set(degrees.values()) == {4 * 4}


@pytest.mark.parametrize("K1,t,groups", [(5, 1, 1), (5, 2, 1), (6, 2, 2), (4, 1, 3), (7, 3, 1)])
def test_explicit_matching_is_perfect(K1, t, groups):
    g = Fraction(t, K1)
    inst = matching_instance(K1, g, groups=groups, multiplicity=(t + 1) * groups)
    m = build_matching((K1, g), groups)
    assert is_valid_matching(inst, m)
    assert all(set(tau) < set(chi) for (tau, _, _), (chi, _) in m.items())
    ok, found = verify_perfect_matching(inst)
    assert ok and is_valid_matching(inst, found)


def test_config_input():
    cfg = SystemConfig(5, Fraction(1, 5), 2, Fraction(0), 2)
    m = build_matching(cfg)
    assert m[((1,), 2, 0)] == ((1, 2), 1)


def test_invalid_matchings_rejected():
    inst = matching_instance(4, Fraction(1, 4))
    m = build_matching((4, Fraction(1, 4)))
    key = next(iter(m))
    clash = dict(m)
    clash[key] = m[next(k for k in m if k != key)]
    assert not is_valid_matching(inst, clash)
    off_edge = dict(m)
    tau = key[0]
    off_edge[key] = (next(c for c, _ in inst.left if not set(tau) <= set(c)), 0)
    assert not is_valid_matching(inst, off_edge)
    partial = dict(m)
    partial.pop(key)
    assert not is_valid_matching(inst, partial)


def test_too_few_copies_cannot_saturate():
    inst = matching_instance(4, Fraction(1, 4), multiplicity=1)
    ok, found = verify_perfect_matching(inst)
    assert not ok and len(found) == len(inst.left) < len(inst.right)


def test_removing_edges_breaks_saturation():
    inst = matching_instance(3, Fraction(1, 3), multiplicity=2)
    assert verify_perfect_matching(inst)[0]
    cut = inst.without(lambda u, v: v[0] == (1,))
    assert not verify_perfect_matching(cut)[0]
