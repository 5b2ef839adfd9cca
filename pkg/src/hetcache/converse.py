"""Numerical checks of the single-antenna converse.

For an ordering sigma of the cache-aided users and a demand vector d, the acyclic set
collects, for the j-th user in sigma, every piece of its file whose index avoids the
first j users. Averaging how often one fixed piece W^n_T lands in that set over all
orderings and distinct demands gives (K1-i)/((i+1)N) with i = |T|.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import factorial, floor, perm
from typing import Sequence

from .core import as_fraction
from .errors import InfeasibleProfile, InstanceTooLarge, InvalidConfig

MAX_USERS = 5
MAX_FILES = 5


def _in_acyclic_set(order: Sequence[int], demand: Sequence[int], n: int, T: frozenset) -> bool:
    seen: set = set()
    for k in order:
        seen.add(k)
        if demand[k] == n and not (T & seen):
            return True
    return False


def converse_counting_oracle(K1: int, K2: int, N: int, i: int) -> Fraction:
    """Brute-force average inclusion of W^1_{1..i} over orderings and distinct demand vectors."""
    K = K1 + K2
    if K > MAX_USERS or N > MAX_FILES:
        raise InstanceTooLarge(f"brute force limited to K <= {MAX_USERS}, N <= {MAX_FILES}")
    if K1 < 1 or K2 < 0 or N < K:
        raise InvalidConfig("need K1 >= 1, K2 >= 0 and N >= K1 + K2")
    if not 0 <= i <= K1:
        raise InvalidConfig(f"i={i} outside [0, {K1}]")
    T = frozenset(range(i))
    hits = 0
    for demand in permutations(range(1, N + 1), K):
        for order in permutations(range(K1)):
            hits += _in_acyclic_set(order, demand, 1, T)
    return Fraction(hits, factorial(K1) * perm(N, K))


def counting_closed_form(K1: int, N: int, i: int) -> Fraction:
    return Fraction(K1 - i, (i + 1) * N)


def converse_xi_bound(x: Sequence, K1: int, K2: int, N: int, gamma1=None) -> Fraction:
    """Bound for a placement profile: x[i] files' worth of pieces cached by exactly i users.

    With gamma1 given the profile must also respect the cache budget sum(i*x_i) <= K1*gamma1*N.
    """
    x = [as_fraction(v) for v in x]
    if len(x) != K1 + 1:
        raise InfeasibleProfile(f"profile needs {K1 + 1} entries, got {len(x)}")
    if any(v < 0 for v in x) or sum(x) != N:
        raise InfeasibleProfile("profile must be non-negative and sum to N")
    if gamma1 is not None and sum(i * v for i, v in enumerate(x)) > K1 * as_fraction(gamma1) * N:
        raise InfeasibleProfile("profile exceeds the cache budget")
    return sum((v * counting_closed_form(K1, N, i) for i, v in enumerate(x)), Fraction(0)) + K2


def profile_minimum(K1: int, gamma1, K2: int, N: int) -> tuple[Fraction, list[Fraction]]:
    """Smallest bound over one- and two-point profiles that meet the cache budget."""
    t = K1 * as_fraction(gamma1)
    best = None
    for i in range(floor(t) + 1):
        for j in range(i, K1 + 1):
            if j == i:
                weights = {i: Fraction(1)}
            elif j >= t:
                w = (t - i) / (j - i)
                weights = {i: 1 - w, j: w}
            else:
                continue
            x = [weights.get(k, Fraction(0)) * N for k in range(K1 + 1)]
            value = converse_xi_bound(x, K1, K2, N, gamma1)
            if best is None or value < best[0]:
                best = (value, x)
    return best
