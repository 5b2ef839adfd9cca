"""XOR-to-index matching for the cache-less scheme.

Left nodes are copies of each XOR set chi (|chi| = t+1), right nodes are cache-less
demands (tau, phi, group) with phi outside tau; chi and (tau, ...) are adjacent iff
tau is a subset of chi. The explicit rule sends (tau, phi, g) to chi = tau + {phi}.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx
from networkx.algorithms import bipartite

from ..core import SystemConfig, as_fraction, enumerate_subsets
from ..placement import _integer


@dataclass(frozen=True)
class MatchingInstance:
    left: tuple
    right: tuple
    edges: frozenset = field(repr=False)

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(("L",) + n for n in self.left)
        g.add_nodes_from(("R",) + n for n in self.right)
        g.add_edges_from((("L",) + u, ("R",) + v) for u, v in self.edges)
        return g

    def left_degrees(self) -> dict:
        deg = {u: 0 for u in self.left}
        for u, _ in self.edges:
            deg[u] += 1
        return deg

    def without(self, predicate) -> "MatchingInstance":
        """Copy with every edge (u, v) satisfying predicate(u, v) removed."""
        return MatchingInstance(self.left, self.right, frozenset(e for e in self.edges if not predicate(*e)))


def matching_instance(K1: int, gamma1, groups: int = 1, multiplicity: int | None = None) -> MatchingInstance:
    """Left: (chi, copy) for copy < multiplicity (default K1(1-gamma1)); right: (tau, phi, g)."""
    t = _integer(K1 * as_fraction(gamma1), "K1*gamma1")
    users = range(1, K1 + 1)
    mult = K1 - t if multiplicity is None else multiplicity
    chis = enumerate_subsets(users, t + 1)
    taus = enumerate_subsets(users, t)
    left = tuple((chi, c) for chi in chis for c in range(mult))
    right = tuple((tau, phi, g) for tau in taus for phi in users if phi not in tau for g in range(groups))
    supersets = {tau: [tuple(sorted(tau + (x,))) for x in users if x not in tau] for tau in taus}
    edges = frozenset(((chi, c), v) for v in right for chi in supersets[v[0]] for c in range(mult))
    return MatchingInstance(left, right, edges)


def build_matching(config: SystemConfig | tuple, groups: int = 1) -> dict:
    """Explicit assignment (tau, phi, g) -> (chi, copy) with chi = tau + {phi}.

    The copy index is rank(phi in chi) * groups + g, so a chi uses (t+1)*groups copies.
    """
    if isinstance(config, SystemConfig):
        K1, gamma1 = config.K1, config.gamma1
    else:
        K1, gamma1 = config
    t = _integer(K1 * as_fraction(gamma1), "K1*gamma1")
    out = {}
    for tau in enumerate_subsets(range(1, K1 + 1), t):
        for phi in range(1, K1 + 1):
            if phi in tau:
                continue
            chi = tuple(sorted(tau + (phi,)))
            for g in range(groups):
                out[(tau, phi, g)] = (chi, chi.index(phi) * groups + g)
    return out


def is_valid_matching(instance: MatchingInstance, matching: dict) -> bool:
    """Every right node matched, along an existing edge, to a distinct left node."""
    if set(matching) != set(instance.right):
        return False
    used = list(matching.values())
    if len(set(used)) != len(used):
        return False
    return all((matching[v], v) in instance.edges for v in instance.right)


def verify_perfect_matching(instance: MatchingInstance) -> tuple[bool, dict]:
    """Maximum matching by Hopcroft-Karp; True iff every right node is covered."""
    g = instance.graph()
    top = [("L",) + n for n in instance.left]
    mate = bipartite.hopcroft_karp_matching(g, top_nodes=top)
    matching = {v[1:]: mate[v][1:] for v in (("R",) + n for n in instance.right) if v in mate}
    return len(matching) == len(instance.right), matching
