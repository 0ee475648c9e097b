"""Kurosh rank of a subgroup read off its core.

The graph has one node per factor component of the core and one edge per
core vertex, joining that vertex's A-component to its B-component. The
Kurosh rank is the cycle rank of this graph plus the number of components
with a nontrivial stabilizer.
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import CoreComplex
from .groups import Subgroup


@dataclass(frozen=True)
class GammaGraph:
    nodes: tuple  # (tag, component id, nontrivial stabilizer)
    edges: tuple  # one (A-node, B-node) pair per core vertex, as node indices

    def connected_components(self):
        parent = list(range(len(self.nodes)))

        def find(k):
            while parent[k] != k:
                parent[k] = parent[parent[k]]
                k = parent[k]
            return k

        for u, v in self.edges:
            parent[find(u)] = find(v)
        return len({find(k) for k in range(len(self.nodes))})


@dataclass(frozen=True)
class KuroshData:
    graph_rank: int
    nontrivial_vertex_groups: tuple  # (tag, Subgroup)

    @property
    def krank(self):
        return self.graph_rank + len(self.nontrivial_vertex_groups)

    def summary(self):
        groups = ", ".join(f"{t}:order{len(S)}" for t, S in self.nontrivial_vertex_groups)
        return f"krank={self.krank}; graph_rank={self.graph_rank}; vertex_groups=[{groups}]"


def gamma_graph(C: CoreComplex) -> GammaGraph:
    nodes = []
    node_of = {}
    for t in ("A", "B"):
        for i, comp in enumerate(C.components[t]):
            node_of[(t, i)] = len(nodes)
            nodes.append((t, i, not comp.stabilizer.is_trivial))
    edges = tuple(
        (node_of[("A", C.component_of["A"][v])], node_of[("B", C.component_of["B"][v])])
        for v in range(C.vertex_count)
    )
    return GammaGraph(tuple(nodes), edges)


def kurosh_rank(C: CoreComplex) -> KuroshData:
    gamma = gamma_graph(C)
    if gamma.connected_components() != 1:
        raise AssertionError("component graph of a core must be connected")
    graph_rank = len(gamma.edges) - len(gamma.nodes) + 1
    groups = tuple(
        (t, C.components[t][i].stabilizer) for t, i, flag in gamma.nodes if flag
    )
    return KuroshData(graph_rank, groups)
