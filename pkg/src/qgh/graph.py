"""Undirected weighted graphs with positive integer edge weights."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class WeightedGraph:
    """Symmetric weighted graph; edges keyed as (u, v) with u < v, weights > 0.

    The container is generic: walk outputs live on a torus, but the
    evaluation harness also builds small arbitrary graphs with it.
    """

    n_nodes: int
    weights: dict[tuple[int, int], int]

    def __post_init__(self) -> None:
        if self.n_nodes < 1:
            raise ValueError("graph needs at least one node")
        for (u, v), w in self.weights.items():
            if not (0 <= u < v < self.n_nodes):
                raise ValueError(f"bad edge key ({u}, {v}); keys must satisfy 0 <= u < v < n_nodes")
            if not (isinstance(w, int) and w > 0):
                raise ValueError(f"edge ({u}, {v}) has non-positive or non-integer weight {w!r}")

    @property
    def total_weight(self) -> int:
        return sum(self.weights.values())

    def edge_items(self) -> list[tuple[tuple[int, int], int]]:
        """Edges sorted by (u, v); the canonical serialization order."""
        return sorted(self.weights.items())

    def degrees(self) -> list[int]:
        deg = [0] * self.n_nodes
        for (u, v), w in self.weights.items():
            deg[u] += w
            deg[v] += w
        return deg

    def canonical_key(self) -> tuple:
        """Hashable identity of the weighted edge multiset (plus node count)."""
        return (self.n_nodes, tuple(self.edge_items()))


def graph_to_json(graph: WeightedGraph) -> str:
    """Serialize a torus-walk graph as {"n": side, "edges": [{u, v, w}...]}.

    Edge order is fixed to (u, v) ascending so equal graphs serialize to
    identical bytes.
    """
    side = math.isqrt(graph.n_nodes)
    if side * side != graph.n_nodes:
        raise ValueError("JSON export is defined for n x n grid graphs only")
    edges = ", ".join(
        f'{{"u": {u}, "v": {v}, "w": {w}}}' for (u, v), w in graph.edge_items()
    )
    return f'{{"n": {side}, "edges": [{edges}]}}'


def graph_to_dot(graph: WeightedGraph) -> str:
    """Graphviz rendering with edge weights as labels."""
    lines = ["graph G {"]
    for node in range(graph.n_nodes):
        lines.append(f"  {node};")
    for (u, v), w in graph.edge_items():
        lines.append(f'  {u} -- {v} [label="{w}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
