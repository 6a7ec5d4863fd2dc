#!/usr/bin/env python3
"""Trotter-step convergence study: CSV of (graph, n_steps, distance) rows.

For the 3-node reference graph and a few message-induced graphs, measures
the Frobenius distance between the exact evolution unitary and its
first-order product-formula approximation as the step count doubles.
"""

import argparse
import sys

from qgh.evolution import edge_split, exact_unitary, operator_distance, trotter_unitary
from qgh.graph import WeightedGraph
from qgh.harness import random_messages
from qgh.pipeline import build_graph
from qgh.spectral import eigendecompose, laplacian


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--t", type=float, default=1.0, help="evolution time (default 1)")
    parser.add_argument("--max-steps", type=int, default=64)
    parser.add_argument("--messages", type=int, default=5)
    parser.add_argument("--length", type=int, default=2, help="message length in bytes")
    parser.add_argument("--seed", type=int, default=55)
    args = parser.parse_args()

    graphs = {"reference3": WeightedGraph(3, {(0, 1): 1, (1, 2): 2})}
    for i, msg in enumerate(random_messages(args.messages, args.length, args.seed)):
        graphs[f"msg{i}_{msg.hex()}"] = build_graph(msg)

    print("graph,n_steps,distance")
    for name, graph in graphs.items():
        exact = exact_unitary(eigendecompose(laplacian(graph)), args.t)
        terms = edge_split(graph)
        n = 1
        while n <= args.max_steps:
            dist = operator_distance(exact, trotter_unitary(terms, args.t, n))
            print(f"{name},{n},{dist:.12e}")
            n *= 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
