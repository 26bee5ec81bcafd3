#!/usr/bin/env python3
"""Writes a seeded road-like DIMACS graph: a jittered grid with some streets
removed and a few diagonals added. Weights are rounded Euclidean lengths."""

import argparse
import math
import random


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out")
    ap.add_argument("--rows", type=int, default=40)
    ap.add_argument("--cols", type=int, default=50)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    rows, cols = args.rows, args.cols
    pos = [(c * 100 + rng.uniform(-30, 30), r * 100 + rng.uniform(-30, 30)) for r in range(rows) for c in range(cols)]

    def vid(r, c):
        return r * cols + c

    candidates = []
    for r in range(rows):
        for c in range(cols):
            if c + 1 < cols:
                candidates.append((vid(r, c), vid(r, c + 1)))
            if r + 1 < rows:
                candidates.append((vid(r, c), vid(r + 1, c)))
            if r + 1 < rows and c + 1 < cols and rng.random() < 0.05:
                candidates.append((vid(r, c), vid(r + 1, c + 1)))
    rng.shuffle(candidates)

    # Random spanning forest first (union-find), then keep 75% of the rest.
    parent = list(range(rows * cols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    kept = []
    for u, v in candidates:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            kept.append((u, v))
        elif rng.random() < 0.75:
            kept.append((u, v))
    kept.sort()

    with open(args.out, "w") as f:
        f.write(f"c road-like demo graph, {rows}x{cols} jittered grid, seed {args.seed}\n")
        f.write(f"p sp {rows * cols} {2 * len(kept)}\n")
        for u, v in kept:
            w = max(1, round(math.dist(pos[u], pos[v]) * rng.uniform(1.0, 1.6)))
            f.write(f"a {u + 1} {v + 1} {w}\n")
            f.write(f"a {v + 1} {u + 1} {w}\n")


if __name__ == "__main__":
    main()
