#!/usr/bin/env python3
"""Sample random skew-symmetrizable matrices and walk the mutation graph.

Each walk starts at a principal coefficient root and mutates in random
directions, checking after every step that each cluster variable is a
Laurent polynomial in the root cluster with positive coefficients.
Walks that blow past the term cap stop early and are counted as
truncated; every variable produced, including the oversized ones, is
still checked.
"""

from __future__ import annotations

import argparse
import random
from dataclasses import dataclass

from clusteralg import mutate, random_exchange_matrix, root_seed


@dataclass
class WalkConfig:
    walks: int = 50
    length: int = 12
    max_rank: int = 3
    max_sym: int = 2
    term_cap: int = 400
    rng_seed: int = 0


def run(config: WalkConfig, verbose: bool = False) -> dict[str, int]:
    rng = random.Random(config.rng_seed)
    stats = {"walks": 0, "truncated": 0, "steps": 0, "variables": 0, "max_terms": 0}
    for index in range(config.walks):
        n = rng.randint(2, config.max_rank)
        matrix = random_exchange_matrix(rng, n, max_sym=config.max_sym)
        seed = root_seed(matrix, "principal")
        steps = 0
        for _ in range(config.length):
            seed = mutate(seed, rng.randint(1, n))
            biggest = max(len(p.terms) for p in seed.x)
            stats["max_terms"] = max(stats["max_terms"], biggest)
            steps += 1
            for poly in seed.x:
                assert all(c > 0 for c in poly.terms.values()), (
                    f"negative coefficient, matrix {matrix.rows}, path {seed.path}"
                )
                stats["variables"] += 1
            if biggest > config.term_cap:
                stats["truncated"] += 1
                break
        stats["walks"] += 1
        stats["steps"] += steps
        if verbose:
            print(f"walk {index}: rank {n}, steps {steps}, matrix {matrix.rows}")
    return stats


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--walks", type=int, default=50)
    parser.add_argument("--length", type=int, default=12)
    parser.add_argument("--max-rank", type=int, default=3)
    parser.add_argument("--max-sym", type=int, default=2)
    parser.add_argument("--term-cap", type=int, default=400)
    parser.add_argument("--rng-seed", type=int, default=0)
    parser.add_argument("--verbose", action="store_true")
    args = parser.parse_args(argv)
    config = WalkConfig(
        walks=args.walks,
        length=args.length,
        max_rank=args.max_rank,
        max_sym=args.max_sym,
        term_cap=args.term_cap,
        rng_seed=args.rng_seed,
    )
    stats = run(config, verbose=args.verbose)
    print(
        f"walks: {stats['walks']}, truncated: {stats['truncated']}, "
        f"steps: {stats['steps']}, variables checked: {stats['variables']}, "
        f"largest expansion: {stats['max_terms']} terms"
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
