"""Exploration of a cluster pattern from a root seed, with caps.

The atlas stores one representative per seed class, where two seeds are
identified when a simultaneous permutation of positions (applied to the
variables, the coefficients, and the rows and columns of B) carries one
to the other.  Variables are interned by their root expansion: two
cluster variables are the same element iff their expansions are
structurally equal Laurent polynomials.  Clusters are sorted tuples of
variable ids.

Exploration is breadth-first with a deterministic order: each level's
newly discovered classes are stored sorted by canonical seed key, so the
serialized atlas never depends on hashing or scheduling.  Caps bound the
store size and the search depth; hitting either leaves ``complete``
false, which downstream verification refuses rather than guessing.

Expansions of a variable with respect to an arbitrary stored cluster are
computed by re-rooting: start a fresh pattern whose root carries that
cluster's matrix and coefficients with unit-monomial variables, replay
the reversed discovery path back to the pattern root and onward to a
seed containing the target variable, and read off the variable there.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Mapping, Sequence

from .laurent import LaurentPoly
from .seed import Seed, mutate, mutate_path

Cluster = tuple[int, ...]


class IncompleteAtlasError(RuntimeError):
    """An operation that quantifies over all clusters got a capped atlas."""


@dataclass(frozen=True)
class ExploreCaps:
    max_seeds: int = 10000
    max_depth: int = 64

    def __post_init__(self) -> None:
        if self.max_seeds < 1 or self.max_depth < 0:
            raise ValueError("caps must be positive")


def _canonical_seed_key(seed: Seed) -> tuple:
    """Canonical form under simultaneous position permutation."""
    n = seed.n
    order = sorted(range(n), key=lambda i: seed.x[i].sort_key())
    xs = tuple(seed.x[i].sort_key() for i in order)
    ys = tuple(seed.y[i].exponents for i in order)
    bb = tuple(tuple(seed.b.rows[oi][oj] for oj in order) for oi in order)
    return (xs, ys, bb)


class PatternAtlas:
    """Deduplicated closure of mutation from a root seed.

    Public data: ``seeds`` (store order; index 0 is the root with an
    empty path), ``variables`` (interning table, id = index),
    ``seed_variable_ids`` (per seed, variable ids by position),
    ``clusters`` (discovery order), ``cluster_to_seed``, ``edges``
    (mapping (seed index, direction) to seed index), ``complete``.
    """

    def __init__(self, root: Seed, caps: ExploreCaps | None = None):
        self.caps = caps or ExploreCaps()
        root = Seed(root.b, root.y, root.x, path=())
        self.root = root
        self.n = root.n
        self.m = root.m
        self.coefficients = _classify_coefficients(root)
        self.seeds: list[Seed] = []
        self.variables: list[LaurentPoly] = []
        self.first_seed_of_variable: list[int] = []
        self._var_ids: dict[LaurentPoly, int] = {}
        self.seed_variable_ids: list[Cluster] = []
        self.clusters: list[Cluster] = []
        self.cluster_to_seed: dict[Cluster, int] = {}
        self.edges: dict[tuple[int, int], int] = {}
        self._seed_keys: dict[tuple, int] = {}
        self._expand_cache: dict[tuple[int, int], LaurentPoly] = {}
        self._ireach_cache: dict[frozenset, dict[Cluster, Seed]] = {}
        self.derived: dict = {}
        self._store_seed(root, _canonical_seed_key(root))
        self.complete = self._explore()

    # ------------------------------------------------------------------
    # construction

    def _store_seed(self, seed: Seed, key: tuple) -> int:
        sid = len(self.seeds)
        self.seeds.append(seed)
        self._seed_keys[key] = sid
        ids = []
        for p in seed.x:
            vid = self._var_ids.get(p)
            if vid is None:
                vid = len(self.variables)
                self.variables.append(p)
                self._var_ids[p] = vid
                self.first_seed_of_variable.append(sid)
            ids.append(vid)
        self.seed_variable_ids.append(tuple(ids))
        cluster = tuple(sorted(ids))
        if cluster not in self.cluster_to_seed:
            self.clusters.append(cluster)
            self.cluster_to_seed[cluster] = sid
        return sid

    def _explore(self) -> bool:
        n = self.n
        truncated = False
        level = [0]
        while level:
            candidates: list[tuple[tuple, Seed, int, int]] = []
            for sid in level:
                seed = self.seeds[sid]
                for k in range(1, n + 1):
                    child = mutate(seed, k)
                    key = _canonical_seed_key(child)
                    target = self._seed_keys.get(key)
                    if target is not None:
                        self.edges[(sid, k)] = target
                    else:
                        candidates.append((key, child, sid, k))
            if not candidates:
                break
            depth = len(self.seeds[level[0]].path) + 1
            next_level: list[int] = []
            if depth <= self.caps.max_depth:
                for key, child, sid, k in sorted(candidates, key=lambda c: c[0]):
                    if key in self._seed_keys:
                        continue
                    if len(self.seeds) >= self.caps.max_seeds:
                        truncated = True
                        break
                    next_level.append(self._store_seed(child, key))
            else:
                truncated = True
            for key, child, sid, k in candidates:
                target = self._seed_keys.get(key)
                if target is not None:
                    self.edges[(sid, k)] = target
                else:
                    truncated = True
            if truncated and len(self.seeds) >= self.caps.max_seeds:
                break
            level = next_level
        return not truncated

    # ------------------------------------------------------------------
    # lookups

    def variable_id(self, p: LaurentPoly) -> int | None:
        """Id of a variable given by its root expansion, or None."""
        return self._var_ids.get(p)

    def expansion(self, v: int) -> LaurentPoly:
        return self.variables[v]

    def clusters_containing(self, v: int) -> list[Cluster]:
        """Clusters through a variable, in atlas discovery order."""
        self.require_variable(v)
        return [c for c in self.clusters if v in c]

    def require_variable(self, v: int) -> None:
        if not 0 <= v < len(self.variables):
            raise KeyError(f"variable id {v} is not in the atlas")

    def normalize_cluster(self, cluster: Iterable[int]) -> Cluster:
        c = tuple(sorted(cluster))
        if c not in self.cluster_to_seed:
            raise KeyError(f"cluster {c} is not in the atlas")
        return c

    # ------------------------------------------------------------------
    # expansions by re-rooting

    def expand(self, v: int, cluster: Iterable[int]) -> LaurentPoly:
        """Laurent expansion of variable v in the coordinates of a stored
        cluster, ordered by ascending variable id."""
        self.require_variable(v)
        c = self.normalize_cluster(cluster)
        sid = self.cluster_to_seed[c]
        poly = self._expand_at_seed(sid, v)
        ids = self.seed_variable_ids[sid]
        order = sorted(range(self.n), key=lambda i: ids[i])
        return poly.permute_x(order)

    def _expand_at_seed(self, sid: int, v: int) -> LaurentPoly:
        """Expansion of v in the coordinate order of stored seed sid."""
        cached = self._expand_cache.get((sid, v))
        if cached is not None:
            return cached
        ids = self.seed_variable_ids[sid]
        if v in ids:
            result = LaurentPoly.variable(self.n, self.m, ids.index(v) + 1)
        else:
            seed = self.seeds[sid]
            tid = self.first_seed_of_variable[v]
            path = tuple(reversed(seed.path)) + self.seeds[tid].path
            fresh = Seed(
                seed.b,
                seed.y,
                [LaurentPoly.variable(self.n, self.m, i) for i in range(1, self.n + 1)],
            )
            landed = mutate_path(fresh, path)
            result = landed.x[self.seed_variable_ids[tid].index(v)]
        self._expand_cache[(sid, v)] = result
        return result

    # ------------------------------------------------------------------
    # restricted-direction reachability over exact (ordered) seeds

    def i_reachable(self, subset: Iterable[int]) -> dict[Cluster, Seed]:
        """Clusters reachable from the root seed by mutations confined to
        the given directions, each mapped to the first exact seed (with
        positions intact) realizing it.

        The walk runs over exact seeds, not permutation classes, because
        direction labels are positional.  On a complete atlas the walk
        is exhaustive; on an incomplete one it is confined to stored
        variables and capped, so a negative answer is only "not found
        within caps".
        """
        key = frozenset(subset)
        if any(not 1 <= i <= self.n for i in key):
            raise ValueError(f"directions {sorted(key)} out of range 1..{self.n}")
        cached = self._ireach_cache.get(key)
        if cached is not None:
            return cached
        if self.complete:
            bound = 10 * factorial(self.n) * len(self.seeds) + 10
        else:
            bound = self.caps.max_seeds
        root = self.seeds[0]
        seen = {root.sort_key()}
        out: dict[Cluster, Seed] = {
            tuple(sorted(self.seed_variable_ids[0])): root
        }
        frontier = [root]
        directions = sorted(key)
        while frontier:
            nxt = []
            for seed in frontier:
                for k in directions:
                    child = mutate(seed, k)
                    ck = child.sort_key()
                    if ck in seen:
                        continue
                    ids = [self._var_ids.get(p) for p in child.x]
                    if any(i is None for i in ids):
                        if self.complete:
                            raise RuntimeError(
                                "restricted walk left the variable table of a "
                                "complete atlas; exploration is broken"
                            )
                        continue
                    seen.add(ck)
                    if len(seen) > bound:
                        if self.complete:
                            raise RuntimeError(
                                "restricted walk exceeded its bound on a "
                                "complete atlas; exploration is broken"
                            )
                        self._ireach_cache[key] = out
                        return out
                    cluster = tuple(sorted(ids))
                    if cluster not in out:
                        out[cluster] = child
                    nxt.append(child)
            frontier = nxt
        self._ireach_cache[key] = out
        return out

    # ------------------------------------------------------------------
    # exchange graph

    def exchange_graph(self) -> "ExchangeGraph":
        if not self.complete:
            warnings.warn(
                "exchange graph of an incomplete atlas may be a proper subgraph",
                stacklevel=2,
            )
        vertices = tuple(sorted(self.clusters))
        n = self.n
        edges = []
        for i, a in enumerate(vertices):
            sa = set(a)
            for b in vertices[i + 1:]:
                if len(sa.intersection(b)) == n - 1:
                    edges.append((a, b))
        return ExchangeGraph(self, vertices, tuple(edges))

    # ------------------------------------------------------------------
    # export

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "coefficients": self.coefficients,
            "complete": self.complete,
            "caps": {
                "max_seeds": self.caps.max_seeds,
                "max_depth": self.caps.max_depth,
            },
            "root_b": [list(row) for row in self.root.b.rows],
            "variables": [str(p) for p in self.variables],
            "clusters": [list(c) for c in self.clusters],
            "seeds": [
                {
                    "path": list(s.path),
                    "b": [list(row) for row in s.b.rows],
                    "y": [list(t.exponents) for t in s.y],
                    "variables": list(self.seed_variable_ids[i]),
                }
                for i, s in enumerate(self.seeds)
            ],
            "edges": sorted(
                [sid, k, tid] for (sid, k), tid in self.edges.items()
            ),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"


def _classify_coefficients(root: Seed) -> str:
    if root.m == 0:
        return "trivial"
    n = root.n
    if root.m == n and all(
        root.y[i].exponents == tuple(int(j == i) for j in range(n))
        for i in range(n)
    ):
        return "principal"
    return "custom"


def explore(root: Seed, caps: ExploreCaps | None = None) -> PatternAtlas:
    """Breadth-first mutation closure from a root seed; see PatternAtlas."""
    return PatternAtlas(root, caps)


def _format_cluster(c: Cluster) -> str:
    return "{" + ",".join(str(v) for v in c) + "}"


@dataclass(frozen=True)
class ExchangeGraph:
    """Graph on clusters, an edge joining clusters sharing n-1 variables.

    ``table`` identifies the interning table whose variable ids label
    the vertices; graphs over different tables cannot be compared until
    one is relabeled.
    """

    table: object
    vertices: tuple[Cluster, ...]
    edges: tuple[tuple[Cluster, Cluster], ...]

    def relabeled(self, mapping: Mapping[int, int], table: object) -> "ExchangeGraph":
        """Apply a variable-id mapping to every label, re-sorting."""

        def conv(c: Cluster) -> Cluster:
            return tuple(sorted(mapping[v] for v in c))

        vertices = tuple(sorted(conv(c) for c in self.vertices))
        edges = tuple(sorted(tuple(sorted((conv(a), conv(b)))) for a, b in self.edges))
        return ExchangeGraph(table, vertices, edges)

    def degrees(self) -> dict[Cluster, int]:
        out = {c: 0 for c in self.vertices}
        for a, b in self.edges:
            out[a] += 1
            out[b] += 1
        return out

    def to_dot(self) -> str:
        names = {c: f"c{i}" for i, c in enumerate(self.vertices)}
        lines = ["graph exchange {"]
        for c in self.vertices:
            lines.append(f'  {names[c]} [label="{_format_cluster(c)}"];')
        for a, b in self.edges:
            lines.append(f"  {names[a]} -- {names[b]};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        lines = [
            f"vertices: {len(self.vertices)}",
            f"edges: {len(self.edges)}",
        ]
        lines.extend(
            f"{_format_cluster(a)} -- {_format_cluster(b)}" for a, b in self.edges
        )
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class GraphComparison:
    equal: bool
    detail: str

    def __bool__(self) -> bool:
        return self.equal


def graphs_equal(g1: ExchangeGraph, g2: ExchangeGraph) -> GraphComparison:
    """Equality as labeled graphs; reports the first differing vertex or edge.

    Raises ValueError when the graphs label vertices from different
    interning tables, since id equality would then be meaningless.
    """
    if g1.table is not g2.table:
        raise ValueError(
            "graphs label clusters from different variable tables; relabel first"
        )
    v1, v2 = set(g1.vertices), set(g2.vertices)
    if v1 != v2:
        only1 = sorted(v1 - v2)
        only2 = sorted(v2 - v1)
        if only1:
            return GraphComparison(
                False, f"vertex {_format_cluster(only1[0])} only in first graph"
            )
        return GraphComparison(
            False, f"vertex {_format_cluster(only2[0])} only in second graph"
        )
    e1, e2 = set(g1.edges), set(g2.edges)
    if e1 != e2:
        only1 = sorted(e1 - e2)
        only2 = sorted(e2 - e1)
        if only1:
            a, b = only1[0]
            return GraphComparison(
                False,
                f"edge {_format_cluster(a)} -- {_format_cluster(b)} only in first graph",
            )
        a, b = only2[0]
        return GraphComparison(
            False,
            f"edge {_format_cluster(a)} -- {_format_cluster(b)} only in second graph",
        )
    return GraphComparison(True, "")
