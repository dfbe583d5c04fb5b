"""g-vectors, G-matrices, and g-pairs for principal-coefficient atlases.

With principal coefficients at the root, every cluster variable is
homogeneous for the Z^n grading in which deg(x_i) = e_i and deg(y_j) is
minus the j-th column of the root matrix.  The g-vector of a variable is
the common degree of the terms of its root expansion; it is computed
from homogeneity directly, which doubles as an assertion that the
expansion really is homogeneous.

A g-pair check along a direction subset I asks, for every variable of a
cluster t, whether some monomial on an I-connected cluster t' supported
on I has the same projection to the I coordinates of the grading.  The
off-I columns of t's G-matrix are unit vectors for I-connected clusters
(asserted at runtime), so the projected system reduces to the I x I
block, which is invertible over the integers; the candidate exponent
vector is therefore unique and only needs integrality and nonnegativity
checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .atlas import Cluster, PatternAtlas
from .laurent import GradedDegree, LaurentPoly


class NotPrincipalError(ValueError):
    """The operation needs an atlas explored with principal coefficients."""


class GPairNotFoundError(RuntimeError):
    """No g-pair partner exists in the atlas; on a complete atlas this is
    a verification failure, not a search miss."""


def _require_principal(atlas: PatternAtlas) -> None:
    if atlas.coefficients != "principal":
        raise NotPrincipalError(
            f"atlas has {atlas.coefficients} coefficients; principal required"
        )


def g_vector(v: int, atlas: PatternAtlas) -> GradedDegree:
    """Graded degree of a variable's root expansion."""
    _require_principal(atlas)
    cache = atlas.derived.setdefault("g_vectors", {})
    got = cache.get(v)
    if got is None:
        got = atlas.expansion(v).homogeneous_degree(atlas.root.b.rows)
        cache[v] = got
    return got


def _det(rows: Sequence[Sequence[int]]) -> int:
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * _det(minor)
    return total


@dataclass(frozen=True)
class GMatrix:
    """Columns are the g-vectors of a cluster's variables, ascending id."""

    cluster: Cluster
    columns: tuple[GradedDegree, ...]

    def det(self) -> int:
        n = len(self.columns)
        return _det([[self.columns[j][i] for j in range(n)] for i in range(n)])

    def multiply(self, a: Sequence[int]) -> GradedDegree:
        if len(a) != len(self.columns):
            raise ValueError("vector length does not match the cluster size")
        n = len(self.columns[0]) if self.columns else 0
        return tuple(
            sum(self.columns[j][i] * a[j] for j in range(len(a))) for i in range(n)
        )


def g_matrix(cluster: Iterable[int], atlas: PatternAtlas) -> GMatrix:
    _require_principal(atlas)
    c = atlas.normalize_cluster(cluster)
    cache = atlas.derived.setdefault("g_matrices", {})
    got = cache.get(c)
    if got is None:
        got = GMatrix(c, tuple(g_vector(v, atlas) for v in c))
        cache[c] = got
    return got


@dataclass(frozen=True)
class ClusterMonomial:
    """A product of one cluster's variables with nonnegative exponents,
    aligned with the cluster's ascending-id order."""

    cluster: Cluster
    powers: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.powers) != len(self.cluster):
            raise ValueError("exponent count does not match the cluster size")
        if any(p < 0 for p in self.powers):
            raise ValueError("cluster monomials need nonnegative exponents")


def g_vector_monomial(cm: ClusterMonomial, atlas: PatternAtlas) -> GradedDegree:
    """G_t times the exponent vector."""
    return g_matrix(cm.cluster, atlas).multiply(cm.powers)


def cluster_monomial_expansion(cm: ClusterMonomial, atlas: PatternAtlas) -> LaurentPoly:
    """The monomial as a Laurent polynomial in root coordinates."""
    out = LaurentPoly.one(atlas.n, atlas.m)
    for v, p in zip(cm.cluster, cm.powers):
        if p:
            out = out * atlas.expansion(v) ** p
    return out


def connected_by_I_sequence(
    cluster: Iterable[int], subset: Iterable[int], atlas: PatternAtlas
) -> bool:
    """True iff the cluster is reached from the root seed by mutations
    confined to the given directions; on an incomplete atlas a negative
    answer only means "not found within caps"."""
    c = atlas.normalize_cluster(cluster)
    return c in atlas.i_reachable(subset)


def _solve_fraction_system(
    mat: Sequence[Sequence[int]], rhs: Sequence[int]
) -> list[Fraction] | None:
    """Solve a square system exactly; None when singular."""
    size = len(mat)
    aug = [
        [Fraction(mat[i][j]) for j in range(size)] + [Fraction(rhs[i])]
        for i in range(size)
    ]
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col]
        aug[col] = [v / inv for v in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [v - factor * w for v, w in zip(aug[r], aug[col])]
    return [aug[i][size] for i in range(size)]


def _unit(n: int, pos: int) -> GradedDegree:
    return tuple(int(i == pos) for i in range(n))


def check_g_pair(
    t: Iterable[int],
    t_prime: Iterable[int],
    subset: Iterable[int],
    atlas: PatternAtlas,
) -> bool:
    """Whether (t, t_prime) is a g-pair along the direction subset."""
    _require_principal(atlas)
    n = atlas.n
    tc = atlas.normalize_cluster(t)
    tp = tuple(sorted(t_prime))
    I = sorted(set(subset))
    if any(not 1 <= i <= n for i in I):
        raise ValueError(f"directions {I} out of range 1..{n}")
    exact = atlas.i_reachable(I).get(tp)
    if exact is None:
        return False
    ids = [atlas.variable_id(p) for p in exact.x]
    cols = [g_vector(v, atlas) for v in ids]
    for pos in range(n):
        # Positions never mutated along an I-walk still hold root
        # variables, so their columns must be unit vectors.
        if (pos + 1) not in I and cols[pos] != _unit(n, pos):
            raise RuntimeError(
                f"expected a unit g-vector at position {pos + 1} of an "
                f"I-connected seed; the grading engine is inconsistent"
            )
    block = [[cols[j - 1][i - 1] for j in I] for i in I]
    for v in tc:
        g = g_vector(v, atlas)
        rhs = [g[i - 1] for i in I]
        sol = _solve_fraction_system(block, rhs)
        if sol is None:
            raise RuntimeError(
                "singular I-block in a G-matrix; determinant must be ±1"
            )
        if any(val.denominator != 1 or val < 0 for val in sol):
            return False
    return True


def find_g_pair(
    t: Iterable[int], subset: Iterable[int], atlas: PatternAtlas
) -> Cluster:
    """First I-connected cluster, in ascending cluster order, forming a
    g-pair with t; absence on a complete atlas raises loudly."""
    _require_principal(atlas)
    tc = atlas.normalize_cluster(t)
    I = sorted(set(subset))
    for candidate in sorted(atlas.i_reachable(I)):
        if check_g_pair(tc, candidate, I, atlas):
            return candidate
    raise GPairNotFoundError(
        f"no g-pair partner for cluster {tc} along {I}; "
        f"on a complete atlas this contradicts the enough-g-pairs property"
    )


def verify_g_pairs(atlas: PatternAtlas) -> "VerificationReport":
    """Exhaustive g-pair search over every (cluster, direction subset).

    A complete principal atlas must yield a partner for every pair; a
    single miss fails the sweep.
    """
    from itertools import combinations

    from .atlas import IncompleteAtlasError
    from .reports import VerificationReport

    _require_principal(atlas)
    if not atlas.complete:
        raise IncompleteAtlasError("g-pair sweep needs a complete atlas")
    report = VerificationReport(suite="g-pairs")
    report.add_context(
        "atlas", f"n={atlas.n} variables={len(atlas.variables)} "
        f"clusters={len(atlas.clusters)}"
    )
    n = atlas.n
    checked = 0
    failure = ""
    for t in sorted(atlas.clusters):
        for size in range(n + 1):
            for I in combinations(range(1, n + 1), size):
                try:
                    find_g_pair(t, I, atlas)
                except GPairNotFoundError:
                    failure = f"cluster {t} along {list(I)} has no partner"
                    break
                checked += 1
            if failure:
                break
        if failure:
            break
    report.add_context("pairs-checked", str(checked))
    report.add_check("partner-found-for-all", not failure, failure)
    report.resolve_status()
    return report


def g_vector_table(atlas: PatternAtlas, variables: Iterable[int] | None = None) -> str:
    """TSV table of variable ids and g-vectors."""
    _require_principal(atlas)
    ids = list(variables) if variables is not None else list(range(len(atlas.variables)))
    header = "variable\t" + "\t".join(f"g{i + 1}" for i in range(atlas.n))
    lines = [header]
    for v in ids:
        g = g_vector(v, atlas)
        lines.append(str(v) + "\t" + "\t".join(str(x) for x in g))
    return "\n".join(lines) + "\n"
