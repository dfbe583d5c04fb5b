"""Witness monomials, incompatibility certificates, and cross-atlas
verification that the variable set determines the cluster structure.

A witness monomial for an ordered pair (xk, xi) is a term in the Laurent
expansion of xi with respect to some cluster containing xk whose
exponents away from xk's position are all nonnegative.  Its xk exponent
obeys a trichotomy: positive only when xi = xk, zero only when xi sits
in that cluster, and strictly negative whenever xi lies outside it.
Search order is canonical (atlas cluster order, then canonical term
order), so the returned witness is reproducible.

The incompatibility certificate turns a positive compatibility degree
into an exact numeric contradiction: erase coefficients with the ring
homomorphism phi, evaluate the witness at xk = 1/2 and every other
cluster variable at 1, and the quantity 1 - phi(c) * 2^v with v >= 1 is
strictly negative, while the corresponding right-hand side of the
exchange identity it would have to equal is a specialization of a
positive Laurent combination, hence >= 0.  Any cluster through both
variables in a pattern with the same variable set is thereby ruled out.

Cross-atlas verification aligns two trivial-coefficient atlases by an
explicit identification: an anchor seed of the first atlas (a stored
seed, possibly with positions permuted) whose matrix matches the second
root's; replaying the second atlas's discovery paths from the anchor
maps every variable of the second atlas to a first-atlas expansion.  On
success the cluster sets, labeled exchange graphs, and full
d-compatibility matrices are compared.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable

from .atlas import (
    Cluster,
    IncompleteAtlasError,
    PatternAtlas,
    graphs_equal,
)
from .compat import compatibility_matrix
from .laurent import CoefRingElement, Exponents, LaurentPoly
from .reports import VerificationReport
from .seed import ExchangeMatrix, Seed, mutate_path


class WitnessNotFoundError(RuntimeError):
    """No admissible term exists; on a complete atlas this is a
    verification failure, not a search miss."""


class TrichotomyViolationError(RuntimeError):
    """A witness term's xk exponent contradicts the required case split."""


class PreconditionViolatedError(ValueError):
    """Certificate requested for a pair that does share a cluster."""


def phi(p: LaurentPoly) -> LaurentPoly:
    """Coefficient-erasing ring homomorphism: every tropical monomial
    maps to 1, so each coefficient collapses to the sum of its integer
    coefficients; the result has trivial coefficients."""
    out: dict[Exponents, int] = {}
    for key, c in p.terms.items():
        x = key[: p.n]
        out[x] = out.get(x, 0) + c
    return LaurentPoly(p.n, 0, out)


@dataclass(frozen=True)
class WitnessMonomial:
    """An admissible expansion term: all exponents off the reference
    position are nonnegative."""

    cluster: Cluster
    k_position: int
    exponents: Exponents
    coefficient: CoefRingElement

    def __post_init__(self) -> None:
        if any(
            e < 0 for i, e in enumerate(self.exponents) if i != self.k_position
        ):
            raise ValueError("witness exponents off the reference must be >= 0")

    @property
    def k_exponent(self) -> int:
        return self.exponents[self.k_position]

    def describe(self) -> list[str]:
        return [
            f"cluster: {{{','.join(str(v) for v in self.cluster)}}}",
            f"reference-position: {self.k_position}",
            f"exponents: {' '.join(str(e) for e in self.exponents)}",
            f"coefficient: {self.coefficient}",
            f"reference-exponent: {self.k_exponent}",
        ]


def laurent_witness(xk: int, xi: int, atlas: PatternAtlas) -> WitnessMonomial:
    """First admissible term over clusters containing xk, in canonical
    search order, with the exponent trichotomy validated."""
    if not atlas.complete:
        raise IncompleteAtlasError("witness search needs a complete atlas")
    atlas.require_variable(xk)
    atlas.require_variable(xi)
    for c in atlas.clusters_containing(xk):
        kpos = c.index(xk)
        poly = atlas.expand(xi, c)
        for x_exps, coef in poly.x_terms():
            if all(e >= 0 for i, e in enumerate(x_exps) if i != kpos):
                witness = WitnessMonomial(c, kpos, x_exps, coef)
                _validate_trichotomy(witness, xk, xi)
                return witness
    raise WitnessNotFoundError(
        f"no admissible witness term for pair ({xk}, {xi}); on a complete "
        f"atlas this is a verification failure"
    )


def _validate_trichotomy(w: WitnessMonomial, xk: int, xi: int) -> None:
    e = w.k_exponent
    in_cluster = xi in w.cluster
    if e > 0 and xi != xk:
        raise TrichotomyViolationError(
            f"positive reference exponent but ({xk}, {xi}) are distinct"
        )
    if e == 0 and (not in_cluster or xi == xk):
        raise TrichotomyViolationError(
            f"zero reference exponent but variable {xi} is "
            f"{'the reference' if xi == xk else 'outside the cluster'}"
        )
    if not in_cluster and e >= 0:
        raise TrichotomyViolationError(
            f"variable {xi} is outside cluster {w.cluster} but the "
            f"reference exponent is {e} >= 0"
        )


def witness_sweep(atlas: PatternAtlas) -> VerificationReport:
    """laurent_witness over every ordered variable pair; all must
    succeed with a valid trichotomy."""
    if not atlas.complete:
        raise IncompleteAtlasError("witness sweep needs a complete atlas")
    report = VerificationReport(suite="witnesses")
    count = len(atlas.variables)
    report.add_context(
        "atlas", f"n={atlas.n} variables={count} clusters={len(atlas.clusters)}"
    )
    failure = ""
    checked = 0
    for xk in range(count):
        for xi in range(count):
            try:
                laurent_witness(xk, xi, atlas)
                checked += 1
            except (WitnessNotFoundError, TrichotomyViolationError) as exc:
                failure = f"pair ({xk}, {xi}): {exc}"
                break
        if failure:
            break
    report.add_context("pairs-checked", str(checked))
    report.add_check("witness-for-all-pairs", not failure, failure)
    report.resolve_status()
    return report


@dataclass(frozen=True)
class IncompatibilityCertificate:
    """Exact numeric contradiction ruling out a shared cluster.

    ``lhs_value`` equals 1 - phi_coefficient * 2**denominator_exponent,
    computed by specializing the phi image of the witness monomial at
    reference = 1/2, all else 1; it is strictly negative.  The right
    side it would need to equal is a specialization of an expansion with
    positive coefficients, hence >= 0.
    """

    reference: int
    target: int
    host: tuple[int, ...]
    witness: WitnessMonomial
    phi_coefficient: int
    denominator_exponent: int
    lhs_value: Fraction
    rhs_lower_bound: int = 0

    def lines(self) -> list[str]:
        return [
            f"reference: {self.reference}",
            f"target: {self.target}",
            f"host: {{{','.join(str(v) for v in self.host)}}}",
            f"witness-cluster: {{{','.join(str(v) for v in self.witness.cluster)}}}",
            f"witness-exponents: {' '.join(str(e) for e in self.witness.exponents)}",
            f"phi-coefficient: {self.phi_coefficient}",
            f"denominator-exponent: {self.denominator_exponent}",
            f"lhs-value: {self.lhs_value}",
            f"rhs-lower-bound: {self.rhs_lower_bound}",
        ]


def incompatibility_certificate(
    x: int, z: int, atlas: PatternAtlas, host: Iterable[int] | None = None
) -> IncompatibilityCertificate:
    """Certificate that no cluster over the same variable set can contain
    both x and z, given that none does in this atlas."""
    if not atlas.complete:
        raise IncompleteAtlasError("certificates need a complete atlas")
    atlas.require_variable(x)
    atlas.require_variable(z)
    if any(x in c and z in c for c in atlas.clusters):
        raise PreconditionViolatedError(
            f"variables {x} and {z} share a cluster; nothing to certify"
        )
    host_t = tuple(sorted(set(host))) if host is not None else tuple(sorted((x, z)))
    if x not in host_t or z not in host_t:
        raise ValueError("host must contain both variables")
    witness = laurent_witness(x, z, atlas)
    mono = LaurentPoly.from_x_terms(
        atlas.n, atlas.m, [(witness.exponents, witness.coefficient)]
    )
    erased = phi(mono)
    values = [Fraction(1)] * atlas.n
    values[witness.k_position] = Fraction(1, 2)
    lhs = 1 - erased.specialize(values)
    c_int = witness.coefficient.coefficient_sum()
    v_exp = -witness.k_exponent
    if lhs != 1 - c_int * Fraction(2) ** v_exp or lhs >= 0 or v_exp < 1:
        raise RuntimeError(
            f"certificate arithmetic inconsistent for pair ({x}, {z}): "
            f"lhs={lhs}, coefficient={c_int}, exponent={v_exp}"
        )
    return IncompatibilityCertificate(
        reference=x,
        target=z,
        host=host_t,
        witness=witness,
        phi_coefficient=c_int,
        denominator_exponent=v_exp,
        lhs_value=lhs,
    )


def incompatible_pairs(atlas: PatternAtlas) -> list[tuple[int, int]]:
    """Ordered pairs of distinct variables sharing no cluster."""
    if not atlas.complete:
        raise IncompleteAtlasError("pair enumeration needs a complete atlas")
    count = len(atlas.variables)
    return [
        (x, z)
        for x in range(count)
        for z in range(count)
        if x != z and not any(x in c and z in c for c in atlas.clusters)
    ]


def certify_incompatible_pairs(
    atlas: PatternAtlas,
) -> list[IncompatibilityCertificate]:
    return [
        incompatibility_certificate(x, z, atlas)
        for x, z in incompatible_pairs(atlas)
    ]


def _permuted_seed(seed: Seed, perm: tuple[int, ...]) -> Seed:
    """Simultaneous position permutation: position i of the result takes
    position perm[i] of the input."""
    n = seed.n
    rows = tuple(
        tuple(seed.b.rows[perm[i]][perm[j]] for j in range(n)) for i in range(n)
    )
    return Seed(
        ExchangeMatrix(rows),
        [seed.y[perm[i]] for i in range(n)],
        [seed.x[perm[i]] for i in range(n)],
    )


def _identification_candidates(a1: PatternAtlas, target_rows) -> Iterable[tuple[int, tuple[int, ...], Seed]]:
    n = a1.n
    for sid, seed in enumerate(a1.seeds):
        for perm in permutations(range(n)):
            rows = tuple(
                tuple(seed.b.rows[perm[i]][perm[j]] for j in range(n))
                for i in range(n)
            )
            if rows == target_rows:
                yield sid, perm, _permuted_seed(seed, perm)


def verify_unistructural(a1: PatternAtlas, a2: PatternAtlas) -> VerificationReport:
    """Drive the full comparison: identify a2's variables inside a1, then
    require equal cluster sets, equal labeled exchange graphs, and equal
    d-compatibility matrices.

    Implemented for trivial coefficients, where seeds carry no
    coefficient data and variable identity is pure Laurent structure.
    """
    if not a1.complete or not a2.complete:
        raise IncompleteAtlasError("cross-atlas verification needs complete atlases")
    if a1.m != 0 or a2.m != 0:
        raise ValueError(
            "cross-atlas verification is implemented for trivial coefficients"
        )
    report = VerificationReport(suite="unistructural")
    report.add_context(
        "first",
        f"n={a1.n} variables={len(a1.variables)} clusters={len(a1.clusters)}",
    )
    report.add_context(
        "second",
        f"n={a2.n} variables={len(a2.variables)} clusters={len(a2.clusters)}",
    )
    if a1.n != a2.n:
        report.add_check(
            "identification", False, f"ranks differ: {a1.n} vs {a2.n}"
        )
        report.status = "error"
        return report
    mapping = _find_identification(a1, a2, report)
    if mapping is None:
        report.status = "error"
        return report

    mapped_clusters = {
        tuple(sorted(mapping[v] for v in c)) for c in a2.clusters
    }
    same_clusters = mapped_clusters == set(a1.clusters)
    detail = ""
    if not same_clusters:
        extra = sorted(mapped_clusters - set(a1.clusters))
        missing = sorted(set(a1.clusters) - mapped_clusters)
        parts = []
        if extra:
            parts.append(f"second-only cluster {extra[0]}")
        if missing:
            parts.append(f"first-only cluster {missing[0]}")
        detail = "; ".join(parts)
    report.add_check("cluster-sets-equal", same_clusters, detail)

    comparison = graphs_equal(
        a1.exchange_graph(), a2.exchange_graph().relabeled(mapping, a1)
    )
    report.add_check("exchange-graphs-equal", comparison.equal, comparison.detail)

    matrix1 = compatibility_matrix(a1)
    matrix2 = compatibility_matrix(a2)
    count = len(a2.variables)
    translated = [[0] * len(matrix1) for _ in range(len(matrix1))]
    for j in range(count):
        for i in range(count):
            translated[mapping[j]][mapping[i]] = matrix2[j][i]
    matrices_equal = translated == matrix1
    report.add_context("compat-matrix-first", json.dumps(matrix1))
    report.add_context("compat-matrix-second-mapped", json.dumps(translated))
    report.add_check(
        "compat-matrices-equal",
        matrices_equal,
        "" if matrices_equal else "degree matrices differ after relabeling",
    )
    report.resolve_status()
    return report


def _find_identification(
    a1: PatternAtlas, a2: PatternAtlas, report: VerificationReport
) -> dict[int, int] | None:
    """Map every a2 variable id to an a1 variable id, or record why not.

    Anchors are permuted stored seeds of a1 whose matrix equals a2's
    root matrix; replaying a2's discovery paths from an anchor expresses
    every a2 variable in a1's root coordinates, where the interning
    table decides membership.  A simultaneous permutation of a pattern
    seed generates the same pattern, so a successful replay stays inside
    a1's variable set and certifies the identification.
    """
    n = a1.n
    target_rows = a2.root.b.rows
    tried = 0
    last_reason = "no stored seed of the first atlas matches the second root matrix"
    for sid, perm, anchor in _identification_candidates(a1, target_rows):
        tried += 1
        mapping: dict[int, int] = {}
        reason = ""
        for tid in range(len(a2.seeds)):
            landed = mutate_path(anchor, a2.seeds[tid].path)
            for pos in range(n):
                v2 = a2.seed_variable_ids[tid][pos]
                v1 = a1.variable_id(landed.x[pos])
                if v1 is None:
                    reason = (
                        f"variable {v2} of the second atlas has no counterpart "
                        f"in the first (anchor seed {sid}, permutation {perm})"
                    )
                    break
                prev = mapping.get(v2)
                if prev is None:
                    mapping[v2] = v1
                elif prev != v1:
                    reason = (
                        f"variable {v2} of the second atlas maps to both "
                        f"{prev} and {v1} (anchor seed {sid})"
                    )
                    break
            if reason:
                break
        if reason:
            last_reason = reason
            continue
        image = set(mapping.values())
        if len(image) != len(mapping) or image != set(range(len(a1.variables))):
            last_reason = (
                f"identification from anchor seed {sid} is not a bijection "
                f"({len(image)} images for {len(mapping)} variables of "
                f"{len(a1.variables)})"
            )
            continue
        report.add_check(
            "identification", True, f"anchor seed {sid}, permutation {list(perm)}"
        )
        report.add_context(
            "variable-map",
            ",".join(f"{v2}->{mapping[v2]}" for v2 in sorted(mapping)),
        )
        return mapping
    report.add_check(
        "identification",
        False,
        f"variable sets are not equal: {last_reason} ({tried} anchors tried)",
    )
    return None
