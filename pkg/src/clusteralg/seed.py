"""Seeds and mutation for skew-symmetrizable exchange matrices.

A seed bundles an exchange matrix B, a tuple of tropical coefficients
(one per direction), and a tuple of cluster variables stored as exact
Laurent polynomials in the variables of the pattern's root seed.  The
root seed of a pattern has unit-monomial variables; every other seed is
produced by a sequence of mutations, and ``path`` records the directions
used, so any stored seed can be reproduced by replaying its path.

Mutation in direction k replaces x_k by the exchange binomial divided by
x_k; the division is exact Laurent division and its success in every
case is a structural guarantee of the arithmetic, so failure raises.
Every new variable is checked to have strictly positive integer
coefficients, which is another structural guarantee; a violation means
the engine is broken, never that the input is unlucky.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .laurent import LaurentPoly, TropicalElement, exact_div

Rows = tuple[tuple[int, ...], ...]


class NotSkewSymmetrizableError(ValueError):
    """No positive integer diagonal matrix symmetrizes the given matrix."""


class PositivityError(ArithmeticError):
    """A mutated variable had a nonpositive coefficient; engine invariant broken."""


def _as_rows(rows: Sequence[Sequence[int]]) -> Rows:
    out = tuple(tuple(int(v) for v in row) for row in rows)
    n = len(out)
    if any(len(row) != n for row in out):
        raise ValueError("matrix is not square")
    return out


def find_skew_symmetrizer(rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Componentwise minimal positive integers s with diag(s) * B skew-symmetric.

    Works one connected component of the off-diagonal support at a time:
    an edge (i, j) with b_ij != 0 forces s_i * b_ij = -s_j * b_ji, so
    ratios propagate by breadth-first search and every back edge is a
    consistency check.  Raises NotSkewSymmetrizableError when the sign
    pattern or a ratio fails.
    """
    b = _as_rows(rows)
    n = len(b)
    for i in range(n):
        if b[i][i] != 0:
            raise NotSkewSymmetrizableError(f"nonzero diagonal entry at {i + 1}")
    for i in range(n):
        for j in range(i + 1, n):
            if (b[i][j] == 0) != (b[j][i] == 0) or b[i][j] * b[j][i] > 0:
                raise NotSkewSymmetrizableError(
                    f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) "
                    f"are {b[i][j]}, {b[j][i]}: need opposite signs or both zero"
                )
    ratio: list[Fraction | None] = [None] * n
    for start in range(n):
        if ratio[start] is not None:
            continue
        ratio[start] = Fraction(1)
        component = [start]
        queue = [start]
        while queue:
            i = queue.pop(0)
            for j in range(n):
                if b[i][j] == 0:
                    continue
                forced = ratio[i] * Fraction(b[i][j], -b[j][i])
                if ratio[j] is None:
                    ratio[j] = forced
                    component.append(j)
                    queue.append(j)
                elif ratio[j] != forced:
                    raise NotSkewSymmetrizableError(
                        f"inconsistent symmetrizer ratio at ({i + 1},{j + 1})"
                    )
        # Scale the component to minimal positive integers.
        denom_lcm = 1
        for i in component:
            d = ratio[i].denominator
            denom_lcm = denom_lcm * d // gcd(denom_lcm, d)
        values = [ratio[i] * denom_lcm for i in component]
        common = 0
        for v in values:
            common = gcd(common, int(v))
        for i, v in zip(component, values):
            ratio[i] = Fraction(int(v) // common)
    return tuple(int(r) for r in ratio)


class ExchangeMatrix:
    """A skew-symmetrizable integer matrix with its minimal symmetrizer."""

    __slots__ = ("rows", "symmetrizer")

    def __init__(self, rows: Sequence[Sequence[int]]):
        self.rows = _as_rows(rows)
        self.symmetrizer = find_skew_symmetrizer(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExchangeMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def column(self, k: int) -> tuple[int, ...]:
        """Column k, 1-based."""
        return tuple(row[k - 1] for row in self.rows)

    def mutated(self, k: int) -> "ExchangeMatrix":
        """Matrix mutation in direction k, 1-based."""
        n = self.n
        if not 1 <= k <= n:
            raise IndexError(f"direction {k} out of range 1..{n}")
        kk = k - 1
        b = self.rows
        new = []
        for i in range(n):
            row = []
            for j in range(n):
                if i == kk or j == kk:
                    row.append(-b[i][j])
                else:
                    sign = 1 if b[i][kk] > 0 else (-1 if b[i][kk] < 0 else 0)
                    row.append(b[i][j] + sign * max(b[i][kk] * b[kk][j], 0))
            new.append(tuple(row))
        return ExchangeMatrix(tuple(new))

    def __str__(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.rows)

    def __repr__(self) -> str:
        return f"ExchangeMatrix({list(map(list, self.rows))})"


class Seed:
    """A seed of a cluster pattern: matrix, coefficients, variables, path.

    ``path`` is provenance only: two seeds are equal when matrix,
    coefficients, and variables agree, regardless of how they were
    reached.
    """

    __slots__ = ("b", "y", "x", "path", "_key")

    def __init__(
        self,
        b: ExchangeMatrix,
        y: Sequence[TropicalElement],
        x: Sequence[LaurentPoly],
        path: Sequence[int] = (),
    ):
        self.b = b
        self.y = tuple(y)
        self.x = tuple(x)
        self.path = tuple(path)
        n = b.n
        if len(self.y) != n or len(self.x) != n:
            raise ValueError("coefficient and variable counts must equal the rank")
        m = self.y[0].rank if n else 0
        if any(t.rank != m for t in self.y):
            raise ValueError("coefficients have mixed ranks")
        if any(p.m != m for p in self.x):
            raise ValueError("variables and coefficients disagree on the y rank")
        self._key: tuple | None = None

    @property
    def n(self) -> int:
        return self.b.n

    @property
    def m(self) -> int:
        return self.y[0].rank

    def sort_key(self) -> tuple:
        if self._key is None:
            self._key = (
                self.b.rows,
                tuple(t.exponents for t in self.y),
                tuple(p.sort_key() for p in self.x),
            )
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Seed):
            return NotImplemented
        return self.sort_key() == other.sort_key()

    def __hash__(self) -> int:
        return hash(self.sort_key())

    def __repr__(self) -> str:
        return f"Seed(n={self.n}, m={self.m}, path={self.path})"


def root_seed(b: ExchangeMatrix, coefficients: str = "trivial") -> Seed:
    """Root seed with unit-monomial variables.

    ``coefficients`` selects the tropical semifield: 'trivial' has no
    generators; 'principal' has one generator per direction, with the
    i-th coefficient equal to the i-th generator.
    """
    n = b.n
    if coefficients == "trivial":
        m = 0
        y = [TropicalElement.one(0) for _ in range(n)]
    elif coefficients == "principal":
        m = n
        y = [TropicalElement.generator(m, i) for i in range(1, n + 1)]
    else:
        raise ValueError(f"unknown coefficient choice {coefficients!r}")
    x = [LaurentPoly.variable(n, m, i) for i in range(1, n + 1)]
    return Seed(b, y, x, path=())


def random_exchange_matrix(
    rng: random.Random, n: int, max_sym: int = 3
) -> ExchangeMatrix:
    """Random skew-symmetrizable matrix for sampling and property tests.

    Picks a positive diagonal s and a small skew-symmetric sign pattern
    z, then sets b_ij = z_ij * s_j / gcd(s_i, s_j), which diag(s)
    symmetrizes by construction.  ``max_sym`` bounds the diagonal;
    entries grow with it, and matrices drawn at 2 stay tame enough for
    long mutation walks.
    """
    s = [rng.randint(1, max_sym) for _ in range(n)]
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            z = rng.randint(-1, 1)
            if z:
                g = gcd(s[i], s[j])
                rows[i][j] = z * s[j] // g
                rows[j][i] = -z * s[i] // g
    return ExchangeMatrix(rows)


def exchange_binomial(seed: Seed, k: int) -> LaurentPoly:
    """The two-term exchange relation numerator in direction k, 1-based.

    One term carries the positive column entries of B, the other the
    negative ones; the tropical prefactors are y_k/(1 (+) y_k) and
    1/(1 (+) y_k), which are single tropical monomials by construction.
    """
    n, m = seed.n, seed.m
    if not 1 <= k <= n:
        raise IndexError(f"direction {k} out of range 1..{n}")
    yk = seed.y[k - 1]
    denom = yk.oplus(TropicalElement.one(m))
    pos = LaurentPoly.monomial(n, m, y_exponents=(yk * denom.inverse()).exponents)
    neg = LaurentPoly.monomial(n, m, y_exponents=denom.inverse().exponents)
    for i in range(n):
        b_ik = seed.b.rows[i][k - 1]
        if b_ik > 0:
            pos = pos * seed.x[i] ** b_ik
        elif b_ik < 0:
            neg = neg * seed.x[i] ** (-b_ik)
    return pos + neg


def mutate(seed: Seed, k: int) -> Seed:
    """Seed mutation in direction k, 1-based.  Involutive."""
    n, m = seed.n, seed.m
    if not 1 <= k <= n:
        raise IndexError(f"direction {k} out of range 1..{n}")
    b_new = seed.b.mutated(k)
    yk = seed.y[k - 1]
    denom = yk.oplus(TropicalElement.one(m))
    y_new = []
    for i in range(1, n + 1):
        if i == k:
            y_new.append(yk.inverse())
        else:
            b_ki = seed.b.rows[k - 1][i - 1]
            y_new.append(seed.y[i - 1] * yk ** max(b_ki, 0) * denom ** (-b_ki))
    x_new = list(seed.x)
    x_new[k - 1] = exact_div(exchange_binomial(seed, k), seed.x[k - 1])
    if not x_new[k - 1].has_positive_coefficients():
        raise PositivityError(
            f"mutation in direction {k} produced nonpositive coefficients: "
            f"{x_new[k - 1]}"
        )
    return Seed(b_new, y_new, x_new, path=seed.path + (k,))


def mutate_path(seed: Seed, path: Iterable[int]) -> Seed:
    out = seed
    for k in path:
        out = mutate(out, k)
    return out


def format_seed(seed: Seed) -> str:
    """Readable multi-line form: matrix rows, coefficients, variables."""
    lines = [f"n: {seed.n}", f"m: {seed.m}", "B:"]
    lines.extend("  " + " ".join(str(v) for v in row) for row in seed.b.rows)
    lines.append("y: " + "; ".join(str(t) for t in seed.y))
    lines.append("x:")
    lines.extend(f"  x{i + 1} = {p}" for i, p in enumerate(seed.x))
    return "\n".join(lines)


def seed_from_dict(data: dict) -> Seed:
    """Build a root seed from a parsed seed file.

    Expected keys: ``n`` (int), ``B`` (row-major list of n lists of n
    ints), ``coefficients`` ('trivial' or 'principal').
    """
    if not isinstance(data, dict):
        raise ValueError("seed file must contain a JSON object")
    try:
        n = data["n"]
        raw_b = data["B"]
        coefficients = data["coefficients"]
    except KeyError as exc:
        raise ValueError(f"seed file is missing key {exc.args[0]!r}") from None
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError("'n' must be a positive integer")
    if (
        not isinstance(raw_b, list)
        or len(raw_b) != n
        or any(not isinstance(row, list) or len(row) != n for row in raw_b)
    ):
        raise ValueError("'B' must be a row-major n x n list of lists")
    for row in raw_b:
        for v in row:
            if not isinstance(v, int) or isinstance(v, bool):
                raise ValueError("'B' entries must be integers")
    if coefficients not in ("trivial", "principal"):
        raise ValueError("'coefficients' must be 'trivial' or 'principal'")
    return root_seed(ExchangeMatrix(raw_b), coefficients)


def load_seed_file(path: str) -> Seed:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read seed file {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"seed file {path} is not valid JSON: {exc}") from None
    return seed_from_dict(data)
