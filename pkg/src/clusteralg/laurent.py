"""Exact arithmetic for Laurent polynomials over a tropical coefficient ring.

The coefficient semifield is the tropical semifield on generators
``y1..ym``: its elements are Laurent monomials in the generators,
multiplication adds exponent vectors, and the auxiliary addition
``oplus`` takes componentwise minima of exponent vectors.  ``m = 0``
gives the trivial semifield with a single element.  The coefficient
*ring* is the integer group ring over that semifield: finite integer
combinations of tropical monomials.

The workhorse type is :class:`LaurentPoly`, a Laurent polynomial in
cluster variables ``x1..xn`` over the coefficient ring.  It is stored
sparsely as a dict mapping a combined exponent tuple (n entries for the
x part followed by m entries for the y part) to a nonzero integer
coefficient; the zero polynomial is the empty dict.  All arithmetic is
exact: coefficients are arbitrary-precision ints and specialization
returns :class:`fractions.Fraction`.

Canonical term order is lexicographic on the combined exponent tuple,
largest first.  Serialization and iteration follow that order, so equal
polynomials always print identically.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

Exponents = tuple[int, ...]
GradedDegree = tuple[int, ...]


class NotDivisibleError(ArithmeticError):
    """Exact division was requested but the quotient does not exist."""


class NotHomogeneousError(ValueError):
    """The terms of a polynomial do not share a common graded degree."""


@dataclass(frozen=True)
class TropicalElement:
    """A Laurent monomial in the tropical generators, as an exponent vector.

    ``exponents`` has one entry per generator; the empty tuple is the
    unique element of the trivial semifield.
    """

    exponents: Exponents

    @staticmethod
    def one(m: int) -> "TropicalElement":
        return TropicalElement((0,) * m)

    @staticmethod
    def generator(m: int, i: int) -> "TropicalElement":
        """The i-th generator, 1-based."""
        if not 1 <= i <= m:
            raise IndexError(f"generator index {i} out of range 1..{m}")
        return TropicalElement(tuple(int(j == i - 1) for j in range(m)))

    @property
    def rank(self) -> int:
        return len(self.exponents)

    def _check_rank(self, other: "TropicalElement") -> None:
        if len(self.exponents) != len(other.exponents):
            raise ValueError(
                f"tropical rank mismatch: {len(self.exponents)} vs {len(other.exponents)}"
            )

    def __mul__(self, other: "TropicalElement") -> "TropicalElement":
        self._check_rank(other)
        return TropicalElement(
            tuple(a + b for a, b in zip(self.exponents, other.exponents))
        )

    def __pow__(self, k: int) -> "TropicalElement":
        return TropicalElement(tuple(a * k for a in self.exponents))

    def inverse(self) -> "TropicalElement":
        return TropicalElement(tuple(-a for a in self.exponents))

    def oplus(self, other: "TropicalElement") -> "TropicalElement":
        """Auxiliary addition: componentwise minimum of exponent vectors."""
        self._check_rank(other)
        return TropicalElement(
            tuple(min(a, b) for a, b in zip(self.exponents, other.exponents))
        )

    def is_one(self) -> bool:
        return not any(self.exponents)

    def __str__(self) -> str:
        return _format_term(1, self.exponents, 0, len(self.exponents))


def _format_term(coeff: int, key: Exponents, n: int, m: int) -> str:
    # Factor order within a term: y generators first, then x, indexes ascending.
    factors = []
    for j in range(m):
        e = key[n + j]
        if e:
            factors.append(f"y{j + 1}" + (f"^{e}" if e != 1 else ""))
    for i in range(n):
        e = key[i]
        if e:
            factors.append(f"x{i + 1}" + (f"^{e}" if e != 1 else ""))
    if not factors:
        return str(coeff)
    body = "*".join(factors)
    if coeff == 1:
        return body
    if coeff == -1:
        return "-" + body
    return f"{coeff}*{body}"


_FACTOR_RE = re.compile(r"([xy])(\d+)(?:\^(-?\d+))?")


def _parse_term(part: str, n: int, m: int) -> tuple[Exponents, int]:
    text = part.strip()
    sign = 1
    if text.startswith("-"):
        sign = -1
        text = text[1:].strip()
    if not text:
        raise ValueError(f"empty term in {part!r}")
    factors = text.split("*")
    coeff = 1
    start = 0
    if factors[0].strip().isdigit():
        coeff = int(factors[0])
        start = 1
    key = [0] * (n + m)
    for raw in factors[start:]:
        f = raw.strip()
        match = _FACTOR_RE.fullmatch(f)
        if match is None:
            raise ValueError(f"cannot parse factor {f!r} in term {part!r}")
        kind, idx_s, exp_s = match.groups()
        idx = int(idx_s)
        exp = 1 if exp_s is None else int(exp_s)
        if kind == "x":
            if not 1 <= idx <= n:
                raise ValueError(f"x index {idx} out of range 1..{n} in {part!r}")
            key[idx - 1] += exp
        else:
            if not 1 <= idx <= m:
                raise ValueError(f"y index {idx} out of range 1..{m} in {part!r}")
            key[n + idx - 1] += exp
    return tuple(key), sign * coeff


class CoefRingElement:
    """An integer combination of tropical monomials.

    Keys of ``terms`` are y-exponent tuples of length ``m``; values are
    nonzero ints.  Instances are immutable by convention.
    """

    __slots__ = ("m", "terms", "_key")

    def __init__(self, m: int, terms: Mapping[Exponents, int] | Iterable = ()):
        self.m = m
        clean: dict[Exponents, int] = {}
        for key, c in dict(terms).items():
            key = tuple(key)
            if len(key) != m:
                raise ValueError(f"exponent tuple {key} has length != {m}")
            if c:
                clean[key] = clean.get(key, 0) + c
        self.terms = {k: c for k, c in clean.items() if c}
        self._key: tuple | None = None

    @staticmethod
    def zero(m: int) -> "CoefRingElement":
        return CoefRingElement(m)

    @staticmethod
    def one(m: int) -> "CoefRingElement":
        return CoefRingElement(m, {(0,) * m: 1})

    @staticmethod
    def from_tropical(t: TropicalElement, coeff: int = 1) -> "CoefRingElement":
        return CoefRingElement(t.rank, {t.exponents: coeff})

    def sort_key(self) -> tuple:
        if self._key is None:
            self._key = (self.m, tuple(sorted(self.terms.items(), reverse=True)))
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CoefRingElement):
            return NotImplemented
        return self.sort_key() == other.sort_key()

    def __hash__(self) -> int:
        return hash(self.sort_key())

    def _check_rank(self, other: "CoefRingElement") -> None:
        if self.m != other.m:
            raise ValueError(f"coefficient rank mismatch: {self.m} vs {other.m}")

    def __add__(self, other: "CoefRingElement") -> "CoefRingElement":
        self._check_rank(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return CoefRingElement(self.m, out)

    def __neg__(self) -> "CoefRingElement":
        return CoefRingElement(self.m, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "CoefRingElement") -> "CoefRingElement":
        return self + (-other)

    def __mul__(self, other: "CoefRingElement") -> "CoefRingElement":
        self._check_rank(other)
        out: dict[Exponents, int] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + c1 * c2
        return CoefRingElement(self.m, out)

    def is_zero(self) -> bool:
        return not self.terms

    def is_positive(self) -> bool:
        """True when every stored integer coefficient is > 0 (and nonzero)."""
        return bool(self.terms) and all(c > 0 for c in self.terms.values())

    def coefficient_sum(self) -> int:
        """Sum of the integer coefficients (the image when every y maps to 1)."""
        return sum(self.terms.values())

    def is_single_monomial(self) -> bool:
        return len(self.terms) == 1

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = [
            _format_term(c, k, 0, self.m)
            for k, c in sorted(self.terms.items(), reverse=True)
        ]
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"CoefRingElement(m={self.m}, {str(self)!r})"


class LaurentPoly:
    """A Laurent polynomial in x1..xn over the tropical coefficient ring.

    ``terms`` maps combined exponent tuples (x part then y part, total
    length ``n + m``) to nonzero integer coefficients.  Instances are
    immutable by convention; all operations return new objects.
    """

    __slots__ = ("n", "m", "terms", "_key")

    def __init__(self, n: int, m: int, terms: Mapping[Exponents, int] | Iterable = ()):
        self.n = n
        self.m = m
        clean: dict[Exponents, int] = {}
        for key, c in dict(terms).items():
            key = tuple(key)
            if len(key) != n + m:
                raise ValueError(f"exponent tuple {key} has length != {n + m}")
            if c:
                clean[key] = clean.get(key, 0) + c
        self.terms = {k: c for k, c in clean.items() if c}
        self._key: tuple | None = None

    # ------------------------------------------------------------------
    # constructors

    @staticmethod
    def zero(n: int, m: int) -> "LaurentPoly":
        return LaurentPoly(n, m)

    @staticmethod
    def one(n: int, m: int) -> "LaurentPoly":
        return LaurentPoly(n, m, {(0,) * (n + m): 1})

    @staticmethod
    def constant(n: int, m: int, c: int) -> "LaurentPoly":
        return LaurentPoly(n, m, {(0,) * (n + m): c})

    @staticmethod
    def variable(n: int, m: int, i: int) -> "LaurentPoly":
        """The cluster variable ``xi`` as a polynomial, 1-based."""
        if not 1 <= i <= n:
            raise IndexError(f"variable index {i} out of range 1..{n}")
        key = tuple(int(j == i - 1) for j in range(n + m))
        return LaurentPoly(n, m, {key: 1})

    @staticmethod
    def monomial(
        n: int,
        m: int,
        x_exponents: Sequence[int] = (),
        y_exponents: Sequence[int] = (),
        coeff: int = 1,
    ) -> "LaurentPoly":
        xs = tuple(x_exponents) or (0,) * n
        ys = tuple(y_exponents) or (0,) * m
        if len(xs) != n or len(ys) != m:
            raise ValueError("exponent lengths do not match ranks")
        return LaurentPoly(n, m, {xs + ys: coeff})

    @staticmethod
    def from_x_terms(
        n: int, m: int, x_terms: Iterable[tuple[Exponents, CoefRingElement]]
    ) -> "LaurentPoly":
        flat: dict[Exponents, int] = {}
        for x_exps, coef in x_terms:
            x_exps = tuple(x_exps)
            for y_exps, c in coef.terms.items():
                key = x_exps + y_exps
                flat[key] = flat.get(key, 0) + c
        return LaurentPoly(n, m, flat)

    # ------------------------------------------------------------------
    # canonical order, equality, hashing

    def sort_key(self) -> tuple:
        if self._key is None:
            self._key = (self.n, self.m, tuple(sorted(self.terms.items(), reverse=True)))
        return self._key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.sort_key() == other.sort_key()

    def __hash__(self) -> int:
        return hash(self.sort_key())

    def items_canonical(self) -> list[tuple[Exponents, int]]:
        """Terms sorted in canonical order (lex on exponents, largest first)."""
        return sorted(self.terms.items(), reverse=True)

    # ------------------------------------------------------------------
    # predicates and views

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * (self.n + self.m): 1}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def has_positive_coefficients(self) -> bool:
        return bool(self.terms) and all(c > 0 for c in self.terms.values())

    def x_part(self, key: Exponents) -> Exponents:
        return key[: self.n]

    def y_part(self, key: Exponents) -> Exponents:
        return key[self.n:]

    def x_terms(self) -> list[tuple[Exponents, CoefRingElement]]:
        """Terms grouped by x exponents, in canonical x order (largest first)."""
        grouped: dict[Exponents, dict[Exponents, int]] = {}
        for key, c in self.terms.items():
            grouped.setdefault(key[: self.n], {})[key[self.n:]] = c
        return [
            (x, CoefRingElement(self.m, ys))
            for x, ys in sorted(grouped.items(), reverse=True)
        ]

    def coefficient(self, x_exponents: Sequence[int]) -> CoefRingElement:
        """The coefficient-ring element attached to one x monomial."""
        xs = tuple(x_exponents)
        if len(xs) != self.n:
            raise ValueError("x exponent length does not match rank")
        out = {
            key[self.n:]: c for key, c in self.terms.items() if key[: self.n] == xs
        }
        return CoefRingElement(self.m, out)

    # ------------------------------------------------------------------
    # ring operations

    def _check_ranks(self, other: "LaurentPoly") -> None:
        if self.n != other.n or self.m != other.m:
            raise ValueError(
                f"rank mismatch: ({self.n},{self.m}) vs ({other.n},{other.m})"
            )

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_ranks(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(self.n, self.m, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.n, self.m, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check_ranks(other)
        if len(other.terms) == 1 and len(self.terms) > 1:
            return other * self
        if len(self.terms) == 1:
            # Monomial shift: every product key is distinct.
            ((k1, c1),) = self.terms.items()
            return LaurentPoly(
                self.n,
                self.m,
                {
                    tuple(a + b for a, b in zip(k1, k2)): c1 * c2
                    for k2, c2 in other.terms.items()
                },
            )
        out: dict[Exponents, int] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly(self.n, self.m, out)

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative powers are not defined for polynomials")
        result = LaurentPoly.one(self.n, self.m)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other: "LaurentPoly") -> "LaurentPoly":
        return exact_div(self, other)

    # ------------------------------------------------------------------
    # specialization, grading, supports

    def specialize(
        self,
        x_values: Sequence[Fraction | int],
        y_values: Sequence[Fraction | int] = (),
    ) -> Fraction:
        """Evaluate at rational points, exactly.

        Assigning zero to a variable that appears with a negative
        exponent raises ZeroDivisionError.
        """
        xv = [Fraction(v) for v in x_values]
        yv = [Fraction(v) for v in y_values]
        if len(xv) != self.n or len(yv) != self.m:
            raise ValueError("value counts do not match ranks")
        values = xv + yv
        total = Fraction(0)
        for key, c in self.terms.items():
            term = Fraction(c)
            for v, e in zip(values, key):
                if e == 0:
                    continue
                if v == 0:
                    if e < 0:
                        raise ZeroDivisionError(
                            "zero assigned to a variable with negative exponent"
                        )
                    term = Fraction(0)
                    break
                term *= v ** e
            total += term
        return total

    def homogeneous_degree(self, b0: Sequence[Sequence[int]]) -> GradedDegree:
        """The common graded degree of all terms under the grading in which
        xi has degree e_i and yj has degree minus the j-th column of ``b0``.

        Raises NotHomogeneousError when terms disagree, ValueError on zero.
        """
        if self.is_zero():
            raise ValueError("the zero polynomial has no degree")
        n, m = self.n, self.m
        if len(b0) != n or any(len(row) != n for row in b0):
            raise ValueError("grading matrix must be square of the x rank")
        if m not in (0, n):
            raise ValueError("grading needs coefficient rank 0 or n")
        deg: GradedDegree | None = None
        for key in self.terms:
            d = tuple(
                key[i] - sum(b0[i][j] * key[n + j] for j in range(m))
                for i in range(n)
            )
            if deg is None:
                deg = d
            elif d != deg:
                raise NotHomogeneousError(
                    f"terms have degrees {deg} and {d}"
                )
        assert deg is not None
        return deg

    def x_min_exponents(self) -> Exponents:
        """Componentwise minimum of the x exponents over all terms."""
        if self.is_zero():
            raise ValueError("the zero polynomial has no exponent support")
        mins = [None] * self.n
        for key in self.terms:
            for i in range(self.n):
                if mins[i] is None or key[i] < mins[i]:
                    mins[i] = key[i]
        return tuple(mins)

    def permute_x(self, perm: Sequence[int]) -> "LaurentPoly":
        """Reorder x coordinates: coordinate i of the result reads the
        exponent of old coordinate ``perm[i]`` (0-based)."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError(f"{perm} is not a permutation of 0..{self.n - 1}")
        out = {}
        for key, c in self.terms.items():
            new = tuple(key[perm[i]] for i in range(self.n)) + key[self.n:]
            out[new] = c
        return LaurentPoly(self.n, self.m, out)

    # ------------------------------------------------------------------
    # serialization

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = [
            _format_term(c, k, self.n, self.m) for k, c in self.items_canonical()
        ]
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly(n={self.n}, m={self.m}, {str(self)!r})"

    @staticmethod
    def parse(text: str, n: int, m: int) -> "LaurentPoly":
        """Parse the textual form produced by ``str``.

        Grammar: terms joined by '+'; a term is an optional sign, an
        optional integer coefficient, and '*'-joined factors ``x<i>``,
        ``y<j>`` with optional ``^<exp>``.  '0' denotes zero.
        """
        s = text.strip()
        if not s:
            raise ValueError("empty polynomial text")
        if s == "0":
            return LaurentPoly.zero(n, m)
        out: dict[Exponents, int] = {}
        for part in s.split("+"):
            key, c = _parse_term(part, n, m)
            out[key] = out.get(key, 0) + c
        return LaurentPoly(n, m, out)


def exact_div(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Exact division of Laurent polynomials; raises NotDivisibleError
    when no Laurent polynomial quotient with integer coefficients exists.

    Both arguments are shifted by their minimal exponents to honest
    polynomials, which are divided by repeatedly cancelling leading
    terms in lexicographic order.  Any exponent or coefficient failure
    during that loop proves non-divisibility.
    """
    num._check_ranks(den)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero():
        return LaurentPoly.zero(num.n, num.m)
    width = num.n + num.m

    def full_mins(terms: dict) -> Exponents:
        mins = None
        for key in terms:
            if mins is None:
                mins = list(key)
            else:
                for i in range(width):
                    if key[i] < mins[i]:
                        mins[i] = key[i]
        return tuple(mins)

    na = full_mins(num.terms)
    db = full_mins(den.terms)
    shifted_num = {
        tuple(k[i] - na[i] for i in range(width)): c for k, c in num.terms.items()
    }
    shifted_den = {
        tuple(k[i] - db[i] for i in range(width)): c for k, c in den.terms.items()
    }
    den_lead = max(shifted_den)
    den_lc = shifted_den[den_lead]
    quotient: dict[Exponents, int] = {}
    rem = dict(shifted_num)
    while rem:
        lead = max(rem)
        diff = tuple(a - b for a, b in zip(lead, den_lead))
        c, leftover = divmod(rem[lead], den_lc)
        if leftover or any(d < 0 for d in diff):
            raise NotDivisibleError(f"({num}) is not divisible by ({den})")
        quotient[diff] = c
        for k2, c2 in shifted_den.items():
            kk = tuple(a + b for a, b in zip(diff, k2))
            v = rem.get(kk, 0) - c * c2
            if v:
                rem[kk] = v
            else:
                rem.pop(kk, None)
    shift = tuple(a - b for a, b in zip(na, db))
    return LaurentPoly(
        num.n,
        num.m,
        {tuple(a + b for a, b in zip(k, shift)): c for k, c in quotient.items()},
    )
