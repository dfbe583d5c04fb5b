"""Symmetrizers, matrix mutation, seed mutation, and seed files."""

from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusteralg import (
    ExchangeMatrix,
    LaurentPoly,
    NotSkewSymmetrizableError,
    Seed,
    exchange_binomial,
    find_skew_symmetrizer,
    format_seed,
    load_seed_file,
    mutate,
    mutate_path,
    root_seed,
    seed_from_dict,
)
from conftest import A2_ROWS, A3_ROWS, B2_ROWS, G2_ROWS, random_exchange_matrix


def reference_matrix_mutation(rows, k):
    """Independent reimplementation of matrix mutation for cross-checks:
    b'_ij = -b_ij on row/column k, else b_ij + sgn(b_ik) * max(b_ik*b_kj, 0)."""
    n = len(rows)
    kk = k - 1
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == kk or j == kk:
                out[i][j] = -rows[i][j]
            else:
                s = (rows[i][kk] > 0) - (rows[i][kk] < 0)
                out[i][j] = rows[i][j] + s * max(rows[i][kk] * rows[kk][j], 0)
    return tuple(tuple(r) for r in out)


# ----------------------------------------------------------------------
# symmetrizers


class TestSymmetrizer:
    def test_minimal_symmetrizers(self):
        assert find_skew_symmetrizer(A2_ROWS) == (1, 1)
        assert find_skew_symmetrizer(B2_ROWS) == (1, 2)
        assert find_skew_symmetrizer(G2_ROWS) == (1, 3)
        assert find_skew_symmetrizer(A3_ROWS) == (1, 1, 1)
        assert find_skew_symmetrizer([[0, 1, 0], [-1, 0, 2], [0, -1, 0]]) == (1, 1, 2)
        assert find_skew_symmetrizer([[0]]) == (1,)
        # disconnected support: each component is scaled independently
        assert find_skew_symmetrizer(
            [[0, 2, 0], [-1, 0, 0], [0, 0, 0]]
        ) == (1, 2, 1)

    def test_rejects_bad_sign_patterns(self):
        with pytest.raises(NotSkewSymmetrizableError):
            find_skew_symmetrizer([[0, 1], [1, 0]])
        with pytest.raises(NotSkewSymmetrizableError):
            find_skew_symmetrizer([[0, 1], [0, 0]])
        with pytest.raises(NotSkewSymmetrizableError):
            find_skew_symmetrizer([[1, 0], [0, 0]])

    def test_rejects_inconsistent_cycle_ratios(self):
        with pytest.raises(NotSkewSymmetrizableError):
            find_skew_symmetrizer([[0, 1, -1], [-1, 0, 1], [2, -1, 0]])

    def test_symmetrizer_symmetrizes(self):
        rng = random.Random(7)
        for _ in range(50):
            b = random_exchange_matrix(rng, rng.randint(1, 4))
            s = b.symmetrizer
            n = b.n
            for i in range(n):
                for j in range(n):
                    assert s[i] * b.rows[i][j] == -s[j] * b.rows[j][i]


# ----------------------------------------------------------------------
# matrix mutation


class TestMatrixMutation:
    def test_rank_two_oracle(self):
        assert ExchangeMatrix(A2_ROWS).mutated(1).rows == ((0, -1), (1, 0))
        assert ExchangeMatrix(B2_ROWS).mutated(2).rows == ((0, -2), (1, 0))

    def test_rank_three_oracle(self):
        b = ExchangeMatrix([[0, 2, 0], [-1, 0, 1], [0, -1, 0]])
        assert b.mutated(2).rows == ((0, -2, 2), (1, 0, -1), (-1, 1, 0))

    def test_matches_reference_implementation(self):
        rng = random.Random(11)
        for _ in range(100):
            b = random_exchange_matrix(rng, rng.randint(2, 4))
            k = rng.randint(1, b.n)
            assert b.mutated(k).rows == reference_matrix_mutation(b.rows, k)

    def test_involution_and_symmetrizer_stability(self):
        rng = random.Random(13)
        for _ in range(100):
            b = random_exchange_matrix(rng, rng.randint(2, 4))
            k = rng.randint(1, b.n)
            bk = b.mutated(k)
            assert bk.symmetrizer == b.symmetrizer
            assert bk.mutated(k) == b

    def test_direction_bounds(self):
        with pytest.raises(IndexError):
            ExchangeMatrix(A2_ROWS).mutated(0)
        with pytest.raises(IndexError):
            ExchangeMatrix(A2_ROWS).mutated(3)

    def test_column_accessor(self):
        assert ExchangeMatrix(A3_ROWS).column(2) == (1, 0, -1)


# ----------------------------------------------------------------------
# exchange binomials and seed mutation


class TestExchangeBinomial:
    def test_trivial_coefficients(self):
        s = root_seed(ExchangeMatrix(A2_ROWS), "trivial")
        assert str(exchange_binomial(s, 1)) == "x2 + 1"
        assert str(exchange_binomial(s, 2)) == "x1 + 1"
        g = root_seed(ExchangeMatrix(G2_ROWS), "trivial")
        assert str(exchange_binomial(g, 1)) == "x2 + 1"
        assert str(exchange_binomial(g, 2)) == "x1^3 + 1"

    def test_principal_coefficients(self):
        s = root_seed(ExchangeMatrix(A2_ROWS), "principal")
        # At the root 1 (+) y_k = 1, so the prefactors are y_k and 1.
        assert str(exchange_binomial(s, 1)) == "x2 + y1"
        assert str(exchange_binomial(s, 2)) == "y2*x1 + 1"

    def test_direction_bounds(self):
        s = root_seed(ExchangeMatrix(A2_ROWS))
        with pytest.raises(IndexError):
            exchange_binomial(s, 0)


class TestSeedMutation:
    def test_first_mutation_trivial(self):
        s = mutate(root_seed(ExchangeMatrix(A2_ROWS), "trivial"), 1)
        assert s.b.rows == ((0, -1), (1, 0))
        assert str(s.x[0]) == "x1^-1*x2 + x1^-1"
        assert str(s.x[1]) == "x2"
        assert s.path == (1,)

    def test_first_mutation_principal(self):
        s = mutate(root_seed(ExchangeMatrix(A2_ROWS), "principal"), 1)
        assert str(s.x[0]) == "x1^-1*x2 + y1*x1^-1"
        assert tuple(t.exponents for t in s.y) == ((-1, 0), (1, 1))

    def test_coefficient_walk_principal(self):
        # By hand: after direction 1 the coefficients are (y1^-1, y1*y2);
        # direction 2 then sends y1^-1 to y1^-1 * (y1*y2) = y2 and inverts y1*y2.
        s = mutate_path(root_seed(ExchangeMatrix(A2_ROWS), "principal"), [1, 2])
        assert tuple(t.exponents for t in s.y) == ((0, 1), (-1, -1))

    def test_involution(self):
        root = root_seed(ExchangeMatrix(A3_ROWS), "principal")
        s = mutate_path(root, [2, 3])
        back = mutate(mutate(s, 1), 1)
        assert back == s
        assert back.path == (2, 3, 1, 1)  # provenance keeps the detour

    def test_equality_ignores_path(self):
        root = root_seed(ExchangeMatrix(A2_ROWS))
        assert mutate(mutate(root, 1), 1) == root
        assert mutate(mutate(root, 1), 1).path != root.path
        assert hash(mutate(mutate(root, 1), 1)) == hash(root)

    def test_pentagon_returns_transposed_then_exact(self):
        for coefficients in ("trivial", "principal"):
            root = root_seed(ExchangeMatrix(A2_ROWS), coefficients)
            five = mutate_path(root, [1, 2, 1, 2, 1])
            # After five alternating steps the seed is the root with the two
            # positions swapped, not the root itself.
            assert five != root
            assert five.x == (root.x[1], root.x[0])
            assert five.y == (root.y[1], root.y[0])
            assert five.b.rows == ((0, -1), (1, 0))
            ten = mutate_path(five, [1, 2, 1, 2, 1])
            assert ten == root

    def test_variables_stay_positive_on_random_walks(self):
        # Size guard: wild-type matrices blow up exponentially, so a walk
        # ends early once any variable passes 200 terms.  Every variable
        # that does get produced is checked.
        rng = random.Random(17)
        for _ in range(25):
            b = random_exchange_matrix(rng, rng.randint(1, 3), max_sym=2)
            s = root_seed(b, rng.choice(["trivial", "principal"]))
            for _ in range(5):
                if max(len(p.terms) for p in s.x) > 200:
                    break
                s = mutate(s, rng.randint(1, b.n))
                assert all(p.has_positive_coefficients() for p in s.x)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 10 ** 9), st.integers(1, 3), st.integers(0, 4))
    def test_involution_property(self, entropy, n, steps):
        rng = random.Random(entropy)
        b = random_exchange_matrix(rng, n, max_sym=2)
        s = root_seed(b, rng.choice(["trivial", "principal"]))
        for _ in range(steps):
            if max(len(p.terms) for p in s.x) > 200:
                break
            s = mutate(s, rng.randint(1, n))
        k = rng.randint(1, n)
        assert mutate(mutate(s, k), k) == s


# ----------------------------------------------------------------------
# construction and files


class TestSeedConstruction:
    def test_root_seed_shapes(self):
        t = root_seed(ExchangeMatrix(A2_ROWS), "trivial")
        assert (t.n, t.m) == (2, 0)
        assert [str(p) for p in t.x] == ["x1", "x2"]
        assert all(y.is_one() for y in t.y)
        p = root_seed(ExchangeMatrix(A2_ROWS), "principal")
        assert (p.n, p.m) == (2, 2)
        assert tuple(t.exponents for t in p.y) == ((1, 0), (0, 1))
        with pytest.raises(ValueError):
            root_seed(ExchangeMatrix(A2_ROWS), "universal")

    def test_seed_validates_shapes(self):
        b = ExchangeMatrix(A2_ROWS)
        x = [LaurentPoly.variable(2, 0, i) for i in (1, 2)]
        with pytest.raises(ValueError):
            Seed(b, [], x)
        with pytest.raises(ValueError):
            Seed(b, [root_seed(b).y[0]], x)

    def test_format_seed(self):
        text = format_seed(root_seed(ExchangeMatrix(A2_ROWS), "principal"))
        lines = text.splitlines()
        assert lines[0] == "n: 2"
        assert lines[1] == "m: 2"
        assert "  0 1" in lines
        assert "  x1 = x1" in lines
        assert "y: y1; y2" in lines


class TestSeedFiles:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "seed.json"
        path.write_text(json.dumps({"n": 2, "B": [[0, 2], [-1, 0]], "coefficients": "principal"}))
        s = load_seed_file(str(path))
        assert s.b.rows == ((0, 2), (-1, 0))
        assert (s.n, s.m) == (2, 2)

    def test_missing_key(self):
        with pytest.raises(ValueError, match="missing key 'B'"):
            seed_from_dict({"n": 2, "coefficients": "trivial"})

    def test_bad_values(self):
        good = {"n": 2, "B": [[0, 1], [-1, 0]], "coefficients": "trivial"}
        for patch in [
            {"n": 0},
            {"n": True},
            {"n": "2"},
            {"B": [[0, 1]]},
            {"B": [[0, 1.5], [-1, 0]]},
            {"B": [[0, True], [-1, 0]]},
            {"B": [[0, 1], [1, 0]]},
            {"coefficients": "universal"},
        ]:
            with pytest.raises(ValueError):
                seed_from_dict({**good, **patch})
        with pytest.raises(ValueError):
            seed_from_dict([1, 2])

    def test_unreadable_or_invalid_file(self, tmp_path):
        with pytest.raises(ValueError, match="cannot read"):
            load_seed_file(str(tmp_path / "missing.json"))
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        with pytest.raises(ValueError, match="not valid JSON"):
            load_seed_file(str(bad))
