"""Exact-arithmetic kernels: frozen examples plus oracle cross-checks."""

from fractions import Fraction

import pytest

from oracles import echelon_rank_transposed, fm_cone_member, fm_strict_zero
from modelgen import fresh_rng
from radrank import (
    DimensionError,
    cone_member,
    determinant,
    format_rational,
    format_vector,
    linear_rank,
    lp_feasible,
    parse_rational,
    parse_vector,
    smith_normal_form,
    strict_zero_combination,
)

F = Fraction


def _resubstitute(rows, x):
    return tuple(sum(F(a) * xi for a, xi in zip(row, x)) for row in rows)


class TestLpFeasible:
    def test_two_positive_vars_cannot_cancel(self):
        ok, witness = lp_feasible([[1, 1]], [0], [F(1), F(1)])
        assert not ok and witness is None

    def test_symmetric_difference(self):
        ok, witness = lp_feasible([[1, -1]], [0], [F(1), F(1)])
        assert ok
        assert witness == (F(1), F(1))

    def test_weighted_difference(self):
        ok, witness = lp_feasible([[1, -2]], [0], [F(1), F(1)])
        assert ok
        assert witness == (F(2), F(1))

    def test_free_variable(self):
        ok, witness = lp_feasible([[1, 1]], [5], [None, None])
        assert ok
        assert sum(witness) == F(5)

    def test_mixed_bounds_resubstitute(self):
        rows = [[2, -1, 3], [0, 1, 1]]
        ok, witness = lp_feasible(rows, [4, 2], [F(0), None, F(1, 2)])
        assert ok
        assert _resubstitute(rows, witness) == (F(4), F(2))
        assert witness[0] >= 0 and witness[2] >= F(1, 2)

    def test_shape_errors(self):
        with pytest.raises(DimensionError):
            lp_feasible([[1, 2]], [0, 0], [F(0), F(0)])
        with pytest.raises(DimensionError):
            lp_feasible([[1, 2, 3]], [0], [F(0), F(0)])


class TestConeMember:
    def test_zero_in_empty_cone(self):
        ok, coeffs = cone_member((0,), [])
        assert ok and coeffs == ()

    def test_nonzero_not_in_empty_cone(self):
        ok, coeffs = cone_member((1,), [])
        assert not ok and coeffs is None

    def test_quadrant_diagonal(self):
        ok, coeffs = cone_member((1, 1), [(1, 0), (0, 1)])
        assert ok and coeffs == (F(1), F(1))

    def test_quadrant_excludes_negative_axis(self):
        ok, coeffs = cone_member((-1, 0), [(1, 0), (0, 1)])
        assert not ok and coeffs is None

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            cone_member((1, 0), [(1,)])

    def test_certificates_resubstitute(self):
        rng = fresh_rng(salt=10)
        for _ in range(120):
            dim = rng.randrange(1, 4)
            count = rng.randrange(0, 6)
            gens = [
                tuple(F(rng.randint(-4, 4)) for _ in range(dim))
                for _ in range(count)
            ]
            v = tuple(F(rng.randint(-4, 4)) for _ in range(dim))
            ok, coeffs = cone_member(v, gens)
            if ok:
                assert all(c >= 0 for c in coeffs)
                got = tuple(
                    sum((c * g[d] for c, g in zip(coeffs, gens)), F(0))
                    for d in range(dim)
                )
                assert got == v
            # elimination-based second opinion on every verdict
            assert ok == fm_cone_member(v, gens)


class TestStrictZeroCombination:
    def test_opposite_vectors(self):
        ok, coeffs = strict_zero_combination([(1,), (-1,)])
        assert ok and coeffs == (F(1), F(1))

    def test_same_sign_fails(self):
        ok, coeffs = strict_zero_combination([(1,), (2,)])
        assert not ok and coeffs is None

    def test_weighted_pair(self):
        ok, coeffs = strict_zero_combination([(1,), (-2,)])
        assert ok and coeffs == (F(2), F(1))

    def test_empty_input_rejected(self):
        with pytest.raises(ValueError):
            strict_zero_combination([])

    def test_matches_elimination_oracle(self):
        rng = fresh_rng(salt=11)
        for _ in range(120):
            dim = rng.randrange(1, 4)
            count = rng.randrange(1, 6)
            gens = [
                tuple(F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(dim))
                for _ in range(count)
            ]
            ok, coeffs = strict_zero_combination(gens)
            assert ok == fm_strict_zero(gens)
            if ok:
                assert all(c >= 1 for c in coeffs)
                total = tuple(
                    sum((c * g[d] for c, g in zip(coeffs, gens)), F(0))
                    for d in range(dim)
                )
                assert total == tuple(F(0) for _ in range(dim))


class TestLinearRank:
    def test_collinear(self):
        assert linear_rank([(1,), (-1,), (1,)]) == 1

    def test_plane(self):
        assert linear_rank([(1, 0), (0, 1), (-1, -1)]) == 2

    def test_empty(self):
        assert linear_rank([]) == 0

    def test_agrees_with_transposed_echelon(self):
        rng = fresh_rng(salt=12)
        for _ in range(150):
            dim = rng.randrange(1, 5)
            count = rng.randrange(1, 6)
            vecs = [
                tuple(F(rng.randint(-5, 5)) for _ in range(dim))
                for _ in range(count)
            ]
            assert linear_rank(vecs) == echelon_rank_transposed(vecs)


def test_determinant_basics():
    assert determinant([[2]]) == 2
    assert determinant([[1, 2], [3, 4]]) == -2
    assert determinant([[1, 2], [2, 4]]) == 0
    with pytest.raises(DimensionError):
        determinant([[1, 2]])


class TestSmithNormalForm:
    def _check_factorization(self, m):
        u, d, v = smith_normal_form(m)
        rows, cols = len(m), len(m[0]) if m else 0
        product = [
            [
                sum(u[i][a] * m[a][b] * v[b][j] for a in range(rows) for b in range(cols))
                for j in range(cols)
            ]
            for i in range(rows)
        ]
        assert product == d
        assert determinant(u) in (1, -1)
        assert determinant(v) in (1, -1)
        diag = [d[i][i] for i in range(min(rows, cols))]
        for i in range(len(diag)):
            assert diag[i] >= 0
            for j in range(i):
                assert d[i][j] == 0 and d[j][i] == 0
        for a, b in zip(diag, diag[1:]):
            if a != 0:
                assert b % a == 0
            else:
                assert b == 0
        for i in range(rows):
            for j in range(cols):
                if i != j:
                    assert d[i][j] == 0
        return diag

    def test_single_entry(self):
        diag = self._check_factorization([[2]])
        assert diag == [2]

    def test_rank_one_two_by_two(self):
        diag = self._check_factorization([[1, 1], [0, 0]])
        assert diag == [1, 0]

    def test_chain_relations(self):
        diag = self._check_factorization([[1, 2, 0], [0, 1, 2]])
        assert diag == [1, 1]

    def test_random_battery(self):
        rng = fresh_rng(salt=13)
        for _ in range(60):
            rows = rng.randrange(1, 5)
            cols = rng.randrange(1, 5)
            m = [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
            self._check_factorization(m)


class TestSerialization:
    def test_parse_plain_and_fraction(self):
        assert parse_rational("7") == 7
        assert parse_rational("-3/6") == F(-1, 2)

    def test_parse_rejects_garbage(self):
        for bad in ("", "1/0", "1.5", "a", "1/-2", " 1", None):
            with pytest.raises(ValueError):
                parse_rational(bad)

    def test_format_reduces(self):
        assert format_rational(F(4, 2)) == "2"
        assert format_rational(F(-1, 2)) == "-1/2"

    def test_vector_round_trip(self):
        rng = fresh_rng(salt=14)
        for _ in range(50):
            v = tuple(
                F(rng.randint(-20, 20), rng.randint(1, 20)) for _ in range(3)
            )
            assert parse_vector(format_vector(v)) == v
