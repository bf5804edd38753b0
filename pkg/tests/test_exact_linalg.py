import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from ihforms.exact_linalg import (
    Feasible,
    Infeasible,
    ShapeMismatch,
    check_certificate,
    integer_solve,
    lp_feasible,
    rank_mod_p,
    rational_nullspace,
    rational_rank,
    rational_solve,
    smith,
)

small_int = st.integers(-9, 9)


def matrices(max_m=6, max_n=6):
    return st.integers(1, max_m).flatmap(
        lambda m: st.integers(1, max_n).flatmap(
            lambda n: st.lists(st.lists(small_int, min_size=n, max_size=n), min_size=m, max_size=m)))


# ---------------------------------------------------------------- Smith form


@given(matrices())
def test_smith_invariants_against_minors(A):
    sd = smith(A)
    assert sd.verify(A)
    assert sd.invariant_factors == oracles.invariant_factors_by_minors(A)


def test_smith_is_deterministic():
    A = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    a, b = smith(A), smith(A)
    for x, y in zip((a.U, a.D, a.V), (b.U, b.D, b.V)):
        assert np.array_equal(x, y)
    assert a.invariant_factors == [2, 6, 12]


def test_smith_big_entries_use_unbounded_path():
    A = [[2**70, 3], [5, 2**65 + 1]]
    sd = smith(A)
    assert sd.verify(A)
    assert sd.invariant_factors[-1] == abs(2**70 * (2**65 + 1) - 15)


@pytest.mark.parametrize("shape", [(0, 3), (3, 0), (0, 0)])
def test_smith_empty(shape):
    sd = smith(np.zeros(shape, dtype=int))
    assert sd.rank == 0


def test_smith_rejects_vectors():
    with pytest.raises(ShapeMismatch):
        smith([1, 2, 3])


# ---------------------------------------------------------------- integer solving


@given(matrices(5, 5), st.data())
def test_integer_solve_plant_and_solve(A, data):
    n = len(A[0])
    x0 = data.draw(st.lists(small_int, min_size=n, max_size=n))
    b = [sum(a * x for a, x in zip(row, x0)) for row in A]
    x = integer_solve(A, b)
    assert x is not None
    assert [sum(a * v for a, v in zip(row, x)) for row in A] == b


def test_integer_solve_detects_divisibility_obstruction():
    assert integer_solve([[2, 4]], [3]) is None
    assert integer_solve([[2, 4]], [6]) is not None
    assert integer_solve([[1, 1], [1, 1]], [1, 2]) is None


def test_integer_solve_shape_check():
    with pytest.raises(ShapeMismatch):
        integer_solve([[1, 2]], [1, 2])


# ---------------------------------------------------------------- rational solving


@given(matrices(), st.data())
def test_rational_solve_consistent(A, data):
    n = len(A[0])
    x0 = [Fraction(p, q) for p, q in data.draw(
        st.lists(st.tuples(small_int, st.integers(1, 7)), min_size=n, max_size=n))]
    b = [sum(a * x for a, x in zip(row, x0)) for row in A]
    x = rational_solve(A, b)
    assert [sum(a * v for a, v in zip(row, x)) for row in A] == b


def test_rational_solve_inconsistent_certificate():
    A = [[1, 2], [2, 4], [0, 1]]
    b = [1, 3, 0]
    assert rational_solve(A, b) is None
    kind, y = rational_solve(A, b, certificate=True)
    assert kind == "inconsistent"
    assert [sum(y[i] * A[i][j] for i in range(3)) for j in range(2)] == [0, 0]
    assert sum(yi * bi for yi, bi in zip(y, b)) == 1


@given(matrices(6, 7))
def test_nullspace_and_rank(A):
    r = rational_rank(A)
    assert r == oracles.rank(A)
    ker = rational_nullspace(A)
    assert len(ker) == len(A[0]) - r
    for v in ker:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)
    assert rank_mod_p(A) <= r


def test_rank_of_large_structured_matrix():
    rng = random.Random(7)
    B = [[rng.randint(-3, 3) for _ in range(12)] for _ in range(5)]
    C = [[rng.randint(-3, 3) for _ in range(5)] for _ in range(30)]
    A = np.dot(np.array(C, dtype=object), np.array(B, dtype=object)).tolist()
    assert rational_rank(A) == oracles.rank(A) == 5


# ---------------------------------------------------------------- LP


def _random_lp(rng):
    n = rng.randint(1, 3)
    m_eq = rng.randint(0, 2)
    m_ge = rng.randint(0, 6 - m_eq)
    A = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(m_eq)]
    b = [rng.randint(-4, 4) for _ in range(m_eq)]
    C = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(m_ge)]
    d = [rng.randint(-4, 4) for _ in range(m_ge)]
    return n, A, b, C, d, rng.random() < 0.5


@pytest.mark.parametrize("method", ["auto", "exact"])
def test_lp_against_vertex_enumeration(method):
    rng = random.Random(2024)
    seen = {True: 0, False: 0}
    for _ in range(150):
        n, A, b, C, d, nonneg = _random_lp(rng)
        if not A and not C:
            continue
        out = lp_feasible(A or None, b or None, C or None, d or None, nonneg=nonneg, n_vars=n, method=method)
        want = oracles.lp_feasible_oracle(A, b, C, d, n, nonneg)
        assert isinstance(out, Feasible) == want
        assert check_certificate(out, A or None, b or None, C or None, d or None, nonneg=nonneg, n_vars=n)
        seen[want] += 1
    assert min(seen.values()) > 20


def test_farkas_semantics():
    out = lp_feasible(C_ge=[[1], [-1]], d_ge=[1, 0], n_vars=1)
    assert isinstance(out, Infeasible)
    assert all(v >= 0 for v in out.y_ge)
    assert out.y_ge[0] * 1 + out.y_ge[1] * -1 == 0
    assert out.y_ge[0] * 1 + out.y_ge[1] * 0 > 0


def test_nonneg_infeasible():
    out = lp_feasible([[1, 1]], [-1], nonneg=True)
    assert isinstance(out, Infeasible)
    assert check_certificate(out, [[1, 1]], [-1], nonneg=True)
    assert not check_certificate(Infeasible((Fraction(1),), ()), [[1, 1]], [-1], nonneg=True)


def test_tampered_solution_rejected():
    out = lp_feasible(C_ge=[[1, 1]], d_ge=[2], n_vars=2)
    assert check_certificate(out, C_ge=[[1, 1]], d_ge=[2], n_vars=2)
    assert not check_certificate(Feasible((0, 0)), C_ge=[[1, 1]], d_ge=[2], n_vars=2)


def test_lp_rejects_unknown_method_and_bad_shapes():
    with pytest.raises(ValueError):
        lp_feasible(C_ge=[[1]], d_ge=[1], method="simplex")
    with pytest.raises(ShapeMismatch):
        lp_feasible(C_ge=[[1, 2]], d_ge=[1, 2])


def test_degenerate_lp_terminates():
    # classic cycling example for naive pivot rules
    C = [[-Fraction(1, 4), 8, 1, -Fraction(1, 2)], [-Fraction(1, 2), 12, Fraction(1, 2), -3], [0, 0, -1, 0]]
    out = lp_feasible(C_ge=C, d_ge=[0, 0, -1], nonneg=True, method="exact")
    assert isinstance(out, Feasible)
