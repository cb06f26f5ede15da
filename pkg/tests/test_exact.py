from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from braidcone.exact import inconsistency, solve


def _check_certificate(A, b, cert):
    ncols = len(A[0])
    combo = [sum(c * A[i][k] for i, c in zip(cert.rows, cert.coefficients)) for k in range(ncols)]
    assert combo == [0] * ncols
    assert sum(c * b[i] for i, c in zip(cert.rows, cert.coefficients)) == cert.total != 0


def test_unique_solution():
    assert solve([[1, 1], [1, -1]], [3, 1], 2) == (Fraction(2), Fraction(1))


def test_inconsistent_returns_none_with_certificate():
    A, b = [[1, 1], [1, 1], [1, 0]], [1, 2, 0]
    assert solve(A, b, 2) is None
    cert = inconsistency(A, b, 2)
    _check_certificate(A, b, cert)
    assert cert.rows == (0, 1)


def test_rank_deficient_raises():
    with pytest.raises(ValueError):
        solve([[1, 1], [2, 2]], [1, 2], 2)


def test_consistent_has_no_certificate():
    assert inconsistency([[1, 0], [0, 1]], [1, 1], 2) is None


matrices = st.integers(2, 5).flatmap(
    lambda n: st.tuples(
        st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n + 3),
        st.lists(st.integers(-3, 3), min_size=n + 3, max_size=n + 3),
        st.just(n),
    )
)


@given(matrices)
@settings(max_examples=200, deadline=None)
def test_agrees_with_sympy(data):
    A, b, n = data
    b = b[: len(A)]
    M = sympy.Matrix(A)
    aug = M.row_join(sympy.Matrix(b))
    consistent = M.rank() == aug.rank()
    if consistent and M.rank() < n:
        with pytest.raises(ValueError):
            solve(A, b, n)
        return
    x = solve(A, b, n)
    if not consistent:
        assert x is None
        cert = inconsistency(A, b, n)
        _check_certificate(A, b, cert)
        # irreducible: every proper subsystem is consistent
        for drop in cert.rows:
            rows = [i for i in cert.rows if i != drop]
            sub = sympy.Matrix([A[i] for i in rows]) if rows else sympy.zeros(0, n)
            if rows:
                assert sub.rank() == sub.row_join(sympy.Matrix([b[i] for i in rows])).rank()
    else:
        sol = M.LUsolve(sympy.Matrix(b)) if M.shape[0] == n else M.solve_least_squares(sympy.Matrix(b))
        assert [Fraction(int(v.p), int(v.q)) for v in sol] == list(x)
