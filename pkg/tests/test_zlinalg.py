from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cechpattern.zlinalg import (
    DimensionMismatch,
    determinant,
    diagonal,
    hermite_rows,
    identity,
    invariant_factors,
    kernel_basis,
    matmul,
    matvec,
    smith_normal_form,
    solve_linear,
    zeros,
)


@st.composite
def matrices(draw, max_dim=6, bound=9):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    return [[draw(st.integers(-bound, bound)) for _ in range(n)] for _ in range(m)]


def check_snf(A):
    U, S, V = smith_normal_form(A)
    assert matmul(matmul(U, A), V) == S
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    m, n = len(S), len(S[0])
    assert all(S[i][j] == 0 for i in range(m) for j in range(n) if i != j)
    d = diagonal(S)
    assert all(x >= 0 for x in d)
    nz = [x for x in d if x]
    assert d[: len(nz)] == nz
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


def test_snf_examples():
    _, S, _ = smith_normal_form([[2, 4], [6, 8]])
    assert S == [[2, 0], [0, 4]]
    assert smith_normal_form(identity(3))[1] == identity(3)
    assert smith_normal_form(zeros(2, 3))[1] == zeros(2, 3)


def test_kernel_examples():
    assert kernel_basis([[1, 1]]) == [[1, -1]]
    assert kernel_basis(identity(3)) == []
    assert kernel_basis([[2, 4]]) == [[2, -1]]
    assert kernel_basis([], cols=2) == [[1, 0], [0, 1]]


def test_solve_examples():
    assert solve_linear([[2]], [4]) == [2]
    assert solve_linear([[2]], [3]) is None
    with pytest.raises(DimensionMismatch):
        solve_linear([[1, 2]], [1, 2])


@given(matrices())
def test_snf_properties(A):
    check_snf(A)


@given(matrices(), st.data())
def test_kernel_and_solve(A, data):
    n = len(A[0])
    for v in kernel_basis(A):
        assert matvec(A, v) == [0] * len(A)
    x0 = [data.draw(st.integers(-5, 5)) for _ in range(n)]
    b = matvec(A, x0)
    x = solve_linear(A, b)
    assert x is not None and matvec(A, x) == b
    assert len(kernel_basis(A)) + len(invariant_factors(A)) == n


@given(matrices(max_dim=4))
def test_kernel_is_saturated(A):
    # a Z-basis of the kernel spans every integer kernel vector, e.g. the
    # primitive ones found by brute force
    K = kernel_basis(A)
    n = len(A[0])
    import itertools

    for x in itertools.product(range(-2, 3), repeat=n):
        if any(x) and matvec(A, list(x)) == [0] * len(A):
            if not K:
                raise AssertionError("missing kernel")
            cols = len(K)
            M = [[K[j][i] for j in range(cols)] for i in range(n)]
            assert solve_linear(M, list(x)) is not None


def test_hermite_rows_canonical():
    a = hermite_rows([[2, 4], [0, 3]])
    b = hermite_rows([[2, 7], [0, 3], [2, 1]])
    assert a == b == [[2, 1], [0, 3]]
    assert hermite_rows([[0, 0]]) == []
