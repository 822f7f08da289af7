import random
from fractions import Fraction

import pytest

from fanoscaffold.errors import DomainError
from fanoscaffold.exact import (
    det,
    hermite_normal_form,
    identity_matrix,
    integer_solution,
    kernel_basis,
    linear_feasible,
    mat_mul,
    mat_vec,
    positive_combination,
    primitive_vector,
    rank,
    row_space_equal,
    simplex_max,
    solve_linear,
    transpose,
    unimodular_inverse,
)


def test_hnf_known_cases():
    H, U = hermite_normal_form([[1, 1], [0, 1]])
    assert H == ((1, 0), (0, 1))
    assert mat_mul(U, ((1, 1), (0, 1))) == H

    H, U = hermite_normal_form([[2, 4], [1, 3]])
    assert H == ((1, 1), (0, 2))

    # zero rows sink to the bottom
    H, _ = hermite_normal_form([[0, 0], [3, 6]])
    assert H == ((3, 6), (0, 0))


def test_hnf_properties_random():
    rng = random.Random(7)
    for _ in range(40):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        A = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
        H, U = hermite_normal_form(A)
        assert mat_mul(U, A) == H
        assert det(U) in (1, -1)
        # idempotence and canonical form
        H2, _ = hermite_normal_form(H)
        assert H2 == H
        assert row_space_equal(A, H)
        # pivots positive, entries above reduced
        for i, row in enumerate(H):
            piv = next((j for j in range(n) if row[j] != 0), None)
            if piv is None:
                continue
            assert row[piv] > 0
            for k in range(i):
                assert 0 <= H[k][piv] < row[piv]


def test_kernel_basis():
    K = kernel_basis([[1, 1, 1]])
    assert K == [(1, 0, -1), (0, 1, -1)]
    for v in K:
        assert sum(v) == 0

    # saturation: the integer kernel of (2 4) is generated by (2, -1)
    assert kernel_basis([[2, 4]]) == [(2, -1)]

    assert kernel_basis([[1, 0], [0, 1]]) == []
    assert kernel_basis([], ncols=2) == [(1, 0), (0, 1)]


def test_kernel_basis_random():
    rng = random.Random(11)
    for _ in range(30):
        m = rng.randint(1, 3)
        n = rng.randint(1, 5)
        A = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(m)]
        K = kernel_basis(A)
        for v in K:
            assert all(x == 0 for x in mat_vec(A, v))
        assert len(K) == n - rank(A)


def test_unimodular_inverse():
    assert unimodular_inverse(identity_matrix(3)) == identity_matrix(3)
    assert unimodular_inverse([[1, 1], [0, 1]]) == ((1, -1), (0, 1))
    with pytest.raises(DomainError):
        unimodular_inverse([[2, 0], [0, 1]])
    with pytest.raises(DomainError):
        unimodular_inverse([[1, 0, 0], [0, 1, 0]])


def test_solve_and_det():
    assert solve_linear([[2, 0], [0, 4]], [1, 1]) == (Fraction(1, 2), Fraction(1, 4))
    assert solve_linear([[1, 1], [1, 1]], [1, 2]) is None
    assert det([[1, 2], [3, 4]]) == -2
    assert det([]) == 1
    assert rank([[1, 2], [2, 4]]) == 1


def test_primitive_vector():
    assert primitive_vector((2, -4, 6)) == (1, -2, 3)
    with pytest.raises(DomainError):
        primitive_vector((0, 0))


def test_positive_combination_basic():
    gens = [(1, 0), (0, 1)]
    a = positive_combination(gens, (2, 3), strict=True)
    assert a == (2, 3)
    # (1, 0) is on the boundary of the cone: non-strict works, strict does not
    assert positive_combination(gens, (1, 0)) is not None
    assert positive_combination(gens, (1, 0), strict=True) is None
    assert positive_combination(gens, (-1, 0)) is None
    # empty generating set spans {0}
    assert positive_combination([], (0, 0)) == ()
    assert positive_combination([], (1, 0)) is None


def test_positive_combination_redundant_generators():
    gens = [(1, 0), (1, 1), (0, 1)]
    a = positive_combination(gens, (1, 1), strict=True)
    assert a is not None
    assert all(x > 0 for x in a)
    total = (sum(a[i] * g[0] for i, g in enumerate(gens)),
             sum(a[i] * g[1] for i, g in enumerate(gens)))
    assert total == (1, 1)


def test_positive_combination_random_exact():
    rng = random.Random(3)
    for _ in range(25):
        d = rng.randint(1, 4)
        m = rng.randint(1, 6)
        gens = [tuple(rng.randint(-4, 4) for _ in range(d)) for _ in range(m)]
        coeffs = [Fraction(rng.randint(0, 5), rng.randint(1, 3)) for _ in range(m)]
        target = tuple(sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(d))
        a = positive_combination(gens, target)
        assert a is not None
        got = tuple(sum(x * g[i] for x, g in zip(a, gens)) for i in range(d))
        assert got == target


def test_simplex_unbounded_and_infeasible():
    # max x subject to x - y = 1, x,y >= 0 is unbounded
    status, _, _ = simplex_max([[1, -1]], [1], [1, 0])
    assert status == "unbounded"
    # x + y = -1 with x,y >= 0 is infeasible
    status, _, _ = simplex_max([[1, 1]], [-1], [0, 0])
    assert status == "infeasible"
    # bounded optimum
    status, x, value = simplex_max([[1, 1, 1]], [3], [1, 2, 0])
    assert status == "optimal" and value == 6 and x == (0, 3, 0)


def test_linear_feasible():
    # triangle x >= 0, y >= 0, x + y <= 2; ask for a point with x + y >= 1
    pt = linear_feasible([((1, 0), 0), ((0, 1), 0), ((-1, -1), -2), ((1, 1), 1)], [], 2)
    assert pt is not None
    x, y = pt
    assert x >= 0 and y >= 0 and x + y <= 2 and x + y >= 1
    assert linear_feasible([((1,), 0), ((-1,), 1)], [], 1) is None
    # equations force the answer
    pt = linear_feasible([], [((1, 1), 2), ((1, -1), 0)], 2)
    assert pt == (1, 1)


def test_transpose_empty():
    assert transpose(()) == ()


def test_integer_solution_basic():
    x = integer_solution([(1, 0), (0, 1)], (3, -2))
    assert x == (3, -2)
    # 2a + b = 1 has no solution with b = 0, but (0, 1) works
    x = integer_solution([(2, 1)], (1,))
    assert x is not None and 2 * x[0] + x[1] == 1
    # even sum cannot hit an odd target
    assert integer_solution([(2, 2)], (1,)) is None
    # inconsistent over the rationals already
    assert integer_solution([(1, 1), (1, 1)], (0, 1)) is None


def test_integer_solution_random():
    rng = random.Random(11)
    for _ in range(30):
        m = rng.randint(1, 4)
        n = rng.randint(1, 4)
        A = [tuple(rng.randint(-5, 5) for _ in range(n)) for _ in range(m)]
        x0 = tuple(rng.randint(-4, 4) for _ in range(n))
        b = mat_vec(A, x0)
        x = integer_solution(A, b)
        assert x is not None
        assert mat_vec(A, x) == tuple(b)
