import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from milefkit.ratlin import (as_rat, det, format_rat, gcd_vector, hnf, inverse, is_hnf, is_unimodular,
                             lll_reduce, mat_mul, nullspace, primitive, rank, solve_affine,
                             unimodular_completion, xgcd)


def test_as_rat_parses_strings_and_rejects_floats():
    assert as_rat("3/6") == Fraction(1, 2)
    assert as_rat(4) == 4
    with pytest.raises(TypeError):
        as_rat(0.5)
    with pytest.raises(TypeError):
        as_rat(True)


def test_format_rat():
    assert format_rat(Fraction(3)) == "3"
    assert format_rat(Fraction(-6, 4)) == "-3/2"


@given(st.fractions(), st.fractions().filter(lambda x: x != 0))
def test_rational_arithmetic_is_exact(a, b):
    assert (a + b) - b == a
    assert (a * b) / b == a


@pytest.mark.parametrize("v, g", [((4, 6), 2), ((0, 0), 0), ((3, 5, 7), 1), ((-8, 12), 4)])
def test_gcd_vector(v, g):
    assert gcd_vector(v) == g


def test_gcd_vector_empty():
    with pytest.raises(ValueError):
        gcd_vector(())


def test_primitive_clears_denominators():
    assert primitive((Fraction(1, 2), Fraction(-3, 4))) == (2, -3)


def test_solve_affine_identity():
    sol = solve_affine([[1, 0], [0, 1]], [2, 3])
    assert sol.point == (2, 3)
    assert sol.basis == ()


def test_solve_affine_one_equation():
    sol = solve_affine([[1, 1]], [1])
    assert sol.contains((1, 0))
    assert len(sol.basis) == 1
    d = sol.basis[0]
    # the direction spans the same line as (1, -1)
    assert d[0] * -1 - d[1] * 1 == 0 and any(d)
    assert sol.contains((5, -4))
    assert not sol.contains((1, 1))


def test_solve_affine_infeasible_and_shape():
    assert solve_affine([[1, 1], [1, 1]], [1, 2]) is None
    with pytest.raises(ValueError):
        solve_affine([[1, 1]], [1, 2])


def test_nullspace_and_rank():
    assert rank([[1, 2], [2, 4]]) == 1
    ns = nullspace([[1, 2], [2, 4]], 2)
    assert len(ns) == 1 and ns[0][0] + 2 * ns[0][1] == 0


def test_hnf_examples():
    H, U = hnf([[1, 0], [0, 1]])
    assert H == ((1, 0), (0, 1)) and U == ((1, 0), (0, 1))
    H, U = hnf([[2, 4]])
    assert H == ((2, 4),) and U == ((1,),)
    H, U = hnf([[4], [6]])
    assert H == ((2,), (0,))
    assert mat_mul(U, [[4], [6]]) == H
    assert abs(det(U)) == 1


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 6).flatmap(lambda m: st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-50, 50), min_size=n, max_size=n), min_size=m, max_size=m))))
def test_hnf_property(M):
    H, U = hnf(M)
    assert mat_mul(U, M) == H
    assert is_hnf(H)
    assert abs(det(U)) == 1


def test_xgcd():
    for a, b in [(240, 46), (-7, 3), (0, 5), (0, 0), (6, -4)]:
        g, s, t = xgcd(a, b)
        assert g >= 0 and s * a + t * b == g


def test_unimodular_completion_examples():
    assert unimodular_completion((1, 0, 0)) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    U = unimodular_completion((2, 3))
    assert U[0] == (2, 3) and abs(det(U)) == 1
    with pytest.raises(ValueError, match="gcd"):
        unimodular_completion((2, 4))


def test_unimodular_completion_random_coprime():
    rng = random.Random(7)
    done = 0
    while done < 1000:
        n = rng.randint(1, 6)
        v = tuple(rng.randint(-20, 20) for _ in range(n))
        if gcd_vector(v) != 1:
            continue
        U = unimodular_completion(v)
        assert U[0] == v
        assert abs(det(U)) == 1
        done += 1


def test_inverse_of_unimodular_is_integral():
    U = ((2, 3), (1, 2))
    assert is_unimodular(U)
    Ui = inverse(U)
    assert mat_mul(U, Ui) == ((1, 0), (0, 1))
    assert all(isinstance(x, int) for row in Ui for x in row)


def _same_lattice(A, B):
    return hnf(A)[0] == hnf(B)[0]


def _norm2(v):
    return sum(x * x for x in v)


def test_lll_examples():
    assert lll_reduce([[1, 0], [0, 1]]) == ((1, 0), (0, 1))
    B = [[1, 0], [4, 1]]
    R = lll_reduce(B)
    assert _same_lattice(B, R)
    assert max(map(_norm2, R)) <= max(map(_norm2, B))
    B = [[201, 37], [1665, 307]]
    R = lll_reduce(B)
    assert abs(det(R)) == abs(det(B))
    assert _same_lattice(B, R)
    assert _norm2(R[0]) < _norm2(B[0])


def test_lll_dependent_rows():
    with pytest.raises(ValueError, match="dependent"):
        lll_reduce([[1, 2], [2, 4]])


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(
    st.lists(st.integers(-30, 30), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_lll_preserves_lattice(B):
    if det(B) == 0:
        return
    R = lll_reduce(B)
    assert _same_lattice(B, R)
    assert abs(det(R)) == abs(det(B))
