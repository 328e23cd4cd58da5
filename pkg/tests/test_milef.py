import random
from fractions import Fraction as F

import pytest

from _gen import random_milef, random_polytope, random_unimodular
from milefkit.matching import matching_polytope_hrep, parity_milef
from milefkit.milef import (InfeasibleError, Milef, integer_bounds, lift_constraint_rows, mih_brute_force,
                            normalize_direction, reparameterize, separate_projection, slice_along,
                            slice_disjunction, verify_milef)
from milefkit.polyhedron import (HPolyhedron, UnboundedError, VPolytope, facet_enum, le, poly_contains,
                                 vertex_enum)

EVEN3 = VPolytope(3, [(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)])
CUBE3 = VPolytope(3, [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)])


def interval(lo, hi, I=(0,), J=(0,)):
    return Milef(HPolyhedron.box([lo], [hi]), I, J)


def test_milef_validation():
    with pytest.raises(ValueError):
        Milef(HPolyhedron.box([0], [1]), (0,), (1,))
    with pytest.raises(ValueError):
        Milef(HPolyhedron.box([0, 0], [1, 1]), (0, 0), ())
    M = parity_milef(3)
    assert (M.p, M.d, M.k, M.m) == (4, 3, 1, 6)


def test_integer_bounds_examples():
    sq = Milef(HPolyhedron.box([0, 0], [1, 1]), (0, 1), (0, 1))
    assert integer_bounds(sq, [1, 1]) == (0, 2)
    assert integer_bounds(interval(0, F(5, 2)), [1]) == (0, 2)
    assert integer_bounds(interval(F(1, 3), F(2, 3)), [1]) == (1, 0)


def test_integer_bounds_errors():
    ray = Milef(HPolyhedron(1, (le([-1], 0),)), (0,), (0,))
    with pytest.raises(UnboundedError) as info:
        integer_bounds(ray, [1])
    assert info.value.ray is not None
    with pytest.raises(InfeasibleError):
        integer_bounds(Milef(HPolyhedron.empty(1), (0,), (0,)), [1])


def test_mih_examples():
    assert mih_brute_force(parity_milef(3)) == EVEN3
    assert mih_brute_force(interval(0, F(5, 2))).vertices == ((0,), (2,))
    Q = HPolyhedron.box([0, 0], [F(3, 2), 1])
    assert mih_brute_force(Milef(Q, (0,), ())) == vertex_enum(Q).project([0])


def test_mih_empty_and_unbounded():
    assert mih_brute_force(interval(F(1, 3), F(2, 3))).is_empty
    with pytest.raises(UnboundedError):
        mih_brute_force(Milef(HPolyhedron(1, (le([-1], 0),)), (0,), (0,)))


def test_separate_projection_preserves_semantics():
    sq = Milef(HPolyhedron.box([0, 0], [F(3, 2), F(5, 2)]), (0, 1), (0, 1))
    sep = separate_projection(sq)
    assert not set(sep.I) & set(sep.J)
    assert mih_brute_force(sep) == mih_brute_force(sq)


def test_reparameterize_examples():
    base = separate_projection(Milef(HPolyhedron.box([0, 0], [F(3, 2), F(5, 2)]), (0, 1), (0, 1)))
    same = reparameterize(base, ((1, 0), (0, 1)))
    assert same.Q.canonical() == base.Q.canonical()
    shear = reparameterize(base, ((1, 1), (0, 1)))
    assert mih_brute_force(shear) == mih_brute_force(base)
    swap = reparameterize(base, ((0, 1), (1, 0)))
    j0, j1 = base.J
    for old, new in zip(base.Q.constraints, swap.Q.constraints):
        assert (new.a[j0], new.a[j1]) == (old.a[j1], old.a[j0])


def test_reparameterize_errors():
    M = separate_projection(Milef(HPolyhedron.box([0, 0], [1, 1]), (0, 1), (0, 1)))
    with pytest.raises(ValueError, match="unimodular"):
        reparameterize(M, ((2, 0), (0, 1)))
    with pytest.raises(ValueError, match="overlap"):
        reparameterize(Milef(HPolyhedron.box([0], [1]), (0,), (0,)), ((1,),))


def test_reparameterize_invariance_random():
    rng = random.Random(21)
    for _ in range(30):
        M = separate_projection(random_milef(rng))
        U = random_unimodular(rng, M.k)
        assert mih_brute_force(reparameterize(M, U)) == mih_brute_force(M)


def test_slice_examples():
    M = interval(0, F(5, 2))
    S = slice_disjunction(M, 0, 0, 2)
    assert (S.p, S.m, S.k) == (1 * 3 + 1 + 3, (M.m + 1) * 3, 0)
    assert mih_brute_force(S).vertices == ((0,), (2,))
    P = parity_milef(3)
    S = slice_disjunction(P, 3, 0, 1)
    assert S.J == ()
    assert mih_brute_force(S) == EVEN3


def test_slice_single_level():
    M = Milef(HPolyhedron.box([0, 0], [2, 2]), (0, 1), (1,))
    S = slice_disjunction(M, 1, 1, 1, check_bounds=False)
    assert S.J == ()
    assert mih_brute_force(S).vertices == ((0, 1), (2, 1))


def test_slice_empty_range_is_empty_formulation():
    M = interval(F(1, 3), F(2, 3))
    S = slice_disjunction(M, 0, 1, 0)
    assert S.m == 0 and mih_brute_force(S).is_empty


def test_slice_precondition():
    with pytest.raises(ValueError):
        slice_disjunction(interval(0, F(5, 2)), 0, 0, 1)
    with pytest.raises(ValueError):
        slice_disjunction(interval(0, 1), 0, 3, 0)


def test_slice_exact_for_one_integer_variable_random():
    rng = random.Random(2)
    for _ in range(60):
        M = random_milef(rng, max_k=1)
        try:
            ell, u = integer_bounds(M, [1])
        except InfeasibleError:
            ell, u = 1, 0
        S = slice_disjunction(M, M.J[0], ell, u)
        gamma = u - ell + 1
        assert (S.p, S.m) == (M.p * gamma + M.p + gamma, (M.m + 1) * gamma)
        assert mih_brute_force(S) == mih_brute_force(M)


def test_slice_hull_with_two_integer_variables_can_add_points():
    # x0 in {0, 1} and x1 integral: the segment at x0 = 0 lies in (-1/2, -1/5),
    # the one at x0 = 1 in (1/5, 1/2); neither meets x1 in Z.  The slice hull
    # keeps x1 integral only on the combined copy, where x1 = 0 is reachable.
    pts = [(0, F(-1, 2)), (0, F(-1, 5)), (1, F(1, 5)), (1, F(1, 2))]
    M = Milef(facet_enum(VPolytope(2, pts)), (0, 1), (0, 1))
    assert mih_brute_force(M).is_empty
    S = slice_disjunction(M, 0, 0, 1)
    assert mih_brute_force(S).vertices == ((F(2, 7), 0), (F(5, 7), 0))


def test_normalize_direction():
    assert normalize_direction((2, 4), -3, 5) == ((1, 2), -2, 3)
    with pytest.raises(ValueError):
        normalize_direction((0, 0), 0, 0)


def test_gcd_direction_matches_divided_direction():
    rng = random.Random(13)
    for g in (2, 3):
        for _ in range(10):
            M = random_milef(rng, max_k=1)
            try:
                ell, u = integer_bounds(M, [g])
            except InfeasibleError:
                continue
            a = slice_along(M, [g], ell, u)
            b = slice_along(M, [1], ell // g, -((-u) // g))
            assert mih_brute_force(a) == mih_brute_force(b) == mih_brute_force(M)


def test_mih_monotone_random():
    rng = random.Random(17)
    for _ in range(30):
        M = random_milef(rng)
        extra = random_polytope(rng, M.p, 1).constraints[-1]
        smaller = Milef(M.Q.with_constraints([extra]), M.I, M.J)
        big, small = mih_brute_force(M), mih_brute_force(smaller)
        if not big.is_empty:
            assert poly_contains(facet_enum(big), small)
        else:
            assert small.is_empty


def test_verify_milef_examples():
    P = parity_milef(3)
    assert verify_milef(P, EVEN3)
    res = verify_milef(P, CUBE3)
    assert not res and res.witness_side == "target"
    # any odd-weight cube vertex is a valid witness; the search reports the
    # lexicographically first one
    assert sum(res.witness) % 2 == 1
    assert res.witness == (0, 0, 1)
    H = matching_polytope_hrep((1, 2, 3))
    trivial = Milef(H, (0, 1, 2), ())
    assert verify_milef(trivial, H)
    with pytest.raises(ValueError):
        verify_milef(P, VPolytope(2, [(0, 0)]))


def test_lift_constraint_rows():
    rows = lift_constraint_rows([le([1, 2], 3)], 4, [3, 1])
    assert rows[0].a == (0, 2, 0, 1) and rows[0].b == 3
