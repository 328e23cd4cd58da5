"""Seeded random instances shared by the test modules."""

import itertools
import random
from fractions import Fraction

from milefkit.matching import CompleteGraph, matching_polytope_hrep
from milefkit.milef import Milef, lift_constraint_rows
from milefkit.polyhedron import HPolyhedron, eq, le


def rand_rat(rng: random.Random, lo: int, hi: int, dens=(1, 2, 3)) -> Fraction:
    d = rng.choice(dens)
    return Fraction(rng.randint(lo * d, hi * d), d)


def random_polytope(rng: random.Random, dim: int, extra: int) -> HPolyhedron:
    """A box around a random centre cut by ``extra`` random rows through its neighbourhood."""
    center = [rand_rat(rng, -1, 1) for _ in range(dim)]
    rows = []
    for j in range(dim):
        e = [0] * dim
        e[j] = 1
        rows.append(le(e, center[j] + rand_rat(rng, 0, 2)))
        e = [0] * dim
        e[j] = -1
        rows.append(le(e, -(center[j] - rand_rat(rng, 0, 2))))
    for _ in range(extra):
        a = [rng.randint(-2, 2) for _ in range(dim)]
        if not any(a):
            continue
        rows.append(le(a, sum(x * c for x, c in zip(a, center)) + rand_rat(rng, 0, 2)))
    return HPolyhedron(dim, tuple(rows))


def random_milef(rng: random.Random, max_p: int = 4, max_k: int = 2, max_m: int = 8) -> Milef:
    """Bounded MILEF with p <= max_p, |J| <= max_k and at most max_m inequalities."""
    p = rng.randint(1, max_p)
    k = rng.randint(1, min(max_k, p))
    J = tuple(sorted(rng.sample(range(p), k)))
    I = tuple(sorted(rng.sample(range(p), rng.randint(1, p))))
    Q = random_polytope(rng, p, rng.randint(0, max_m - 2 * p))
    return Milef(Q, I, J)


def random_unimodular(rng: random.Random, k: int, steps: int = 6) -> tuple:
    """Product of at most ``steps`` elementary integer matrices."""
    U = [[int(i == j) for j in range(k)] for i in range(k)]
    for _ in range(rng.randint(0, steps)):
        kind = rng.choice(["add", "swap", "neg"]) if k > 1 else "neg"
        if kind == "add":
            i, j = rng.sample(range(k), 2)
            c = rng.choice([-2, -1, 1, 2])
            U[i] = [a + c * b for a, b in zip(U[i], U[j])]
        elif kind == "swap":
            i, j = rng.sample(range(k), 2)
            U[i], U[j] = U[j], U[i]
        else:
            i = rng.randrange(k)
            U[i] = [-a for a in U[i]]
    return tuple(map(tuple, U))


def lattice_free_simplex(rng: random.Random, d: int) -> list[tuple]:
    """Vertices of a lattice-free simplex moved by a random unimodular shear and translation."""
    base = [tuple([0] * d)] + [tuple(int(i == j) for j in range(d)) for i in range(d)]
    shape = rng.randrange(3)
    if shape == 1:
        # doubled simplex: its interior still misses the lattice
        base = [tuple(2 * x for x in v) for v in base] if d == 2 else base
    elif shape == 2 and d == 3:
        # Reeve tetrahedron
        base = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, rng.randint(2, 6))]
    U = random_unimodular(rng, d)
    shift = [rng.randint(-3, 3) for _ in range(d)]
    return [tuple(sum(U[i][j] * v[j] for j in range(d)) + shift[i] for i in range(d)) for v in base]


def integer_points_in_box(lo, hi):
    return itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))


def literal_k5():
    """x >= 0, degree rows, the |S| = 5 odd-set row, z = x(E({1,2,3})), 0 <= z <= 3/2."""
    V = tuple(range(1, 6))
    H = matching_polytope_hrep(V)
    rows = list(H.constraints[:15]) + [H.constraints[-1]]
    rows = lift_constraint_rows(rows, 11, range(10))
    tri = [int(e[0] in (1, 2, 3) and e[1] in (1, 2, 3)) for e in CompleteGraph(V).edges]
    rows += [eq(tri + [-1], 0), le([0] * 10 + [-1], 0), le([0] * 10 + [1], Fraction(3, 2))]
    return Milef(HPolyhedron(11, tuple(rows)), tuple(range(10)), (10,), "literal-k5", V)
