"""Lattice-free certification and flat-direction search.

Every width reported here is certified by exact LP.  The search itself
evaluates candidate directions on the exact vertex list, which gives the
same sup/inf as the LP for a polytope and is much cheaper in bulk.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .polyhedron import (EQ, HPolyhedron, LpStatus, UnboundedError, VPolytope, affine_hull,
                         as_hpolyhedron, lp_optimize, vertex_enum)
from .ratlin import dot, gcd_vector, lll_reduce, sign_normalized

Body = Union[HPolyhedron, VPolytope]

DEFAULT_SEARCH_BOUND = 10
EXHAUSTIVE_MAX_DIM = 3


def default_search_bound() -> int:
    return int(os.environ.get("MILEF_SEARCH_BOUND", DEFAULT_SEARCH_BOUND))


@dataclass(frozen=True)
class FlatDirection:
    v: tuple
    ell: int
    u: int
    width_real: Fraction

    @property
    def integer_width(self) -> int:
        return self.u - self.ell

    @property
    def gamma(self) -> int:
        return self.u - self.ell + 1


@dataclass(frozen=True)
class LatticeFreeReport:
    is_lattice_free: bool
    witness: tuple | None = None


@dataclass(frozen=True)
class Width:
    sup: Fraction
    inf: Fraction
    ell: int
    u: int


def _vertices(K: Body) -> VPolytope:
    return K if isinstance(K, VPolytope) else vertex_enum(K)


def lattice_free_check(K: Body) -> LatticeFreeReport:
    """Search the bounding box of K for an integer point strictly inside it.

    Lower-dimensional bodies have empty interior and are lattice-free.
    """
    V = _vertices(K)
    if V.is_empty or affine_hull(V).dim < V.dim:
        return LatticeFreeReport(True)
    H = as_hpolyhedron(K)
    rows = [c for c in H.constraints if c.rel != EQ or any(c.a)]
    ranges = [range(math.ceil(min(v[j] for v in V.vertices)),
                    math.floor(max(v[j] for v in V.vertices)) + 1) for j in range(V.dim)]
    for z in itertools.product(*ranges):
        if all(c.slack(z) > 0 for c in rows):
            return LatticeFreeReport(False, tuple(z))
    return LatticeFreeReport(True)


def width(K: Body, v) -> Width:
    """Exact sup/inf of ``v . x`` over K by LP, with integer rounding."""
    H = as_hpolyhedron(K)
    v = tuple(v)
    if not any(v):
        raise ValueError("direction must be nonzero")
    hi = lp_optimize(H, v, "max")
    lo = lp_optimize(H, v, "min")
    for res in (hi, lo):
        if res.status is LpStatus.UNBOUNDED:
            raise UnboundedError(f"body is unbounded in direction {v}", ray=res.ray)
        if res.status is LpStatus.INFEASIBLE:
            raise ValueError("body is empty")
    return Width(hi.value, lo.value, math.ceil(lo.value), math.floor(hi.value))


def degenerate_normal(K: Body) -> tuple:
    """Primitive integer normal of a hyperplane containing a lower-dimensional K."""
    V = _vertices(K)
    if V.is_empty:
        raise ValueError("body is empty")
    aff = affine_hull(V)
    if not aff.normals:
        raise ValueError("body is full-dimensional")
    return tuple(int(x) for x in aff.normals[0])


def _vertex_width(verts, v) -> tuple[int, int, Fraction]:
    vals = [dot(v, x) for x in verts]
    hi, lo = max(vals), min(vals)
    return math.ceil(lo), math.floor(hi), hi - lo


def _primitive_directions(d: int, bound: int):
    for v in itertools.product(range(-bound, bound + 1), repeat=d):
        if not any(v) or gcd_vector(v) != 1 or sign_normalized(v) != v:
            continue
        yield v


def _lll_candidates(verts: tuple, d: int) -> list[tuple]:
    n = len(verts)
    centroid = [sum(x[j] for x in verts) / n for j in range(d)]
    # row j of X: coordinate j of every centred vertex; the lattice Z^d mapped
    # through X has short vectors exactly in the thin directions of K
    X = [[x[j] - centroid[j] for x in verts] for j in range(d)]
    peak = max((abs(q) for row in X for q in row), default=Fraction(1)) or Fraction(1)
    scale = Fraction(1000 * d) / peak
    basis = [[int(i == j) for j in range(d)] + [round(q * scale) for q in X[i]] for i in range(d)]
    reduced = lll_reduce(basis)
    rows = [tuple(r[:d]) for r in reduced]
    cands = set()
    for r in rows:
        cands.add(r)
    for a, b in itertools.combinations(rows, 2):
        cands.add(tuple(x + y for x, y in zip(a, b)))
        cands.add(tuple(x - y for x, y in zip(a, b)))
    for j in range(d):
        cands.add(tuple(int(i == j) for i in range(d)))
    out = []
    for c in cands:
        if not any(c):
            continue
        g = gcd_vector(c)
        out.append(sign_normalized(tuple(x // g for x in c)))
    return sorted(set(out))


def flat_direction(K: Body, search_bound: int | None = None) -> FlatDirection:
    """Integer direction of minimum integer width ``u - ell`` over K.

    Lower-dimensional K gets its affine-hull normal (``ell == u``).  In
    dimension <= 3 every primitive vector with max-norm <= ``search_bound``
    is tried; above that, candidates come from LLL on the vertex cloud.
    Ties go to the lexicographically smallest direction.
    """
    if search_bound is None:
        search_bound = default_search_bound()
    if search_bound < 1:
        raise ValueError("search_bound must be positive")
    V = _vertices(K)
    if V.is_empty:
        raise ValueError("flat direction of an empty body")
    d = V.dim
    if d == 0:
        raise ValueError("flat direction in dimension 0")
    if affine_hull(V).dim < d:
        v = degenerate_normal(V)
    else:
        cands = (_primitive_directions(d, search_bound) if d <= EXHAUSTIVE_MAX_DIM
                 else _lll_candidates(V.vertices, d))
        best = None
        for c in cands:
            ell, u, _ = _vertex_width(V.vertices, c)
            key = (u - ell, c)
            if best is None or key < best:
                best = key
        v = best[1]
    w = width(V if isinstance(K, VPolytope) else K, v)
    return FlatDirection(tuple(v), w.ell, w.u, w.sup - w.inf)
