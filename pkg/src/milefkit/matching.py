"""Matching polytopes of complete graphs and the parity-polytope formulation.

Vertices are arbitrary sortable labels (the CLI uses 1..n).  Edges of a
vertex set W are the pairs ``(i, j)``, ``i < j``, in lexicographic order;
the coordinate of an edge in R^{E(W)} is its position in that order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .milef import Milef, lift_constraint_rows
from .polyhedron import (HPolyhedron, LinearConstraint, LpStatus, VPolytope, eq, fourier_motzkin_project,
                         le, lp_optimize, same_set)


@dataclass(frozen=True)
class CompleteGraph:
    vertices: tuple

    def __init__(self, vertices: Iterable):
        verts = tuple(sorted(set(vertices)))
        object.__setattr__(self, "vertices", verts)

    @classmethod
    def of_order(cls, n: int) -> "CompleteGraph":
        return cls(range(1, n + 1))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> tuple:
        return tuple(itertools.combinations(self.vertices, 2))

    @property
    def edge_index(self) -> dict:
        return {e: i for i, e in enumerate(self.edges)}


def edges(W: Iterable) -> tuple:
    return CompleteGraph(W).edges


def odd_sets(W: Iterable) -> list[tuple]:
    """Odd subsets of size >= 3, by size and then lexicographically."""
    verts = tuple(sorted(set(W)))
    return [S for size in range(3, len(verts) + 1, 2) for S in itertools.combinations(verts, size)]


def matching_polytope_hrep(W: Iterable) -> HPolyhedron:
    """Nonnegativity, degree and odd-set rows of P_M(W) over R^{E(W)}."""
    G = CompleteGraph(W)
    E = G.edges
    n_e = len(E)
    rows = []
    for i in range(n_e):
        a = [0] * n_e
        a[i] = -1
        rows.append(le(a, 0))
    for v in G.vertices:
        rows.append(le([int(v in e) for e in E], 1))
    for S in odd_sets(G.vertices):
        s = set(S)
        rows.append(le([int(e[0] in s and e[1] in s) for e in E], Fraction(len(S) - 1, 2)))
    return HPolyhedron(n_e, tuple(rows))


def _matchings(verts: tuple) -> Iterable[frozenset]:
    if len(verts) < 2:
        yield frozenset()
        return
    first, rest = verts[0], verts[1:]
    # first vertex unmatched
    yield from _matchings(rest)
    for j, partner in enumerate(rest):
        remaining = rest[:j] + rest[j + 1:]
        for M in _matchings(remaining):
            yield M | {(first, partner)}


def matchings_enum(W: Iterable) -> VPolytope:
    """Characteristic vectors of all matchings of the complete graph on W."""
    G = CompleteGraph(W)
    E = G.edges
    pts = [tuple(int(e in M) for e in E) for M in _matchings(G.vertices)]
    return VPolytope(len(E), pts)


def parity_milef(d: int) -> Milef:
    """``x in [0,1]^d``, ``z = (x_1 + ... + x_d) / 2``, ``z`` integral."""
    if d < 1:
        raise ValueError("d must be at least 1")
    box = HPolyhedron.box([0] * d, [1] * d)
    rows = [LinearConstraint(c.a + (0,), c.rel, c.b) for c in box.constraints]
    rows.append(eq([Fraction(1, 2)] * d + [-1], 0))
    return Milef(HPolyhedron(d + 1, tuple(rows)), tuple(range(d)), (d,), f"parity-d{d}")


def lift_inequality(alpha_bar: Sequence, beta_bar, W: Iterable, V: Iterable) -> tuple[tuple, Fraction]:
    """Zero-pad a row over E(W) to E(V)."""
    EW, EV = edges(W), CompleteGraph(V).edge_index
    if not set(CompleteGraph(W).vertices) <= set(CompleteGraph(V).vertices):
        raise ValueError("W must be a subset of V")
    if len(alpha_bar) != len(EW):
        raise ValueError(f"row has {len(alpha_bar)} entries, E(W) has {len(EW)}")
    alpha = [Fraction(0)] * len(EV)
    for e, coeff in zip(EW, alpha_bar):
        alpha[EV[e]] = Fraction(coeff)
    return tuple(alpha), Fraction(beta_bar)


@dataclass(frozen=True)
class FacetCertificate:
    """A row of P_M(W) violated by Q, lifted to E(V), with its witness."""

    row_index: int
    alpha_bar: tuple
    beta_bar: Fraction
    alpha: tuple
    beta: Fraction
    witness: tuple
    value: Fraction | None  # None when Q is unbounded along alpha


def _graph_of(M: Milef, V: Iterable | None) -> tuple:
    if V is not None:
        verts = CompleteGraph(V).vertices
    elif M.vertices is not None:
        verts = CompleteGraph(M.vertices).vertices
    else:
        n = 0
        while n * (n - 1) // 2 < M.d:
            n += 1
        verts = tuple(range(1, n + 1))
    if len(edges(verts)) != M.d:
        raise ValueError(f"|I| = {M.d} does not match E(V) for V = {verts}")
    return verts


def find_violated_facet(M: Milef, W: Iterable, V: Iterable | None = None) -> FacetCertificate | None:
    """First row of P_M(W) (canonical order) whose lift is violated on Q.

    ``M.I`` must be indexed by E(V).  Returns None when every row holds on Q.
    """
    V = _graph_of(M, V)
    W = CompleteGraph(W).vertices
    if not set(W) <= set(V):
        raise ValueError(f"W = {W} is not a subset of V = {V}")
    H = matching_polytope_hrep(W)
    for idx, row in enumerate(H.constraints):
        alpha, beta = lift_inequality(row.a, row.b, W, V)
        c = [Fraction(0)] * M.p
        for coeff, i in zip(alpha, M.I):
            c[i] += coeff
        res = lp_optimize(M.Q, c, "max")
        if res.status is LpStatus.INFEASIBLE:
            return None
        if res.status is LpStatus.UNBOUNDED:
            probe = M.Q.with_constraints([le([-x for x in c], -(beta + 1))])
            point = lp_optimize(probe, [0] * M.p).point
            return FacetCertificate(idx, row.a, row.b, alpha, beta, point, None)
        if res.value > beta:
            return FacetCertificate(idx, row.a, row.b, alpha, beta, res.point, res.value)
    return None


def face_project_check(V: Iterable, W: Iterable, alpha_bar: Sequence, beta_bar) -> bool:
    """Does the face of P_M(V) cut by the lifted hyperplane project onto P_M(V \\ W)?"""
    GV = CompleteGraph(V)
    GW = CompleteGraph(W)
    if len(GW.vertices) < 2:
        raise ValueError("|W| must be at least 2")
    alpha, beta = lift_inequality(alpha_bar, beta_bar, GW.vertices, GV.vertices)
    PM = matching_polytope_hrep(GV.vertices)
    top = lp_optimize(PM, alpha, "max")
    if not top.optimal or top.value != beta:
        raise ValueError("hyperplane does not support P_M(V)")
    F = PM.with_constraints([eq(alpha, beta)])
    rest = tuple(v for v in GV.vertices if v not in set(GW.vertices))
    idx = GV.edge_index
    keep = [idx[e] for e in edges(rest)]
    proj = fourier_motzkin_project(F, keep)
    return bool(same_set(proj, matching_polytope_hrep(rest)))


def example_k3() -> Milef:
    """``x >= 0``, degree rows of K_3, ``z = sum x``, ``0 <= z <= 3/2``, z integral."""
    base = matching_polytope_hrep((1, 2, 3))
    rows = [c for c in base.constraints[:6]]
    rows = lift_constraint_rows(rows, 4, range(3))
    rows.append(eq([1, 1, 1, -1], 0))
    rows.append(le([0, 0, 0, -1], 0))
    rows.append(le([0, 0, 0, 1], Fraction(3, 2)))
    return Milef(HPolyhedron(4, tuple(rows)), (0, 1, 2), (3,), "example-k3", (1, 2, 3))


def stacked_odd_set_milef(n: int, groups: Sequence[Sequence], label: str = "") -> Milef:
    """Formulation of P_M(K_n) whose odd-set rows for ``groups`` are enforced by integrality.

    Q keeps nonnegativity, degree rows and every odd-set row except those of
    the listed vertex sets; each listed set S gets an integer variable
    ``z_S = x(E(S))`` with ``0 <= z_S <= |S|/2``.
    """
    V = tuple(range(1, n + 1))
    E = edges(V)
    ne = len(E)
    groups = [tuple(sorted(g)) for g in groups]
    for g in groups:
        if len(g) % 2 == 0 or len(g) < 3:
            raise ValueError(f"group {g} is not an odd set of size >= 3")
    skip = set(groups)
    H = matching_polytope_hrep(V)
    n_odd = len(odd_sets(V))
    all_odd = odd_sets(V)
    keep_rows = list(H.constraints[: len(H.constraints) - n_odd])
    keep_rows += [row for S, row in zip(all_odd, H.constraints[-n_odd:] if n_odd else ()) if S not in skip]
    p = ne + len(groups)
    rows = lift_constraint_rows(keep_rows, p, range(ne))
    for t, g in enumerate(groups):
        s = set(g)
        a = [Fraction(int(e[0] in s and e[1] in s)) for e in E] + [Fraction(0)] * len(groups)
        a[ne + t] = Fraction(-1)
        rows.append(eq(a, 0))
        lo = [0] * p
        lo[ne + t] = -1
        rows.append(le(lo, 0))
        hi = [0] * p
        hi[ne + t] = 1
        rows.append(le(hi, Fraction(len(g), 2)))
    J = tuple(range(ne, p))
    return Milef(HPolyhedron(p, tuple(rows)), tuple(range(ne)), J, label or f"stacked-k{n}", V)


def example_k5() -> Milef:
    """P_M(K_5) with the odd-set row of {1,2,3} replaced by ``z = x(E({1,2,3}))`` integral."""
    return stacked_odd_set_milef(5, [(1, 2, 3)], "example-k5")


def example_k7() -> Milef:
    """Two integer variables over the triangles {1,2,3} and {4,5,6} of K_7."""
    return stacked_odd_set_milef(7, [(1, 2, 3), (4, 5, 6)], "example-k7")
