"""Mixed-integer linear extended formulations.

A :class:`Milef` is a polyhedron ``Q`` in R^p together with projection
coordinates ``I`` and integer coordinates ``J``.  It describes the polytope

    proj_I( conv( {x in Q : x_j integral for j in J} ) )

which :func:`mih_brute_force` computes literally, one integer slice at a
time.  The transformations here (unimodular reparameterization and the
disjunctive slice hull) must leave that set unchanged.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .polyhedron import (EQ, LE, HPolyhedron, LinearConstraint, LpStatus, UnboundedError,
                         VPolytope, eq, facet_enum, le, lp_optimize, poly_contains,
                         recession_ray, vertex_enum)
from .ratlin import dot, gcd_vector, inverse, is_unimodular, unimodular_completion


class InfeasibleError(ValueError):
    """Raised when an operation needs a nonempty polyhedron."""


@dataclass(frozen=True)
class Milef:
    """``(Q, I, J)``; ``vertices`` optionally names the graph that indexes ``I``."""

    Q: HPolyhedron
    I: tuple
    J: tuple
    label: str = ""
    vertices: tuple | None = None

    def __post_init__(self):
        I = tuple(int(i) for i in self.I)
        J = tuple(int(j) for j in self.J)
        p = self.Q.dim
        for name, idx in (("I", I), ("J", J)):
            if len(set(idx)) != len(idx):
                raise ValueError(f"{name} has repeated coordinates")
            if any(not 0 <= i < p for i in idx):
                raise ValueError(f"{name} = {idx} out of range for p = {p}")
        object.__setattr__(self, "I", I)
        object.__setattr__(self, "J", J)
        if self.vertices is not None:
            object.__setattr__(self, "vertices", tuple(self.vertices))

    @property
    def p(self) -> int:
        return self.Q.dim

    @property
    def d(self) -> int:
        return len(self.I)

    @property
    def k(self) -> int:
        return len(self.J)

    @property
    def m(self) -> int:
        return self.Q.m

    @property
    def size(self) -> tuple[int, int]:
        return self.Q.m, len(self.J)


def empty_milef(p: int, I: Sequence[int], J: Sequence[int], label: str = "empty") -> Milef:
    return Milef(HPolyhedron.empty(p), tuple(I), tuple(J), label)


def _unit(p: int, j: int) -> list[int]:
    e = [0] * p
    e[j] = 1
    return e


def _lift_direction(M: Milef, w: Sequence[int]) -> list[Fraction]:
    if len(w) != M.k:
        raise ValueError(f"direction has {len(w)} entries but |J| = {M.k}")
    c = [Fraction(0)] * M.p
    for j, wj in zip(M.J, w):
        c[j] += wj
    return c


def integer_bounds(M: Milef, w: Sequence[int]) -> tuple[int, int]:
    """``(ceil(min w.x_J), floor(max w.x_J))`` over Q by exact LP.

    ``l > u`` means Q crosses no integer level of ``w . x_J``.
    """
    c = _lift_direction(M, w)
    hi = lp_optimize(M.Q, c, "max")
    if hi.status is LpStatus.INFEASIBLE:
        raise InfeasibleError("Q is empty")
    lo = lp_optimize(M.Q, c, "min")
    for res in (hi, lo):
        if res.status is LpStatus.UNBOUNDED:
            raise UnboundedError(f"Q is unbounded in direction {tuple(w)} over J", ray=res.ray)
    return math.ceil(lo.value), math.floor(hi.value)


def int_box(M: Milef) -> list[tuple[int, int]]:
    """Per-coordinate integer bounds for every j in J."""
    return [integer_bounds(M, _unit(M.k, t)) for t in range(M.k)]


def mih_brute_force(M: Milef) -> VPolytope:
    """Vertices of ``proj_I(conv(Q cap Z_J))``, slice by slice.

    Every integer assignment of ``x_J`` inside the LP box is fixed, the slice
    is vertex-enumerated, and the pooled vertices are projected to ``I`` and
    reduced to their convex hull.
    """
    if not poly_feasible(M.Q):
        return VPolytope(M.d)
    ray = recession_ray(M.Q)
    if ray is not None:
        raise UnboundedError("Q is unbounded", ray=ray)
    try:
        box = int_box(M)
    except InfeasibleError:
        return VPolytope(M.d)
    pool = []
    for z in itertools.product(*(range(lo, hi + 1) for lo, hi in box)):
        fix = [eq(_unit(M.p, j), zj) for j, zj in zip(M.J, z)]
        for v in vertex_enum(M.Q.with_constraints(fix)).vertices:
            pool.append(tuple(v[i] for i in M.I))
    return VPolytope.hull(M.d, pool)


def poly_feasible(P: HPolyhedron) -> bool:
    return lp_optimize(P, [0] * P.dim).status is not LpStatus.INFEASIBLE


def separate_projection(M: Milef) -> Milef:
    """Make I and J disjoint by copying every shared coordinate.

    A new coordinate ``y = x_j`` is appended for each ``j`` in both sets, and
    ``I`` refers to the copy.
    """
    shared = [i for i in M.I if i in M.J]
    if not shared:
        return M
    p = M.p
    q = p + len(shared)
    rows = [LinearConstraint(c.a + (0,) * len(shared), c.rel, c.b) for c in M.Q.constraints]
    new_index = {}
    for t, j in enumerate(shared):
        a = [0] * q
        a[p + t] = 1
        a[j] = -1
        rows.append(eq(a, 0))
        new_index[j] = p + t
    I = tuple(new_index.get(i, i) for i in M.I)
    return Milef(HPolyhedron(q, tuple(rows)), I, M.J, M.label, M.vertices)


def reparameterize(M: Milef, U: Sequence[Sequence[int]]) -> Milef:
    """Substitute ``x_J -> U^{-1} xbar_J``.

    Row ``a_I x_I + a_J x_J <= b`` becomes ``a_I x_I + (a_J U^{-1}) xbar_J <= b``,
    so integral ``xbar_J = U x_J`` correspond to integral ``x_J``.
    """
    k = M.k
    if len(U) != k or any(len(row) != k for row in U):
        raise ValueError(f"U must be {k}x{k}")
    if not is_unimodular(U):
        raise ValueError("U is not unimodular")
    if set(M.I) & set(M.J):
        raise ValueError("I and J overlap; call separate_projection first")
    Uinv = inverse(U)
    rows = []
    for c in M.Q.constraints:
        aJ = [c.a[j] for j in M.J]
        new_aJ = [dot(aJ, [Uinv[r][s] for r in range(k)]) for s in range(k)]
        a = list(c.a)
        for j, v in zip(M.J, new_aJ):
            a[j] = v
        rows.append(LinearConstraint(tuple(a), c.rel, c.b))
    return Milef(HPolyhedron(M.p, tuple(rows)), M.I, M.J, M.label, M.vertices)


def slice_disjunction(M: Milef, tau: int, ell: int, u: int, *, check_bounds: bool = True) -> Milef:
    """Disjunctive hull of the integer slices ``x_tau = ell, ..., u``.

    Variables of the result are ``(x, y^ell, ..., y^u, lambda)``::

        x = sum_i y^i,   sum_i lambda_i = 1,
        A y^i <= b lambda_i,  y^i_tau = i lambda_i,  lambda_i >= 0

    giving ``p' = p*gamma + p + gamma`` variables and ``(m+1)*gamma``
    inequalities, with ``gamma = u - ell + 1``.  ``I`` and ``J \\ {tau}`` stay on
    the x block.  ``ell = u + 1`` gives the explicit empty formulation.

    With ``check_bounds`` the LP range of ``x_tau`` over Q must have its
    integer levels inside ``[ell, u]``.  Callers that bound ``x_tau`` through
    the mixed-integer hull instead (every mixed-integer point has
    ``ell <= x_tau <= u``) may switch the check off.
    """
    if tau not in M.J:
        raise ValueError(f"tau = {tau} is not an integer coordinate")
    ell, u = int(ell), int(u)
    if ell > u + 1:
        raise ValueError(f"invalid slice range [{ell}, {u}]")
    if check_bounds:
        try:
            lo, hi = integer_bounds(M, _unit(M.k, M.J.index(tau)))
        except InfeasibleError:
            lo, hi = ell, u
        if lo < ell or hi > u:
            raise ValueError(f"x_{tau} takes integer values in [{lo}, {hi}], outside [{ell}, {u}]")
    p = M.p
    gamma = u - ell + 1
    q = p * gamma + p + gamma

    def y(i, j):  # coordinate of y^(ell+i)_j
        return p + i * p + j

    def lam(i):
        return p + gamma * p + i

    rows: list[LinearConstraint] = []
    for j in range(p):
        a = [0] * q
        a[j] = 1
        for i in range(gamma):
            a[y(i, j)] = -1
        rows.append(eq(a, 0))
    a = [0] * q
    for i in range(gamma):
        a[lam(i)] = 1
    rows.append(eq(a, 1))
    for i in range(gamma):
        for c in M.Q.constraints:
            a = [Fraction(0)] * q
            for j, cj in enumerate(c.a):
                if cj:
                    a[y(i, j)] = cj
            a[lam(i)] = -c.b
            rows.append(LinearConstraint(tuple(a), c.rel, 0))
        a = [0] * q
        a[y(i, tau)] = 1
        a[lam(i)] = -(ell + i)
        rows.append(eq(a, 0))
        a = [0] * q
        a[lam(i)] = -1
        rows.append(le(a, 0))
    J = tuple(j for j in M.J if j != tau)
    out = Milef(HPolyhedron(q, tuple(rows)), M.I, J, M.label, M.vertices)
    assert out.m == (M.m + 1) * gamma
    return out


def normalize_direction(w: Sequence[int], ell: int, u: int) -> tuple[tuple, int, int]:
    """Divide ``w`` by its gcd g, widening the bounds to floor(ell/g), ceil(u/g)."""
    g = gcd_vector(w)
    if g == 0:
        raise ValueError("zero direction")
    return tuple(int(x) // g for x in w), ell // g, -((-u) // g)


def slice_along(M: Milef, w: Sequence[int], ell: int, u: int, *, check_bounds: bool = True) -> Milef:
    """Reparameterize so that ``w . x_J`` is the first integer coordinate, then slice it."""
    if not M.J:
        raise ValueError("no integer coordinates to slice")
    w, ell, u = normalize_direction(w, ell, u)
    base = separate_projection(M)
    U = unimodular_completion(w)
    rep = reparameterize(base, U)
    return slice_disjunction(rep, rep.J[0], ell, u, check_bounds=check_bounds)


@dataclass(frozen=True)
class Verification:
    """Truthy when the formulation describes the target; otherwise a witness."""

    ok: bool
    witness: tuple | None = None
    witness_side: str | None = None  # "milef" or "target"
    hull: VPolytope | None = field(default=None, compare=False)

    def __bool__(self) -> bool:
        return self.ok


def verify_milef(M: Milef, target: Union[VPolytope, HPolyhedron]) -> Verification:
    """Check ``mih_brute_force(M) == target`` as point sets."""
    if target.dim != M.d:
        raise ValueError(f"target has dimension {target.dim}, |I| = {M.d}")
    hull = mih_brute_force(M)
    if isinstance(target, HPolyhedron):
        target_v = vertex_enum(target)
    else:
        target_v = VPolytope.hull(target.dim, target.vertices)
    out = poly_contains(facet_enum(target_v), hull)
    if not out:
        return Verification(False, out.witness, "milef", hull)
    back = poly_contains(facet_enum(hull), target_v)
    if not back:
        return Verification(False, back.witness, "target", hull)
    return Verification(True, hull=hull)


def lift_constraint_rows(rows: Sequence[LinearConstraint], p: int, coords: Sequence[int]) -> list[LinearConstraint]:
    """Embed rows over R^len(coords) into R^p at the given coordinates."""
    out = []
    for c in rows:
        a = [Fraction(0)] * p
        for ci, j in zip(c.a, coords):
            a[j] = ci
        out.append(LinearConstraint(tuple(a), c.rel, c.b))
    return out


__all__ = [
    "EQ", "LE", "InfeasibleError", "Milef", "Verification", "empty_milef", "int_box",
    "integer_bounds", "lift_constraint_rows", "mih_brute_force", "normalize_direction",
    "reparameterize", "separate_projection", "slice_along", "slice_disjunction", "verify_milef",
]
