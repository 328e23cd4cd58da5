"""Exact polyhedral core.

H-representations (:class:`HPolyhedron`), explicit vertex lists
(:class:`VPolytope`), an exact rational LP, Fourier-Motzkin projection,
double-description vertex and facet enumeration, and redundancy removal.
Everything is exact; rows are kept in a canonical integer scaling so that
H-representations can be compared row by row.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from . import simplex
from .ratlin import (as_rat, dot, format_rat, nullspace, primitive, rank, rat_vector,
                     rref, sign_normalized, solve_affine)

LE = "<="
EQ = "="


class UnboundedError(ValueError):
    """Raised when an operation needs a bounded polyhedron; carries a ray."""

    def __init__(self, message: str, ray: tuple | None = None):
        super().__init__(message)
        self.ray = ray


@dataclass(frozen=True)
class LinearConstraint:
    """``a . x <= b`` or ``a . x = b`` in canonical scaling.

    ``a`` is a primitive integer vector (gcd 1).  Equations additionally have
    their first nonzero coefficient positive.  A zero row keeps only the sign
    of ``b``, so every infeasible zero row reads ``0 <= -1`` / ``0 = 1``.
    """

    a: tuple
    rel: str
    b: Fraction

    def __post_init__(self):
        if self.rel not in (LE, EQ):
            raise ValueError(f"unknown relation {self.rel!r}")
        a = rat_vector(self.a)
        b = as_rat(self.b)
        if any(a):
            L = 1
            for q in a:
                L = math.lcm(L, q.denominator)
            ints = [int(q * L) for q in a]
            g = math.gcd(*ints)
            scale = Fraction(L, g)
            if self.rel == EQ and next(x for x in ints if x) < 0:
                scale = -scale
            a = tuple(Fraction(x * scale) for x in a)
            b = b * scale
        elif self.rel == LE:
            b = Fraction((b > 0) - (b < 0))
        else:
            b = Fraction(int(b != 0))
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def dim(self) -> int:
        return len(self.a)

    def slack(self, x: Sequence) -> Fraction:
        return self.b - dot(self.a, x)

    def satisfied_by(self, x: Sequence) -> bool:
        s = self.slack(x)
        return s == 0 if self.rel == EQ else s >= 0

    def __str__(self) -> str:
        terms = [f"{format_rat(c)}*x{j}" for j, c in enumerate(self.a) if c]
        return f"{' + '.join(terms) or '0'} {self.rel} {format_rat(self.b)}"


def le(a, b) -> LinearConstraint:
    return LinearConstraint(tuple(a), LE, b)


def eq(a, b) -> LinearConstraint:
    return LinearConstraint(tuple(a), EQ, b)


@dataclass(frozen=True)
class HPolyhedron:
    """Finite system of linear inequalities and equations over Q^dim."""

    dim: int
    constraints: tuple = ()

    def __post_init__(self):
        cons = tuple(self.constraints)
        for c in cons:
            if not isinstance(c, LinearConstraint):
                raise TypeError("constraints must be LinearConstraint instances")
            if c.dim != self.dim:
                raise ValueError(f"constraint of dimension {c.dim} in a {self.dim}-dimensional polyhedron")
        object.__setattr__(self, "constraints", cons)

    @classmethod
    def from_rows(cls, dim: int, A=(), b=(), A_eq=(), b_eq=()) -> "HPolyhedron":
        cons = [le(a, bi) for a, bi in zip(A, b)] + [eq(a, bi) for a, bi in zip(A_eq, b_eq)]
        return cls(dim, tuple(cons))

    @classmethod
    def box(cls, lower: Sequence, upper: Sequence) -> "HPolyhedron":
        n = len(lower)
        cons = []
        for j in range(n):
            e = [0] * n
            e[j] = -1
            cons.append(le(e, -as_rat(lower[j])))
            e = [0] * n
            e[j] = 1
            cons.append(le(e, as_rat(upper[j])))
        return cls(n, tuple(cons))

    @classmethod
    def empty(cls, dim: int) -> "HPolyhedron":
        return cls(dim, (le([0] * dim, -1),))

    @property
    def inequalities(self) -> tuple:
        return tuple(c for c in self.constraints if c.rel == LE)

    @property
    def equations(self) -> tuple:
        return tuple(c for c in self.constraints if c.rel == EQ)

    @property
    def m(self) -> int:
        """Inequality count; equations are not counted."""
        return sum(1 for c in self.constraints if c.rel == LE)

    def contains_point(self, x: Sequence) -> bool:
        x = rat_vector(x)
        return all(c.satisfied_by(x) for c in self.constraints)

    def with_constraints(self, extra: Iterable[LinearConstraint]) -> "HPolyhedron":
        return HPolyhedron(self.dim, self.constraints + tuple(extra))

    def canonical(self) -> "HPolyhedron":
        """Same system with duplicate rows dropped and rows sorted."""
        rows = sorted(set(self.constraints), key=lambda c: (c.rel != EQ, c.a, c.b))
        return HPolyhedron(self.dim, tuple(rows))

    def __str__(self) -> str:
        return "\n".join(str(c) for c in self.constraints) or f"R^{self.dim}"


def _sort_points(points: Iterable[tuple]) -> tuple:
    return tuple(sorted(set(points)))


@dataclass(frozen=True)
class VPolytope:
    """Convex hull of finitely many rational points, stored as its vertices.

    The constructor only deduplicates and sorts; use :meth:`hull` to discard
    points that are not vertices.
    """

    dim: int
    vertices: tuple = ()

    def __post_init__(self):
        verts = []
        for v in self.vertices:
            v = rat_vector(v)
            if len(v) != self.dim:
                raise ValueError(f"point of dimension {len(v)} in a {self.dim}-dimensional polytope")
            verts.append(v)
        object.__setattr__(self, "vertices", _sort_points(verts))

    @classmethod
    def hull(cls, dim: int, points: Iterable) -> "VPolytope":
        pts = _sort_points(rat_vector(p) for p in points)
        if len(pts) <= 1:
            return cls(dim, pts)
        return cls(dim, _hull(pts, dim).vertices)

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def project(self, coords: Sequence[int]) -> "VPolytope":
        return VPolytope.hull(len(coords), (tuple(v[j] for j in coords) for v in self.vertices))

    def __len__(self) -> int:
        return len(self.vertices)


class LpStatus(str, enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpResult:
    status: LpStatus
    value: Fraction | None = None
    point: tuple | None = None
    ray: tuple | None = None

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


def lp_optimize(P: HPolyhedron, c: Sequence, sense: str = "max") -> LpResult:
    """Optimize ``c . x`` over ``P`` with an exact simplex (Bland's rule).

    On unboundedness ``ray`` is a recession direction improving the objective.
    """
    c = rat_vector(c)
    if len(c) != P.dim:
        raise ValueError(f"objective has dimension {len(c)}, polyhedron {P.dim}")
    if sense not in ("max", "min"):
        raise ValueError("sense must be 'max' or 'min'")
    sign = 1 if sense == "max" else -1
    ineq = P.inequalities
    eqs = P.equations
    out = simplex.maximize([r.a for r in ineq], [r.b for r in ineq],
                           [r.a for r in eqs], [r.b for r in eqs],
                           tuple(sign * x for x in c), P.dim)
    if out.status == "infeasible":
        return LpResult(LpStatus.INFEASIBLE)
    if out.status == "unbounded":
        return LpResult(LpStatus.UNBOUNDED, ray=out.ray)
    return LpResult(LpStatus.OPTIMAL, sign * out.value, out.x)


def is_feasible(P: HPolyhedron) -> bool:
    return lp_optimize(P, [0] * P.dim).status is not LpStatus.INFEASIBLE


# ---------------------------------------------------------------------------
# double description

def _dd(halfspaces: Sequence[Sequence[int]], d: int) -> tuple[list[list[int]], list[list[int]]]:
    """Extreme rays and lineality basis of ``{y in R^d : h . y >= 0}``.

    Integer input, integer output; rays are primitive.
    """
    lin = [[int(i == j) for j in range(d)] for i in range(d)]
    rays: list[list[int]] = []
    zsets: list[int] = []

    def prim(v):
        g = math.gcd(*v)
        return [x // g for x in v] if g > 1 else v

    for k, h in enumerate(halfspaces):
        bit = 1 << k
        hl = [dot(h, l) for l in lin]
        piv = next((i for i, x in enumerate(hl) if x), None)
        if piv is not None:
            l = lin.pop(piv)
            a = hl.pop(piv)
            if a < 0:
                l = [-x for x in l]
                a = -a
            lin = [prim([a * x - b * y for x, y in zip(lp, l)]) if b else lp
                   for lp, b in zip(lin, hl)]
            new_rays = []
            for r in rays:
                b = dot(h, r)
                new_rays.append(prim([a * x - b * y for x, y in zip(r, l)]) if b else r)
            all_prev = (1 << k) - 1
            rays = new_rays + [prim(l)]
            zsets = [z | bit for z in zsets] + [all_prev]
            continue
        vals = [dot(h, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        if not neg:
            zsets = [z | bit if vals[i] == 0 else z for i, z in enumerate(zsets)]
            continue
        new_rays = [rays[i] for i in pos] + [rays[i] for i in zero]
        new_z = [zsets[i] for i in pos] + [zsets[i] | bit for i in zero]
        need = d - len(lin) - 2
        for ip in pos:
            zp = zsets[ip]
            for ineg in neg:
                common = zp & zsets[ineg]
                if bin(common).count("1") < need:
                    continue
                adjacent = True
                for t, zt in enumerate(zsets):
                    if t != ip and t != ineg and zt & common == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vn = vals[ip], vals[ineg]
                rp, rn = rays[ip], rays[ineg]
                new_rays.append(prim([vp * y - vn * x for x, y in zip(rp, rn)]))
                new_z.append(common | bit)
        rays, zsets = new_rays, new_z
    return rays, lin


def _int_halfspace(coeffs: Sequence[Fraction]) -> list[int]:
    return list(primitive(coeffs)) if any(coeffs) else [0] * len(coeffs)


def _affine_param(P: HPolyhedron):
    """Parametrize the equations of P as ``x0 + N t``; None if inconsistent."""
    eqs = P.equations
    return solve_affine([c.a for c in eqs], [c.b for c in eqs], ncols=P.dim)


def vertex_enum(P: HPolyhedron) -> VPolytope:
    """Exact vertex list of a polytope by the double-description method.

    Returns the empty VPolytope when P is empty and raises
    :class:`UnboundedError` (with a recession ray) when P is unbounded.
    """
    sol = _affine_param(P)
    if sol is None:
        return VPolytope(P.dim)
    x0, N = sol.point, sol.basis
    k = len(N)
    ineq = P.inequalities
    if k == 0:
        return VPolytope(P.dim, [x0] if all(c.satisfied_by(x0) for c in ineq) else [])
    # (s, t) with s >= 0 and s*(b - a.x0) - (a N) t >= 0
    halfspaces = [[1] + [0] * k]
    for c in ineq:
        aN = [dot(c.a, col) for col in N]
        halfspaces.append(_int_halfspace([c.slack(x0)] + [-x for x in aN]))
    rays, lin = _dd(halfspaces, k + 1)

    def to_x(t):
        return tuple(x0[i] + sum((t[j] * N[j][i] for j in range(k) if t[j]), Fraction(0))
                     for i in range(P.dim))

    verts = [to_x([Fraction(x, r[0]) for x in r[1:]]) for r in rays if r[0] > 0]
    if not verts:
        return VPolytope(P.dim)
    directions = lin + [r for r in rays if r[0] == 0]
    if directions:
        t = directions[0][1:]
        ray = tuple(sum((t[j] * N[j][i] for j in range(k)), Fraction(0)) for i in range(P.dim))
        raise UnboundedError("polyhedron is unbounded", ray=ray)
    return VPolytope(P.dim, verts)


def recession_ray(P: HPolyhedron) -> tuple | None:
    """A nonzero direction of the recession cone of P, or None if it is trivial."""
    eqs, ineq = P.equations, P.inequalities
    N = nullspace([c.a for c in eqs], P.dim)
    if not N:
        return None
    k = len(N)
    halfspaces = [_int_halfspace([-dot(c.a, col) for col in N]) for c in ineq]
    rays, lin = _dd(halfspaces, k)
    dirs = lin + rays
    if not dirs:
        return None
    t = dirs[0]
    return tuple(sum((t[j] * N[j][i] for j in range(k)), Fraction(0)) for i in range(P.dim))


def is_bounded(P: HPolyhedron) -> bool:
    return recession_ray(P) is None


# ---------------------------------------------------------------------------
# V -> H

@dataclass(frozen=True)
class AffineHull:
    point: tuple
    directions: tuple
    normals: tuple

    @property
    def dim(self) -> int:
        return len(self.directions)


def affine_hull(S: Union[VPolytope, Sequence]) -> AffineHull:
    """Affine hull of a nonempty point set as point + directions + normals.

    Normals are primitive integer vectors with first nonzero entry positive.
    """
    pts = S.vertices if isinstance(S, VPolytope) else tuple(rat_vector(p) for p in S)
    if not pts:
        raise ValueError("affine hull of an empty set")
    p0 = pts[0]
    n = len(p0)
    diffs = [[a - b for a, b in zip(p, p0)] for p in pts[1:]]
    R, _ = rref(diffs) if diffs else ([], [])
    directions = tuple(tuple(r) for r in R)
    normals = tuple(sign_normalized(primitive(v)) for v in nullspace(R, n))
    return AffineHull(p0, directions, normals)


@dataclass(frozen=True)
class _HullData:
    hrep: HPolyhedron
    vertices: tuple


def _hull(points: Sequence[tuple], dim: int) -> _HullData:
    """Facets and vertices of the convex hull of distinct points."""
    aff = affine_hull(points)
    p0 = aff.point
    eqs = [eq(nv, dot(nv, p0)) for nv in aff.normals]
    k = aff.dim
    if k == 0:
        return _HullData(HPolyhedron(dim, tuple(eqs)), (p0,))
    # local coordinates: y = coordinates of (x - p0) in the direction basis,
    # read off from the pivot columns of the (rref) directions
    _, pivots = rref(aff.directions)

    def local(x):
        return [x[c] - p0[c] for c in pivots]

    ys = [local(p) for p in points]
    # valid (a, beta) with a . y <= beta for all points: beta - a . y >= 0
    halfspaces = [_int_halfspace([Fraction(1)] + [-v for v in y]) for y in ys]
    rays, lin = _dd(halfspaces, k + 1)
    assert not lin, "points do not span their affine hull"
    facets = []
    for r in rays:
        beta, a = r[0], r[1:]
        if not any(a):
            continue
        # a . y = a . (x - p0)[pivots]
        coeffs = [Fraction(0)] * dim
        for ai, c in zip(a, pivots):
            coeffs[c] = Fraction(ai)
        facets.append(le(coeffs, beta + sum(ai * p0[c] for ai, c in zip(a, pivots))))
    facets.sort(key=lambda c: (c.a, c.b))
    verts = []
    for p in points:
        tight = [f.a for f in facets if f.slack(p) == 0]
        proj = [[t[c] for c in pivots] for t in tight]
        if rank(proj) == k:
            verts.append(p)
    return _HullData(HPolyhedron(dim, tuple(eqs + facets)), tuple(verts))


def facet_enum(V: VPolytope) -> HPolyhedron:
    """Irredundant H-representation (equations + facets) of conv(V)."""
    if V.is_empty:
        return HPolyhedron.empty(V.dim)
    return _hull(V.vertices, V.dim).hrep


def as_hpolyhedron(P: Union[HPolyhedron, VPolytope]) -> HPolyhedron:
    return P if isinstance(P, HPolyhedron) else facet_enum(P)


# ---------------------------------------------------------------------------
# redundancy, projection, containment

def _independent_equations(eqs: Sequence[LinearConstraint]) -> list[LinearConstraint]:
    kept: list[LinearConstraint] = []
    r = 0
    for c in eqs:
        rows = [list(k.a) + [k.b] for k in kept] + [list(c.a) + [c.b]]
        nr = rank(rows)
        if nr > r:
            kept.append(c)
            r = nr
    return kept


def remove_redundant(P: HPolyhedron) -> HPolyhedron:
    """Drop implied inequalities and promote implicit equalities.

    The result defines the same set; no remaining inequality is implied by
    the others (one LP per row) and the equations are linearly independent.
    An empty polyhedron comes back as :meth:`HPolyhedron.empty`.
    """
    if not is_feasible(P):
        return HPolyhedron.empty(P.dim)
    ineq = list(P.inequalities)
    eqs = list(P.equations)
    witnesses: list[tuple] = []

    # implicit equalities: min a.x over P equals b
    implicit = []
    loose = []
    for i, c in enumerate(ineq):
        if not any(c.a):
            continue  # feasible P means this is 0 <= 0 or 0 <= 1
        if any(c.slack(w) > 0 for w in witnesses):
            loose.append(c)
            continue
        res = lp_optimize(P, c.a, "min")
        if res.point is not None:
            witnesses.append(res.point)
        if res.value == c.b:
            implicit.append(c)
        else:
            loose.append(c)
    eqs = _independent_equations(eqs + [eq(c.a, c.b) for c in implicit])

    kept = list(loose)
    i = 0
    while i < len(kept):
        c = kept[i]
        others = kept[:i] + kept[i + 1:]
        if any(c.slack(w) < 0 and all(o.satisfied_by(w) for o in others) for w in witnesses):
            i += 1
            continue
        res = lp_optimize(HPolyhedron(P.dim, tuple(eqs + others)), c.a, "max")
        if res.status is LpStatus.OPTIMAL and res.value <= c.b:
            del kept[i]
            continue
        if res.point is not None:
            witnesses.append(res.point)
        i += 1
    return HPolyhedron(P.dim, tuple(eqs + kept))


def fourier_motzkin_project(P: HPolyhedron, keep: Sequence[int]) -> HPolyhedron:
    """H-representation of the projection of P onto the coordinates ``keep``.

    Equations are used for exact substitution first; the remaining variables
    are removed by Fourier-Motzkin, with :func:`remove_redundant` after each
    single elimination.  Output coordinates follow the order of ``keep``.
    """
    keep = list(keep)
    if len(set(keep)) != len(keep) or any(not 0 <= j < P.dim for j in keep):
        raise ValueError(f"invalid coordinate selection {keep} for dimension {P.dim}")
    if not is_feasible(P):
        return HPolyhedron.empty(len(keep))
    todo = [j for j in range(P.dim) if j not in keep]
    cur = remove_redundant(P)
    while todo:
        eqs = [c for c in cur.equations]
        ineq = [c for c in cur.inequalities]
        pick = next((j for j in todo for c in eqs if c.a[j]), None)
        if pick is not None:
            piv = next(c for c in eqs if c.a[pick])
            av = piv.a[pick]
            new = []
            for c in cur.constraints:
                if c is piv:
                    continue
                f = c.a[pick] / av
                if f:
                    c = LinearConstraint(tuple(x - f * y for x, y in zip(c.a, piv.a)), c.rel, c.b - f * piv.b)
                new.append(c)
            todo.remove(pick)
            cur = HPolyhedron(P.dim, tuple(new))
            continue

        def cost(j):
            npos = sum(1 for c in ineq if c.a[j] > 0)
            nneg = sum(1 for c in ineq if c.a[j] < 0)
            return npos * nneg - npos - nneg

        pick = min(todo, key=lambda j: (cost(j), j))
        pos = [c for c in ineq if c.a[pick] > 0]
        neg = [c for c in ineq if c.a[pick] < 0]
        new = [c for c in ineq if c.a[pick] == 0] + eqs
        for p in pos:
            for n in neg:
                fp, fn = -n.a[pick], p.a[pick]
                new.append(le([fp * x + fn * y for x, y in zip(p.a, n.a)], fp * p.b + fn * n.b))
        todo.remove(pick)
        cur = remove_redundant(HPolyhedron(P.dim, tuple(new)))
    cur = remove_redundant(cur)
    rows = [LinearConstraint(tuple(c.a[j] for j in keep), c.rel, c.b) for c in cur.constraints]
    return HPolyhedron(len(keep), tuple(rows))


@dataclass(frozen=True)
class Containment:
    """Outcome of a containment test; truthy when contained."""

    contained: bool
    violated: LinearConstraint | None = None
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.contained


def poly_contains(P: HPolyhedron, Q: Union[HPolyhedron, VPolytope]) -> Containment:
    """Is every point of Q in P?  Otherwise report a violated row of P and a point of Q."""
    if P.dim != Q.dim:
        raise ValueError(f"dimension mismatch: {P.dim} vs {Q.dim}")
    if isinstance(Q, VPolytope):
        for v in Q.vertices:
            for c in P.constraints:
                if not c.satisfied_by(v):
                    return Containment(False, c, v)
        return Containment(True)
    if not is_feasible(Q):
        return Containment(True)
    for c in P.constraints:
        senses = ("max", "min") if c.rel == EQ else ("max",)
        for sense in senses:
            res = lp_optimize(Q, c.a, sense)
            if res.status is LpStatus.UNBOUNDED:
                step = 1 if sense == "max" else -1
                probe = Q.with_constraints([le([-step * x for x in c.a], -step * (c.b + step))])
                return Containment(False, c, lp_optimize(probe, [0] * Q.dim).point)
            if (sense == "max" and res.value > c.b) or (sense == "min" and res.value < c.b):
                return Containment(False, c, res.point)
    return Containment(True)


def same_set(A: Union[HPolyhedron, VPolytope], B: Union[HPolyhedron, VPolytope]) -> Containment:
    """Set equality by mutual containment; the witness lies in one set but not the other."""
    if isinstance(A, VPolytope) and isinstance(B, VPolytope):
        A_h = facet_enum(A)
        B_h = facet_enum(B)
        first = poly_contains(B_h, A)
        return first if not first else poly_contains(A_h, B)
    A_h, B_h = as_hpolyhedron(A), as_hpolyhedron(B)
    first = poly_contains(B_h, A)
    return first if not first else poly_contains(A_h, B)


def intersect_hyperplane(P: HPolyhedron, a: Sequence, b) -> HPolyhedron:
    """Add the equation ``a . x = b`` to P."""
    a = rat_vector(a)
    b = as_rat(b)
    if len(a) != P.dim:
        raise ValueError(f"hyperplane of dimension {len(a)} for a {P.dim}-dimensional polyhedron")
    if not any(a):
        if b != 0:
            raise ValueError("zero normal with nonzero right-hand side")
        return P
    return P.with_constraints([eq(a, b)])


def project_points(points: Iterable[Sequence], coords: Sequence[int]) -> list[tuple]:
    return [tuple(p[j] for j in coords) for p in points]
