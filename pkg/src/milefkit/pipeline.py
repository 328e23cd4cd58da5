"""Eliminate integer variables from a matching-polytope formulation.

One step takes a formulation of P_M(V) and a vertex set W, finds a row of
P_M(W) that Q violates, restricts Q to the corresponding face, computes the
lattice-free body K of the integer part, picks a flat direction of K, makes
it an integer coordinate by a unimodular change of variables, and replaces
that coordinate by the disjunctive hull of its slices.  The result is a
formulation of P_M(V \\ W) with one integer variable fewer.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .lattice import FlatDirection, LatticeFreeReport, flat_direction, lattice_free_check
from .matching import CompleteGraph, FacetCertificate, _graph_of, edges, find_violated_facet, matchings_enum
from .milef import (Milef, integer_bounds, mih_brute_force, reparameterize, separate_projection,
                    slice_disjunction, verify_milef)
from .polyhedron import VPolytope, affine_hull, intersect_hyperplane, remove_redundant
from .ratlin import unimodular_completion

log = logging.getLogger(__name__)

VERIFY_MAX_VERTICES = 5


class PipelineError(ValueError):
    """A precondition of the elimination step does not hold."""


class NoViolatedFacetError(PipelineError):
    pass


@dataclass
class EliminationTrace:
    W: tuple
    V_before: tuple
    V_after: tuple
    facet: FacetCertificate
    K: VPolytope
    lattice_free: LatticeFreeReport
    K_dim: int
    flat: FlatDirection | None
    gamma: int
    lp_bounds: tuple | None
    m_before: int
    k_before: int
    p_before: int
    m_after: int  # inequality count of the slice hull, before any reduction
    k_after: int
    p_after: int
    m_reduced: int | None = None
    verified: bool | None = None
    notes: list = field(default_factory=list)

    @property
    def n_before(self) -> int:
        return len(self.V_before)

    @property
    def n_after(self) -> int:
        return len(self.V_after)


def lattice_free_body(M: Milef, alpha: Sequence, beta) -> VPolytope:
    """``proj_J(conv(Q cap {alpha . x_I = beta} cap Z_J))`` as a vertex list."""
    if len(alpha) != M.d:
        raise ValueError(f"alpha has {len(alpha)} entries, |I| = {M.d}")
    a = [Fraction(0)] * M.p
    for coeff, i in zip(alpha, M.I):
        a[i] += Fraction(coeff)
    Qh = intersect_hyperplane(M.Q, a, beta) if any(a) else M.Q
    return mih_brute_force(Milef(Qh, M.J, M.J))


def eliminate_one(M: Milef, W: Iterable, V: Iterable | None = None, *,
                  reduce: bool = False, verify: bool = True,
                  search_bound: int | None = None) -> tuple[Milef, EliminationTrace]:
    """Remove one integer variable and the vertices W from a formulation of P_M(V).

    ``reduce`` runs redundancy removal on the result (the trace always keeps
    the unreduced inequality count).  ``verify`` compares the result with the
    matchings of V \\ W by brute force when that graph has at most five
    vertices.
    """
    V = _graph_of(M, V)
    W = CompleteGraph(W).vertices
    if not M.J:
        raise PipelineError("formulation has no integer variables")
    cert = find_violated_facet(M, W, V)
    if cert is None:
        raise NoViolatedFacetError(
            f"no violated facet: Q already captures P_M(W) for W = {W}; choose a larger W")
    rest = tuple(v for v in V if v not in set(W))
    idx = CompleteGraph(V).edge_index
    I_rest = tuple(M.I[idx[e]] for e in edges(rest))

    a = [Fraction(0)] * M.p
    for coeff, i in zip(cert.alpha, M.I):
        a[i] += coeff
    face = Milef(intersect_hyperplane(M.Q, a, cert.beta), M.I, M.J, M.label, V)
    K = lattice_free_body(M, cert.alpha, cert.beta)
    report = lattice_free_check(K)
    if not report.is_lattice_free:
        raise PipelineError(f"body K has interior lattice point {report.witness}; "
                            "the input is not a formulation of P_M(V)")
    m0, k0, p0 = M.m, M.k, M.p
    label = f"{M.label} -W{list(W)}".strip()
    if K.is_empty:
        # no integer point on the face: slice an empty range
        base = separate_projection(face)
        sliced = slice_disjunction(base, base.J[0], 1, 0, check_bounds=False)
        out = Milef(sliced.Q, I_rest, sliced.J, label, rest)
        trace = EliminationTrace(W, V, rest, cert, K, report, -1, None, 0, None,
                                 m0, k0, p0, out.m, out.k, out.p)
        return _finish(out, trace, reduce, verify)

    K_dim = affine_hull(K).dim
    flat = flat_direction(K, search_bound)
    base = separate_projection(face)
    U = unimodular_completion(flat.v)
    rep = reparameterize(base, U)
    tau = rep.J[0]
    try:
        lp_bounds = integer_bounds(rep, [1] + [0] * (rep.k - 1))
    except ValueError:
        lp_bounds = None
    # every mixed-integer point of the face has v . x_J in K, hence in [ell, u]
    sliced = slice_disjunction(rep, tau, flat.ell, flat.u, check_bounds=False)
    out = Milef(sliced.Q, I_rest, sliced.J, label, rest)
    trace = EliminationTrace(W, V, rest, cert, K, report, K_dim, flat, flat.gamma, lp_bounds,
                             m0, k0, p0, out.m, out.k, out.p)
    if trace.m_after != (m0 + 1) * trace.gamma:
        raise AssertionError("slice hull size accounting is off")
    return _finish(out, trace, reduce, verify)


def _finish(out: Milef, trace: EliminationTrace, reduce: bool, verify: bool):
    if reduce:
        out = Milef(remove_redundant(out.Q), out.I, out.J, out.label, out.vertices)
        trace.m_reduced = out.m
    if verify and trace.n_after <= VERIFY_MAX_VERTICES:
        trace.verified = bool(verify_milef(out, matchings_enum(trace.V_after)))
        if not trace.verified:
            log.warning("eliminated formulation failed brute-force verification")
    return out, trace


def eliminate_all(M: Milef, schedule: Sequence[Iterable], V: Iterable | None = None,
                  **kwargs) -> tuple[Milef, list[EliminationTrace]]:
    """Apply :func:`eliminate_one` once per integer variable, one W per step."""
    schedule = [tuple(W) for W in schedule]
    if len(schedule) != M.k:
        raise PipelineError(f"schedule has {len(schedule)} steps but k = {M.k}")
    if M.k == 0:
        return M, []
    V = _graph_of(M, V)
    traces = []
    for W in schedule:
        M, tr = eliminate_one(M, W, V, **kwargs)
        V = tr.V_after
        traces.append(tr)
    return M, traces


@dataclass(frozen=True)
class AccountingRow:
    step: int
    n: int
    m: int
    k: int
    gamma: int | None
    n_bound: int | None  # n_0 - sum floor(log2 m_j / c + 2)


def accounting_table(traces: Sequence[EliminationTrace], c: float = 1.0) -> list[AccountingRow]:
    """Per-step sizes ``(n_i, m_i, k_i)`` plus the shrinkage bound for a given c."""
    if not traces:
        return []
    n0 = traces[0].n_before
    rows = [AccountingRow(0, n0, traces[0].m_before, traces[0].k_before, None, n0)]
    removed = 0
    for i, tr in enumerate(traces, start=1):
        removed += math.floor(math.log2(max(tr.m_before, 1)) / c + 2)
        m = tr.m_reduced if tr.m_reduced is not None else tr.m_after
        rows.append(AccountingRow(i, tr.n_after, m, tr.k_after, tr.gamma, n0 - removed))
    return rows


def format_table(rows: Sequence[AccountingRow]) -> str:
    lines = [f"{'i':>3} {'n_i':>5} {'m_i':>7} {'k_i':>4} {'gamma':>6} {'n_bound':>8}"]
    for r in rows:
        g = "-" if r.gamma is None else str(r.gamma)
        lines.append(f"{r.step:>3} {r.n:>5} {r.m:>7} {r.k:>4} {g:>6} {r.n_bound:>8}")
    return "\n".join(lines)
