"""Command-line front end and JSON interchange.

Every file is a document ``{"format_version": 1, "kind": ..., "payload": ...}``
with kind one of hpolyhedron, vpolytope, milef, trace.  Rationals are written
as strings ``"a/b"`` (``"a"`` when integral).  Coordinates in ``I``, ``J`` and
``--keep`` are 0-based; graph vertices are labelled 1..n.

Exit codes: 0 success, 1 verification mismatch, 2 pipeline precondition
failure, 3 unbounded input, 4 unreadable input or bad arguments.
"""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

from .lattice import default_search_bound, flat_direction, lattice_free_check
from .matching import (example_k3, example_k5, example_k7, matching_polytope_hrep, matchings_enum,
                       parity_milef)
from .milef import Milef, mih_brute_force, verify_milef
from .pipeline import (EliminationTrace, PipelineError, accounting_table, eliminate_all, eliminate_one,
                       format_table)
from .polyhedron import (EQ, LE, HPolyhedron, LinearConstraint, UnboundedError, VPolytope,
                         fourier_motzkin_project)
from .ratlin import format_rat

FORMAT_VERSION = 1
KINDS = ("hpolyhedron", "vpolytope", "milef", "trace")

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PRECONDITION = 2
EXIT_UNBOUNDED = 3
EXIT_PARSE = 4


class ParseError(ValueError):
    """Input document or argument could not be interpreted."""


# ---------------------------------------------------------------- encoding

def _rat(x) -> str:
    return format_rat(Fraction(x))


def _vec(v) -> list:
    return [_rat(x) for x in v]


def hpolyhedron_payload(P: HPolyhedron) -> dict:
    return {"dim": P.dim,
            "constraints": [{"a": _vec(c.a), "rel": c.rel, "b": _rat(c.b)} for c in P.constraints]}


def vpolytope_payload(V: VPolytope) -> dict:
    return {"dim": V.dim, "vertices": [_vec(v) for v in V.vertices]}


def milef_payload(M: Milef) -> dict:
    out = {"Q": hpolyhedron_payload(M.Q), "I": list(M.I), "J": list(M.J), "label": M.label}
    if M.vertices is not None:
        out["V"] = list(M.vertices)
    return out


def _step_payload(tr: EliminationTrace) -> dict:
    f = tr.facet
    flat = None
    if tr.flat is not None:
        flat = {"v": list(tr.flat.v), "ell": tr.flat.ell, "u": tr.flat.u,
                "width_real": _rat(tr.flat.width_real)}
    return {
        "W": list(tr.W), "V_before": list(tr.V_before), "V_after": list(tr.V_after),
        "facet": {"row_index": f.row_index, "alpha_bar": _vec(f.alpha_bar), "beta_bar": _rat(f.beta_bar),
                  "alpha": _vec(f.alpha), "beta": _rat(f.beta), "witness": _vec(f.witness),
                  "value": None if f.value is None else _rat(f.value)},
        "K": vpolytope_payload(tr.K),
        "K_dim": tr.K_dim,
        "lattice_free": tr.lattice_free.is_lattice_free,
        "flat": flat,
        "gamma": tr.gamma,
        "lp_bounds": None if tr.lp_bounds is None else list(tr.lp_bounds),
        "m_before": tr.m_before, "k_before": tr.k_before, "p_before": tr.p_before,
        "m_after": tr.m_after, "k_after": tr.k_after, "p_after": tr.p_after,
        "m_reduced": tr.m_reduced, "verified": tr.verified,
    }


def trace_payload(traces, c: float = 1.0) -> dict:
    table = [{"step": r.step, "n": r.n, "m": r.m, "k": r.k, "gamma": r.gamma, "n_bound": r.n_bound}
             for r in accounting_table(traces, c)]
    return {"c": _rat(Fraction(c).limit_denominator(10**6)), "steps": [_step_payload(t) for t in traces],
            "table": table}


def to_document(obj, kind: str | None = None) -> dict:
    if isinstance(obj, HPolyhedron):
        kind, payload = "hpolyhedron", hpolyhedron_payload(obj)
    elif isinstance(obj, VPolytope):
        kind, payload = "vpolytope", vpolytope_payload(obj)
    elif isinstance(obj, Milef):
        kind, payload = "milef", milef_payload(obj)
    elif kind in KINDS:
        payload = obj
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    return {"format_version": FORMAT_VERSION, "kind": kind, "payload": payload}


def dumps(obj, kind: str | None = None) -> str:
    return json.dumps(to_document(obj, kind), sort_keys=True, indent=1) + "\n"


# ---------------------------------------------------------------- decoding

def _parse_rat(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise ParseError(f"expected a rational string, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {x!r}") from exc


def _parse_int(x, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ParseError(f"{what} must be an integer, got {x!r}")
    return x


def _parse_list(x, what: str) -> list:
    if not isinstance(x, list):
        raise ParseError(f"{what} must be a list")
    return x


def _field(d: dict, key: str, where: str):
    if not isinstance(d, dict):
        raise ParseError(f"{where} must be an object")
    if key not in d:
        raise ParseError(f"{where} is missing {key!r}")
    return d[key]


def parse_hpolyhedron(p: dict) -> HPolyhedron:
    dim = _parse_int(_field(p, "dim", "hpolyhedron"), "dim")
    rows = []
    for r in _parse_list(_field(p, "constraints", "hpolyhedron"), "constraints"):
        rel = _field(r, "rel", "constraint")
        if rel not in (LE, EQ):
            raise ParseError(f"rel must be '<=' or '=', got {rel!r}")
        a = tuple(_parse_rat(x) for x in _parse_list(_field(r, "a", "constraint"), "a"))
        rows.append((a, rel, _parse_rat(_field(r, "b", "constraint"))))
    try:
        return HPolyhedron(dim, tuple(LinearConstraint(a, rel, b) for a, rel, b in rows))
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from exc


def parse_vpolytope(p: dict) -> VPolytope:
    dim = _parse_int(_field(p, "dim", "vpolytope"), "dim")
    pts = [tuple(_parse_rat(x) for x in _parse_list(v, "vertex"))
           for v in _parse_list(_field(p, "vertices", "vpolytope"), "vertices")]
    try:
        return VPolytope(dim, pts)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def parse_milef(p: dict) -> Milef:
    Q = parse_hpolyhedron(_field(p, "Q", "milef"))
    I = [_parse_int(i, "I entry") for i in _parse_list(_field(p, "I", "milef"), "I")]
    J = [_parse_int(j, "J entry") for j in _parse_list(_field(p, "J", "milef"), "J")]
    V = p.get("V")
    if V is not None:
        V = tuple(_parse_list(V, "V"))
    label = p.get("label", "")
    if not isinstance(label, str):
        raise ParseError("label must be a string")
    try:
        return Milef(Q, tuple(I), tuple(J), label, V)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


_PARSERS = {"hpolyhedron": parse_hpolyhedron, "vpolytope": parse_vpolytope, "milef": parse_milef,
            "trace": lambda p: p}


def from_document(doc: Any):
    """Inverse of :func:`to_document`; trace payloads come back as plain dicts."""
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    version = _field(doc, "format_version", "document")
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {version!r}")
    kind = _field(doc, "kind", "document")
    if kind not in _PARSERS:
        raise ParseError(f"unknown kind {kind!r}")
    return _PARSERS[kind](_field(doc, "payload", "document"))


def loads(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return from_document(doc)


def load(path: str | Path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def _load_as(path, *types):
    obj = load(path)
    if not isinstance(obj, types):
        names = " or ".join(t.__name__ for t in types)
        raise ParseError(f"{path}: expected {names}, got {type(obj).__name__}")
    return obj


def _emit(text: str, out: str | None):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _int_list(s: str) -> list[int]:
    try:
        return [int(t) for t in s.replace(" ", "").split(",") if t]
    except ValueError as exc:
        raise ParseError(f"expected comma-separated integers, got {s!r}") from exc


# ---------------------------------------------------------------- commands

def _cube(d: int, even_only: bool) -> VPolytope:
    pts = [v for v in itertools.product((0, 1), repeat=d) if not even_only or sum(v) % 2 == 0]
    return VPolytope(d, pts)


def cmd_gen(args) -> int:
    kind = args.kind
    if kind in ("matching", "matchings"):
        if args.n is None or args.n < 0:
            raise ParseError("--n must be a nonnegative integer")
        V = range(1, args.n + 1)
        obj = matching_polytope_hrep(V) if kind == "matching" else matchings_enum(V)
    elif kind in ("parity", "even", "cube"):
        if args.d is None or args.d < 1:
            raise ParseError("--d must be a positive integer")
        obj = parity_milef(args.d) if kind == "parity" else _cube(args.d, kind == "even")
    else:
        obj = {"example-k3": example_k3, "example-k5": example_k5, "example-k7": example_k7}[kind]()
    _emit(dumps(obj), args.output)
    return EXIT_OK


def cmd_eliminate(args) -> int:
    M = _load_as(args.milef, Milef)
    kw = dict(reduce=not args.keep_redundant, search_bound=args.search_bound)
    if args.all:
        if not args.schedule:
            raise ParseError("--all needs --schedule FILE")
        try:
            sched = json.loads(Path(args.schedule).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read schedule: {exc}") from exc
        if not isinstance(sched, list) or not all(isinstance(W, list) for W in sched):
            raise ParseError("schedule must be a JSON list of vertex lists")
        out, traces = eliminate_all(M, sched, **kw)
    else:
        if args.w is None:
            raise ParseError("give --w or --all --schedule")
        out, tr = eliminate_one(M, _int_list(args.w), **kw)
        traces = [tr]
    if args.keep_redundant:
        for tr in traces:
            if tr.m_after != (tr.m_before + 1) * tr.gamma:
                raise AssertionError("inequality count differs from (m+1)*gamma")
    stem = Path(args.milef).with_suffix("")
    out_path = args.output or f"{stem}-eliminated.json"
    trace_path = args.trace or f"{stem}-trace.json"
    _emit(dumps(out), out_path)
    _emit(dumps(trace_payload(traces, args.c), "trace"), trace_path)
    print(format_table(accounting_table(traces, args.c)))
    for i, tr in enumerate(traces, start=1):
        flat = "-" if tr.flat is None else f"v={list(tr.flat.v)} ell={tr.flat.ell} u={tr.flat.u}"
        print(f"step {i}: W={list(tr.W)} gamma={tr.gamma} {flat} "
              f"(m,k) ({tr.m_before},{tr.k_before}) -> ({tr.m_after},{tr.k_after}) verified={tr.verified}")
    if any(tr.verified is False for tr in traces):
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_verify(args) -> int:
    M = _load_as(args.milef, Milef)
    target = _load_as(args.target, VPolytope, HPolyhedron)
    if target.dim != M.d:
        raise ParseError(f"target dimension {target.dim} does not match |I| = {M.d}")
    res = verify_milef(M, target)
    if res:
        print("ok")
        return EXIT_OK
    side = "hull of the MILEF" if res.witness_side == "milef" else "target"
    print(f"mismatch: witness {_vec(res.witness)} is a vertex of the {side} outside the other set")
    return EXIT_MISMATCH


def cmd_project(args) -> int:
    P = _load_as(args.file, HPolyhedron)
    keep = _int_list(args.keep)
    if any(not 0 <= j < P.dim for j in keep):
        raise ParseError(f"--keep {keep} out of range for dimension {P.dim}")
    _emit(dumps(fourier_motzkin_project(P, keep)), args.output)
    return EXIT_OK


def cmd_hull(args) -> int:
    M = _load_as(args.file, Milef)
    _emit(dumps(mih_brute_force(M)), args.output)
    return EXIT_OK


def cmd_flatdir(args) -> int:
    K = _load_as(args.file, HPolyhedron, VPolytope)
    f = flat_direction(K, args.search_bound)
    print(json.dumps({"v": list(f.v), "ell": f.ell, "u": f.u, "integer_width": f.integer_width,
                      "width_real": _rat(f.width_real),
                      "search_bound": args.search_bound or default_search_bound()}, sort_keys=True))
    return EXIT_OK


def cmd_latticefree(args) -> int:
    K = _load_as(args.file, HPolyhedron, VPolytope)
    rep = lattice_free_check(K)
    print(json.dumps({"is_lattice_free": rep.is_lattice_free,
                      "witness": None if rep.witness is None else list(rep.witness)}, sort_keys=True))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="milef", description="Exact toolkit for mixed-integer extended formulations.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a polytope or formulation")
    g.add_argument("kind", choices=["matching", "matchings", "parity", "even", "cube",
                                    "example-k3", "example-k5", "example-k7"])
    g.add_argument("--n", type=int, help="number of graph vertices")
    g.add_argument("--d", type=int, help="dimension")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("eliminate", help="eliminate integer variables")
    e.add_argument("milef")
    e.add_argument("--w", help="vertex set W, e.g. 1,2,3")
    e.add_argument("--all", action="store_true", help="eliminate every integer variable")
    e.add_argument("--schedule", help="JSON list of vertex sets, one per step")
    e.add_argument("--keep-redundant", action="store_true",
                   help="skip redundancy removal and check m' = (m+1)*gamma")
    e.add_argument("--search-bound", type=int)
    e.add_argument("--c", type=float, default=1.0, help="constant used for the n_bound column")
    e.add_argument("-o", "--output")
    e.add_argument("--trace")
    e.set_defaults(func=cmd_eliminate)

    v = sub.add_parser("verify", help="compare a formulation with a target polytope")
    v.add_argument("milef")
    v.add_argument("target")
    v.set_defaults(func=cmd_verify)

    p = sub.add_parser("project", help="Fourier-Motzkin projection")
    p.add_argument("file")
    p.add_argument("--keep", required=True, help="0-based coordinates to keep")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_project)

    h = sub.add_parser("hull", help="mixed-integer hull of a formulation, projected to I")
    h.add_argument("file")
    h.add_argument("-o", "--output")
    h.set_defaults(func=cmd_hull)

    f = sub.add_parser("flatdir", help="flat integer direction of a body")
    f.add_argument("file")
    f.add_argument("--search-bound", type=int)
    f.set_defaults(func=cmd_flatdir)

    lf = sub.add_parser("latticefree", help="look for an interior integer point")
    lf.add_argument("file")
    lf.set_defaults(func=cmd_latticefree)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help or a usage error
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UnboundedError as exc:
        ray = "" if exc.ray is None else f" (ray {_vec(exc.ray)})"
        print(f"error: unbounded: {exc}{ray}", file=sys.stderr)
        return EXIT_UNBOUNDED
    except (PipelineError, ValueError) as exc:
        # anything else rejected by the library is a violated precondition
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
