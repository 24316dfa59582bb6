"""Command-line front end.

Subcommands: ``bound``, ``degree``, ``k3``, ``ring``, ``selftest``.  Input documents are JSON
with ``"version": 1``.  Exit codes: 0 success, 1 parse/schema error, 2 hypothesis failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import jsonschema

from . import degree, topology
from .errors import GroupMismatch, HypothesisFailed, ParseError, SchemaError, SpinActionError
from .repring import GroupElement, GroupSpec, IndexData, group_to_json
from .ringexpr import parse_ring

EXIT_OK, EXIT_PARSE, EXIT_HYPOTHESIS = 0, 1, 2

_GROUP_SCHEMA = {
    "oneOf": [
        {
            "type": "object",
            "properties": {
                "kind": {"const": "even"},
                "orders": {"type": "array", "items": {"type": "integer", "minimum": 2}},
            },
            "required": ["kind"],
            "additionalProperties": False,
        },
        {
            "type": "object",
            "properties": {"kind": {"const": "odd"}, "p": {"type": "integer", "minimum": 1}},
            "required": ["kind", "p"],
            "additionalProperties": False,
        },
    ]
}

_COEFFS = {
    "type": "array",
    "items": {
        "oneOf": [
            {"type": "integer"},
            {
                "type": "array",
                "prefixItems": [{"type": "array", "items": {"type": "integer"}}, {"type": "integer"}],
                "minItems": 2,
                "maxItems": 2,
            },
        ]
    },
}

BOUND_SCHEMA = {
    "type": "object",
    "properties": {
        "version": {"const": 1},
        "name": {"type": "string"},
        "form": {
            "type": "array",
            "minItems": 1,
            "items": {
                "oneOf": [
                    {
                        "type": "object",
                        "properties": {"diag": {"type": "array", "items": {"enum": [1, -1]}}},
                        "required": ["diag"],
                        "additionalProperties": False,
                    },
                    {
                        "type": "object",
                        "properties": {"hyperbolic": {"type": "integer", "minimum": 1}},
                        "required": ["hyperbolic"],
                        "additionalProperties": False,
                    },
                ]
            },
        },
        "class": {
            "type": "array",
            "items": {"oneOf": [{"type": "integer"}, {"type": "array", "items": {"type": "integer"}}]},
        },
        "p": {"type": "integer", "minimum": 1},
        "genus": {"type": "integer", "minimum": 0},
    },
    "required": ["version", "form", "class", "p"],
    "additionalProperties": False,
}

DEGREE_SCHEMA = {
    "type": "object",
    "properties": {
        "version": {"const": 1},
        "group": _GROUP_SCHEMA,
        "s": _COEFFS,
        "t": _COEFFS,
        "h_cutoff": {"type": "integer", "minimum": 1},
    },
    "required": ["version", "group", "s", "t"],
    "additionalProperties": False,
}


@dataclass
class RunReport:
    command: str
    inputs: Any
    result: Any
    diagnostics: list = field(default_factory=list)
    exit_code: int = EXIT_OK

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, ensure_ascii=False, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> RunReport:
        return cls(**json.loads(text))


# --------------------------------------------------------------------------
# serialization of results


def _frac(x: Fraction) -> str:
    return str(x)


def _cond(c: degree.Condition) -> dict:
    return {"name": c.name, "passed": c.passed, "detail": c.detail}


def genus_report_to_json(r: topology.GenusBoundReport) -> dict:
    return {
        "manifold": r.manifold,
        "class": list(r.coords),
        "p": r.p,
        "square": r.square,
        "furuta_bound": _frac(r.furuta_bound),
        "refined_bound": _frac(r.refined_bound),
        "excluded_genera": list(r.excluded_genera),
        "effective_min_genus": r.effective_min_genus,
        "hypotheses": [_cond(h) for h in r.hypotheses],
        "notes": list(r.notes),
    }


def genus_report_from_json(doc: dict) -> topology.GenusBoundReport:
    return topology.GenusBoundReport(
        manifold=doc["manifold"],
        coords=tuple(doc["class"]),
        p=doc["p"],
        square=doc["square"],
        furuta_bound=Fraction(doc["furuta_bound"]),
        refined_bound=Fraction(doc["refined_bound"]),
        excluded_genera=list(doc["excluded_genera"]),
        hypotheses=[degree.Condition(**h) for h in doc["hypotheses"]],
        effective_min_genus=doc["effective_min_genus"],
        notes=list(doc["notes"]),
    )


def _equation_json(eq: degree.TraceEquation, group: GroupSpec) -> dict:
    return {
        "element": eq.element.label(group),
        "kind": eq.kind,
        "dim_v": eq.dims.dim_v,
        "dim_w": eq.dims.dim_w,
        "value": None if eq.value is None else eq.value.format(),
        "reason": eq.reason,
    }


# --------------------------------------------------------------------------
# document loading


def _load(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _validate(doc: Any, schema: dict) -> None:
    try:
        jsonschema.validate(doc, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(x) for x in exc.absolute_path) or "<root>"
        raise SchemaError(f"{where}: {exc.message}") from exc


def manifold_from_doc(doc: dict) -> tuple[topology.ManifoldSpec, topology.SurfaceClass]:
    form = topology.IntersectionForm.from_json(doc["form"])
    M = topology.ManifoldSpec(doc.get("name", "M"), form)
    cls = topology.SurfaceClass(tuple(topology.flatten_class(doc["class"])))
    if len(cls.coords) != form.rank:
        raise SchemaError(f"class has {len(cls.coords)} coordinates, form has rank {form.rank}")
    return M, cls


def index_from_doc(doc: dict) -> IndexData:
    try:
        return IndexData.from_json(doc)
    except (ValueError, KeyError, TypeError) as exc:
        raise SchemaError(str(exc)) from exc


# --------------------------------------------------------------------------
# commands


def cmd_bound(doc: dict) -> tuple[RunReport, str]:
    _validate(doc, BOUND_SCHEMA)
    M, cls = manifold_from_doc(doc)
    p = doc["p"]
    try:
        report = topology.genus_bound(M, cls, p)
    except HypothesisFailed as exc:
        diags = [_cond(h) for h in exc.hypotheses]
        text = _render_hypotheses(M, cls, p, exc.hypotheses) + f"\nhypothesis failed: {exc.name}\n"
        return RunReport("bound", doc, None, diags, EXIT_HYPOTHESIS), text
    result = genus_report_to_json(report)
    diags = [_cond(h) for h in report.hypotheses]
    text = _render_bound(report)
    if "genus" in doc:
        g = doc["genus"]
        try:
            cons = topology.index_from_cover(M, cls, g, p)
        except SpinActionError as exc:
            text += f"\ncover at genus {g}: {exc}\n"
            diags.append({"name": "cover invariants", "passed": False, "detail": str(exc)})
        else:
            conds = cons.nondegeneracy()
            result["cover"] = {"genus": g, "k": cons.k, "b2plus_quotients": cons.partial_sums,
                               "nondegeneracy": [_cond(c) for c in conds]}
            text += f"\ncover at genus {g}: k = {cons.k}, b2+(X_j) = {cons.partial_sums}\n"
            text += _render_conditions(conds)
    return RunReport("bound", doc, result, diags, EXIT_OK), text


def _render_conditions(conds: Sequence[degree.Condition]) -> str:
    width = max((len(c.name) for c in conds), default=0)
    return "".join(
        f"  [{'pass' if c.passed else 'FAIL'}] {c.name.ljust(width)}  {c.detail}\n" for c in conds
    )


def _render_hypotheses(M, cls, p, hyps) -> str:
    return (f"manifold: {M.name}  class: {tuple(cls.coords)}  p = {p}\nhypotheses:\n"
            + _render_conditions(hyps))


def _render_bound(r: topology.GenusBoundReport) -> str:
    lines = [
        f"manifold: {r.manifold}  class: {tuple(r.coords)}  p = {r.p}  [Σ]² = {r.square}",
        "hypotheses:",
        _render_conditions(r.hypotheses).rstrip("\n"),
        f"furuta bound:     g ≥ {r.furuta_bound}",
        f"refined bound:    g ≥ {r.refined_bound}",
        f"excluded genera:  {', '.join(map(str, r.excluded_genera)) or 'none'}",
        f"effective minimal genus: {r.effective_min_genus}",
    ]
    lines += [f"note: {n}" for n in r.notes]
    return "\n".join(lines) + "\n"


def cmd_degree(doc: dict) -> tuple[RunReport, str]:
    _validate(doc, DEGREE_SCHEMA)
    idx = index_from_doc(doc)
    group = idx.group
    system = degree.build_trace_system(idx, doc.get("h_cutoff", degree.DEFAULT_H_CUTOFF))
    sol = degree.solve_degree(system)
    lines = [f"group: {group}  k = {idx.k}  m = {idx.m}", "equations:"]
    width = max(len(eq.element.label(group)) for eq in system.equations)
    for eq in system.equations:
        lines.append(f"  {eq.element.label(group).ljust(width)}  {eq.kind:<8} "
                     f"dim V_g = {eq.dims.dim_v}, dim W_g = {eq.dims.dim_w}"
                     + (f"  value {eq.value}" if eq.value is not None else "")
                     + (f"  ({eq.reason})" if eq.reason else ""))
    conds = degree.check_nondegeneracy(idx)
    result: dict = {
        "index": idx.to_json(),
        "equations": [_equation_json(eq, group) for eq in system.equations],
        "outcome": sol.outcome,
        "nondegeneracy": [_cond(c) for c in conds],
    }
    lines.append("non-degeneracy:")
    lines.append(_render_conditions(conds).rstrip("\n"))
    if sol.is_unique:
        assert sol.alpha is not None
        rep = degree.conclude_bound(sol, idx)
        result["alpha"] = sol.alpha.to_json()
        result["alpha_text"] = str(sol.alpha)
        result["inequality"] = {
            "conclusion": rep.conclusion,
            "instantiated": rep.instantiated,
            "binding": rep.binding,
            "required_valuation": rep.required_valuation,
            "holds_for_input": rep.holds_for_input,
        }
        lines.append(f"α = {sol.alpha}")
        lines.append(f"inequality: {rep.conclusion}  [{rep.instantiated}]  with k = {idx.k}, m = {idx.m}: "
                     + ("holds" if rep.holds_for_input else "FAILS (α is not integral)"))
    elif sol.outcome == "underdetermined":
        result["unpinned"] = [[n, g.label(group)] for n, g in sol.unpinned]
        result["skipped"] = [[g.label(group), r] for g, r in sol.skipped]
        lines.append("α is underdetermined; skipped equations:")
        lines += [f"  {g.label(group)}: {r}" for g, r in sol.skipped]
    else:
        result["certificate"] = sol.certificate
        lines.append(f"inconsistent: {sol.certificate}")
    if group.is_cyclic and group.orders and idx.k > 0 and idx.m > 0 and idx.trivial_t == 0:
        cert = degree.verify_theorem_c(idx)
        result["pole_certificate"] = {"certified": cert.certified, "trace": cert.trace.format(),
                               "denominator": cert.offending_factor.format()}
        lines.append(f"pole certificate: {cert.detail}")
    return RunReport("degree", doc, result, [_cond(c) for c in conds], EXIT_OK), "\n".join(lines) + "\n"


def cmd_k3(flag: str) -> tuple[RunReport, str]:
    if flag == "construction":
        chk = topology.k3_cover_construction_check()
        result = asdict(chk)
        text = (f"χ(X~) = 2χ(K3) - χ(S) = {chk.euler_cover}\n"
                f"σ(X~) = {chk.signature_cover} (stated: {chk.signature_cover_stated})\n"
                f"after blowing down: χ(X) = {chk.euler_blown_down}, σ(X) = {chk.signature_blown_down}\n"
                + "".join(f"flag: {f}\n" for f in chk.flags))
        return RunReport("k3", {"type": flag}, result, list(chk.flags)), text
    cls = topology.classify_qk3_involution(flag)
    result = {
        "type": cls.type,
        "b2plus_quotient": cls.b2plus_quotient,
        "fixed_points": cls.fixed_points,
        "b2minus_quotient": cls.b2minus_quotient,
        "derivation": list(cls.derivation),
    }
    head = f"{flag} involution: b2+(X/σ) = {cls.b2plus_quotient}"
    if cls.fixed_points is not None:
        head += f", N = {cls.fixed_points}, b2-(X/σ) = {cls.b2minus_quotient}"
    text = head + "\n" + "".join(f"  {d}\n" for d in cls.derivation)
    return RunReport("k3", {"type": flag}, result, []), text


def _group_from_flags(even: str | None, odd: int | None) -> GroupSpec:
    if even is not None and odd is not None:
        raise ParseError("use only one of --even and --odd")
    if odd is not None:
        return GroupSpec.odd_type(odd)
    if even:
        try:
            return GroupSpec.even(*(int(x) for x in even.split(",")))
        except ValueError as exc:
            raise ParseError(f"bad --even list {even!r}: {exc}") from exc
    return GroupSpec.trivial()


def cmd_ring(expression: str, group: GroupSpec) -> tuple[RunReport, str]:
    val = parse_ring(expression, group)
    unit = group.elements()[0]
    chars = {"J": val.character(GroupElement("J", unit)).format(),
             "φ": val.character(GroupElement("phi", unit)).format()}
    for a in group.elements():
        if any(a):
            g = GroupElement("J", a)
            chars[g.label(group)] = val.character(g).format()
    result = {"value": val.to_json(), "text": str(val), "characters": chars,
              "parity_valid": val.is_parity_valid()}
    lines = [f"{expression} = {val}"]
    if group.odd and not val.is_parity_valid():
        lines.append("note: not in R(G_odd) (parity rule violated)")
    lines += [f"  tr_{g} = {v}" for g, v in chars.items()]
    return RunReport("ring", {"expression": expression, "group": group_to_json(group)}, result), "\n".join(lines) + "\n"


def cmd_selftest() -> tuple[RunReport, str]:
    from .selftest import run_all

    rows = run_all()
    width = max(len(r.name) for r in rows)
    text = "".join(f"[{'PASS' if r.passed else 'FAIL'}] {r.name.ljust(width)}  {r.detail}\n" for r in rows)
    ok = all(r.passed for r in rows)
    result = [{"criterion": r.name, "passed": r.passed, "detail": r.detail} for r in rows]
    return RunReport("selftest", None, result, [], EXIT_OK if ok else EXIT_HYPOTHESIS), text


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spinaction", description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="emit a machine-readable report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="genus lower bound from a branched cover")
    p.add_argument("--input", required=True, help="JSON document ('-' for stdin)")

    p = sub.add_parser("degree", help="solve for the K-theoretic degree from index data")
    p.add_argument("--input", required=True, help="JSON document ('-' for stdin)")

    p = sub.add_parser("k3", help="involutions on rational cohomology K3 surfaces")
    p.add_argument("type", choices=["even", "odd", "construction"])

    p = sub.add_parser("ring", help="evaluate an expression in the representation ring")
    p.add_argument("expression")
    p.add_argument("--even", help="comma-separated cyclic factor orders, e.g. 2,2")
    p.add_argument("--odd", type=int, metavar="P", help="odd type with Z/2^P action")

    sub.add_parser("selftest", help="run the acceptance checks")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    as_json = args.json
    try:
        if args.command == "bound":
            report, text = cmd_bound(_load(args.input))
        elif args.command == "degree":
            report, text = cmd_degree(_load(args.input))
        elif args.command == "k3":
            report, text = cmd_k3(args.type)
        elif args.command == "ring":
            report, text = cmd_ring(args.expression, _group_from_flags(args.even, args.odd))
        else:
            report, text = cmd_selftest()
    except (ParseError, SchemaError, GroupMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SpinActionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    sys.stdout.write(report.to_json() + "\n" if as_json else text)
    return report.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
