"""Command-line front end.

    cyclobmw symfun qfun   --r R [--limit L] [--kind q|eta|a|all]
    cyclobmw admiss check  --params FILE [--upto N]
    cyclobmw admiss solve  --r R [--upto N] [--u "2,3"] [--write-params FILE]
    cyclobmw admiss verify --r R [--upto N]
    cyclobmw bmw2 build    --r R [--params FILE] [--symbolic] [--certify] [--seed S]
    cyclobmw bmw2 reduce   --r R --word "s x1 e" [--params FILE]
    cyclobmw repn verify   --r R [--params FILE] [--symbolic]
    cyclobmw repn kappa    --u "2,3"

Every command accepts ``--format json|csv|text`` (default json).  Exit codes:
0 all verdicts true, 1 some verdict false, 2 input error.  ``admiss``,
``bmw2``, ``repn`` and ``symfun`` are also installed as stand-alone aliases
for the matching command group.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import __version__
from .admissibility import ParameterSet, Verdict, assess, solve_universal, verify_equivalence
from .bmw2 import (
    build_table,
    check_associativity,
    check_confluence,
    check_relations,
    default_instance,
    parse_word,
)
from .errors import InputError, RangeError, SingularityError
from .repn import build_module, eigen_split, module_rank_of_e, solve_kappa, verify_module_relations
from .ring import MultiPoly, format_rational, parse_rational, serialize, to_text
from .symfun import default_limit, eta, schur_q, signed_elementary

FORMATS = ("json", "csv", "text")
COMMANDS = ("qfun", "check", "solve", "verify", "build", "reduce", "kappa")


@dataclass
class JobConfig:
    command: str
    group: str = ""
    r: int | None = None
    upto: int | None = None
    params_path: str | None = None
    symbolic: bool = False
    format: str = "json"
    seed: int = 0
    limit: int | None = None
    kind: str = "all"
    word: str | None = None
    u: str | None = None
    write_params: str | None = None
    certify: bool = False

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.r is not None and self.r < 1:
            raise InputError(f"--r must be at least 1, got {self.r}")
        if self.upto is not None and self.upto < 0:
            raise InputError(f"--upto must be non-negative, got {self.upto}")
        if self.format not in FORMATS:
            raise InputError(f"--format must be one of {', '.join(FORMATS)}")


@dataclass
class Report:
    command: str
    inputs: dict
    results: list[dict] = field(default_factory=list)
    verdict: bool | None = None
    extra: dict = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        return 1 if self.verdict is False else 0


# parameter files


def _json_error(path: str, exc: json.JSONDecodeError) -> InputError:
    return InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}")


def _parse_poly(value, nvars: int, where: str) -> MultiPoly:
    if isinstance(value, (str, int)) and not isinstance(value, bool):
        try:
            return MultiPoly.constant(nvars, parse_rational(value))
        except InputError as exc:
            raise InputError(f"{where}: {exc}") from None
    if not isinstance(value, list):
        raise InputError(f"{where}: expected a list of {{exponents, coeff}} records")
    try:
        return MultiPoly.from_records(nvars, value)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from None


def params_from_json(doc, source: str = "<params>") -> ParameterSet:
    if not isinstance(doc, dict):
        raise InputError(f"{source}: $: expected a JSON object")
    r = doc.get("r")
    if isinstance(r, bool) or not isinstance(r, int) or r < 1:
        raise InputError(f"{source}: $.r: expected a positive integer, got {r!r}")
    omega = doc.get("omega")
    if doc.get("symbolic"):
        if omega is None or omega == "eta":
            return ParameterSet.symbolic(r)
        if not isinstance(omega, list) or not omega:
            raise InputError(f"{source}: $.omega: expected \"eta\" or a non-empty list of polynomials")
        polys = [_parse_poly(p, r, f"{source}: $.omega[{k}]") for k, p in enumerate(omega)]
        return ParameterSet.symbolic(r, polys)
    u = doc.get("u")
    if not isinstance(u, list) or len(u) != r:
        raise InputError(f"{source}: $.u: expected a list of {r} rationals")
    us = []
    for k, x in enumerate(u):
        try:
            us.append(parse_rational(x))
        except InputError as exc:
            raise InputError(f"{source}: $.u[{k}]: {exc}") from None
    if omega == "eta":
        return ParameterSet.u_admissible(us)
    if not isinstance(omega, list) or not omega:
        raise InputError(f"{source}: $.omega: expected \"eta\" or a non-empty list of rationals")
    ws = []
    for k, x in enumerate(omega):
        try:
            ws.append(parse_rational(x))
        except InputError as exc:
            raise InputError(f"{source}: $.omega[{k}]: {exc}") from None
    if len(ws) < r:
        raise InputError(f"{source}: $.omega: need at least r = {r} values, got {len(ws)}")
    return ParameterSet(r, tuple(us), tuple(ws))


def load_params(path: str) -> tuple[ParameterSet, dict]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: cannot read parameter file ({exc.strerror})") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _json_error(path, exc) from None
    return params_from_json(doc, path), doc


def params_to_json(p: ParameterSet) -> dict:
    if p.is_symbolic:
        return {"r": p.r, "symbolic": True, "omega": [serialize(w) for w in p.omega]}
    return {"r": p.r, "u": [format_rational(x) for x in p.u], "omega": [format_rational(w) for w in p.omega]}


def _parse_u(text: str) -> list[Fraction]:
    items = [s for s in text.replace(" ", "").split(",") if s]
    if not items:
        raise InputError("--u: expected a comma-separated list of rationals")
    out = []
    for k, s in enumerate(items):
        try:
            out.append(parse_rational(s))
        except InputError as exc:
            raise InputError(f"--u item {k}: {exc}") from None
    return out


# report helpers


def _value(v, names=None) -> dict:
    return {"value": serialize(v), "text": to_text(v, names)}


def _verdict_rows(name: str, v: Verdict, names=None) -> list[dict]:
    rows = []
    for c in v.checks:
        row = {
            "condition": name,
            "identity": c.family,
            "index": c.index,
            "status": "pass" if c.holds else "fail",
        }
        if not c.holds:
            row["witness"] = {"lhs": to_text(c.lhs, names), "rhs": to_text(c.rhs, names)}
        rows.append(row)
    return rows


def _verdict_summary(v: Verdict) -> dict:
    out = {"holds": v.holds, "checked_up_to": v.checked_up_to, "note": v.note}
    if v.witness is not None:
        out["witness"] = {"identity": v.witness.family, "index": v.witness.index}
    return out


# commands


def cmd_qfun(cfg: JobConfig) -> Report:
    r = cfg.r or 1
    limit = cfg.limit if cfg.limit is not None else default_limit(r)
    names = [f"u{k + 1}" for k in range(r)]
    rows = []
    kinds = ("a", "q", "eta") if cfg.kind == "all" else (cfg.kind,)
    for kind in kinds:
        if kind == "a":
            seq = signed_elementary(r).a
        elif kind == "q":
            seq = schur_q(r, limit).q
        elif kind == "eta":
            seq = eta(r, limit).eta
        else:
            raise InputError(f"--kind must be q, eta, a or all, got {kind!r}")
        for k, p in enumerate(seq):
            rows.append({"kind": kind, "index": k, "poly": p.to_records(), "text": p.to_str(names)})
    return Report(
        "qfun",
        {"r": r, "limit": limit, "kind": cfg.kind},
        rows,
        extra={"record": {"version": 1, "r": r, "limit": limit, "kind": cfg.kind, "entries": rows}},
    )


def cmd_check(cfg: JobConfig) -> Report:
    if not cfg.params_path:
        raise InputError("check: --params FILE is required")
    p, doc = load_params(cfg.params_path)
    upto = cfg.upto if cfg.upto is not None else default_limit(p.r)
    try:
        rep = assess(p, upto)
    except RangeError as exc:
        raise InputError(f"{cfg.params_path}: {exc}") from None
    names = p.names
    rows = (
        _verdict_rows("weak", rep.weak, names)
        + _verdict_rows("admissible", rep.admissible, names)
        + _verdict_rows("u-admissible", rep.u_admissible, names)
    )
    summary = {
        "weak": _verdict_summary(rep.weak),
        "admissible": _verdict_summary(rep.admissible),
        "u_admissible": _verdict_summary(rep.u_admissible),
    }
    verdict = rep.weak.holds and rep.admissible.holds and rep.u_admissible.holds
    return Report("check", {"params": doc, "upto": upto}, rows, verdict, {"summary": summary})


def cmd_solve(cfg: JobConfig) -> Report:
    r = cfg.r
    u = _parse_u(cfg.u) if cfg.u else None
    if u is not None:
        if r is not None and r != len(u):
            raise InputError(f"--r {r} does not match {len(u)} values in --u")
        r = len(u)
    if r is None:
        raise InputError("solve: --r is required")
    upto = cfg.upto if cfg.upto is not None else default_limit(r)
    values = solve_universal(r, upto, u)
    names = [f"u{k + 1}" for k in range(r)]
    rows = [{"index": a, "H": serialize(h), "text": to_text(h, names)} for a, h in enumerate(values)]
    if u is None:
        params = ParameterSet.symbolic(r, values)
    else:
        params = ParameterSet(r, tuple(u), tuple(values))
    if cfg.write_params:
        Path(cfg.write_params).write_text(json.dumps(params_to_json(params), indent=2) + "\n")
    inputs = {"r": r, "upto": upto, "u": None if u is None else [format_rational(x) for x in u]}
    return Report("solve", inputs, rows)


def cmd_verify(cfg: JobConfig) -> Report:
    if cfg.group == "repn":
        return cmd_repn_verify(cfg)
    if cfg.r is None:
        raise InputError("verify: --r is required")
    upto = cfg.upto if cfg.upto is not None else default_limit(cfg.r)
    rep = verify_equivalence(cfg.r, upto)
    names = [f"u{k + 1}" for k in range(cfg.r)]
    rows = (
        _verdict_rows("weak (omega = eta)", rep.weak, names)
        + _verdict_rows("admissible (omega = H)", rep.admissible, names)
        + _verdict_rows("u-admissible (omega = H)", rep.u_admissible, names)
    )
    rows.append(
        {"condition": "H_a = eta_a", "identity": "solver-vs-eta", "index": upto,
         "status": "pass" if rep.solver_matches_eta else "fail"}
    )
    return Report("verify", {"r": cfg.r, "upto": upto}, rows, rep.all_true)


def _build_params(cfg: JobConfig) -> tuple[ParameterSet, dict]:
    if cfg.params_path:
        p, doc = load_params(cfg.params_path)
        if cfg.r is not None and cfg.r != p.r:
            raise InputError(f"--r {cfg.r} does not match r = {p.r} in {cfg.params_path}")
        return p, doc
    if cfg.r is None:
        raise InputError("--r is required when --params is not given")
    if cfg.symbolic:
        return ParameterSet.symbolic(cfg.r), {"r": cfg.r, "symbolic": True, "omega": "eta"}
    p = default_instance(cfg.r)
    return p, params_to_json(p)


def cmd_build(cfg: JobConfig) -> Report:
    p, doc = _build_params(cfg)
    table = build_table(p.r, p)
    rows: list[dict] = []
    verdict = None
    if cfg.certify:
        relations = check_relations(table)
        for c in relations.checks:
            rows.append(
                {"relation": c.name, "status": "pass" if c.holds else "fail",
                 "witness": None if c.witness is None else c.witness.text()}
            )
        assoc = check_associativity(table)
        rows.append(
            {"relation": f"associativity ({assoc.triples} triples)", "status": "pass" if assoc.holds else "fail",
             "witness": None if assoc.witness is None else " | ".join(w.text() for w in assoc.witness)}
        )
        conf = check_confluence(table, seed=cfg.seed)
        rows.append(
            {"relation": f"reduce(w1 w2) = reduce(w1) reduce(w2) ({conf.trials} seeded pairs)",
             "status": "pass" if conf.holds else "fail",
             "witness": None if conf.witness is None else " | ".join(" ".join(w) for w in conf.witness)}
        )
        verdict = relations.all_pass and assoc.holds and conf.holds
    extra = {"structure_constants": table.dump(), "rank": 3 * p.r * p.r}
    if cfg.certify:
        extra["certificate"] = {"free": verdict, "rank": 3 * p.r * p.r}
    inputs = {"r": p.r, "params": doc, "certify": cfg.certify, "seed": cfg.seed}
    return Report("build", inputs, rows, verdict, extra)


def cmd_reduce(cfg: JobConfig) -> Report:
    if cfg.word is None:
        raise InputError("reduce: --word is required")
    letters = parse_word(cfg.word)
    if cfg.params_path:
        p, doc = _build_params(cfg)
    else:
        if cfg.r is None:
            raise InputError("reduce: --r is required")
        p = ParameterSet.generic(cfg.r)
        doc = {"r": cfg.r, "generic": True}
    el = build_table(p.r, p).reduce(letters)
    rows = [
        {"word": w.text(), "family": w.family, "a": w.a, "b": w.b, **_value(el.terms[w], p.names)}
        for w in el.support()
    ]
    return Report("reduce", {"r": p.r, "word": " ".join(letters), "params": doc}, rows,
                  extra={"text": el.to_text(p.names)})


def cmd_repn_verify(cfg: JobConfig) -> Report:
    p, doc = _build_params(cfg)
    module = build_module(p)
    report = verify_module_relations(module)
    rows = [c.to_json() for c in report.checks]
    verdict = report.all_pass
    rank_e = module_rank_of_e(module)
    if any(p.omega_at(k) for k in range(p.r)):
        rows.append({"relation": "rank E = 1", "status": "pass" if rank_e == 1 else "fail", "witness": None})
        verdict = verdict and rank_e == 1
    try:
        eig = eigen_split(module)
    except SingularityError as exc:
        rows.append({"relation": "eigen split", "status": "skipped", "witness": str(exc)})
    else:
        rows.extend(c.to_json() for c in eig.checks)
        verdict = verdict and eig.all_pass
    return Report("verify", {"r": p.r, "params": doc}, rows, verdict)


def cmd_kappa(cfg: JobConfig) -> Report:
    if not cfg.u:
        raise InputError("kappa: --u is required")
    u = _parse_u(cfg.u)
    try:
        kappa = solve_kappa(u)
    except SingularityError as exc:
        raise InputError(f"--u: {exc}") from None
    rows = [{"index": j + 1, "kappa": format_rational(k)} for j, k in enumerate(kappa)]
    return Report("kappa", {"u": [format_rational(x) for x in u]}, rows)


HANDLERS = {
    "qfun": cmd_qfun,
    "check": cmd_check,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "build": cmd_build,
    "reduce": cmd_reduce,
    "kappa": cmd_kappa,
}


# emitters


def _digest(inputs: dict) -> str:
    return hashlib.sha256(json.dumps(inputs, sort_keys=True, default=str).encode()).hexdigest()


def emit_report(report: Report, fmt: str = "json") -> str:
    if fmt == "json":
        doc = {
            "tool_version": __version__,
            "command": report.command,
            "inputs_digest": _digest(report.inputs),
            "verdict": report.verdict,
            "results": report.results,
        }
        doc.update(report.extra)
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        columns: list[str] = []
        for row in report.results:
            for key in row:
                if key not in columns:
                    columns.append(key)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for row in report.results:
            writer.writerow(
                {k: json.dumps(v) if isinstance(v, (dict, list)) else v for k, v in row.items()}
            )
        return buf.getvalue()
    if fmt == "text":
        lines = [f"{report.command}: " + ("no verdict" if report.verdict is None else
                                           ("PASS" if report.verdict else "FAIL"))]
        for row in report.results:
            status = row.get("status")
            label = row.get("relation") or row.get("identity") or row.get("kind") or row.get("word") or ""
            bits = [str(label)]
            if "index" in row:
                bits.append(f"[{row['index']}]")
            for key in ("text", "kappa"):
                if key in row:
                    bits.append(f"= {row[key]}")
            if status:
                bits.append(status)
            if row.get("witness"):
                bits.append(f"witness: {row['witness']}")
            lines.append("  " + " ".join(bits))
        if "text" in report.extra:
            lines.append("  " + report.extra["text"])
        return "\n".join(lines) + "\n"
    raise InputError(f"unknown format {fmt!r}")


def run(cfg: JobConfig) -> tuple[int, str]:
    """Execute a job; returns (exit code, rendered report or error message)."""
    try:
        cfg.validate()
        report = HANDLERS[cfg.command](cfg)
        return report.exit_code, emit_report(report, cfg.format)
    except (InputError, RangeError) as exc:
        return 2, f"error: {exc}\n"


# argument parsing


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=FORMATS, default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cyclobmw", description="Two-strand degenerate cyclotomic BMW algebras")
    parser.add_argument("--version", action="version", version=__version__)
    groups = parser.add_subparsers(dest="group", required=True)

    symfun = groups.add_parser("symfun", help="symmetric-function tables")
    sub = symfun.add_subparsers(dest="command", required=True)
    p = sub.add_parser("qfun", help="a_j, q_a and eta_a tables")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--limit", type=int)
    p.add_argument("--kind", choices=("q", "eta", "a", "all"), default="all")
    _common(p)

    admiss = groups.add_parser("admiss", help="admissibility conditions")
    sub = admiss.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", help="decide all three conditions for a parameter file")
    p.add_argument("--params", dest="params_path", required=True)
    p.add_argument("--upto", type=int)
    _common(p)
    p = sub.add_parser("solve", help="universal admissible omega_a")
    p.add_argument("--r", type=int)
    p.add_argument("--upto", type=int)
    p.add_argument("--u", help="numeric point, e.g. \"2,3\"")
    p.add_argument("--write-params", dest="write_params")
    _common(p)
    p = sub.add_parser("verify", help="certify admissible <=> u-admissible for r")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--upto", type=int)
    _common(p)

    bmw = groups.add_parser("bmw2", help="the algebra W_{2,r}")
    sub = bmw.add_subparsers(dest="command", required=True)
    p = sub.add_parser("build", help="structure constants and freeness certificate")
    p.add_argument("--r", type=int)
    p.add_argument("--params", dest="params_path")
    p.add_argument("--certify", action="store_true")
    p.add_argument("--symbolic", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    _common(p)
    p = sub.add_parser("reduce", help="reduce a generator word to the spanning set")
    p.add_argument("--r", type=int)
    p.add_argument("--word", required=True)
    p.add_argument("--params", dest="params_path")
    _common(p)

    repn = groups.add_parser("repn", help="the module M")
    sub = repn.add_subparsers(dest="command", required=True)
    p = sub.add_parser("verify", help="check the module relations and eigen data")
    p.add_argument("--r", type=int)
    p.add_argument("--params", dest="params_path")
    p.add_argument("--symbolic", action="store_true")
    _common(p)
    p = sub.add_parser("kappa", help="solve the Cauchy system for kappa")
    p.add_argument("--u", required=True)
    _common(p)
    return parser


def config_from_args(argv: Sequence[str] | None = None) -> JobConfig:
    ns = build_parser().parse_args(argv)
    values = {k: v for k, v in vars(ns).items() if k in JobConfig.__dataclass_fields__}
    return JobConfig(**values)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    code, out = run(cfg)
    (sys.stderr if code == 2 else sys.stdout).write(out)
    return code


def _group_main(group: str):
    def entry(argv: Sequence[str] | None = None) -> int:
        args = list(sys.argv[1:] if argv is None else argv)
        return main([group, *args])

    return entry


admiss_main = _group_main("admiss")
bmw2_main = _group_main("bmw2")
repn_main = _group_main("repn")
symfun_main = _group_main("symfun")


if __name__ == "__main__":
    sys.exit(main())
