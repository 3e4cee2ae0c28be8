"""Command-line entry point.

Every subcommand prints one JSON document ``{"manifest": ..., "result": ...}``
on stdout and diagnostics on stderr.  Exit codes: 0 success, 1 property
violation, 2 parse or validation error, 3 descent stuck or inadmissible,
4 words distinct, 5 undecided.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .dynamics import DegreeVector, apply_word, compose, word_from_json, word_to_json
from .elliptic import make_field, verify_relations
from .incidence import QuarticIncidence, clusters, validate
from .lattice import (
    CurveConfig,
    LatticeError,
    chain_pullback,
    check_star,
    classify_dynkin,
    definiteness,
    duval_point_bound,
    integrality_bound,
    intersection_matrix,
)
from .corollary_cases import case_labels, corollary_case
from .quartic import HomogPoly, parse_coordinates, verify_incidence
from .untwist import untwist
from .words import EQUAL, DISTINCT, cluster_normal_form, common_cluster, equal, free_reduce, section_symbols

OK, VIOLATION, PARSE_ERROR, STUCK, WORDS_DISTINCT, WORDS_UNDECIDED = 0, 1, 2, 3, 4, 5


class Inputs:
    """Reads input files once and remembers their digests for the manifest."""

    def __init__(self):
        self.digests: dict[str, str] = {}

    def json(self, flag: str, path: str):
        data = Path(path).read_bytes()
        self.digests[flag] = hashlib.sha256(data).hexdigest()
        return json.loads(data)

    def config(self, path: str) -> QuarticIncidence:
        return QuarticIncidence.from_json(self.json("config", path))

    def word(self, flag: str, path: str):
        return word_from_json(self.json(flag, path))


def _fmt(x) -> str:
    return str(x)


# --------------------------------------------------------------------------
# subcommands; each returns (exit code, status, result)

def cmd_validate(args, io: Inputs):
    config = io.config(args.config)
    violations = validate(config)
    result = {"violations": [v.to_json() for v in violations]}
    if violations:
        return VIOLATION, "violation", result
    result["clusters"] = [c.to_json() for c in clusters(config)]
    return OK, "valid", result


def cmd_apply(args, io: Inputs):
    config = io.config(args.config)
    v = DegreeVector.from_json(io.json("vector", args.vector), config)
    word = io.word("word", args.word)
    out = apply_word(config, word, v)
    return OK, "ok", {"vector": out.to_json()}


def cmd_compose(args, io: Inputs):
    config = io.config(args.config)
    word = io.word("word", args.word)
    m = compose(config, word)
    return OK, "ok", {"matrix": m.to_json(), "identity": m.is_identity()}


def cmd_untwist(args, io: Inputs):
    config = io.config(args.config)
    v = DegreeVector.from_json(io.json("vector", args.vector), config)
    trace = untwist(config, v)
    result = trace.to_json()
    result["recovered"] = word_to_json(trace.recovered)["word"]
    if args.trace:
        Path(args.trace).write_text(json.dumps(result, indent=2, sort_keys=True) + "\n")
    code = OK if trace.status == "complete" else STUCK
    return code, trace.status, result


def cmd_normalize(args, io: Inputs):
    config = io.config(args.config)
    word = io.word("word", args.word)
    reduced = free_reduce(word, config)
    result = {"reduced": word_to_json(reduced)["word"], "cluster": None, "element": None}
    line = common_cluster(config, reduced)
    if line is not None:
        result["cluster"] = line
        result["element"] = cluster_normal_form(config, reduced, line).to_json(section_symbols(config, line))
    return OK, "ok", result


def cmd_eq(args, io: Inputs):
    config = io.config(args.config)
    w1 = io.word("w1", args.w1)
    w2 = io.word("w2", args.w2)
    verdict = equal(config, w1, w2, budget=args.budget)
    code = {EQUAL: OK, DISTINCT: WORDS_DISTINCT}.get(verdict, WORDS_UNDECIDED)
    return code, verdict, {"verdict": verdict, "budget": args.budget}


def cmd_verify_relations(args, io: Inputs):
    config = io.config(args.config)
    field = make_field(args.field)
    report = verify_relations(config, args.samples, args.seed, field=field, jobs=args.jobs)
    failures = sum(r["failures"] for per_line in report.values() for r in per_line.values())
    result = {"field": field.name, "samples": args.samples, "relations": report, "failures": failures}
    return (OK, "all relations hold", result) if failures == 0 else (VIOLATION, "relation failures", result)


def _lattice(io: Inputs, path: str) -> CurveConfig:
    return CurveConfig.from_json(io.json("in", path))


def cmd_classify_lattice(args, io: Inputs):
    g = _lattice(io, args.input)
    report = definiteness(intersection_matrix(g))
    result = {"definiteness": report.to_json()}
    cls = classify_dynkin(g)
    result["dynkin"] = cls.to_json()
    return OK, "+".join(cls.labels) if cls.labels else "none", result


def cmd_check_star(args, io: Inputs):
    g = _lattice(io, args.input)
    marked = [m for m in (args.marked or "").split(",") if m]
    verdict = check_star(g, marked)
    result = {"marked": marked, "verdict": verdict.to_json()}
    return (OK, "holds", result) if verdict.holds else (VIOLATION, "fails", result)


def cmd_duval(args, io: Inputs):
    result: dict = {"kprime": args.kprime, "chain": [_fmt(a) for a in chain_pullback(args.kprime)]}
    if args.k is not None:
        result["k"] = args.k
        result["integral"] = integrality_bound(args.k, args.kprime)
    if args.degree is not None:
        result["point_bound"] = duval_point_bound(args.degree, args.nodes)
    return OK, "ok", result


def cmd_corollary_case(args, io: Inputs):
    if args.label is None:
        return OK, "ok", {"labels": case_labels()}
    g, marked, expected = corollary_case(args.label)
    unmarked = g.induced(v for v in g.ids if v not in set(marked))
    found = sorted(classify_dynkin(unmarked).labels)
    verdict = check_star(g, marked)
    result = {
        "label": args.label,
        "lattice": g.to_json(),
        "marked": marked,
        "expected": expected,
        "found": found,
        "star": verdict.to_json(),
    }
    if found == expected and verdict.holds:
        return OK, "reproduced", result
    return VIOLATION, "mismatch", result


def cmd_analyze_quartic(args, io: Inputs):
    F = HomogPoly.from_json(io.json("equation", args.equation))
    config = io.config(args.config)
    coords = parse_coordinates(config, io.json("coords", args.coords))
    report = verify_incidence(F, config, coords)
    return (OK, "consistent", report.to_json()) if report.ok else (VIOLATION, "mismatch", report.to_json())


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nodalquartic", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, "check a configuration and list its clusters")
    p.add_argument("--config", required=True)

    p = add("apply", cmd_apply, "apply a word to a degree vector")
    p.add_argument("--config", required=True)
    p.add_argument("--vector", required=True)
    p.add_argument("--word", required=True)

    p = add("compose", cmd_compose, "action matrix of a word")
    p.add_argument("--config", required=True)
    p.add_argument("--word", required=True)

    p = add("untwist", cmd_untwist, "run the degree-decreasing descent")
    p.add_argument("--config", required=True)
    p.add_argument("--vector", required=True)
    p.add_argument("--trace", help="also write the trace to this file")

    p = add("normalize", cmd_normalize, "free reduction and cluster normal form")
    p.add_argument("--config", required=True)
    p.add_argument("--word", required=True)

    p = add("eq", cmd_eq, "decide equality of two words")
    p.add_argument("--config", required=True)
    p.add_argument("--w1", required=True)
    p.add_argument("--w2", required=True)
    p.add_argument("--budget", type=int, default=2000)

    p = add("verify-relations", cmd_verify_relations, "check the relations on random elliptic curves")
    p.add_argument("--config", required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--field", default="p", help="prime modulus; 'p' picks the default prime and 'Q' the rationals")
    p.add_argument("--jobs", type=int, default=1)

    p = add("classify-lattice", cmd_classify_lattice, "Dynkin type and definiteness of a curve configuration")
    p.add_argument("--in", dest="input", required=True)

    p = add("check-star", cmd_check_star, "condition (*) on the unmarked curves")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--marked", default="", help="comma-separated vertex ids")

    p = add("duval", cmd_duval, "pullback coefficients along an A_k' chain")
    p.add_argument("--kprime", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--nodes", type=int, default=0)

    p = add("corollary-case", cmd_corollary_case, "rebuild a case of the exclusion tables")
    p.add_argument("--label")

    p = add("analyze-quartic", cmd_analyze_quartic, "check incidence data against an equation")
    p.add_argument("--equation", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--coords", required=True)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    io = Inputs()
    try:
        code, status, result = args.func(args, io)
    except (OSError, ValueError, KeyError, TypeError, LatticeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code, status, result = PARSE_ERROR, "error", {"error": str(exc)}
    manifest = {
        "subcommand": args.subcommand,
        "inputs": dict(sorted(io.digests.items())),
        "seed": getattr(args, "seed", None),
        "version": __version__,
        "status": status,
    }
    print(json.dumps({"manifest": manifest, "result": result}, indent=2, sort_keys=True))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
