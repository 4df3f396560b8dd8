"""Command line entry point: ``gsegal check``, ``gsegal corpus`` and ``gsegal schema``."""

from __future__ import annotations

import argparse
import datetime
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .cat import DEFAULT_MAX_LEVEL, check_equivalence
from .cellular import colimit_suite, fixed_tensor_suite, gsets_up_to_iso, pushout_suite
from .corpus import BoundsTooLarge, CorpusBounds, acceptance_corpus, enumerate_corpus
from .document import CHECKS, INPUT_SCHEMA, Built, InputDocument, ParseError, build, emit, from_gcategory, parse
from .errors import ValidationError
from .gcat import restrict_fixed
from .group import Subgroup, adjunction_check
from .segal import (SegalError, SegalGObject, check_complete, check_segal, classification_diagram,
                    classifying_diagram, comparison_to_base, discrete_segal_object, homotopy_category,
                    homotopy_data)
from .simplicial import nerve

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_INVALID = 0, 1, 2, 3


def _diagram(built: Built, kind: str, N: int) -> tuple[SegalGObject, str | None]:
    """The Segal object to check and, if checks must be refused, why."""
    GC = built.category
    if kind == "discrete_nerve":
        return discrete_segal_object(nerve(GC, N)), None
    if kind == "classification":
        if built.weq is None:
            raise ValidationError("a classification diagram needs a 'weq' marking")
        cd = classification_diagram(built.weq, N)
        return cd.diagram, ("weak equivalences include non-invertible maps" if cd.caveat else None)
    return classifying_diagram(GC, N), None


def _names(H: Subgroup) -> list[str]:
    return [str(x) for x in H.names]


def adjunction_section(built: Built, max_a: int = 3, max_x: int = 4) -> dict:
    G = built.group
    gsets = gsets_up_to_iso(G, max_x)
    count, failures = 0, []
    for H in built.subgroups:
        for na in range(max_a + 1):
            for X in gsets:
                rep = adjunction_check(G, H, na, X)
                count += 1
                if not rep.passed:
                    failures.append(rep.to_dict())
    return {"passed": not failures, "instances": count, "failures": failures[:5]}


def cellularity_section(built: Built) -> dict:
    groups = [built.group]
    out = {}
    for label, suite in (("filtered_colimit", colimit_suite(groups, 4, 2)),
                         ("pushout", pushout_suite(groups)),
                         ("fixed_tensor", fixed_tensor_suite(groups))):
        out[label] = {"condition": suite.condition, "instances": suite.instances,
                      "failures": [f.to_dict() for f in suite.failures[:5]]}
    out["passed"] = all(not v["failures"] for v in out.values() if isinstance(v, dict))
    return out


def ho_section(W: SegalGObject, built: Built) -> dict:
    ho = homotopy_category(W)
    data = homotopy_data(W)
    out = {"objects": ho.base.n_objects, "morphisms": ho.base.n_morphisms,
           "composition_well_defined": not data.ambiguities}
    F = comparison_to_base(W, built.category, ho)
    whole = check_equivalence(F.functor)
    fixed = [{"subgroup": _names(H), **check_equivalence(restrict_fixed(F, H)).to_dict()} for H in built.subgroups]
    out["comparison"] = whole.to_dict()
    out["fixed_comparisons"] = fixed
    out["passed"] = whole.verdict and all(e["verdict"] for e in fixed) and not data.ambiguities
    return out


def run_checks(doc: InputDocument, checks, max_level: int, subgroup_filter=None) -> dict:
    """All requested sections for one document; raises on invalid input."""
    built = build(doc)
    if subgroup_filter is not None:
        at = {str(e): i for i, e in enumerate(built.group.names)}
        chosen = []
        for names in subgroup_filter:
            try:
                H = Subgroup(built.group, tuple(at[e] for e in names))
            except KeyError as exc:
                raise ParseError(f"unknown group element {exc.args[0]!r}") from None
            chosen.append(H.validate())
        built = Built(built.group, built.category, chosen, built.weq)
    sections: dict = {}
    if "adjunction" in checks:
        sections["adjunction"] = adjunction_section(built)
    if "cellularity" in checks:
        sections["cellularity"] = cellularity_section(built)
    if {"segal", "complete", "ho"} & set(checks):
        W, refused = _diagram(built, doc.diagram, max_level)
        sizes = [list(s) for s in W.sizes()]
        for name in ("segal", "complete", "ho"):
            if name not in checks:
                continue
            if refused:
                sections[name] = {"passed": False, "refused": refused, "level_sizes": sizes}
                continue
            try:
                if name == "segal":
                    sections[name] = check_segal(W, built.subgroups).to_dict()
                    sections[name]["level_sizes"] = sizes
                elif name == "complete":
                    sections[name] = check_complete(W, built.subgroups).to_dict()
                else:
                    sections[name] = ho_section(W, built)
            except SegalError as exc:
                sections[name] = {"passed": False, "error": str(exc)}
    return {"input": {"name": doc.name, "diagram": doc.diagram, "group_order": built.group.order,
                      "objects": built.category.base.n_objects, "morphisms": built.category.base.n_morphisms},
            "subgroups": [_names(H) for H in built.subgroups],
            "checks": sections,
            "verdict": "pass" if all(s.get("passed") for s in sections.values()) else "fail"}


def make_report(body: dict, digest: str, max_level: int) -> dict:
    return {"tool": "gsegal", "version": __version__, "input_digest": f"sha256:{digest}",
            "max_level": max_level,
            "generated_at": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
            **body}


def dump(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _parse_subgroups(text: str | None):
    if text is None or text == "all":
        return None
    return [[e.strip() for e in part.split(",") if e.strip()] for part in text.split(";")]


def _parse_checks(text: str | None, default) -> tuple[str, ...]:
    if text is None:
        return tuple(default)
    chosen = tuple(c.strip() for c in text.split(",") if c.strip())
    unknown = [c for c in chosen if c not in CHECKS]
    if unknown:
        raise ParseError(f"unknown checks {unknown}; choose from {', '.join(CHECKS)}")
    return chosen


def _level(text: str) -> int:
    n = int(text)
    if not 2 <= n <= DEFAULT_MAX_LEVEL:
        raise argparse.ArgumentTypeError(f"max level must lie in 2..{DEFAULT_MAX_LEVEL}")
    return n


def _write(report: dict, path: str | None) -> None:
    text = dump(report)
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_check(args) -> int:
    if args.corpus:
        return cmd_check_corpus(args)
    if not args.input:
        print("error: --input or --corpus is required", file=sys.stderr)
        return EXIT_PARSE
    try:
        raw = Path(args.input).read_bytes()
    except OSError as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        doc = parse(raw)
        max_level = args.max_level or doc.options.get("max_level", DEFAULT_MAX_LEVEL)
        if max_level > DEFAULT_MAX_LEVEL:
            raise ParseError(f"max_level above {DEFAULT_MAX_LEVEL} is not supported")
        checks = _parse_checks(args.checks, doc.options.get("checks", CHECKS))
        body = run_checks(doc, checks, max_level, _parse_subgroups(args.subgroups))
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"invalid input: {exc} (witness: {exc.witness!r})", file=sys.stderr)
        return EXIT_INVALID
    report = make_report(body, hashlib.sha256(raw).hexdigest(), max_level)
    _write(report, args.report)
    return EXIT_OK if body["verdict"] == "pass" else EXIT_FAIL


def cmd_check_corpus(args) -> int:
    try:
        checks = _parse_checks(args.checks, ("segal", "complete", "ho"))
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    max_level = args.max_level or DEFAULT_MAX_LEVEL
    digest = hashlib.sha256()
    results = []
    for inst in acceptance_corpus():
        doc = from_gcategory(inst.category, inst.name)
        digest.update(emit(doc).encode())
        body = run_checks(doc, checks, max_level)
        results.append({"name": inst.name, "verdict": body["verdict"], "checks": body["checks"]})
    verdict = "pass" if all(r["verdict"] == "pass" for r in results) else "fail"
    report = make_report({"corpus": results, "instances": len(results), "verdict": verdict},
                         digest.hexdigest(), max_level)
    _write(report, args.report)
    return EXIT_OK if verdict == "pass" else EXIT_FAIL


def cmd_corpus(args) -> int:
    try:
        bounds = CorpusBounds(args.max_group_order, args.max_objects, args.max_morphisms)
        instances = enumerate_corpus(bounds)
    except BoundsTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    out = Path(args.out) if args.out else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    for k, inst in enumerate(instances):
        if out:
            name = f"{k:03d}.json"
            (out / name).write_text(emit(from_gcategory(inst.category, inst.name)))
        print(inst.name)
    return EXIT_OK


def cmd_schema(args) -> int:
    sys.stdout.write(json.dumps(INPUT_SCHEMA, sort_keys=True, indent=2) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gsegal", description="Equivariant Segal-space checks on finite G-categories.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run checks on an input document or the built-in corpus")
    check.add_argument("--input", help="input JSON document")
    check.add_argument("--max-level", type=_level, default=None, help="truncation level N (default 4)")
    check.add_argument("--subgroups", default=None,
                       help="'all' or subgroups as ';'-separated lists of element names, e.g. 'e;e,r1'")
    check.add_argument("--checks", default=None, help=f"comma-separated subset of {','.join(CHECKS)}")
    check.add_argument("--report", default=None, help="write the JSON report here instead of stdout")
    check.add_argument("--corpus", action="store_true", help="batch mode over the built-in corpus")
    check.set_defaults(func=cmd_check)

    corpus = sub.add_parser("corpus", help="list or write the enumerated corpus")
    corpus.add_argument("--out", default=None, help="directory for one input document per instance")
    corpus.add_argument("--max-group-order", type=int, default=6)
    corpus.add_argument("--max-objects", type=int, default=3)
    corpus.add_argument("--max-morphisms", type=int, default=12)
    corpus.set_defaults(func=cmd_corpus)

    schema = sub.add_parser("schema", help="print the input JSON schema")
    schema.set_defaults(func=cmd_schema)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
