"""Command-line entry point: ``idealspaces analyze|verify|z-example|corpus-gen``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .errors import IdealSpacesError, ResourceLimitError, RingSpecError
from .families import FAMILY_TAGS
from .harness import CHECK_IDS, CorpusSpec, corpus_digest, generate_corpus, run_checks
from .report import (SCHEMA_VERSION, analysis_report, dumps, render_analysis_text, summary_table,
                     theorem_report_json, verify_summary, write_json)
from .zsym import Z_BOUND_CAP, prm_z_sober_bounded, reg_z_not_sober_certificate, validate_reg_certificate


def _families(values) -> list[str] | None:
    if not values:
        return None
    tags = []
    for v in values:
        tags.extend(t.strip().lower() for t in v.split(",") if t.strip())
    bad = [t for t in tags if t not in FAMILY_TAGS]
    if bad:
        raise SystemExit(f"unknown family tag(s): {', '.join(bad)}; choose from {', '.join(FAMILY_TAGS)}")
    return tags


def _emit(text: str, path: str | None) -> None:
    if path:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    rep = analysis_report(args.spec, _families(args.family))
    _emit(dumps(rep) if args.json else render_analysis_text(rep), args.output)
    return 0


def _load_corpus(path: str | None) -> tuple[CorpusSpec, list[str] | None]:
    if not path:
        return CorpusSpec(), None
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    if "rings" in obj:  # output of corpus-gen, possibly edited
        return CorpusSpec.from_json(obj.get("corpus", {})), list(obj["rings"])
    return CorpusSpec.from_json(obj), None


def cmd_verify(args) -> int:
    corpus, rings = _load_corpus(args.corpus)
    if args.seed is not None:
        corpus.seed = args.seed
    if args.z_bound is not None:
        corpus.z_bound = args.z_bound
    only = None if args.all or not args.only else [c for v in args.only for c in v.split(",")]
    rings = generate_corpus(corpus) if rings is None else rings
    start = time.perf_counter()
    reports = run_checks(corpus, only=only, texts=rings)
    elapsed = time.perf_counter() - start
    os.makedirs(args.out, exist_ok=True)
    for cid, rep in reports.items():
        write_json(os.path.join(args.out, cid.lower() + ".json"), theorem_report_json(rep, corpus))
    summary = verify_summary(reports, corpus, rings)
    write_json(os.path.join(args.out, "summary.json"), summary)
    sys.stdout.write(summary_table(reports))
    sys.stdout.write(f"{len(rings)} rings; reports in {args.out}\n")
    sys.stderr.write(f"elapsed {elapsed:.1f}s\n")
    return 0 if summary["passed"] else 1


def cmd_z_example(args) -> int:
    if args.bound > Z_BOUND_CAP:
        sys.stderr.write(f"error: bound {args.bound} exceeds the cap {Z_BOUND_CAP}\n")
        return 2
    reg = reg_z_not_sober_certificate(args.bound)
    problems = validate_reg_certificate(reg)
    prm = prm_z_sober_bounded(args.bound)
    reg_out = {"schema_version": SCHEMA_VERSION, "validation_problems": problems, **reg}
    prm_out = {"schema_version": SCHEMA_VERSION, **prm}
    write_json(os.path.join(args.out, "reg_z_certificate.json"), reg_out)
    write_json(os.path.join(args.out, "prm_z_certificate.json"), prm_out)
    ok = not problems and reg["irreducible"] and not reg["sober"] and prm["sober"]
    sys.stdout.write(
        f"Reg(Z): irreducible={reg['irreducible']} sober={reg['sober']} "
        f"({reg['pair_count']} pairs, {len(reg['intersection_refutations'])} refuted candidates)\n"
        f"Prm(Z): sober up to {args.bound}: {prm['sober']} "
        f"({prm['irreducible_traces']} irreducible traces)\n"
        f"certificates {'valid' if ok else 'INVALID'}; written to {args.out}\n")
    return 0 if ok else 1


def cmd_corpus_gen(args) -> int:
    corpus, _ = _load_corpus(args.config)
    if args.seed is not None:
        corpus.seed = args.seed
    rings = generate_corpus(corpus)
    out = {"schema_version": SCHEMA_VERSION, "corpus": corpus.to_json(), "rings": rings,
           "count": len(rings), "sha256": corpus_digest(rings)}
    _emit(dumps(out), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="idealspaces",
                                description="Ideal spaces of finite commutative rings in the coarse lower topology.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="classify the ideals of one ring and report on its ideal spaces")
    a.add_argument("spec", help='ring description, e.g. "Z/12", "Z/2 x Z/2", "GF(2)[x]/(x^3)"')
    a.add_argument("--family", action="append", help=f"family tag(s): {', '.join(FAMILY_TAGS)}")
    a.add_argument("--json", action="store_true", help="emit JSON instead of text")
    a.add_argument("-o", "--output", help="write to this file instead of stdout")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run the corpus checks and write one JSON report per check")
    v.add_argument("--all", action="store_true", help="run every check (the default)")
    v.add_argument("--only", action="append", help=f"check id(s), e.g. chk-sober-eq; one of {', '.join(CHECK_IDS)}")
    v.add_argument("--corpus", help="corpus config JSON (CorpusSpec fields, or corpus-gen output)")
    v.add_argument("--seed", type=int, help="seed for sampled sub-checks")
    v.add_argument("--z-bound", type=int, help="bound for the integer certificates")
    v.add_argument("--out", default="reports", help="report directory (default: reports)")
    v.set_defaults(func=cmd_verify)

    z = sub.add_parser("z-example", help="write Reg(Z) and Prm(Z) certificates")
    z.add_argument("--bound", type=int, default=1000)
    z.add_argument("--out", default="z-certificates")
    z.set_defaults(func=cmd_z_example)

    c = sub.add_parser("corpus-gen", help="print the ring corpus for a config")
    c.add_argument("--config", help="corpus config JSON")
    c.add_argument("--seed", type=int)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_corpus_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except RingSpecError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ResourceLimitError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    except (IdealSpacesError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
