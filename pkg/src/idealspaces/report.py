"""Report assembly and deterministic JSON serialization."""

from __future__ import annotations

import json
import os

from .families import CONVENTIONS, FAMILY_TAGS, build_space, family_inclusions_report
from .harness import CHECK_IDS, CorpusSpec, TheoremReport, corpus_digest
from .ideals import FLAG_NAMES, analyze_ring, krull_dimension
from .rings import build_ring
from .topology import IdealSpace

SCHEMA_VERSION = "1.0"


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(path: str, obj) -> None:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps(obj))


def _space_report(X: IdealSpace, lat, ref) -> dict:
    irr = X.is_irreducible(X.ids) if X.k else None
    direct = X.is_sober_direct()
    crit = X.is_sober_criterion()
    spec = X.is_spectral_finite()
    qc = X.quasi_compactness_report()
    out = {
        "convention": CONVENTIONS[X.label],
        "members": [ref(i) for i in X.ids],
        "irreducible": None if irr is None else {
            "value": irr.irreducible,
            "witness": None if irr.irreducible else {
                "pair": [ref(i) for i in irr.pair],
                "cover": [list(irr.cover[0]), list(irr.cover[1])],
            },
        },
        "sober": {
            "direct": direct.sober,
            "criterion": crit.sober,
            "witness": direct.witness or crit.witness,
            "closed_sets": direct.stats["closed_sets"],
            "irreducible_closed_sets": direct.stats["irreducible_closed_sets"],
        },
        "spectral": {
            "value": spec.spectral,
            "t0": spec.t0,
            "quasi_compact": spec.quasi_compact,
            "sober": spec.sober,
            "qc_open_basis_closed_under_intersection": spec.qc_open_basis_closed_under_intersection,
        },
        "quasi_compactness": {
            "qc": qc.qc,
            "everyone_below_max": qc.everyone_below_max,
            "max_qc": qc.max_qc,
            "chain_bounds_ok": qc.chain_bounds_ok,
            "max_elements": list(qc.max_elements),
            "maximal_chains": qc.n_maximal_chains,
        },
    }
    return out


def lattice_export(lat, cls, labels=None) -> dict:
    """Ideals with member lists, flags and radicals, plus all strict containments."""
    ring = lat.ring
    labels = labels or {i: lat.label(i) for i in range(lat.m)}
    ideals = []
    for i in range(lat.m):
        ideals.append({
            "index": i,
            "label": labels[i],
            "generators": [ring.label(g) for g in lat.generators(i)],
            "members": [ring.label(x) for x in lat.ideals[i].members],
            "size": lat.bits[i].bit_count(),
            "radical": int(cls.radical[i]),
            "flags": sorted(name for name in FLAG_NAMES if cls.flags[name][i]),
        })
    containment = [[i, j] for i in range(lat.m) for j in range(lat.m) if i != j and lat.leq(i, j)]
    return {"ideal_count": lat.m, "krull_dimension": krull_dimension(lat, cls),
            "ideals": ideals, "containment": containment}


def analysis_report(text: str, families=None) -> dict:
    ring = build_ring(text)
    lat, cls = analyze_ring(ring)
    labels = {i: lat.label(i) for i in range(lat.m)}

    def ref(i):
        return {"index": int(i), "label": labels[int(i)]}

    tags = list(FAMILY_TAGS) if not families else list(families)
    return {
        "schema_version": SCHEMA_VERSION,
        "ring": {"spec": ring.key, "size": ring.size, "json": ring.spec.to_json()},
        "lattice": lattice_export(lat, cls, labels),
        "families": {tag: _space_report(build_space(lat, cls, tag), lat, ref) for tag in tags},
        "inclusions": family_inclusions_report(lat, cls),
    }


def render_analysis_text(rep: dict) -> str:
    lines = [f"ring {rep['ring']['spec']}  ({rep['ring']['size']} elements)",
             f"ideals: {rep['lattice']['ideal_count']}  Krull dimension: {rep['lattice']['krull_dimension']}"]
    for ideal in rep["lattice"]["ideals"]:
        lines.append(f"  [{ideal['index']}] {ideal['label']:<20} size {ideal['size']:<4} "
                     + " ".join(ideal["flags"]))
    for tag, fam in rep["families"].items():
        members = ", ".join(m["label"] for m in fam["members"]) or "(empty)"
        irr = fam["irreducible"]
        irr_text = "n/a (empty)" if irr is None else ("yes" if irr["value"] else "no")
        lines.append(f"{tag}: {{{members}}}")
        lines.append(f"    irreducible {irr_text}; sober {fam['sober']['direct']} "
                     f"(criterion {fam['sober']['criterion']}); spectral {fam['spectral']['value']}")
        if irr is not None and irr["witness"]:
            a, b = irr["witness"]["pair"]
            lines.append(f"    no common lower bound for {a['label']} and {b['label']}")
    return "\n".join(lines) + "\n"


def verify_summary(reports: dict[str, TheoremReport], corpus: CorpusSpec, rings: list[str]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "seed": corpus.seed,
        "corpus": corpus.to_json(),
        "corpus_size": len(rings),
        "corpus_sha256": corpus_digest(rings),
        "checks": {cid: {"counts": r.counts(), "passed": r.passed} for cid, r in reports.items()},
        "passed": all(r.passed for r in reports.values()),
    }


def theorem_report_json(report: TheoremReport, corpus: CorpusSpec) -> dict:
    return {"schema_version": SCHEMA_VERSION, "seed": corpus.seed, **report.to_json()}


def summary_table(reports: dict[str, TheoremReport]) -> str:
    lines = [f"{'check':<20}{'pass':>6}{'fail':>6}{'skip':>6}{'n/a':>6}  result"]
    for cid in CHECK_IDS:
        if cid not in reports:
            continue
        c = reports[cid].counts()
        lines.append(f"{cid:<20}{c['pass']:>6}{c['fail']:>6}{c['skipped']:>6}{c['not_applicable']:>6}  "
                     + ("PASS" if reports[cid].passed else "FAIL"))
    return "\n".join(lines) + "\n"
