"""Named ideal spaces selected from a classified lattice."""

from __future__ import annotations

import numpy as np

from .ideals import IdealClassification, IdealLattice
from .topology import IdealSpace

FAMILY_TAGS = ("spec", "max", "prp", "rad", "min", "spn", "prm", "nil", "nip",
               "irr", "irc", "prn", "reg", "fgn", "irs", "idl")

# Membership conventions, surfaced verbatim in reports.
CONVENTIONS = {
    "spec": "prime ideals",
    "max": "maximal ideals",
    "prp": "proper ideals",
    "rad": "radical ideals, R included",
    "min": "minimal nonzero proper ideals",
    "spn": "minimal prime ideals",
    "prm": "primary ideals (proper)",
    "nil": "nil ideals",
    "nip": "nilpotent ideals",
    "irr": "proper irreducible ideals",
    "irc": "proper completely irreducible ideals",
    "prn": "principal ideals, (0) and R included",
    "reg": "proper regular ideals (contain a non-zero-divisor)",
    "fgn": "proper finitely generated ideals",
    "irs": "proper strongly irreducible ideals",
    "idl": "all ideals",
}

# QC_FAMILIES contain Max(R) and are therefore quasi-compact.
QC_FAMILIES = ("max", "spec", "irs", "prm", "irr", "irc", "rad", "prp")


def family_mask(cls: IdealClassification, tag: str) -> np.ndarray:
    f = cls.flags
    proper = f["proper"]
    m = cls.lattice.m
    table = {
        "spec": f["prime"],
        "max": f["maximal"],
        "prp": proper,
        "rad": f["radical"],
        "min": f["minimal"] & proper,
        "spn": f["minimal_prime"],
        "prm": f["primary"],
        "nil": f["nil"],
        "nip": f["nilpotent"],
        "irr": f["irreducible"] & proper,
        "irc": f["completely_irreducible"] & proper,
        "prn": f["principal"],
        "reg": f["regular"] & proper,
        "fgn": f["finitely_generated"] & proper,
        "irs": f["strongly_irreducible"] & proper,
        "idl": np.ones(m, dtype=bool),
    }
    try:
        return table[tag]
    except KeyError:
        raise ValueError(f"unknown family tag {tag!r}; expected one of {', '.join(FAMILY_TAGS)}") from None


def family_members(cls: IdealClassification, tag: str) -> list[int]:
    return [int(i) for i in np.flatnonzero(family_mask(cls, tag))]


def build_space(lat: IdealLattice, cls: IdealClassification, tag: str) -> IdealSpace:
    members = family_members(cls, tag)
    if tag == "fgn":
        # Every ideal of a finite ring is finitely generated.
        assert members == family_members(cls, "prp"), "Fgn differs from Prp in a finite ring"
    elif tag == "reg":
        # A non-zero-divisor of a finite ring is a unit, so no proper ideal is regular.
        assert members == [], "proper regular ideal found in a finite ring"
    return IdealSpace(lat, members, label=tag)


def build_all_spaces(lat: IdealLattice, cls: IdealClassification) -> dict[str, IdealSpace]:
    return {tag: build_space(lat, cls, tag) for tag in FAMILY_TAGS}


def family_inclusions_report(lat: IdealLattice, cls: IdealClassification) -> dict[str, bool]:
    """Inclusions between families that hold in every commutative ring,
    plus the finite-ring identities (Fgn = Prp, Reg empty, Nil = Nip, Spec = Max = Spn)."""
    fam = {tag: set(family_members(cls, tag)) for tag in FAMILY_TAGS}
    out = {
        "max<=irs&spec": fam["max"] <= (fam["irs"] & fam["spec"]),
        "spec<=prm": fam["spec"] <= fam["prm"],
        "prm<=irr": fam["prm"] <= fam["irr"],
        "irc<=irr": fam["irc"] <= fam["irr"],
        "spec<=irs": fam["spec"] <= fam["irs"],
        "irs<=irr": fam["irs"] <= fam["irr"],
        "spec<=rad": fam["spec"] <= fam["rad"],
        "fgn==prp": fam["fgn"] == fam["prp"],
        "reg==empty": not fam["reg"],
        "nil==nip": fam["nil"] == fam["nip"],
        "spec==max": fam["spec"] == fam["max"],
        "spn==spec": fam["spn"] == fam["spec"],
    }
    for tag in QC_FAMILIES:
        out[f"max<={tag}"] = fam["max"] <= fam[tag]
    return out
