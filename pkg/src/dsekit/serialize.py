"""JSON and CSV forms of the package's values.

Rationals cross the boundary as "p/q" strings in lowest terms; intervals
as ["a","b"] endpoint pairs; atoms as {"src","slope","offset"} objects.
Matrices are JSON lists of integer rows, or CSV with one comma-separated
row per line and no header.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .dse import CoverageReport, DSE
from .intervals import IntervalSet, rat, rat_str
from .maps import Atom, PartialMap
from .multiset import GraphMultiset

_EPS_RE = re.compile(r"^(\d+)/(\d+)$")


def parse_eps(text: str) -> Fraction:
    """Strict parser for tolerance flags: positive 'p/q' strings only."""
    m = _EPS_RE.match(text.strip())
    if not m:
        raise ValueError(f"expected a 'p/q' rational, got {text!r}")
    value = Fraction(int(m.group(1)), int(m.group(2)))
    if value <= 0:
        raise ValueError("tolerance must be positive")
    return value


def interval_set_to_json(s: IntervalSet) -> list:
    return [[rat_str(lo), rat_str(hi)] for lo, hi in s]


def interval_set_from_json(data) -> IntervalSet:
    return IntervalSet((rat(lo), rat(hi)) for lo, hi in data)


def atom_to_json(a: Atom) -> dict:
    return {"src": [rat_str(a.lo), rat_str(a.hi)],
            "slope": a.slope, "offset": rat_str(a.offset)}


def atom_from_json(data) -> Atom:
    return Atom(rat(data["src"][0]), rat(data["src"][1]),
                int(data["slope"]), rat(data["offset"]))


def map_to_json(m: PartialMap) -> list:
    return [atom_to_json(a) for a in m.atoms]


def map_from_json(data) -> PartialMap:
    return PartialMap(atom_from_json(a) for a in data)


def dse_to_json(d: DSE) -> dict:
    return {"multiplicity": d.multiplicity,
            "maps": [map_to_json(m) for m in d.maps]}


def dse_from_json(data) -> DSE:
    return DSE((map_from_json(m) for m in data["maps"]),
               int(data["multiplicity"]))


def multiset_to_json(g: GraphMultiset) -> dict:
    entries = []
    for (slope, offset), cells in g.families():
        for lo, hi, mult in cells:
            entries.append({"src": [rat_str(lo), rat_str(hi)], "slope": slope,
                            "offset": rat_str(offset), "multiplicity": mult})
    return {"entries": entries}


def multiset_from_json(data) -> GraphMultiset:
    return GraphMultiset(
        (Atom(rat(e["src"][0]), rat(e["src"][1]), int(e["slope"]),
              rat(e["offset"])), int(e["multiplicity"]))
        for e in data["entries"])


def piece_to_json(p) -> dict:
    """Piece JSON: the map plus its endpoint sets, for CLI reporting."""
    return {"map": map_to_json(p.map),
            "domain": interval_set_to_json(p.domain),
            "image": interval_set_to_json(p.image)}


def extension_to_json(e) -> dict:
    """Extension JSON: chain pieces plus the S_i/T_i interval sets."""
    return {"depth": e.depth,
            "pieces": [map_to_json(pm) for pm in e.pieces],
            "sources": [interval_set_to_json(s) for s in e.sources],
            "targets": [interval_set_to_json(t) for t in e.targets]}


def coverage_report_to_json(r: CoverageReport) -> dict:
    cells = lambda step: [[rat_str(lo), rat_str(hi), v] for lo, hi, v in step]
    return {"multiplicity": r.multiplicity, "ok": r.ok,
            "domain_cells": cells(r.domain_cells),
            "image_cells": cells(r.image_cells)}


def matrix_to_csv(a: list[list[int]]) -> str:
    return "\n".join(",".join(str(x) for x in row) for row in a) + "\n"


def matrix_from_csv(text: str) -> list[list[int]]:
    rows = []
    for line in text.strip().splitlines():
        if line.strip():
            rows.append([int(x) for x in line.split(",")])
    return rows


def matrix_from_json(data) -> list[list[int]]:
    return [[int(x) for x in row] for row in data]
