"""Doubly stochastic elements: validation, distance and normalization.

A doubly stochastic element (DSE) of multiplicity n is a finite list of
partial isomorphisms whose domains cover almost every point exactly n times
and whose images do too.  Its associated matrix is the multiset of graph
atoms counted with multiplicity; two DSEs are *equivalent*, and compare
equal here, exactly when those multisets coincide.  The distance integrates
|M(a) - M(b)| against the counting measure and is computed exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidDSE, MultiplicityMismatch, NotDoublyStochastic
from .intervals import ONE, ZERO, IntervalSet, Step, step_sum
from .maps import Atom, PartialMap
from .multiset import GraphMultiset


class DSE:
    """A finite collection of partial isomorphisms with constant coverage."""

    __slots__ = ("maps", "multiplicity", "_matrix")

    def __init__(self, maps: Iterable[PartialMap], multiplicity: int):
        if multiplicity < 1:
            raise ValueError("multiplicity must be a positive integer")
        self.maps = tuple(maps)
        self.multiplicity = multiplicity
        self._matrix = None

    @property
    def matrix(self) -> GraphMultiset:
        if self._matrix is None:
            self._matrix = GraphMultiset.from_maps(self.maps)
        return self._matrix

    def __eq__(self, other) -> bool:
        # Equality of DSEs is equivalence: same associated matrix.
        return (isinstance(other, DSE)
                and self.multiplicity == other.multiplicity
                and self.matrix == other.matrix)

    def __hash__(self) -> int:
        return hash((self.multiplicity, self.matrix))

    def __repr__(self) -> str:
        return f"DSE<{len(self.maps)} maps, multiplicity {self.multiplicity}>"


@dataclass(frozen=True)
class CoverageReport:
    multiplicity: int
    domain_cells: Step
    image_cells: Step
    ok: bool


def validate(d: DSE, raise_on_fail: bool = True) -> CoverageReport:
    """Check the exact coverage condition: both step functions constantly n.

    Returns the per-cell coverage counts; raises InvalidDSE listing every
    offending cell unless ``raise_on_fail`` is false.
    """
    dom = step_sum((lo, hi, 1) for m in d.maps for lo, hi in m.domain)
    img = step_sum((lo, hi, 1) for m in d.maps for lo, hi in m.image)
    bad_dom = tuple(c for c in dom if c[2] != d.multiplicity)
    bad_img = tuple(c for c in img if c[2] != d.multiplicity)
    ok = not bad_dom and not bad_img
    if not ok and raise_on_fail:
        raise InvalidDSE(
            f"coverage is not constantly {d.multiplicity} "
            f"({len(bad_dom)} bad domain cells, {len(bad_img)} bad image cells)",
            bad_dom, bad_img)
    return CoverageReport(d.multiplicity, dom, img, ok)


def associated_matrix(d: DSE) -> GraphMultiset:
    return d.matrix


def distance(a: DSE, b: DSE) -> Fraction:
    """Exact L1 distance between associated matrices (a metric on classes)."""
    if a.multiplicity != b.multiplicity:
        raise MultiplicityMismatch(
            f"multiplicities differ: {a.multiplicity} vs {b.multiplicity}")
    return a.matrix.l1_distance(b.matrix)


def equivalent(a: DSE, b: DSE) -> bool:
    return distance(a, b) == 0


def inverse(d: DSE) -> DSE:
    return DSE((m.invert() for m in d.maps), d.multiplicity)


def symmetrize(d: DSE) -> DSE:
    """The union of d with its inverse; symmetric of doubled multiplicity."""
    return DSE(d.maps + tuple(m.invert() for m in d.maps), 2 * d.multiplicity)


def is_symmetric(d: DSE) -> bool:
    return d.matrix == d.matrix.flip()


def neighbor_set(d: DSE, c: IntervalSet) -> IntervalSet:
    """Union of the forward images of c under all maps of the element."""
    return IntervalSet.union_all(m.image_of(c) for m in d.maps)


# -- turning a matrix back into a DSE -----------------------------------------


def normalize_cover(m: GraphMultiset, n: int) -> DSE:
    """Assemble a valid DSE whose associated matrix is exactly m.

    The multiset is first dealt, cell by cell in canonical family order,
    into n layers of row mass one (total functions, generally not
    injective).  Each layer is then split into injective maps by ranking
    the preimage branches over every image cell in the natural order of
    [0, 1): rank r collects the (r+1)-th smallest preimage.
    """
    row = m.row_step()
    col = m.col_step()
    bad_rows = tuple(c for c in row if c[2] != n)
    bad_cols = tuple(c for c in col if c[2] != n)
    if bad_rows or bad_cols:
        raise NotDoublyStochastic(
            f"row/column mass is not constantly {n} "
            f"({len(bad_rows)} bad rows, {len(bad_cols)} bad columns)")

    families = list(m.families())
    cuts = sorted({x for _, cells in families
                   for lo, hi, _ in cells for x in (lo, hi)} | {ZERO, ONE})
    layers: list[list[Atom]] = [[] for _ in range(n)]
    for k in range(len(cuts) - 1):
        lo, hi = cuts[k], cuts[k + 1]
        idx = 0
        for (slope, offset), cells in families:
            mult = _multiplicity_at(cells, lo)
            for _ in range(mult):
                layers[idx].append(Atom(lo, hi, slope, offset))
                idx += 1
    maps: list[PartialMap] = []
    for layer in layers:
        maps.extend(_split_into_injective(layer))
    out = DSE(maps, n)
    assert out.matrix == m
    assert len(out.maps) <= n * len(families)
    return out


def _multiplicity_at(cells, x) -> int:
    for lo, hi, mult in cells:
        if lo <= x < hi:
            return mult
    return 0


def _split_into_injective(atoms: Sequence[Atom]) -> list[PartialMap]:
    """Split a row-mass-one layer into injective maps by preimage rank.

    Preimage branches over an image cell are affine with slope +-1, so two
    branches cross in at most one point; cutting at all crossings makes the
    pointwise order constant on every cell.
    """
    if not atoms:
        return []
    cuts = {x for a in atoms for x in (a.image_lo, a.image_hi)}
    for a in atoms:
        if a.slope != 1:
            continue
        for b in atoms:
            if b.slope == -1:
                y = (a.offset + b.offset) / 2
                if ZERO < y < ONE:
                    cuts.add(y)
    ordered = sorted(cuts)
    ranks: dict[int, list[Atom]] = {}
    for k in range(len(ordered) - 1):
        lo, hi = ordered[k], ordered[k + 1]
        branches = [a for a in atoms if a.image_lo <= lo and hi <= a.image_hi]
        if not branches:
            continue
        mid = (lo + hi) / 2
        branches.sort(key=lambda a, m=mid: m - a.offset if a.slope == 1
                      else a.offset - m)
        for r, a in enumerate(branches):
            if a.slope == 1:
                piece = Atom(lo - a.offset, hi - a.offset, 1, a.offset)
            else:
                piece = Atom(a.offset - hi, a.offset - lo, -1, a.offset)
            ranks.setdefault(r, []).append(piece)
    return [PartialMap(v) for _, v in sorted(ranks.items())]
