"""Constructors for the standard example elements at finite truncation level.

The infinite examples are closed off exactly: a truncation keeps the maps
down to dyadic scale 2^-k and patches the tail with the fewest atoms that
restore constant coverage, so every constructed element passes validation
on the nose.  All endpoints are dyadic with denominator dividing 2^(k+1)
(2^(k+3) for the doubled-space example, whose coordinates are halved).
"""

from __future__ import annotations

from fractions import Fraction

from .dse import DSE, validate
from .errors import MassMismatch, OrbitEscapes
from .intervals import IntervalSet, rat
from .maps import Atom, PartialMap, compose, glue, monotone_pairing


def _check_level(k: int) -> int:
    if not isinstance(k, int) or k < 1:
        raise ValueError("truncation level must be a positive integer")
    return k


def counterexample(k: int) -> DSE:
    """The multiplicity-2 element built from the shift/identity pair plus
    the two-interval contractions, truncated at level k.

    Maps, in list order: the half shift on (0, 1/2), the identity on
    (1/2, 1), the pairs psi_n^1, psi_n^2 for n = 0..k-1, and two patch maps
    closing the dyadic tail.  The untruncated object is indecomposable;
    every truncation is a valid DSE of multiplicity 2.
    """
    _check_level(k)
    maps = [
        PartialMap([Atom(0, Fraction(1, 2), 1, Fraction(1, 2))]),
        PartialMap([Atom(Fraction(1, 2), 1, 1, 0)]),
    ]
    for n in range(k):
        lo = Fraction(1, 2 ** (n + 1))
        mid = Fraction(3, 2 ** (n + 2))
        hi = Fraction(1, 2 ** n)
        maps.append(PartialMap([Atom(lo, mid, 1, -Fraction(1, 2 ** (n + 2)))]))
        maps.append(PartialMap([Atom(mid, hi, 1, -Fraction(1, 2 ** (n + 1)))]))
    tail = Fraction(1, 2 ** (k + 1))
    maps.append(PartialMap([Atom(0, tail, 1, 0)]))
    maps.append(PartialMap([Atom(tail, 2 * tail, 1, -tail)]))
    return DSE(maps, 2)


def forest_example(k: int) -> tuple[PartialMap, PartialMap]:
    """The two reflections generating the degree-2 forest, truncated at k.

    The first map flips all of [0, 1); the second flips [1/2^{n+1}, 1/2^n)
    for n < k and keeps the final tail [0, 2^-k) as one whole reflection,
    so both maps are exact involutions and their composition is the
    finite-level odometer.
    """
    _check_level(k)
    phi1 = PartialMap([Atom(0, 1, -1, 1)])
    atoms = []
    for n in range(k):
        lo = Fraction(1, 2 ** (n + 1))
        hi = Fraction(1, 2 ** n)
        atoms.append(Atom(lo, hi, -1, Fraction(3, 2 ** (n + 1))))
    atoms.append(Atom(0, Fraction(1, 2 ** k), -1, Fraction(1, 2 ** k)))
    return phi1, PartialMap(atoms)


def orbit_visits_cells(m: PartialMap, x0, level: int, max_iter: int) -> bool:
    """Whether the first max_iter iterates of x0 visit every dyadic cell.

    A finite proxy for ergodicity of the generated action; raises
    OrbitEscapes as soon as an iterate leaves the domain of the map.
    """
    x = rat(x0)
    cells = 2 ** level
    seen: set[int] = set()
    for _ in range(max_iter):
        y = m.apply(x)
        if y is None:
            raise OrbitEscapes(f"iterate {x} left the domain")
        x = y
        seen.add(int(x * cells))
        if len(seen) == cells:
            return True
    return len(seen) == cells


def _amplify(atom: Atom, copy: int, swap: bool) -> Atom:
    """Halve one slope +1 atom into the chosen copy of the doubled space."""
    half = Fraction(1, 2)
    lo = atom.lo * half + copy * half
    hi = atom.hi * half + copy * half
    offset = atom.offset * half
    if swap:
        offset += half if copy == 0 else -half
    return Atom(lo, hi, 1, offset)


def amplification(k: int = 2) -> tuple[DSE, tuple[PartialMap, PartialMap]]:
    """The doubled-space element that decomposes exactly, plus its pasting.

    The doubled space I x {1, 2} is realized inside [0, 1) by scaling copy
    one onto [0, 1/2) and copy two onto [1/2, 1).  Each map of
    counterexample(k) is amplified twice, once per source copy; the
    shift-type maps stay inside their copy while the identity-type maps
    swap copies.  The maps are listed pasting-first: the first half glues
    into one automorphism of the doubled space and the second half into
    the other, and the returned pair is exactly that decomposition.
    """
    _check_level(k)
    base = counterexample(k).maps
    # Per-family copy behaviour: phi_1 and the psi^1 contractions stay in
    # their copy, phi_2 and the psi^2 contractions swap; the tail patches
    # split one each way so that both pastings close up exactly.
    swaps = [False, True]
    for _ in range(k):
        swaps.extend([False, True])
    swaps.extend([True, False])

    def amplified(copy: int) -> list[PartialMap]:
        return [PartialMap([_amplify(a, copy, swap) for a in pm.atoms])
                for pm, swap in zip(base, swaps)]

    from_copy1 = amplified(0)
    from_copy2 = amplified(1)
    # Pasting one: phi-type maps from copy one, psi/patch maps from copy two.
    group1 = [from_copy1[0], from_copy1[1]] + from_copy2[2:]
    group2 = [from_copy2[0], from_copy2[1]] + from_copy1[2:]
    dse = DSE(group1 + group2, 2)
    validate(dse)
    theta1 = glue(group1)
    theta2 = glue(group2)
    return dse, (theta1, theta2)


def forest_to_dse(pieces: list[PartialMap]) -> DSE:
    """Turn a forest decomposition into a multiplicity-2 element.

    Input pieces psi_k: S_k -> T_k must satisfy sum mu(T_k) = 1 and give a
    degree-2 forest (every point lies in exactly two of the S_k, T_k).  An
    auxiliary copy of each T_k is packed left to right into [0, 1); the
    element consists of psi_k followed by the packing, together with the
    packing itself, so that composing one map's inverse with the other
    recovers psi_k and its inverse.
    """
    total = sum((p.image.measure() for p in pieces), Fraction(0))
    if total != 1:
        raise MassMismatch(f"target masses sum to {total}, expected 1")
    maps = []
    cursor = Fraction(0)
    for p in pieces:
        width = p.image.measure()
        packing = monotone_pairing(p.image,
                                   IntervalSet.interval(cursor, cursor + width))
        maps.append(compose(packing, p))
        maps.append(packing)
        cursor += width
    out = DSE(maps, 2)
    validate(out)
    return out
