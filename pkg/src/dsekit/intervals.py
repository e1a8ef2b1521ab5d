"""Exact rational arithmetic and interval-set algebra on [0, 1).

Everything in this package lives on the half-open unit interval.  A set is
a finite union of half-open intervals ``[a, b)`` with rational endpoints,
stored canonically: sorted by left endpoint, pairwise disjoint, adjacent
pieces merged.  Equality of canonical forms is equality of sets up to
measure zero, and Lebesgue measure is an exact finite sum of ``Fraction``
lengths.  No floating point appears anywhere.
"""

from __future__ import annotations

from bisect import bisect_right
from fractions import Fraction
from typing import Iterable, Iterator

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(value) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction or 'p/q' string")
    return Fraction(str(value))


def rat_str(value) -> str:
    """Serialize a rational as ``"p/q"`` in lowest terms."""
    q = Fraction(value)
    return f"{q.numerator}/{q.denominator}"


class IntervalSet:
    """Canonical finite union of half-open subintervals of [0, 1)."""

    __slots__ = ("_iv",)

    def __init__(self, pairs: Iterable[tuple[Fraction, Fraction]] = ()):
        self._iv = _canonicalize(pairs)

    @classmethod
    def _raw(cls, canonical: tuple) -> "IntervalSet":
        s = object.__new__(cls)
        s._iv = canonical
        return s

    @classmethod
    def _merge_pairs(cls, pairs: list) -> "IntervalSet":
        """Canonicalize trusted Fraction pairs (skips parsing and checks)."""
        pairs = sorted(p for p in pairs if p[0] < p[1])
        merged: list[list[Fraction]] = []
        for lo, hi in pairs:
            if merged and lo <= merged[-1][1]:
                if hi > merged[-1][1]:
                    merged[-1][1] = hi
            else:
                merged.append([lo, hi])
        return cls._raw(tuple((lo, hi) for lo, hi in merged))

    def clip(self, lo: Fraction, hi: Fraction) -> list[tuple[Fraction, Fraction]]:
        """Pairs of the intersection with the window [lo, hi); sorted."""
        iv = self._iv
        out = []
        i = bisect_right(iv, (lo,)) - 1
        if i >= 0 and iv[i][1] > lo:
            top = iv[i][1] if iv[i][1] < hi else hi
            if lo < top:
                out.append((lo, top))
        i += 1
        while i < len(iv) and iv[i][0] < hi:
            top = iv[i][1] if iv[i][1] < hi else hi
            if iv[i][0] < top:
                out.append((iv[i][0], top))
            i += 1
        return out

    @classmethod
    def interval(cls, lo, hi) -> "IntervalSet":
        return cls(((rat(lo), rat(hi)),))

    @classmethod
    def union_all(cls, sets: Iterable["IntervalSet"]) -> "IntervalSet":
        pairs = [p for s in sets for p in s._iv]
        return cls(pairs)

    @property
    def pairs(self) -> tuple[tuple[Fraction, Fraction], ...]:
        return self._iv

    def __iter__(self) -> Iterator[tuple[Fraction, Fraction]]:
        return iter(self._iv)

    def __bool__(self) -> bool:
        return bool(self._iv)

    def is_empty(self) -> bool:
        return not self._iv

    def measure(self) -> Fraction:
        return sum((hi - lo for lo, hi in self._iv), ZERO)

    def contains_point(self, x) -> bool:
        x = rat(x)
        return any(lo <= x < hi for lo, hi in self._iv)

    def contains(self, other: "IntervalSet") -> bool:
        """Set inclusion up to measure zero."""
        return other.subtract(self).is_empty()

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return self._raw(_merge_op(self._iv, other._iv, lambda a, b: a or b))

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        return self._raw(_merge_op(self._iv, other._iv, lambda a, b: a and b))

    def subtract(self, other: "IntervalSet") -> "IntervalSet":
        return self._raw(_merge_op(self._iv, other._iv, lambda a, b: a and not b))

    def complement(self) -> "IntervalSet":
        """Complement relative to [0, 1)."""
        return FULL.subtract(self)

    def translate(self, offset) -> "IntervalSet":
        """Image under x -> x + offset; result must stay inside [0, 1]."""
        o = rat(offset)
        pairs = tuple((lo + o, hi + o) for lo, hi in self._iv)
        return IntervalSet(pairs)

    def reflect(self, offset) -> "IntervalSet":
        """Image under x -> offset - x, reoriented half-open."""
        o = rat(offset)
        pairs = tuple((o - hi, o - lo) for lo, hi in self._iv)
        return IntervalSet(pairs)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntervalSet) and self._iv == other._iv

    def __hash__(self) -> int:
        return hash(self._iv)

    def __repr__(self) -> str:
        body = " ".join(f"[{lo},{hi})" for lo, hi in self._iv)
        return f"IntervalSet({body or 'empty'})"


def _canonicalize(pairs) -> tuple:
    cleaned = []
    for lo, hi in pairs:
        lo, hi = rat(lo), rat(hi)
        if hi <= lo:
            continue
        if lo < ZERO or hi > ONE:
            raise ValueError(f"interval [{lo},{hi}) leaves [0,1)")
        cleaned.append((lo, hi))
    cleaned.sort()
    merged: list[list[Fraction]] = []
    for lo, hi in cleaned:
        if merged and lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1][1] = hi
        else:
            merged.append([lo, hi])
    return tuple((lo, hi) for lo, hi in merged)


def _merge_cuts(a: tuple, b: tuple) -> list:
    """Merged, deduplicated endpoint list of two canonical interval tuples."""
    xs = [x for p in a for x in p]
    ys = [x for p in b for x in p]
    out = []
    i = j = 0
    na, nb = len(xs), len(ys)
    while i < na or j < nb:
        if j >= nb or (i < na and xs[i] <= ys[j]):
            v = xs[i]
            i += 1
        else:
            v = ys[j]
            j += 1
        if not out or out[-1] != v:
            out.append(v)
    return out


def _merge_op(a: tuple, b: tuple, keep) -> tuple:
    """Linear sweep over the merged breakpoints of two canonical sets."""
    cuts = _merge_cuts(a, b)
    out: list[list[Fraction]] = []
    ia = ib = 0
    na, nb = len(a), len(b)
    for k in range(len(cuts) - 1):
        lo = cuts[k]
        while ia < na and a[ia][1] <= lo:
            ia += 1
        in_a = ia < na and a[ia][0] <= lo
        while ib < nb and b[ib][1] <= lo:
            ib += 1
        in_b = ib < nb and b[ib][0] <= lo
        if keep(in_a, in_b):
            hi = cuts[k + 1]
            if out and out[-1][1] == lo:
                out[-1][1] = hi
            else:
                out.append([lo, hi])
    return tuple((lo, hi) for lo, hi in out)


EMPTY = IntervalSet()
FULL = IntervalSet(((ZERO, ONE),))


# -- integer step functions over [0, 1) --------------------------------------
#
# A step function is a full partition of [0, 1) into cells (lo, hi, value)
# with integer values, adjacent cells of equal value merged.  They carry the
# coverage counts and degree functions used throughout the package.

Step = tuple[tuple[Fraction, Fraction, int], ...]


def step_sum(weighted: Iterable[tuple[Fraction, Fraction, int]]) -> Step:
    """Step function for a finite sum of w * indicator([lo, hi))."""
    deltas: dict[Fraction, int] = {ZERO: 0, ONE: 0}
    for lo, hi, w in weighted:
        deltas[lo] = deltas.get(lo, 0) + w
        deltas[hi] = deltas.get(hi, 0) - w
    cuts = sorted(deltas)
    if cuts[0] < ZERO or cuts[-1] > ONE:
        raise ValueError("step support leaves [0,1)")
    out: list[list] = []
    level = 0
    for k in range(len(cuts) - 1):
        level += deltas[cuts[k]]
        lo, hi = cuts[k], cuts[k + 1]
        if out and out[-1][2] == level and out[-1][1] == lo:
            out[-1][1] = hi
        else:
            out.append([lo, hi, level])
    return tuple((lo, hi, v) for lo, hi, v in out)


def step_combine(a: Step, b: Step, fn) -> Step:
    """Pointwise fn(a, b) of two step functions over a common refinement."""
    cuts = sorted({x for lo, hi, _ in a for x in (lo, hi)}
                  | {x for lo, hi, _ in b for x in (lo, hi)})
    out: list[list] = []
    ia = ib = 0
    for k in range(len(cuts) - 1):
        lo, hi = cuts[k], cuts[k + 1]
        while a[ia][1] <= lo:
            ia += 1
        while b[ib][1] <= lo:
            ib += 1
        v = fn(a[ia][2], b[ib][2])
        if out and out[-1][2] == v and out[-1][1] == lo:
            out[-1][1] = hi
        else:
            out.append([lo, hi, v])
    return tuple((lo, hi, v) for lo, hi, v in out)


def step_where(s: Step, predicate) -> IntervalSet:
    """Interval set of the cells whose value satisfies the predicate."""
    return IntervalSet((lo, hi) for lo, hi, v in s if predicate(v))


def step_integral(s: Step, fn=lambda v: v) -> Fraction:
    """Exact integral of fn(value) over [0, 1)."""
    return sum(((hi - lo) * fn(v) for lo, hi, v in s), ZERO)
