#!/usr/bin/env python3
"""Growing a partial isomorphism inside a doubly stochastic element.

The multiplicity-2 gallery element famous for being indecomposable in the
limit still admits pieces of measure as close to one as we like at every
finite truncation.  This script shows the greedy maximal piece getting
stuck, one augmenting extension rerouting it, and the full growth loop.
"""

from fractions import Fraction as F

from dsekit import (EMPTY, FULL, apply_extension, find_extension,
                    maximal_piece, near_full_piece, neighbor_set)
from dsekit.gallery import counterexample

ce = counterexample(4)
print("element: counterexample(4) with", len(ce.maps), "maps, multiplicity 2")

piece = maximal_piece(ce, FULL, EMPTY)
print("greedy maximal piece covers", piece.domain, "=", piece.measure())

leftover = piece.domain.complement()
print("neighbours of the leftover", leftover, "are",
      neighbor_set(ce, leftover))
print("...all inside the piece's image, so no one-step enlargement exists")

ext = find_extension(ce, piece, max_depth=3)
print()
print(f"an extension of depth {ext.depth} reroutes the piece:")
print("  new source S0  =", ext.sources[0])
print("  final target   =", ext.targets[-1])
bigger = apply_extension(piece, ext)
print("after applying it the piece covers", bigger.measure())

print()
trace = []
full = near_full_piece(ce, F(1, 32), trace=trace)
print(f"growth loop reached measure {full.measure()} in {len(trace)} rounds:")
for before, after, bound in trace:
    print(f"  {before} -> {after}   (guaranteed gain {bound})")
