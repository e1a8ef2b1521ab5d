#!/usr/bin/env python3
"""The finite matrix theorem as an oracle for the interval calculus.

Matrices with constant integer row and column sums split into permutation
matrices; dyadically aligned interval elements discretize to exactly such
matrices and lift back with zero distance, so the two pipelines verify
each other.
"""

import random
from fractions import Fraction as F

from dsekit import (decompose_bvn, discretize, distance, extract_permutation,
                    lift, pad_to_doubly_stochastic)
from dsekit.gallery import counterexample

a = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
print("matrix a:", a)
p = extract_permutation(a)
print("a permutation below it:", p)
perms = decompose_bvn(a)
print("sum of", len(perms), "permutations:", perms)

print()
y = [[1, 0, 0], [0, 0, 0], [0, 0, 1]]
z = pad_to_doubly_stochastic(y, 2)
print("padding", y)
print("with   ", z, "restores row/column sums 2")

print()
ce = counterexample(2)
level = 3
m = discretize(ce, level)
print(f"counterexample(2) on the 1/{2 ** level} grid:")
for row in m:
    print("  ", row)
back = lift(decompose_bvn(m), level)
print("lifting its permutation decomposition back:",
      "distance =", distance(ce, back))

print()
rng = random.Random(7)
perm_sum = [[0] * 8 for _ in range(8)]
for _ in range(3):
    order = list(range(8))
    rng.shuffle(order)
    for i, j in enumerate(order):
        perm_sum[i][j] += 1
round_trip = discretize(lift(decompose_bvn(perm_sum), 3), 3)
print("random 8x8 triple-permutation matrix survives the round trip:",
      round_trip == perm_sum)
