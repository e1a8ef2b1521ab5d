#!/usr/bin/env python3
"""Tour of the exact building blocks: rationals, interval sets, affine maps.

Everything is computed with arbitrary-precision rationals; the script
prints each value so you can follow the arithmetic by hand.
"""

from fractions import Fraction as F

from dsekit import Atom, IntervalSet, PartialMap, compose, identity_map

print("== interval sets ==")
s = IntervalSet([(F(0), F(1, 2)), (F(3, 4), F(1))])
print("s           =", s)
print("measure(s)  =", s.measure())
print("complement  =", s.complement())
t = IntervalSet.interval(F(1, 4), F(7, 8))
print("s & t       =", s.intersect(t))
print("s | t       =", s.union(t))
print("s \\ t       =", s.subtract(t))

print()
print("== partial maps ==")
shift = PartialMap([Atom(0, F(1, 2), 1, F(1, 2)),
                    Atom(F(1, 2), 1, 1, F(-1, 2))])
print("half shift sends 1/3 to", shift.apply(F(1, 3)))
print("and 2/3 to", shift.apply(F(2, 3)))
flip = PartialMap([Atom(0, 1, -1, 1)])
print("the full reflection sends 1/4 to", flip.apply(F(1, 4)))

print()
print("== composition is exact ==")
both = compose(flip, shift)
print("flip after shift has atoms:")
for a in both.atoms:
    print("   ", a)
print("applied twice it is the identity:",
      compose(both, both) == identity_map())

print()
print("== images and preimages ==")
window = IntervalSet.interval(0, F(1, 4))
print("shift([0,1/4))        =", shift.image_of(window))
print("shift^-1 of the same  =", shift.preimage_of(window))
