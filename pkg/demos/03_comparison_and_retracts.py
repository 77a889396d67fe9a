"""Comparison matrices, chain maps and the retract test.

A comparison matrix B between two systems must satisfy dB = f(A).B + B.A'.
For the S^2 system B = I + N with N_TB = sx.sx is such a matrix, and it
composes with itself to the identity: a unitriangular composite, so the
pair is a retract and every page map it induces is injective.  Dropping
the diagonal entry at T breaks the identity in the degree of T, which the
assembled chain map sees as well.
"""

from floerloop.comparison import ComparisonData, chain_map_check, composite, is_retract_pair, page_morphism, validate_b
from floerloop.library import sphere_height

CAP = 8

s2 = sphere_height(2, CAP)
one, sx = s2.ring.one(), s2.ring.gen("sx")
b = ComparisonData(s2, s2, {("B", "B"): one, ("T", "T"): one, ("T", "B"): sx * sx})

print("B = I + N:", validate_b(b))
print("assembled chain map:", chain_map_check(b, CAP))
print("B.B =", {k: repr(v) for k, v in composite(b, b).items()})
print("retract:", is_retract_pair(b, b))
pm = page_morphism(b, CAP)
print("page maps commute with d^r:", pm.ok, "and are injective:", pm.injective())

no_top = b.with_entries({("B", "B"): one, ("T", "B"): sx * sx})
print("\nwithout the unit at T:")
print(validate_b(no_top))
print(chain_map_check(no_top, CAP))
