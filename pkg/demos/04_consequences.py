"""What the pages say about the system that produced them.

A nonzero d^r needs a pair of generators r apart with a nonzero entry.
The sum of dim E^2_{p,0}, minus one, bounds the rank of the boundary map
on pi_2.  And when the entry classes generate the ring homology, the
coefficients are as rich as they can be.  The last part pushes the
S^2 x S^2 cobar model onto the S^4 loop ring: only the corner entry
survives, as a single transgression d^4.
"""

from floerloop.complex import assemble, change_coefficients, validate_mc
from floerloop.library import collapse_to_s4, product_system, s2xs2_cobar_variant, sphere_height
from floerloop.reports import consequences
from floerloop.spectral import compute_pages

CAP = 10

for label, sys in [
    ("S^3", sphere_height(3, CAP)),
    ("S^2 x S^2", product_system(sphere_height(2, CAP), sphere_height(2, CAP))),
    ("S^3 with A = 0", sphere_height(3, CAP).with_entries({})),
]:
    print(f"== {label}")
    print(consequences(sys, CAP))
    print()

cv = s2xs2_cobar_variant(CAP)
pushed = change_coefficients(cv, collapse_to_s4(cv.ring))
print("== S^2 x S^2 pushed to the S^4 loop ring")
print("entries:", {k: repr(v) for k, v in pushed.entries.items()}, "MC:", validate_mc(pushed).ok)
print("differentials:", compute_pages(assemble(pushed, CAP)).nonzero_differentials())
