"""S^2 x S^2 in two coefficient rings.

The product of two height functions gives four critical points.  Its
coefficients can live in the tensor product of two copies of the S^2 loop
ring (where sa and sb commute), or in the cobar construction of the
product coalgebra, where they do not and a degree-3 generator sab with
d(sab) = sa.sb + sb.sa repairs the corner entry.  Leaving that corner out
breaks the Maurer-Cartan identity by exactly that commutator.  Both
repaired models give the same pages from E^1 on.
"""

from floerloop.complex import assemble, validate_mc
from floerloop.library import product_system, s2xs2_cobar_variant, sphere_height
from floerloop.spectral import compare_up_to_translation, compute_pages

CAP = 9

product = product_system(sphere_height(2, CAP), sphere_height(2, CAP))
cobar_model = s2xs2_cobar_variant(CAP)
broken = s2xs2_cobar_variant(CAP, with_top_entry=False)

for label, sys in [("tensor ring", product), ("cobar ring", cobar_model), ("cobar ring, no corner", broken)]:
    report = validate_mc(sys)
    print(f"{label:<24} MC: {'ok' if report.ok else 'broken'}")
    for f in report.failures:
        print(f"    residual at ({f.source},{f.target}): {f.residual!r}")

a = compute_pages(assemble(product, CAP))
b = compute_pages(assemble(cobar_model, CAP))
print()
print(b.table(2))
print("\npage profiles agree with shift", compare_up_to_translation(a, b, r_min=1))
