"""Two critical points on S^n and the single differential they force.

A height function on S^n has a bottom B (index 0) and a top T (index n).
Over GF(2) the plain Morse complex has zero differential, but once the
coefficients are enriched by chains on the based loop space the entry
a_TB is the loop class sx of degree n - 1.  The resulting spectral
sequence has one nonzero page differential, d^n, of rank 1 on every row,
and it matches the Serre spectral sequence of the path-loop fibration.
"""

from floerloop.complex import assemble, validate_mc
from floerloop.dga import sphere_coalgebra
from floerloop.library import sphere_height
from floerloop.serre import serre_pages
from floerloop.spectral import compare_up_to_translation, compute_pages

CAP = 10

for n in (2, 3):
    sys = sphere_height(n, CAP)
    print(f"S^{n}: generators {[(g.name, g.mu) for g in sys.generators]}, a_TB = {sys.entries['T', 'B']!r}")
    print("Maurer-Cartan identity:", "ok" if validate_mc(sys).ok else "broken")
    pages = compute_pages(assemble(sys, CAP))
    print(pages.table(n))
    for r, p, q, rank in pages.nonzero_differentials():
        print(f"  d^{r}: ({p},{q}) -> ({p - r},{q + r - 1}) rank {rank}")
    oracle = serre_pages(sphere_coalgebra(n), CAP, pages.r_max)
    print("matches the Serre pages with shift", compare_up_to_translation(pages, oracle))
    print()
