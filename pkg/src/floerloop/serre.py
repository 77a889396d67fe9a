"""Twisted tensor product model of the path-loop fibration.

For a coalgebra ``C`` with cobar algebra ``ΩC`` the complex ``C (x)_t ΩC``
has differential

    d(c (x) w) = dc (x) w + c (x) dw + sum_{Δc = c' (x) c''} c' (x) t(c'') w

with the universal twisting ``t(c) = s c`` (zero on the unit).  It is
acyclic, and filtering by ``deg c`` gives the Serre spectral sequence of
``ΩL -> PL -> L`` from ``E^2`` on.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complex import FilteredComplex, build_filtered_complex
from .dga import DGCoalgebra, FreeDGA, cobar
from .spectral import PageSet, compute_pages


class TwistingError(ValueError):
    pass


@dataclass
class TwistedTensorComplex:
    base: DGCoalgebra
    fiber: FreeDGA
    complex: FilteredComplex

    @property
    def cap(self) -> int:
        return self.complex.cap

    def homology_dims(self) -> dict[int, int]:
        return self.complex.homology_dims()

    def is_acyclic(self) -> bool:
        h = self.homology_dims()
        return h.get(0) == 1 and all(v == 0 for n, v in h.items() if n >= 1)


def build_path_model(c: DGCoalgebra, cap: int) -> TwistedTensorComplex:
    fiber = cobar(c, cap)
    gen = {x: fiber._gen_key(f"s{x}")[0] for x in c.reduced}
    order = {name: i for i, (name, _) in enumerate(c.basis)}
    base = sorted(c.basis, key=lambda b: (b[1], order[b[0]]))
    cells = {}
    for n in range(0, cap + 1):
        cells[n] = [((x, w), deg) for x, deg in base if deg <= n for w in fiber.basis(n - deg)]

    def boundary_of(n, label):
        x, w = label
        for y in c.differential[x]:
            yield (y, w)
        for v in fiber.d_key(w):
            yield (x, v)
        if x != c.unit:
            yield (c.unit, (gen[x],) + w)
        for a, b in c.coproduct[x]:
            yield (a, (gen[b],) + w)

    def describe(label):
        x, w = label
        return f"{x}⊗{fiber.key_str(w)}"

    fc = build_filtered_complex(cap, 0, cells, boundary_of, ring=None, describe=describe)
    bad = fc.d_squared_failures()
    if bad:
        raise TwistingError(f"d^2 != 0 in degrees {bad}; the coalgebra input is inconsistent")
    return TwistedTensorComplex(c, fiber, fc)


def serre_pages(c: DGCoalgebra, cap: int, r_max: int | None = None) -> PageSet:
    """Serre spectral sequence pages of the path-loop fibration over ``c``."""
    if r_max is None:
        r_max = c.top_degree + 1
    return compute_pages(build_path_model(c, cap).complex, r_max)
