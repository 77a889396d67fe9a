"""Built-in generator systems: spheres, products, and broken variants."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .complex import Generator, GeneratorSystem
from .dga import (
    DGAlgebra,
    DGAMorphism,
    TensorDGA,
    cobar,
    point_coalgebra,
    product_coalgebra,
    sphere_coalgebra,
    tensor_algebras,
)


def s2xs2_coalgebra():
    """Chains on S^2 x S^2: basis 1, a, b (degree 2) and ab (degree 4)."""
    return product_coalgebra(sphere_coalgebra(2, "a"), sphere_coalgebra(2, "b"))


def point_system(cap: int = 12) -> GeneratorSystem:
    """One generator over the trivial ring; the unit for products."""
    return GeneratorSystem(cobar(point_coalgebra(), cap), [Generator("p", 0, 0)])


def sphere_height(n: int, cap: int = 12) -> GeneratorSystem:
    """Height function on S^n: a minimum B and a maximum T.

    The single coefficient ``a_TB`` is the degree ``n-1`` generator of the
    cobar algebra, i.e. the class of the bottom sphere in the loop space.
    """
    if n < 2:
        raise ValueError("S^n must be simply connected (n >= 2)")
    ring = cobar(sphere_coalgebra(n), cap)
    gens = [Generator("B", 0, 0), Generator("T", n, n)]
    return GeneratorSystem(ring, gens, {("T", "B"): ring.gen("sx")})


def product_system(a: GeneratorSystem, b: GeneratorSystem) -> GeneratorSystem:
    """Product Morse data over the tensor product of the two rings.

    Generators are pairs named ``x_u``; entries move one coordinate at a
    time: ``a_xy (x) 1`` and ``1 (x) a_uv``.
    """
    ring = tensor_algebras(a.ring, b.ring)
    gens = []
    for g in a.generators:
        for h in b.generators:
            act = None if g.action is None or h.action is None else g.action + h.action
            gens.append(Generator(f"{g.name}_{h.name}", g.mu + h.mu, act))
    entries = {}
    for (x, y), e in a.entries.items():
        for h in b.generators:
            entries[f"{x}_{h.name}", f"{y}_{h.name}"] = ring.include_left(e)
    for (u, v), e in b.entries.items():
        for g in a.generators:
            entries[f"{g.name}_{u}", f"{g.name}_{v}"] = ring.include_right(e)
    return GeneratorSystem(ring, gens, entries)


def _s2xs2_generators():
    return [
        Generator("B_B", 0, 0),
        Generator("T_B", 2, 2),
        Generator("B_T", 2, 2),
        Generator("T_T", 4, 4),
    ]


def s2xs2_cobar_variant(cap: int = 12, with_top_entry: bool = True) -> GeneratorSystem:
    """S^2 x S^2 over the cobar algebra of the product coalgebra.

    Here ``sa`` and ``sb`` do not commute, so the corner entry ``a_{T_T,B_B}``
    must be ``sab`` to satisfy ``dA = A^2``.  ``with_top_entry=False``
    omits it (a Maurer-Cartan failure with residual ``sa·sb + sb·sa``).
    """
    ring = cobar(s2xs2_coalgebra(), cap)
    sa, sb = ring.gen("sa"), ring.gen("sb")
    entries = {
        ("T_B", "B_B"): sa,
        ("B_T", "B_B"): sb,
        ("T_T", "B_T"): sa,
        ("T_T", "T_B"): sb,
    }
    if with_top_entry:
        entries["T_T", "B_B"] = ring.gen("sab")
    return GeneratorSystem(ring, _s2xs2_generators(), entries)


def product_to_tensor_morphism(source: DGAlgebra, target: TensorDGA) -> DGAMorphism:
    """cobar(S^2 x S^2) -> cobar(S^2) (x) cobar(S^2): sa, sb to the factors, sab to 0."""
    return DGAMorphism(source, target, {"sa": target.gen("sx@0"), "sb": target.gen("sx@1")})


def collapse_to_s4(source: DGAlgebra, cap: int | None = None) -> DGAMorphism:
    """cobar(S^2 x S^2) -> cobar(S^4) induced by S^2 x S^2 -> S^4.

    Kills ``sa`` and ``sb`` and sends ``sab`` to the degree-3 generator.
    """
    target = cobar(sphere_coalgebra(4, "y"), source.degree_cap if cap is None else cap)
    return DGAMorphism(source, target, {"sab": target.gen("sy")})


def to_trivial_ring(source: DGAlgebra) -> DGAMorphism:
    """The augmentation onto GF(2): every generator goes to zero."""
    return DGAMorphism(source, cobar(point_coalgebra(), source.degree_cap), {})


@dataclass
class BrokenVariant:
    name: str
    system: GeneratorSystem
    expected: str  # "structure", "mc" or "action"


def broken_variants(cap: int = 12) -> list[BrokenVariant]:
    """Inputs that each fail exactly one named check."""
    out = []
    s2 = sphere_height(2, cap)
    sx = s2.ring.gen("sx")
    wrong = s2.with_entries({("T", "B"): sx * sx}, check=False)
    out.append(BrokenVariant("degree-wrong entry", wrong, "structure"))
    out.append(BrokenVariant("missing corner entry", s2xs2_cobar_variant(cap, with_top_entry=False), "mc"))
    flipped = GeneratorSystem(s2.ring, [Generator("B", 0, 5), Generator("T", 2, 1)], s2.entries)
    out.append(BrokenVariant("action-decreasing entry", flipped, "action"))
    return out


def builtin_systems(cap: int = 12) -> dict[str, GeneratorSystem]:
    """Every positive built-in example, keyed by a short name."""
    out = {f"sphere{n}": sphere_height(n, cap) for n in range(2, 6)}
    out["point"] = point_system(cap)
    out["s2xs2_product"] = product_system(sphere_height(2, cap), sphere_height(2, cap))
    out["s2xs2_cobar"] = s2xs2_cobar_variant(cap)
    return out


def builtin_coalgebras() -> dict[str, object]:
    out = {f"sphere{n}": sphere_coalgebra(n) for n in range(2, 6)}
    out["point"] = point_coalgebra()
    out["s2xs2"] = s2xs2_coalgebra()
    return out


def random_system(
    rng: random.Random,
    ring: DGAlgebra,
    max_generators: int = 5,
    max_mu: int = 6,
    density: float = 0.5,
) -> GeneratorSystem:
    """Random degree-correct system over ``ring``; not necessarily Maurer-Cartan."""
    count = rng.randint(1, max_generators)
    gens = [Generator(f"g{i}", rng.randint(0, max_mu)) for i in range(count)]
    entries = {}
    for x in gens:
        for y in gens:
            gap = x.mu - y.mu
            if gap < 1:
                continue
            keys = [k for k in ring.basis(gap - 1) if rng.random() < density]
            if keys:
                entries[x.name, y.name] = ring.element(keys, gap - 1)
    return GeneratorSystem(ring, gens, entries)
