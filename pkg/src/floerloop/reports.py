"""Algebraic consequences read off a system and its pages.

Three statements are reported:

* every nonzero certified ``d^r`` forces a pair ``x, y`` of relative index
  ``r`` with a nonzero coefficient, i.e. a nonempty moduli space;
* ``sum_p dim E^2_{p,0} - 1`` bounds the rank of the image of the boundary
  map on pi_2 from below;
* whether the classes of the coefficients generate the ring homology.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complex import GeneratorSystem, assemble
from .dga import AlgElement, boundary, cycle_classes, from_vector, to_vector
from .gf2 import F2Subspace
from .spectral import PageSet, compute_pages


@dataclass
class ModuliClaim:
    r: int
    ranks: list[tuple[int, int, int]]  # (p, q, rank) of each nonzero d^r
    witnesses: list[tuple[str, str]]

    def __str__(self):
        w = ", ".join(f"({x},{y})" for x, y in self.witnesses) or "none found"
        return f"d^{self.r} != 0: some pair with relative index {self.r} has a nonempty moduli space; witnesses {w}"


@dataclass
class Coverage:
    window: int
    covered: bool
    missing: dict[int, int] = field(default_factory=dict)  # degree -> dim of H not reached
    generators: list[tuple[str, str]] = field(default_factory=list)
    skipped: list[tuple[str, str]] = field(default_factory=list)


@dataclass
class ConsequenceReport:
    claims: list[ModuliClaim]
    rank_bound: int
    coverage: Coverage
    pages: PageSet

    def to_json(self) -> dict:
        cov = self.coverage
        return {
            "claims": [
                {"r": c.r, "differentials": [list(t) for t in c.ranks], "witnesses": [list(w) for w in c.witnesses]}
                for c in self.claims
            ],
            "rank_bound": self.rank_bound,
            "coverage": {
                "window": cov.window,
                "covered": cov.covered,
                "missing": {str(k): v for k, v in sorted(cov.missing.items())},
                "generators": [list(g) for g in cov.generators],
                "non_cycles": [list(g) for g in cov.skipped],
            },
        }

    def __str__(self):
        lines = [f"moduli claims: {len(self.claims)}"]
        lines += [f"  {c}" for c in self.claims]
        lines.append(f"rank bound for the pi_2 boundary image: {self.rank_bound}")
        cov = self.coverage
        verdict = "yes" if cov.covered else f"no (missing {cov.missing})"
        lines.append(f"coefficient classes generate H(ring) in degrees <= {cov.window}: {verdict}")
        return "\n".join(lines)


def _span_products(reps: list[AlgElement], top: int, ring) -> dict[int, F2Subspace]:
    """Span of all words in ``reps`` (and the unit) per degree up to ``top``."""
    spans = {0: F2Subspace.span(ring.dim(0), [to_vector(ring.one())])}
    for q in range(1, top + 1):
        vecs = []
        for a in reps:
            d = a.degree
            if d > q or spans[q - d].dim == 0:
                continue
            for v in spans[q - d].basis:
                vecs.append(to_vector(from_vector(ring, q - d, v) * a))
        spans[q] = F2Subspace.span(ring.dim(q), vecs)
    return spans


def coefficient_coverage(sys: GeneratorSystem, cap: int) -> Coverage:
    ring = sys.ring
    top = cap - 1
    if ring.degree_cap is not None:
        top = min(top, ring.degree_cap - 1)
    reps, gens, skipped = [], [], []
    for key, a in sorted(sys.entries.items()):
        if not boundary(a).is_zero():
            skipped.append(key)
        elif a.degree > 0:
            reps.append(a)
            gens.append(key)
    spans = _span_products(reps, top, ring)
    missing = {}
    for q in range(top + 1):
        z, b = cycle_classes(ring, q)
        reached = (spans[q] + b).dim
        if reached != z.dim:
            missing[q] = z.dim - reached
    return Coverage(top, not missing, missing, gens, skipped)


def consequences(sys: GeneratorSystem, cap: int = 12, r_max: int | None = None) -> ConsequenceReport:
    fc = assemble(sys, cap)
    pages = compute_pages(fc, max(r_max or 0, sys.mu_span + 1, 2))
    by_r: dict[int, list] = {}
    for r, p, q, rk in pages.nonzero_differentials():
        by_r.setdefault(r, []).append((p, q, rk))
    claims = []
    for r, ranks in sorted(by_r.items()):
        wit = sorted(
            (x, y) for (x, y) in sys.entries if sys.by_name[x].mu - sys.by_name[y].mu == r
        )
        claims.append(ModuliClaim(r, ranks, wit))
    e2 = sum(c.dim for (p, q), c in pages.page(2).items() if q == 0 and c.certified)
    return ConsequenceReport(claims, e2 - 1, coefficient_coverage(sys, cap), pages)
