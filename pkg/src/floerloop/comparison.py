"""Comparison morphisms between generator systems.

A morphism ``V(x) = sum_y' b_xy' (x) y'`` of degree ``delta`` between the
complexes of two systems is a chain map iff

    dB = f(A) . B + B . A'

entrywise, where ``f`` is the ring morphism carrying the source ring to the
target ring (the identity when both systems share a ring).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .complex import FilteredComplex, GeneratorSystem, StructureError, assemble
from .dga import AlgElement, DGAMorphism, boundary
from .gf2 import F2Matrix, iter_bits, rank
from .spectral import PageEngine, default_r_max


class ComparisonData:
    """Source and target systems with the matrix ``B`` (entries in the target ring)."""

    def __init__(
        self,
        source: GeneratorSystem,
        target: GeneratorSystem,
        entries: Mapping[tuple[str, str], AlgElement],
        degree: int = 0,
        ring_map: DGAMorphism | None = None,
    ):
        if ring_map is None:
            if source.ring is not target.ring:
                raise StructureError("systems over different rings need a ring morphism")
            ring_map = DGAMorphism.identity(source.ring)
        elif ring_map.source is not source.ring or ring_map.target is not target.ring:
            raise StructureError("ring morphism does not connect the two systems' rings")
        self.source = source
        self.target = target
        self.degree = degree
        self.ring_map = ring_map
        self.entries = {k: b for k, b in entries.items() if not b.is_zero()}
        self._fA = {k: ring_map(a) for k, a in source.entries.items()}

    @classmethod
    def identity(cls, sys: GeneratorSystem) -> "ComparisonData":
        one = sys.ring.one()
        return cls(sys, sys, {(g.name, g.name): one for g in sys.generators})

    def entry(self, x: str, y: str) -> AlgElement | None:
        return self.entries.get((x, y))

    def with_entries(self, entries) -> "ComparisonData":
        return ComparisonData(self.source, self.target, entries, self.degree, self.ring_map)

    def degree_problems(self) -> list[str]:
        problems = []
        src, tgt = self.source.by_name, self.target.by_name
        for (x, y), b in sorted(self.entries.items()):
            if x not in src or y not in tgt:
                problems.append(f"B entry {x}|{y} names an unknown generator")
                continue
            if b.parent is not self.target.ring:
                problems.append(f"B entry {x}|{y} is not in the target ring")
                continue
            want = src[x].mu - tgt[y].mu + self.degree
            if b.degree != want:
                problems.append(f"B entry {x}|{y} has degree {b.degree}, expected {want}")
        return problems


@dataclass
class BFailure:
    source: str
    target: str
    d_entry: AlgElement
    composite: AlgElement


@dataclass
class BReport:
    failures: list[BFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self):
        if self.ok:
            return "dB = A.B + B.A' holds"
        lines = [f"dB = A.B + B.A' fails on {len(self.failures)} pair(s):"]
        for f in self.failures:
            lines.append(f"  ({f.source},{f.target}): dB = {f.d_entry!r}, AB + BA' = {f.composite!r}")
        return "\n".join(lines)


def validate_b(cd: ComparisonData) -> BReport:
    problems = cd.degree_problems()
    if problems:
        raise StructureError("; ".join(problems))
    ring = cd.target.ring
    report = BReport()
    src_names = cd.source.names
    tgt_names = cd.target.names
    for x in src_names:
        for z in tgt_names:
            deg = cd.source.by_name[x].mu - cd.target.by_name[z].mu + cd.degree - 1
            if deg < 0:
                continue
            b = cd.entry(x, z)
            lhs = boundary(b) if b is not None else ring.zero(deg)
            rhs = ring.zero(deg)
            for y in src_names:
                a, b2 = cd._fA.get((x, y)), cd.entry(y, z)
                if a is not None and b2 is not None:
                    rhs = rhs + a * b2
            for y in tgt_names:
                b1, a2 = cd.entry(x, y), cd.target.entries.get((y, z))
                if b1 is not None and a2 is not None:
                    rhs = rhs + b1 * a2
            if lhs != rhs:
                report.failures.append(BFailure(x, z, lhs, rhs))
    return report


@dataclass
class ChainMapReport:
    failing_degrees: list[int]
    filtration_ok: bool
    cap: int

    @property
    def ok(self) -> bool:
        return not self.failing_degrees and self.filtration_ok

    def __str__(self):
        if self.ok:
            return f"V commutes with d in every degree up to {self.cap} and respects filtrations"
        parts = []
        if self.failing_degrees:
            parts.append(f"V d != d V in source degrees {self.failing_degrees}")
        if not self.filtration_ok:
            parts.append("V raises filtration")
        return "; ".join(parts)


class ChainMap:
    """The assembled map ``C_n -> C'_{n+delta}`` on packed vectors."""

    def __init__(self, cd: ComparisonData, src: FilteredComplex, tgt: FilteredComplex):
        self.cd, self.src, self.tgt = cd, src, tgt
        self._cols: dict[int, list[int]] = {}
        self.out = {x: [(y, b) for (s, y), b in sorted(cd.entries.items()) if s == x] for x in cd.source.names}

    def columns(self, n: int) -> list[int]:
        hit = self._cols.get(n)
        if hit is None:
            f = self.cd.ring_map
            ring = self.cd.target.ring
            m = n + self.cd.degree
            hit = []
            for w, x in self.src.labels[n]:
                fw = f.apply_key(w)
                c = 0
                for y, b in self.out[x]:
                    for u in fw.terms:
                        for k in b.terms:
                            for t in ring.mul_keys(u, k):
                                c ^= 1 << self.tgt.index[m][t, y]
                hit.append(c)
            self._cols[n] = hit
        return hit

    def matrix(self, n: int) -> F2Matrix:
        return F2Matrix.from_columns(self.columns(n), self.tgt.dim(n + self.cd.degree))

    def __call__(self, n: int, v: int) -> int:
        cols = self.columns(n)
        out = 0
        for j in iter_bits(v):
            out ^= cols[j]
        return out


def _default_cap(cd: ComparisonData) -> int:
    top = max([g.mu for g in cd.source.generators] + [g.mu - cd.degree for g in cd.target.generators])
    return top + 1


def build_chain_map(cd: ComparisonData, cap: int | None = None) -> ChainMap:
    cap = _default_cap(cd) if cap is None else cap
    src = assemble(cd.source, cap)
    tgt = assemble(cd.target, cap + cd.degree)
    return ChainMap(cd, src, tgt)


def chain_map_check(cd: ComparisonData, cap: int | None = None) -> ChainMapReport:
    """Verify ``V d = d' V`` on the assembled complexes up to ``cap``."""
    problems = cd.degree_problems()
    if problems:
        raise StructureError("; ".join(problems))
    V = build_chain_map(cd, cap)
    src, tgt = V.src, V.tgt
    failing = []
    filtration_ok = True
    for n in src.degrees:
        m = n + cd.degree
        if tgt.dim(m) == 0 and src.dim(n) == 0:
            continue
        Vn = V.matrix(n)
        left = tgt.boundary[m] @ Vn if tgt.n_min <= m <= tgt.cap else None
        if n - 1 >= src.n_min:
            right = V.matrix(n - 1) @ src.boundary[n]
        else:
            right = F2Matrix.zeros(tgt.dim(m - 1), src.dim(n))
        if left is None:
            left = F2Matrix.zeros(tgt.dim(m - 1), src.dim(n))
        if left != right:
            failing.append(n)
        for j, col in enumerate(Vn.columns):
            p = src.filtration[n][j]
            if any(tgt.filtration[m][i] > p + cd.degree for i in iter_bits(col)):
                filtration_ok = False
    return ChainMapReport(failing, filtration_ok, src.cap)


@dataclass
class PageMorphism:
    """Induced maps ``E^r_{p,q} -> E'^r_{p+delta,q}`` on certified cells."""

    matrices: dict[tuple[int, int, int], F2Matrix]
    commutes: dict[tuple[int, int, int], bool]

    @property
    def ok(self) -> bool:
        return all(self.commutes.values())

    def injective(self, r_min: int = 1) -> bool:
        return all(rank(m) == m.cols for (r, _, _), m in self.matrices.items() if r >= r_min)

    def bijective(self, r_min: int = 1) -> bool:
        return all(
            rank(m) == m.cols == m.rows for (r, _, _), m in self.matrices.items() if r >= r_min
        )


def page_morphism(cd: ComparisonData, cap: int | None = None, r_max: int | None = None) -> PageMorphism:
    """Explicit page maps of a valid comparison, with commutation checks."""
    V = build_chain_map(cd, cap)
    src, tgt = V.src, V.tgt
    es, et = PageEngine(src), PageEngine(tgt)
    r_max = r_max or max(default_r_max(src), default_r_max(tgt))
    dp = cd.degree
    vals = src.filtration_values
    cert_s = lambda p, q: q >= 0 and p + q + 1 <= src.cap
    cert_t = lambda p, q: q >= 0 and p + q + 1 <= tgt.cap
    matrices, commutes = {}, {}
    for r in range(1, r_max + 1):
        for p in range(vals[0], vals[-1] + 1):
            for n in range(max(src.n_min, p), src.cap + 1):
                q = n - p
                tp, tq = p - r, q + r - 1
                if not (cert_s(p, q) and cert_s(tp, tq) and cert_t(p + dp, q) and cert_t(tp + dp, tq)):
                    continue
                m = es.induced_matrix(et, V, r, p, q, dp, 0)
                m_low = es.induced_matrix(et, V, r, tp, tq, dp, 0)
                matrices[r, p, q] = m
                commutes[r, p, q] = m_low @ es.d_matrix(r, p, q) == et.d_matrix(r, p + dp, q) @ m
    return PageMorphism(matrices, commutes)


def composite(f: ComparisonData, g: ComparisonData) -> dict[tuple[str, str], AlgElement]:
    """Entries of ``V_g . V_f`` (source of ``f`` to target of ``g``)."""
    if g.source.names != f.target.names or g.target.names != f.source.names:
        raise StructureError("morphisms are not composable back to the source")
    if any(g.source.by_name[n].mu != f.target.by_name[n].mu for n in g.source.names):
        raise StructureError("intermediate systems disagree on indices")
    out = {}
    for (x, y), b in f.entries.items():
        gb = g.ring_map(b)
        for (s, z), c in g.entries.items():
            if s != y:
                continue
            term = gb * c
            out[x, z] = out[x, z] + term if (x, z) in out else term
    return {k: v for k, v in out.items() if not v.is_zero()}


def is_retract_pair(f: ComparisonData, g: ComparisonData) -> bool:
    """True iff ``V_g . V_f`` is unitriangular in the (index, name) order.

    With generators listed by increasing index (ties by name) and columns
    holding images, the matrix must have only units on the diagonal and
    nothing below it.
    """
    if f.degree + g.degree != 0:
        return False
    entries = composite(f, g)
    order = {gen.name: i for i, gen in enumerate(f.source.generators)}
    one = f.source.ring.one()
    for gen in f.source.generators:
        if entries.get((gen.name, gen.name)) != one:
            return False
    for (x, z), c in entries.items():
        if x != z and order[z] > order[x]:
            return False
    return True
