"""Extended Morse/Floer complexes with loop-space coefficients.

A :class:`GeneratorSystem` is a finite set of graded generators together
with a coefficient matrix ``A`` over a DG algebra ``R``.  It defines the
free ``R``-module on the generators with differential

    d(w (x) x) = dw (x) x + sum_y (w . a_xy) (x) y,

which squares to zero exactly when ``dA = A^2`` (checked by
:func:`validate_mc`).  Filtering by generator index gives a
:class:`FilteredComplex` whose spectral sequence lives in ``spectral``.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .dga import AlgElement, DGAlgebra, DGAMorphism, boundary
from .gf2 import F2Matrix, iter_bits, rank


class StructureError(ValueError):
    """Coefficient data violating the degree or ordering rules."""


class MaurerCartanError(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    mu: int
    action: Fraction | float | int | None = None


def _gen_order(g: Generator):
    return (g.mu, g.name)


class GeneratorSystem:
    """Generators plus coefficient matrix.

    ``entries`` maps ``(x, y)`` name pairs to ring elements of degree
    ``mu(x) - mu(y) - 1``; zero entries are dropped.  The degree structure
    is checked on construction unless ``check=False`` (used to build
    deliberately malformed inputs).
    """

    def __init__(
        self,
        ring: DGAlgebra,
        generators: Sequence[Generator],
        entries: Mapping[tuple[str, str], AlgElement] | None = None,
        check: bool = True,
    ):
        self.ring = ring
        self.generators = tuple(sorted(generators, key=_gen_order))
        self.by_name = {g.name: g for g in self.generators}
        if len(self.by_name) != len(self.generators):
            raise StructureError("generator names must be unique")
        self.entries = {k: a for k, a in (entries or {}).items() if not a.is_zero()}
        if check:
            problems = structure_problems(self)
            if problems:
                raise StructureError("; ".join(problems))

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    @property
    def mu_span(self) -> int:
        mus = [g.mu for g in self.generators]
        return max(mus) - min(mus) if mus else 0

    @property
    def mu_values(self) -> list[int]:
        return sorted({g.mu for g in self.generators})

    def entry(self, x: str, y: str) -> AlgElement:
        a = self.entries.get((x, y))
        if a is None:
            return self.ring.zero(max(self.by_name[x].mu - self.by_name[y].mu - 1, 0))
        return a

    def outgoing(self, x: str) -> list[tuple[str, AlgElement]]:
        return [(y, a) for (s, y), a in sorted(self.entries.items()) if s == x]

    def with_entries(self, entries: Mapping[tuple[str, str], AlgElement], check: bool = True) -> "GeneratorSystem":
        return GeneratorSystem(self.ring, self.generators, entries, check)

    def __repr__(self):
        gens = ", ".join(f"{g.name}:{g.mu}" for g in self.generators)
        return f"GeneratorSystem([{gens}], {len(self.entries)} entries over {self.ring!r})"


# ---------------------------------------------------------------- validation


def structure_problems(sys: GeneratorSystem) -> list[str]:
    """Degree and ordering violations of the coefficient matrix."""
    problems = []
    if len(sys.by_name) != len(sys.generators):
        problems.append("generator names must be unique")
    for (x, y), a in sorted(sys.entries.items()):
        if x not in sys.by_name or y not in sys.by_name:
            problems.append(f"entry {x}|{y} names an unknown generator")
            continue
        if a.parent is not sys.ring:
            problems.append(f"entry {x}|{y} does not live in the system's ring")
            continue
        gap = sys.by_name[x].mu - sys.by_name[y].mu
        if gap < 1:
            problems.append(f"entry {x}|{y} does not decrease the index")
        elif a.degree != gap - 1:
            problems.append(f"entry {x}|{y} has degree {a.degree}, expected mu({x})-mu({y})-1 = {gap - 1}")
    cap = sys.ring.degree_cap
    if cap is not None and sys.mu_span - 1 > cap:
        problems.append(f"ring cap {cap} is below the index span {sys.mu_span}")
    return problems


@dataclass
class MCFailure:
    source: str
    target: str
    d_entry: AlgElement
    composite: AlgElement

    @property
    def residual(self) -> AlgElement:
        return self.d_entry + self.composite


@dataclass
class MCReport:
    failures: list[MCFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self):
        if self.ok:
            return "Maurer-Cartan identity dA = A^2 holds"
        lines = [f"Maurer-Cartan identity fails on {len(self.failures)} pair(s):"]
        for f in self.failures:
            lines.append(
                f"  ({f.source},{f.target}): dA = {f.d_entry!r}, A^2 = {f.composite!r}, "
                f"residual {f.residual!r}"
            )
        return "\n".join(lines)


def validate_mc(sys: GeneratorSystem) -> MCReport:
    """Check ``d a_xz = sum_y a_xy . a_yz`` for every ordered pair."""
    problems = structure_problems(sys)
    if problems:
        raise StructureError("; ".join(problems))
    report = MCReport()
    names = sys.names
    mu = {g.name: g.mu for g in sys.generators}
    for x in names:
        for z in names:
            gap = mu[x] - mu[z]
            if gap < 2:
                continue
            lhs = boundary(sys.entry(x, z)) if (x, z) in sys.entries else sys.ring.zero(gap - 2)
            rhs = sys.ring.zero(gap - 2)
            for y in names:
                if (x, y) in sys.entries and (y, z) in sys.entries:
                    rhs = rhs + sys.entries[x, y] * sys.entries[y, z]
            if lhs != rhs:
                report.failures.append(MCFailure(x, z, lhs, rhs))
    return report


@dataclass
class OrderingReport:
    violations: list[tuple[str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def diagnose(sys: GeneratorSystem) -> tuple[str | None, str]:
    """Run structure, Maurer-Cartan and action-order checks in that order.

    Returns ``(None, summary)`` when all pass, otherwise the name of the
    first failing check (``"structure"``, ``"mc"`` or ``"action"``) and
    its message.
    """
    problems = structure_problems(sys)
    if problems:
        return "structure", "; ".join(problems)
    mc = validate_mc(sys)
    if not mc.ok:
        return "mc", str(mc)
    order = check_action_order(sys)
    if not order.ok:
        pairs = ", ".join(f"{x}|{y}" for x, y in order.violations)
        return "action", f"entries against the action order: {pairs}"
    return None, str(mc)


def check_action_order(sys: GeneratorSystem) -> OrderingReport:
    """Nonzero ``a_xy`` between labelled generators needs action(x) > action(y)."""
    report = OrderingReport()
    for (x, y) in sorted(sys.entries):
        ax, ay = sys.by_name[x].action, sys.by_name[y].action
        if ax is not None and ay is not None and not ax > ay:
            report.violations.append((x, y))
    return report


# ---------------------------------------------------------- filtered complex


class FilteredComplex:
    """Finite GF(2) chain complex in degrees ``n_min..cap`` with a filtration.

    Within each degree the basis is sorted by filtration, so ``F_p C_n`` is
    spanned by a prefix of the basis.  ``boundary[n]`` maps ``C_n`` to
    ``C_{n-1}``.
    """

    def __init__(
        self,
        cap: int,
        n_min: int,
        labels: Mapping[int, Sequence[Hashable]],
        filtration: Mapping[int, Sequence[int]],
        boundary_columns: Mapping[int, Sequence[int]],
        ring: DGAlgebra | None = None,
        describe: Callable[[Hashable], str] | None = None,
    ):
        self.cap = cap
        self.n_min = n_min
        self.labels = {n: tuple(labels.get(n, ())) for n in self.degrees}
        self.filtration = {n: tuple(filtration.get(n, ())) for n in self.degrees}
        for n in self.degrees:
            f = self.filtration[n]
            if len(f) != len(self.labels[n]):
                raise ValueError(f"degree {n}: filtration and basis lengths differ")
            if any(f[i] > f[i + 1] for i in range(len(f) - 1)):
                raise ValueError(f"degree {n}: basis is not sorted by filtration")
        self.index = {n: {lab: i for i, lab in enumerate(self.labels[n])} for n in self.degrees}
        self.boundary = {}
        for n in self.degrees:
            cols = boundary_columns.get(n, [0] * self.dim(n))
            self.boundary[n] = F2Matrix.from_columns(cols, self.dim(n - 1))
        self.ring = ring
        self.describe = describe or str

    @property
    def degrees(self) -> range:
        return range(self.n_min, self.cap + 1)

    def dim(self, n: int) -> int:
        if n < self.n_min or n > self.cap:
            return 0
        return len(self.labels[n])

    @property
    def filtration_values(self) -> list[int]:
        return sorted({p for n in self.degrees for p in self.filtration[n]})

    def prefix(self, n: int, p: int) -> int:
        """Number of basis elements of ``C_n`` with filtration ``<= p``."""
        if n < self.n_min or n > self.cap:
            return 0
        return bisect.bisect_right(self.filtration[n], p)

    def d_squared_failures(self) -> list[int]:
        bad = []
        for n in self.degrees:
            if n - 1 < self.n_min:
                continue
            if not (self.boundary[n - 1] @ self.boundary[n]).is_zero():
                bad.append(n)
        return bad

    def filtration_violations(self) -> list[tuple[int, Hashable, Hashable]]:
        """Boundary terms of strictly higher filtration than their source."""
        bad = []
        for n in self.degrees:
            if n - 1 < self.n_min:
                continue
            lower = self.filtration[n - 1]
            for j, col in enumerate(self.boundary[n].columns):
                p = self.filtration[n][j]
                for i in iter_bits(col):
                    if lower[i] > p:
                        bad.append((n, self.labels[n][j], self.labels[n - 1][i]))
        return bad

    def homology_dims(self) -> dict[int, int]:
        """Betti numbers in degrees whose chains and boundaries are present."""
        ranks = {n: rank(self.boundary[n]) for n in self.degrees}
        return {
            n: self.dim(n) - ranks[n] - ranks.get(n + 1, 0)
            for n in self.degrees
            if n + 1 <= self.cap
        }

    def vector(self, n: int, labels: Iterable[Hashable]) -> int:
        v = 0
        for lab in labels:
            v ^= 1 << self.index[n][lab]
        return v

    def __repr__(self):
        dims = ", ".join(f"{n}:{self.dim(n)}" for n in self.degrees)
        return f"FilteredComplex(cap={self.cap}, dims={{{dims}}})"


def build_filtered_complex(
    cap: int,
    n_min: int,
    cells: Mapping[int, Sequence[tuple[Hashable, int]]],
    boundary_of: Callable[[int, Hashable], Iterable[Hashable]],
    **kwargs,
) -> FilteredComplex:
    """Assemble a complex from ``(label, filtration)`` cells per degree.

    ``boundary_of(n, label)`` yields labels in degree ``n - 1``, repeated
    labels cancelling mod 2.  Cells are stably sorted by filtration.
    """
    labels, filt, cols = {}, {}, {}
    for n in range(n_min, cap + 1):
        ordered = sorted(cells.get(n, ()), key=lambda c: c[1])
        labels[n] = [c[0] for c in ordered]
        filt[n] = [c[1] for c in ordered]
    for n in range(n_min, cap + 1):
        tgt = {lab: i for i, lab in enumerate(labels.get(n - 1, ()))}
        column = []
        for lab in labels[n]:
            c = 0
            for t in boundary_of(n, lab):
                c ^= 1 << tgt[t]
            column.append(c)
        cols[n] = column
    return FilteredComplex(cap, n_min, labels, filt, cols, **kwargs)


def assemble(sys: GeneratorSystem, cap: int, check: bool = True) -> FilteredComplex:
    """The extended complex in total degrees ``min mu .. cap``.

    Basis labels are ``(word_key, generator_name)``; the filtration of a
    label is the index of its generator.  With ``check`` the Maurer-Cartan
    identity is verified first.
    """
    if not sys.generators:
        raise StructureError("system has no generators")
    n_min = min(g.mu for g in sys.generators)
    if cap < n_min:
        raise StructureError(f"cap {cap} is below every generator index")
    ring = sys.ring
    if ring.degree_cap is not None and cap - n_min > ring.degree_cap:
        raise StructureError(
            f"total degree {cap} needs ring words of degree {cap - n_min} > ring cap {ring.degree_cap}"
        )
    if check:
        report = validate_mc(sys)
        if not report.ok:
            raise MaurerCartanError(str(report))
    cells = {}
    for n in range(n_min, cap + 1):
        cells[n] = [((w, g.name), g.mu) for g in sys.generators for w in ring.basis(n - g.mu)]
    out = {g.name: sys.outgoing(g.name) for g in sys.generators}

    def boundary_of(n, label):
        w, x = label
        for t in ring.d_key(w):
            yield (t, x)
        for y, a in out[x]:
            for k in a.terms:
                for t in ring.mul_keys(w, k):
                    yield (t, y)

    def describe(label):
        w, x = label
        return f"{ring.key_str(w)}⊗{x}"

    return build_filtered_complex(cap, n_min, cells, boundary_of, ring=ring, describe=describe)


# ------------------------------------------------------------ transformations


def change_coefficients(sys: GeneratorSystem, f: DGAMorphism) -> GeneratorSystem:
    """Push every entry through the ring morphism ``f``."""
    if f.source is not sys.ring:
        raise StructureError("morphism source is not the system's ring")
    entries = {k: f(a) for k, a in sys.entries.items()}
    new = GeneratorSystem(f.target, sys.generators, entries)
    report = validate_mc(new)
    if not report.ok:
        raise MaurerCartanError("change of coefficients broke the Maurer-Cartan identity\n" + str(report))
    return new


def translate(sys: GeneratorSystem, k: int) -> GeneratorSystem:
    """Shift every index by ``k``; coefficients are unchanged."""
    gens = [Generator(g.name, g.mu + k, g.action) for g in sys.generators]
    return GeneratorSystem(sys.ring, gens, sys.entries)


def normalized(sys: GeneratorSystem) -> GeneratorSystem:
    """The translate with smallest index 0."""
    return translate(sys, -min(g.mu for g in sys.generators))


def nilpotency_index(sys: GeneratorSystem) -> int:
    """Smallest ``m`` with ``A^m = 0`` as a pattern of nonzero entries."""
    names = sys.names
    support = {x: {y for (s, y) in sys.entries if s == x} for x in names}
    paths = {x: set(support[x]) for x in names}
    m = 1
    while any(paths.values()):
        paths = {x: {z for y in paths[x] for z in support[y]} for x in names}
        m += 1
    return m

