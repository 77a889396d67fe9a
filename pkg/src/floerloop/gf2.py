"""Dense linear algebra over GF(2) with vectors packed into Python ints.

A vector of length ``n`` is an ``int`` whose bit ``i`` is coordinate ``i``.
Subspaces are kept in reduced row-echelon form with the pivot of each basis
vector at its highest set bit, which makes the representation canonical.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence


class DimensionMismatch(ValueError):
    pass


def iter_bits(v: int) -> Iterator[int]:
    """Yield the indices of set bits of ``v`` in increasing order."""
    while v:
        low = v & -v
        yield low.bit_length() - 1
        v ^= low


def popcount(v: int) -> int:
    return bin(v).count("1")


def vector(entries: Sequence[int]) -> int:
    """Pack a 0/1 sequence into an int (entry ``i`` -> bit ``i``)."""
    v = 0
    for i, e in enumerate(entries):
        if e & 1:
            v |= 1 << i
    return v


def unpack(v: int, n: int) -> list[int]:
    return [(v >> i) & 1 for i in range(n)]


def _dependencies(vectors: Sequence[int]) -> tuple[dict[int, int], list[int]]:
    """Leading-bit elimination of ``vectors`` with combination tracking.

    Returns the pivot table (top bit -> reduced vector) and one tracker per
    dependency: tracker bit ``i`` set means ``vectors[i]`` takes part in a
    combination summing to zero.  The trackers span all dependencies.
    """
    pivots: dict[int, tuple[int, int]] = {}
    deps = []
    for i, v in enumerate(vectors):
        t = 1 << i
        while v:
            h = v.bit_length() - 1
            hit = pivots.get(h)
            if hit is None:
                pivots[h] = (v, t)
                break
            v ^= hit[0]
            t ^= hit[1]
        if not v:
            deps.append(t)
    return {h: pv[0] for h, pv in pivots.items()}, deps


def _rref(pivots: dict[int, int]) -> tuple[int, ...]:
    """Back-substitute a leading-bit pivot table into canonical RREF."""
    rows: dict[int, int] = {}
    mask = 0
    for h in sorted(pivots):
        v = pivots[h]
        # reduced rows carry no other pivot bits, so one pass suffices
        for hb in iter_bits(v & mask):
            v ^= rows[hb]
        rows[h] = v
        mask |= 1 << h
    return tuple(rows[h] for h in sorted(rows, reverse=True))


class F2Matrix:
    """An immutable ``rows x cols`` matrix over GF(2), stored row-major."""

    __slots__ = ("rows", "cols", "bits", "_columns")

    def __init__(self, rows: int, cols: int, bits: Iterable[int]):
        bits = tuple(bits)
        if len(bits) != rows:
            raise DimensionMismatch(f"expected {rows} rows, got {len(bits)}")
        limit = 1 << cols
        for b in bits:
            if b < 0 or b >= limit:
                raise DimensionMismatch(f"row {b:#x} does not fit in {cols} columns")
        self.rows = rows
        self.cols = cols
        self.bits = bits
        self._columns = None

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]], cols: int | None = None) -> "F2Matrix":
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(len(entries), cols, [vector(r) for r in entries])

    @classmethod
    def from_columns(cls, columns: Sequence[int], rows: int) -> "F2Matrix":
        bits = [0] * rows
        for j, c in enumerate(columns):
            for i in iter_bits(c):
                bits[i] |= 1 << j
        m = cls(rows, len(columns), bits)
        m._columns = tuple(columns)
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "F2Matrix":
        return cls(rows, cols, [0] * rows)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, [1 << i for i in range(n)])

    @property
    def columns(self) -> tuple[int, ...]:
        """Column ``j`` as a packed vector of length ``rows``."""
        if self._columns is None:
            cols = [0] * self.cols
            for i, r in enumerate(self.bits):
                for j in iter_bits(r):
                    cols[j] |= 1 << i
            self._columns = tuple(cols)
        return self._columns

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.bits[i] >> j) & 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, F2Matrix):
            return NotImplemented
        return (self.rows, self.cols, self.bits) == (other.rows, other.cols, other.bits)

    def __hash__(self):
        return hash((self.rows, self.cols, self.bits))

    def __repr__(self):
        return f"F2Matrix({self.rows}x{self.cols}, rank={rank(self)})"

    def to_lists(self) -> list[list[int]]:
        return [unpack(r, self.cols) for r in self.bits]

    def transpose(self) -> "F2Matrix":
        return F2Matrix(self.cols, self.rows, self.columns)

    def apply(self, v: int) -> int:
        """Matrix-vector product ``m.v``."""
        out = 0
        cols = self.columns
        for j in iter_bits(v):
            out ^= cols[j]
        return out

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        return F2Matrix.from_columns([self.apply(c) for c in other.columns], self.rows)

    def __add__(self, other: "F2Matrix") -> "F2Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shapes differ")
        return F2Matrix(self.rows, self.cols, [a ^ b for a, b in zip(self.bits, other.bits)])

    def is_zero(self) -> bool:
        return not any(self.bits)


class F2Subspace:
    """A subspace of GF(2)^n held by its canonical reduced echelon basis."""

    __slots__ = ("ambient_dim", "basis", "_pivots")

    def __init__(self, ambient_dim: int, basis: tuple[int, ...] = ()):
        # trusted constructor: ``basis`` must already be canonical
        self.ambient_dim = ambient_dim
        self.basis = basis
        self._pivots = None

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[int]) -> "F2Subspace":
        limit = 1 << ambient_dim
        vecs = []
        for v in vectors:
            if v < 0 or v >= limit:
                raise DimensionMismatch(f"vector {v:#x} outside GF(2)^{ambient_dim}")
            vecs.append(v)
        pivots, _ = _dependencies(vecs)
        return cls(ambient_dim, _rref(pivots))

    @classmethod
    def zero(cls, ambient_dim: int) -> "F2Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "F2Subspace":
        return cls(ambient_dim, tuple(1 << i for i in reversed(range(ambient_dim))))

    @classmethod
    def coordinate(cls, ambient_dim: int, indices: Iterable[int]) -> "F2Subspace":
        return cls(ambient_dim, tuple(1 << i for i in sorted(set(indices), reverse=True)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> dict[int, int]:
        if self._pivots is None:
            self._pivots = {b.bit_length() - 1: b for b in self.basis}
        return self._pivots

    def __len__(self):
        return len(self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, F2Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"F2Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def reduce(self, v: int) -> int:
        """Canonical representative of ``v`` modulo this subspace."""
        for b in self.basis:
            if (v >> (b.bit_length() - 1)) & 1:
                v ^= b
        return v

    def __contains__(self, v: int) -> bool:
        return self.reduce(v) == 0

    def _check(self, other: "F2Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch(f"ambient {self.ambient_dim} vs {other.ambient_dim}")

    def __add__(self, other: "F2Subspace") -> "F2Subspace":
        self._check(other)
        if not other.basis:
            return self
        if not self.basis:
            return other
        return F2Subspace.span(self.ambient_dim, self.basis + other.basis)

    def __and__(self, other: "F2Subspace") -> "F2Subspace":
        return intersect(self, other)

    def __le__(self, other: "F2Subspace") -> bool:
        self._check(other)
        return all(other.reduce(b) == 0 for b in self.basis)

    def elements(self) -> Iterator[int]:
        """Enumerate all ``2**dim`` vectors (small subspaces only)."""
        for mask in range(1 << self.dim):
            v = 0
            for i in iter_bits(mask):
                v ^= self.basis[i]
            yield v


def rank(m: F2Matrix) -> int:
    pivots, _ = _dependencies(m.bits)
    return len(pivots)


def rank_of_vectors(vectors: Sequence[int]) -> int:
    pivots, _ = _dependencies(vectors)
    return len(pivots)


def kernel_of_columns(columns: Sequence[int], domain_dim: int | None = None) -> F2Subspace:
    """``{v : sum of columns[j] over bits j of v == 0}``."""
    _, deps = _dependencies(columns)
    n = len(columns) if domain_dim is None else domain_dim
    return F2Subspace.span(n, deps)


def kernel(m: F2Matrix) -> F2Subspace:
    return kernel_of_columns(m.columns, m.cols)


def image(m: F2Matrix, source: F2Subspace | None = None) -> F2Subspace:
    """Image of ``source`` (default: whole domain) under ``m``."""
    if source is None:
        return F2Subspace.span(m.rows, m.columns)
    if source.ambient_dim != m.cols:
        raise DimensionMismatch(f"domain {m.cols} vs subspace ambient {source.ambient_dim}")
    return F2Subspace.span(m.rows, [m.apply(b) for b in source.basis])


def preimage_subspace(m: F2Matrix, target: F2Subspace) -> F2Subspace:
    """``{v : m.v in target}``."""
    if target.ambient_dim != m.rows:
        raise DimensionMismatch(f"codomain {m.rows} vs target ambient {target.ambient_dim}")
    residues = [target.reduce(c) for c in m.columns]
    return kernel_of_columns(residues, m.cols)


def intersect(a: F2Subspace, b: F2Subspace) -> F2Subspace:
    a._check(b)
    if not a.basis or not b.basis:
        return F2Subspace.zero(a.ambient_dim)
    residues = [b.reduce(v) for v in a.basis]
    _, deps = _dependencies(residues)
    out = []
    for t in deps:
        v = 0
        for i in iter_bits(t):
            v ^= a.basis[i]
        out.append(v)
    return F2Subspace.span(a.ambient_dim, out)


def sum_intersect_quotient(a: F2Subspace, b: F2Subspace, c: F2Subspace):
    """Return ``(a+b, a&b, dim((a+b) / (c & (a+b))))``."""
    a._check(b)
    a._check(c)
    s = a + b
    return s, intersect(a, b), s.dim - intersect(c, s).dim


class Quotient:
    """Explicit basis of ``space / sub`` with coordinate extraction.

    ``reps`` are representatives in ``space`` whose classes form a basis of
    the quotient; ``coords(v)`` returns the packed coordinate vector of the
    class of ``v`` (which must lie in ``space``).
    """

    def __init__(self, space: F2Subspace, sub: F2Subspace):
        space._check(sub)
        self.space = space
        self.sub = sub
        table: dict[int, tuple[int, int]] = {}
        for b in sub.basis:
            table[b.bit_length() - 1] = (b, 0)
        reps = []
        for v in space.basis:
            t = 0
            w = v
            while w:
                h = w.bit_length() - 1
                hit = table.get(h)
                if hit is None:
                    break
                w ^= hit[0]
                t ^= hit[1]
            if w:
                table[w.bit_length() - 1] = (w, t ^ (1 << len(reps)))
                reps.append(v)
        if len(reps) != space.dim - sub.dim:
            raise ValueError("sub is not contained in space")
        self.reps = tuple(reps)
        self._table = table

    @property
    def dim(self) -> int:
        return len(self.reps)

    def coords(self, v: int) -> int:
        t = 0
        while v:
            h = v.bit_length() - 1
            hit = self._table.get(h)
            if hit is None:
                raise ValueError("vector not in the numerator space")
            v ^= hit[0]
            t ^= hit[1]
        return t
