"""Spectral sequence of a filtered GF(2) complex.

With ``F_p`` the filtration and ``Z^r_p = {c in F_p : dc in F_{p-r}}`` the
pages are

    E^r_p = Z^r_p / (Z^{r-1}_{p-1} + d Z^{r-1}_{p+r-1}),

and ``d^r`` is induced by ``d``.  Bidegrees are ``(p, q)`` with total degree
``n = p + q``.  A cell is *certified* when ``p + q + 1 <= cap``: only chains
in degrees ``n`` and ``n + 1`` enter, and those are exact below the cap.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

from .complex import FilteredComplex
from .dga import AlgElement, boundary
from .gf2 import F2Matrix, F2Subspace, Quotient, iter_bits, kernel_of_columns


@dataclass(frozen=True)
class Cell:
    dim: int
    d_rank: int
    certified: bool


class PageSet:
    """Dimensions of ``E^r_{p,q}`` and ranks of ``d^r`` out of each cell."""

    def __init__(self, cap: int, r_max: int, cells: dict[tuple[int, int, int], Cell], p_range: tuple[int, int]):
        self.cap = cap
        self.r_max = r_max
        self.cells = cells
        self.p_range = p_range

    def certified(self, p: int, q: int) -> bool:
        return q >= 0 and p + q + 1 <= self.cap

    def cell(self, r: int, p: int, q: int) -> Cell:
        c = self.cells.get((r, p, q))
        if c is None:
            return Cell(0, 0, self.certified(p, q))
        return c

    def dim(self, r: int, p: int, q: int) -> int:
        return self.cell(r, p, q).dim

    def rank(self, r: int, p: int, q: int) -> int:
        return self.cell(r, p, q).d_rank

    def page(self, r: int) -> dict[tuple[int, int], Cell]:
        return {(p, q): c for (s, p, q), c in self.cells.items() if s == r}

    def nonzero_differentials(self, certified_only: bool = True) -> list[tuple[int, int, int, int]]:
        """``(r, p, q, rank)`` for every nonzero ``d^r`` out of ``(p, q)``."""
        out = []
        for (r, p, q), c in sorted(self.cells.items()):
            if c.d_rank and (c.certified or not certified_only):
                out.append((r, p, q, c.d_rank))
        return out

    def telescoping_violations(self) -> list[tuple[int, int, int]]:
        """Cells where ``dim E^{r+1} != dim E^r - rank out - rank in``."""
        bad = []
        for (r, p, q), c in self.cells.items():
            if r + 1 > self.r_max:
                continue
            src = (p + r, q - r + 1)
            tgt = (p - r, q + r - 1)
            if not (c.certified and self.certified(*src) and self.certified(*tgt)):
                continue
            expected = c.dim - c.d_rank - self.rank(r, *src)
            if self.dim(r + 1, p, q) != expected:
                bad.append((r, p, q))
        return bad

    def total_dim(self, r: int, n: int) -> int:
        return sum(c.dim for (s, p, q), c in self.cells.items() if s == r and p + q == n)

    def to_json(self) -> dict:
        pages = []
        for r in range(1, self.r_max + 1):
            cells = [
                {"p": p, "q": q, "dim": c.dim, "d_rank": c.d_rank, "certified": c.certified}
                for (p, q), c in sorted(self.page(r).items())
            ]
            pages.append({"r": r, "cells": cells})
        return {"cap": self.cap, "p_range": list(self.p_range), "pages": pages}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "PageSet":
        cells = {}
        for page in data["pages"]:
            r = page["r"]
            for c in page["cells"]:
                cells[r, c["p"], c["q"]] = Cell(c["dim"], c["d_rank"], c["certified"])
        r_max = max((pg["r"] for pg in data["pages"]), default=0)
        return cls(data["cap"], r_max, cells, tuple(data["p_range"]))

    def table(self, r: int) -> str:
        """Text grid of page ``r``: rows ``q`` (top = high), columns ``p``.

        Entries read ``dim`` or ``dim>rank`` when ``d^r`` is nonzero;
        uncertified cells end in ``?``.
        """
        p0, p1 = self.p_range
        ps = list(range(p0, p1 + 1))
        qs = sorted({q for (s, p, q) in self.cells if s == r}, reverse=True)
        width = 7
        lines = [f"E^{r}" + "".join(f"{'p=' + str(p):>{width}}" for p in ps)]
        for q in qs:
            row = f"q={q:<3}"
            for p in ps:
                c = self.cell(r, p, q)
                txt = str(c.dim)
                if c.d_rank:
                    txt += f">{c.d_rank}"
                if not c.certified:
                    txt += "?"
                row += f"{txt:>{width}}"
            lines.append(row)
        return "\n".join(lines)

    def __eq__(self, other):
        if not isinstance(other, PageSet):
            return NotImplemented
        return self.to_json() == other.to_json()

    def __repr__(self):
        return f"PageSet(cap={self.cap}, r_max={self.r_max}, p_range={self.p_range})"


class PageEngine:
    """Cached subspace arithmetic for the pages of one filtered complex."""

    def __init__(self, fc: FilteredComplex):
        self.fc = fc
        self._z: dict = {}
        self._d: dict = {}
        self._img: dict = {}

    def _zkey(self, n: int, p: int, r: int) -> tuple[int, int, int]:
        return (n, self.fc.prefix(n, p), self.fc.prefix(n - 1, p - r))

    def Z(self, n: int, p: int, r: int) -> F2Subspace:
        """``{c in F_p C_n : dc in F_{p-r} C_{n-1}}``."""
        key = self._zkey(n, p, r)
        hit = self._z.get(key)
        if hit is None:
            fc = self.fc
            _, k_src, k_tgt = key
            N = fc.dim(n)
            if n - 1 < fc.n_min or k_src == 0:
                hit = F2Subspace.coordinate(N, range(k_src))
            else:
                cols = fc.boundary[n].columns
                hit = kernel_of_columns([cols[j] >> k_tgt for j in range(k_src)], N)
            self._z[key] = hit
        return hit

    def dZ(self, n: int, p: int, r: int) -> F2Subspace:
        """``d(Z^r_p)`` from degree ``n``, inside ``C_{n-1}``."""
        key = self._zkey(n, p, r)
        hit = self._img.get(key)
        if hit is None:
            m = self.fc.boundary[n]
            vecs = [m.apply(b) for b in self.Z(n, p, r).basis]
            hit = self._img[key] = F2Subspace.span(self.fc.dim(n - 1), vecs)
        return hit

    def D(self, n: int, p: int, r: int) -> F2Subspace:
        """Denominator ``Z^{r-1}_{p-1} + d Z^{r-1}_{p+r-1}`` in degree ``n``."""
        lower = self._zkey(n, p - 1, r - 1)
        upper = self._zkey(n + 1, p + r - 1, r - 1) if n + 1 <= self.fc.cap else None
        hit = self._d.get((lower, upper))
        if hit is None:
            hit = self.Z(n, p - 1, r - 1)
            if upper is not None:
                hit = hit + self.dZ(n + 1, p + r - 1, r - 1)
            self._d[lower, upper] = hit
        return hit

    def has_cells(self, n: int, p: int) -> bool:
        return self.fc.prefix(n, p) > self.fc.prefix(n, p - 1)

    def dim(self, r: int, p: int, q: int) -> int:
        n = p + q
        if not self.has_cells(n, p):
            return 0
        return self.Z(n, p, r).dim - self.D(n, p, r).dim

    def rank(self, r: int, p: int, q: int) -> int:
        n = p + q
        if not self.has_cells(n, p) or not self.has_cells(n - 1, p - r):
            return 0
        target = self.D(n - 1, p - r, r)
        hit = self.dZ(n, p, r) + target
        return hit.dim - target.dim

    # explicit bases

    def quotient(self, r: int, p: int, q: int) -> Quotient:
        n = p + q
        if n < self.fc.n_min or n > self.fc.cap:
            return Quotient(F2Subspace.zero(0), F2Subspace.zero(0))
        return Quotient(self.Z(n, p, r), self.D(n, p, r))

    def d_matrix(self, r: int, p: int, q: int) -> F2Matrix:
        """Matrix of ``d^r: E^r_{p,q} -> E^r_{p-r,q+r-1}`` in quotient bases."""
        src = self.quotient(r, p, q)
        tgt = self.quotient(r, p - r, q + r - 1)
        n = p + q
        if src.dim == 0 or tgt.dim == 0:
            return F2Matrix.zeros(tgt.dim, src.dim)
        m = self.fc.boundary[n]
        return F2Matrix.from_columns([tgt.coords(m.apply(v)) for v in src.reps], tgt.dim)

    def induced_matrix(
        self,
        other: "PageEngine",
        chain_map: Callable[[int, int], int],
        r: int,
        p: int,
        q: int,
        dp: int = 0,
        dq: int = 0,
    ) -> F2Matrix:
        """Matrix on ``E^r_{p,q}`` of a filtered chain map into ``other``.

        ``chain_map(n, v)`` sends a packed vector of ``C_n`` to
        ``C'_{n + dp + dq}``; the induced map lands in ``E'^r_{p+dp, q+dq}``.
        """
        src = self.quotient(r, p, q)
        tgt = other.quotient(r, p + dp, q + dq)
        n = p + q
        return F2Matrix.from_columns([tgt.coords(chain_map(n, v)) for v in src.reps], tgt.dim)


def default_r_max(fc: FilteredComplex) -> int:
    vals = fc.filtration_values
    return (vals[-1] - vals[0] if vals else 0) + 1


def compute_pages(fc: FilteredComplex, r_max: int | None = None, engine: PageEngine | None = None) -> PageSet:
    """Pages ``E^1 .. E^{r_max}`` on every cell with ``p + q <= cap``."""
    if r_max is None:
        r_max = default_r_max(fc)
    if r_max < 1:
        raise ValueError("r_max must be at least 1")
    eng = engine or PageEngine(fc)
    vals = fc.filtration_values
    if not vals:
        return PageSet(fc.cap, r_max, {}, (0, 0))
    p0, p1 = vals[0], vals[-1]
    cells = {}
    for r in range(1, r_max + 1):
        for p in range(p0, p1 + 1):
            for n in range(max(fc.n_min, p), fc.cap + 1):
                q = n - p
                cells[r, p, q] = Cell(eng.dim(r, p, q), eng.rank(r, p, q), n + 1 <= fc.cap)
    return PageSet(fc.cap, r_max, cells, (p0, p1))


def compare_up_to_translation(a: PageSet, b: PageSet, r_min: int = 2) -> int | None:
    """Shift ``k`` with ``a`` at ``(p + k, q)`` matching ``b`` at ``(p, q)``.

    Dimensions and differential ranks must agree on every cell certified in
    both page sets for ``r_min <= r <= min(r_max)``.  Candidates range over
    the shifts that overlap the two filtration spans, smallest ``|k|`` first.
    """
    r_top = min(a.r_max, b.r_max)
    if r_top < r_min:
        return None
    lo = a.p_range[0] - b.p_range[1]
    hi = a.p_range[1] - b.p_range[0]
    for k in sorted(range(lo, hi + 1), key=lambda k: (abs(k), k)):
        if _matches(a, b, k, r_min, r_top):
            return k
    return None


def _matches(a: PageSet, b: PageSet, k: int, r_min: int, r_top: int) -> bool:
    compared = 0
    for r in range(r_min, r_top + 1):
        spots = {(p - k, q) for (s, p, q) in a.cells if s == r}
        spots |= {(p, q) for (s, p, q) in b.cells if s == r}
        for p, q in spots:
            if not (a.certified(p + k, q) and b.certified(p, q)):
                continue
            ca, cb = a.cell(r, p + k, q), b.cell(r, p, q)
            if (ca.dim, ca.d_rank) != (cb.dim, cb.d_rank):
                return False
            compared += 1
    return compared > 0


# ------------------------------------------------------------- module action


@dataclass
class ActionCell:
    r: int
    p: int
    q: int
    matrix: F2Matrix
    commutes: bool


@dataclass
class ActionReport:
    alpha: str
    degree: int
    cells: list[ActionCell] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.commutes for c in self.cells)

    def zero_on_page(self, r: int) -> bool:
        return all(c.matrix.is_zero() for c in self.cells if c.r == r)

    def __str__(self):
        bad = [c for c in self.cells if not c.commutes]
        status = "commutes with every certified d^r" if not bad else f"fails on {len(bad)} cells"
        return f"left multiplication by {self.alpha} (degree {self.degree}): {status} ({len(self.cells)} cells checked)"


def left_multiplication(fc: FilteredComplex, alpha: AlgElement) -> Callable[[int, int], int]:
    """Chain map ``w (x) x -> (alpha . w) (x) x`` on packed vectors."""
    ring = fc.ring
    if ring is None or alpha.parent is not ring:
        raise ValueError("alpha must live in the complex's coefficient ring")
    cache: dict[int, list[int]] = {}

    def columns(n):
        hit = cache.get(n)
        if hit is None:
            tgt = fc.index[n + alpha.degree]
            hit = []
            for w, x in fc.labels[n]:
                c = 0
                for a in alpha.terms:
                    for t in ring.mul_keys(a, w):
                        c ^= 1 << tgt[t, x]
                hit.append(c)
            cache[n] = hit
        return hit

    def apply(n, v):
        cols = columns(n)
        out = 0
        for j in iter_bits(v):
            out ^= cols[j]
        return out

    return apply


def module_action_check(
    fc: FilteredComplex,
    alpha: AlgElement,
    r_max: int | None = None,
    engine: PageEngine | None = None,
) -> ActionReport:
    """Check that multiplication by the cycle ``alpha`` commutes with each ``d^r``.

    Only cells whose source, image and ``d^r`` targets are all certified
    are examined.
    """
    if not boundary(alpha).is_zero():
        raise ValueError(f"{alpha!r} is not a cycle")
    if r_max is None:
        r_max = default_r_max(fc)
    eng = engine or PageEngine(fc)
    act = left_multiplication(fc, alpha)
    k = alpha.degree
    vals = fc.filtration_values
    report = ActionReport(repr(alpha), k)
    cert = lambda p, q: q >= 0 and p + q + 1 <= fc.cap
    for r in range(1, r_max + 1):
        for p in range(vals[0], vals[-1] + 1):
            for n in range(max(fc.n_min, p), fc.cap + 1):
                q = n - p
                tp, tq = p - r, q + r - 1
                if not (cert(p, q) and cert(p, q + k) and cert(tp, tq) and cert(tp, tq + k)):
                    continue
                if eng.quotient(r, p, q).dim == 0:
                    continue
                m_src = eng.induced_matrix(eng, act, r, p, q, 0, k)
                m_tgt = eng.induced_matrix(eng, act, r, tp, tq, 0, k)
                lhs = m_tgt @ eng.d_matrix(r, p, q)
                rhs = eng.d_matrix(r, p, q + k) @ m_src
                report.cells.append(ActionCell(r, p, q, m_src, lhs == rhs))
    return report
