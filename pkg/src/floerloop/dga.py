"""Differential graded coalgebras and algebras over GF(2).

Coalgebras model a simply connected space, algebras model chains on its
based loop space.  The bridge is the cobar construction: the tensor algebra
on the desuspended reduced coalgebra, with differential

    d(s c) = s(dc) + sum over reduced coproduct terms c' (x) c'' of (s c')(s c'').

Every algebra carries a degree cap; words above it are never materialized
and products that would exceed it raise :class:`CapOverflow`.
"""

from __future__ import annotations

import re
from collections import Counter
from itertools import product as cartesian
from typing import Iterable, Mapping, Sequence

from .gf2 import F2Matrix, F2Subspace, image, iter_bits, kernel, rank

NAME_RE = re.compile(r"^[A-Za-z0-9_]+$")


class CoalgebraError(ValueError):
    pass


class AlgebraError(ValueError):
    pass


class CapOverflow(ArithmeticError):
    """A product or basis request beyond the algebra's degree cap."""


def mod2(items: Iterable) -> frozenset:
    """Collapse a formal sum with repetitions to its GF(2) support."""
    return frozenset(k for k, n in Counter(items).items() if n % 2)


# ---------------------------------------------------------------- coalgebras


class DGCoalgebra:
    """A finite-type, simply connected DG coalgebra.

    ``coproduct`` gives the *reduced* coproduct of each element as a list of
    ``(left, right)`` name pairs; ``differential`` gives ``d`` as a list of
    names.  Missing entries mean zero.  All invariants are checked here.
    """

    def __init__(
        self,
        basis: Sequence[tuple[str, int]],
        coproduct: Mapping[str, Sequence[tuple[str, str]]] | None = None,
        differential: Mapping[str, Sequence[str]] | None = None,
    ):
        self.basis = tuple((str(n), int(d)) for n, d in basis)
        self.degrees = dict(self.basis)
        if len(self.degrees) != len(self.basis):
            raise CoalgebraError("duplicate basis names")
        for name, deg in self.basis:
            if not NAME_RE.match(name):
                raise CoalgebraError(f"bad basis name {name!r}")
            if deg < 0:
                raise CoalgebraError(f"{name} has negative degree")
            if deg == 1:
                raise CoalgebraError(f"{name} sits in degree 1; the space must be simply connected")
        units = [n for n, d in self.basis if d == 0]
        if len(units) != 1:
            raise CoalgebraError(f"need exactly one degree-0 element, found {units}")
        self.unit = units[0]
        coproduct = coproduct or {}
        differential = differential or {}
        for key in list(coproduct) + list(differential):
            if key not in self.degrees:
                raise CoalgebraError(f"unknown basis element {key!r}")
        self.coproduct = {
            n: mod2((str(a), str(b)) for a, b in coproduct.get(n, ())) for n, _ in self.basis
        }
        self.differential = {n: mod2(str(x) for x in differential.get(n, ())) for n, _ in self.basis}
        self._validate()

    @property
    def reduced(self) -> list[str]:
        return [n for n, d in self.basis if d > 0]

    @property
    def top_degree(self) -> int:
        return max(d for _, d in self.basis)

    def _validate(self):
        deg = self.degrees
        for c, terms in self.coproduct.items():
            for a, b in terms:
                if a not in deg or b not in deg:
                    raise CoalgebraError(f"coproduct of {c} mentions unknown element")
                if a == self.unit or b == self.unit:
                    raise CoalgebraError(f"reduced coproduct of {c} contains the unit")
                if deg[a] + deg[b] != deg[c]:
                    raise CoalgebraError(f"coproduct term {a}|{b} of {c} has wrong degree")
        for c, terms in self.differential.items():
            for x in terms:
                if x not in deg:
                    raise CoalgebraError(f"differential of {c} mentions unknown {x!r}")
                if deg[x] != deg[c] - 1:
                    raise CoalgebraError(f"d({c}) contains {x} of wrong degree")
        for c in self.reduced:
            if self.d(self.d([c])):
                raise CoalgebraError(f"d^2({c}) != 0")
            if self.coassociator(c):
                raise CoalgebraError(f"coproduct is not coassociative on {c}")
            if self.coderivation_defect(c):
                raise CoalgebraError(f"d is not a coderivation on {c}")

    def d(self, names: Iterable[str]) -> frozenset:
        return mod2(x for n in names for x in self.differential[n])

    def coassociator(self, c: str) -> frozenset:
        left = [(u, v, b) for a, b in self.coproduct[c] for u, v in self.coproduct[a]]
        right = [(a, u, v) for a, b in self.coproduct[c] for u, v in self.coproduct[b]]
        return mod2(left + right)

    def coderivation_defect(self, c: str) -> frozenset:
        lhs = [t for x in self.differential[c] for t in self.coproduct[x]]
        rhs = [(x, b) for a, b in self.coproduct[c] for x in self.differential[a]]
        rhs += [(a, x) for a, b in self.coproduct[c] for x in self.differential[b]]
        return mod2(lhs + rhs)

    def full_coproduct(self, c: str) -> frozenset:
        if c == self.unit:
            return frozenset({(c, c)})
        return self.coproduct[c] ^ {(self.unit, c), (c, self.unit)}

    def to_dict(self) -> dict:
        return {
            "basis": [{"name": n, "degree": d} for n, d in self.basis],
            "coproduct": {c: sorted([a, b] for a, b in t) for c, t in self.coproduct.items() if t},
            "differential": {c: sorted(t) for c, t in self.differential.items() if t},
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "DGCoalgebra":
        basis = [(b["name"], b["degree"]) for b in data["basis"]]
        return cls(basis, data.get("coproduct", {}), data.get("differential", {}))

    def __eq__(self, other):
        if not isinstance(other, DGCoalgebra):
            return NotImplemented
        return (set(self.basis), self.coproduct, self.differential) == (
            set(other.basis),
            other.coproduct,
            other.differential,
        )

    def __repr__(self):
        return f"DGCoalgebra({', '.join(f'{n}:{d}' for n, d in self.basis)})"


def point_coalgebra() -> DGCoalgebra:
    return DGCoalgebra([("1", 0)])


def sphere_coalgebra(n: int, name: str = "x") -> DGCoalgebra:
    if n < 2:
        raise CoalgebraError("spheres of dimension < 2 are not simply connected")
    return DGCoalgebra([("1", 0), (name, n)])


def product_coalgebra(a: DGCoalgebra, b: DGCoalgebra) -> DGCoalgebra:
    """Tensor product coalgebra, the chain model of a product of spaces.

    Pair names concatenate the factor names, dropping units; the pair of
    units is named ``1``.
    """

    def pname(x, y):
        if x == a.unit and y == b.unit:
            return "1"
        if x == a.unit:
            return y
        if y == b.unit:
            return x
        return x + y

    names = {}
    for (x, dx), (y, dy) in cartesian(a.basis, b.basis):
        names[x, y] = (pname(x, y), dx + dy)
    if len({n for n, _ in names.values()}) != len(names):
        raise CoalgebraError("factor names collide in the product; rename a factor")
    unit = names[a.unit, b.unit][0]
    coproduct = {}
    differential = {}
    for (x, y), (nm, _) in names.items():
        terms = []
        for x1, x2 in a.full_coproduct(x):
            for y1, y2 in b.full_coproduct(y):
                left, right = names[x1, y1][0], names[x2, y2][0]
                if left != unit and right != unit:
                    terms.append((left, right))
        coproduct[nm] = sorted(mod2(terms))
        dterms = [names[u, y][0] for u in a.differential[x]] + [names[x, v][0] for v in b.differential[y]]
        differential[nm] = sorted(mod2(dterms))
    order = sorted(names.values(), key=lambda t: (t[1], t[0] != "1", t[0]))
    return DGCoalgebra(order, coproduct, differential)


# ------------------------------------------------------------------ algebras


class DGAlgebra:
    """Common interface of the algebra representations.

    Basis elements are hashable *keys*; elements are GF(2) sums of keys of a
    common degree (:class:`AlgElement`).
    """

    kind: str
    degree_cap: int | None
    unit_key: object

    def __init__(self):
        self._d_cache: dict = {}
        self._basis_cache: dict[int, tuple] = {}
        self._index_cache: dict[int, dict] = {}

    # subclasses provide: _basis_uncached, degree_of, _mul_keys, _d_key,
    # key_str, generators, _gen_key, factor_key

    def _check_cap(self, degree: int):
        if self.degree_cap is not None and degree > self.degree_cap:
            raise CapOverflow(f"degree {degree} exceeds cap {self.degree_cap}")

    def basis(self, degree: int) -> tuple:
        """Canonically ordered basis keys of the given degree."""
        if degree < 0:
            return ()
        self._check_cap(degree)
        hit = self._basis_cache.get(degree)
        if hit is None:
            hit = self._basis_cache[degree] = tuple(self._basis_uncached(degree))
        return hit

    def index(self, degree: int) -> dict:
        hit = self._index_cache.get(degree)
        if hit is None:
            hit = self._index_cache[degree] = {k: i for i, k in enumerate(self.basis(degree))}
        return hit

    def dim(self, degree: int) -> int:
        return len(self.basis(degree))

    def mul_keys(self, u, v) -> frozenset:
        self._check_cap(self.degree_of(u) + self.degree_of(v))
        return self._mul_keys(u, v)

    def d_key(self, u) -> frozenset:
        hit = self._d_cache.get(u)
        if hit is None:
            hit = self._d_cache[u] = self._d_key(u)
        return hit

    # element helpers

    def element(self, keys: Iterable, degree: int | None = None) -> "AlgElement":
        terms = mod2(keys)
        degs = {self.degree_of(k) for k in terms}
        if len(degs) > 1:
            raise AlgebraError(f"inhomogeneous element with degrees {sorted(degs)}")
        if degs:
            deg = degs.pop()
            if degree is not None and degree != deg:
                raise AlgebraError(f"element has degree {deg}, expected {degree}")
            degree = deg
        elif degree is None:
            degree = 0
        return AlgElement(self, terms, degree)

    def zero(self, degree: int = 0) -> "AlgElement":
        return AlgElement(self, frozenset(), degree)

    def one(self) -> "AlgElement":
        return AlgElement(self, frozenset({self.unit_key}), 0)

    def gen(self, name: str) -> "AlgElement":
        k = self._gen_key(name)
        return AlgElement(self, frozenset({k}), self.degree_of(k))

    def word(self, names: Sequence[str]) -> "AlgElement":
        """Product of the named generators in order (empty list: the unit)."""
        out = self.one()
        for n in names:
            out = out * self.gen(n)
        return out

    def parse(self, words: Sequence[Sequence[str]], degree: int | None = None) -> "AlgElement":
        """GF(2) sum of words, each given as a list of generator names."""
        total = None
        for w in words:
            e = self.word(w)
            total = e if total is None else total + e
        if total is None:
            return self.zero(0 if degree is None else degree)
        if degree is not None and not total.is_zero() and total.degree != degree:
            raise AlgebraError(f"element has degree {total.degree}, expected {degree}")
        if total.is_zero() and degree is not None:
            return self.zero(degree)
        return total

    def words_of(self, x: "AlgElement") -> list[list[str]]:
        """Inverse of :meth:`parse` on basis keys (sorted, canonical)."""
        return [self.factor_key(k) for k in sorted(x.terms, key=self.sort_key)]

    def sort_key(self, k):
        return (self.degree_of(k), self.index(self.degree_of(k))[k])

    def boundary_matrix(self, degree: int) -> F2Matrix:
        """Matrix of d from degree ``degree`` to ``degree - 1``."""
        src = self.basis(degree)
        tgt = self.index(degree - 1) if degree > 0 else {}
        cols = []
        for k in src:
            c = 0
            for t in self.d_key(k):
                c ^= 1 << tgt[t]
            cols.append(c)
        return F2Matrix.from_columns(cols, len(tgt))

    def check_d_squared(self, up_to: int | None = None) -> list:
        """Basis keys on which d^2 fails, up to ``up_to`` (default: cap)."""
        top = self.degree_cap if up_to is None else up_to
        bad = []
        for deg in range(top + 1):
            for k in self.basis(deg):
                if mod2(t for s in self.d_key(k) for t in self.d_key(s)):
                    bad.append(k)
        return bad


class AlgElement:
    """Homogeneous element of a :class:`DGAlgebra`: a set of basis keys."""

    __slots__ = ("parent", "terms", "degree")

    def __init__(self, parent: DGAlgebra, terms: frozenset, degree: int):
        self.parent = parent
        self.terms = terms
        self.degree = degree

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def _same_parent(self, other: "AlgElement"):
        if other.parent is not self.parent:
            raise AlgebraError("elements of different algebras")

    def __add__(self, other: "AlgElement") -> "AlgElement":
        self._same_parent(other)
        if self.terms and other.terms and self.degree != other.degree:
            raise AlgebraError(f"adding degrees {self.degree} and {other.degree}")
        deg = self.degree if self.terms else other.degree
        return AlgElement(self.parent, self.terms ^ other.terms, deg)

    __sub__ = __add__

    def __mul__(self, other: "AlgElement") -> "AlgElement":
        return multiply(self, other)

    def boundary(self) -> "AlgElement":
        return boundary(self)

    def __eq__(self, other):
        if not isinstance(other, AlgElement):
            return NotImplemented
        if other.parent is not self.parent or self.terms != other.terms:
            return False
        return not self.terms or self.degree == other.degree

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        p = self.parent
        return " + ".join(p.key_str(k) for k in sorted(self.terms, key=p.sort_key))


def multiply(x: AlgElement, y: AlgElement) -> AlgElement:
    x._same_parent(y)
    alg = x.parent
    alg._check_cap(x.degree + y.degree)
    out = Counter()
    for u in x.terms:
        for v in y.terms:
            out.update(alg._mul_keys(u, v))
    return AlgElement(alg, frozenset(k for k, n in out.items() if n % 2), x.degree + y.degree)


def boundary(x: AlgElement) -> AlgElement:
    alg = x.parent
    out = Counter()
    for u in x.terms:
        out.update(alg.d_key(u))
    return AlgElement(alg, frozenset(k for k, n in out.items() if n % 2), x.degree - 1)


class FreeDGA(DGAlgebra):
    """Free (tensor) algebra on graded generators with a derivation d.

    Keys are tuples of generator indices; the empty tuple is the unit.
    ``differential`` maps a generator name to a list of words (lists of
    generator names).
    """

    kind = "free"

    def __init__(
        self,
        generators: Sequence[tuple[str, int]],
        differential: Mapping[str, Sequence[Sequence[str]]] | None = None,
        cap: int = 12,
    ):
        super().__init__()
        self.generators = tuple((str(n), int(d)) for n, d in generators)
        self.names = [n for n, _ in self.generators]
        self.gen_degrees = [d for _, d in self.generators]
        self._by_name = {n: i for i, n in enumerate(self.names)}
        if len(self._by_name) != len(self.names):
            raise AlgebraError("duplicate generator names")
        if any(d < 1 for d in self.gen_degrees):
            raise AlgebraError("generators must have degree >= 1")
        self.degree_cap = int(cap)
        self.unit_key = ()
        differential = differential or {}
        self.gen_d = []
        for i, (n, deg) in enumerate(self.generators):
            words = mod2(tuple(self._by_name[g] for g in w) for w in differential.get(n, ()))
            for w in words:
                if self.degree_of(w) != deg - 1:
                    raise AlgebraError(f"d({n}) has a term of degree {self.degree_of(w)}")
            self.gen_d.append(words)
        # d^2 is a derivation in characteristic 2, so generators suffice
        for i, n in enumerate(self.names):
            if mod2(t for w in self.gen_d[i] for t in self.d_key(w)):
                raise AlgebraError(f"d^2({n}) != 0")

    def degree_of(self, key) -> int:
        return sum(self.gen_degrees[i] for i in key)

    def _basis_uncached(self, degree: int):
        if degree == 0:
            return [()]
        out = []
        for i, gd in enumerate(self.gen_degrees):
            if gd <= degree:
                out.extend((i,) + w for w in self._words(degree - gd))
        return sorted(out)

    def _words(self, degree: int) -> tuple:
        # bypasses the cap: sub-words of a capped word are below the cap
        hit = self._basis_cache.get(degree)
        if hit is None:
            hit = self._basis_cache[degree] = tuple(self._basis_uncached(degree))
        return hit

    def _mul_keys(self, u, v) -> frozenset:
        return frozenset({u + v})

    def _d_key(self, u) -> frozenset:
        out = Counter()
        for pos, g in enumerate(u):
            pre, post = u[:pos], u[pos + 1 :]
            for w in self.gen_d[g]:
                out[pre + w + post] += 1
        return frozenset(k for k, n in out.items() if n % 2)

    def _gen_key(self, name: str):
        if name not in self._by_name:
            raise AlgebraError(f"unknown generator {name!r}")
        return (self._by_name[name],)

    def factor_key(self, key) -> list[str]:
        return [self.names[i] for i in key]

    def key_str(self, key) -> str:
        return "·".join(self.names[i] for i in key) if key else "1"

    def generator_differential(self, name: str) -> AlgElement:
        return boundary(self.gen(name))

    def __repr__(self):
        gens = ", ".join(f"{n}:{d}" for n, d in self.generators)
        return f"FreeDGA({gens}; cap={self.degree_cap})"


class TableDGA(DGAlgebra):
    """Finite-dimensional DGA given by a basis, product table and d.

    ``table`` maps ``(left, right)`` name pairs to lists of names; missing
    pairs multiply to zero (the unit acts as identity implicitly).  The
    algebra is complete, so it has no degree cap.
    """

    kind = "table"

    def __init__(
        self,
        basis: Sequence[tuple[str, int]],
        table: Mapping[tuple[str, str], Sequence[str]] | None = None,
        differential: Mapping[str, Sequence[str]] | None = None,
        unit: str = "1",
    ):
        super().__init__()
        self.basis_list = tuple((str(n), int(d)) for n, d in basis)
        self.degrees = dict(self.basis_list)
        if unit not in self.degrees or self.degrees[unit] != 0:
            raise AlgebraError("unit must be a degree-0 basis element")
        if any(d < 0 for d in self.degrees.values()):
            raise AlgebraError("negative degree")
        self.unit_key = unit
        self.degree_cap = None
        self.table = {}
        for (a, b), terms in (table or {}).items():
            self.table[a, b] = mod2(terms)
        self.diff = {n: mod2((differential or {}).get(n, ())) for n in self.degrees}
        self.generators = tuple(b for b in self.basis_list if b[0] != unit)
        self._validate()

    def _validate(self):
        names = list(self.degrees)
        for (a, b), terms in self.table.items():
            if a == self.unit_key or b == self.unit_key:
                raise AlgebraError("unit products are implicit")
            for t in terms:
                if self.degrees[t] != self.degrees[a] + self.degrees[b]:
                    raise AlgebraError(f"{a}*{b} has wrong degree term {t}")
        for n, terms in self.diff.items():
            for t in terms:
                if self.degrees[t] != self.degrees[n] - 1:
                    raise AlgebraError(f"d({n}) has wrong degree term {t}")
        for a, b, c in cartesian(names, repeat=3):
            left = mod2(t for s in self._mul_keys(a, b) for t in self._mul_keys(s, c))
            right = mod2(t for s in self._mul_keys(b, c) for t in self._mul_keys(a, s))
            if left != right:
                raise AlgebraError(f"product not associative on ({a},{b},{c})")
        for n in names:
            if mod2(t for s in self.diff[n] for t in self.diff[s]):
                raise AlgebraError(f"d^2({n}) != 0")
        for a, b in cartesian(names, repeat=2):
            lhs = mod2(t for s in self._mul_keys(a, b) for t in self.diff[s])
            rhs = mod2(
                [t for s in self.diff[a] for t in self._mul_keys(s, b)]
                + [t for s in self.diff[b] for t in self._mul_keys(a, s)]
            )
            if lhs != rhs:
                raise AlgebraError(f"Leibniz rule fails on ({a},{b})")

    def degree_of(self, key) -> int:
        return self.degrees[key]

    def _basis_uncached(self, degree: int):
        return [n for n, d in self.basis_list if d == degree]

    def _mul_keys(self, u, v) -> frozenset:
        if u == self.unit_key:
            return frozenset({v})
        if v == self.unit_key:
            return frozenset({u})
        return self.table.get((u, v), frozenset())

    def _d_key(self, u) -> frozenset:
        return self.diff[u]

    def _gen_key(self, name: str):
        if name not in self.degrees:
            raise AlgebraError(f"unknown basis element {name!r}")
        return name

    def factor_key(self, key) -> list[str]:
        return [] if key == self.unit_key else [key]

    def key_str(self, key) -> str:
        return key

    def __repr__(self):
        return f"TableDGA({', '.join(f'{n}:{d}' for n, d in self.basis_list)})"


class TensorDGA(DGAlgebra):
    """Tensor product ``a (x) b``; keys are pairs of factor keys.

    Generators of each factor are renamed ``name@0`` / ``name@1``.
    """

    def __init__(self, a: DGAlgebra, b: DGAlgebra, cap: int | None = None):
        super().__init__()
        if a.kind != b.kind:
            raise AlgebraError(f"cannot tensor a {a.kind} algebra with a {b.kind} algebra")
        self.kind = a.kind
        self.a, self.b = a, b
        caps = [c for c in (a.degree_cap, b.degree_cap, cap) if c is not None]
        self.degree_cap = min(caps) if caps else None
        self.unit_key = (a.unit_key, b.unit_key)
        self.generators = tuple((f"{n}@0", d) for n, d in a.generators) + tuple(
            (f"{n}@1", d) for n, d in b.generators
        )

    def degree_of(self, key) -> int:
        return self.a.degree_of(key[0]) + self.b.degree_of(key[1])

    def _basis_uncached(self, degree: int):
        out = []
        for i in range(degree + 1):
            out.extend((u, v) for u in self.a.basis(i) for v in self.b.basis(degree - i))
        return out

    def _mul_keys(self, u, v) -> frozenset:
        return frozenset(
            (x, y) for x in self.a.mul_keys(u[0], v[0]) for y in self.b.mul_keys(u[1], v[1])
        )

    def _d_key(self, u) -> frozenset:
        return mod2([(x, u[1]) for x in self.a.d_key(u[0])] + [(u[0], y) for y in self.b.d_key(u[1])])

    def _gen_key(self, name: str):
        base, _, side = name.rpartition("@")
        if side == "0":
            return (self.a._gen_key(base), self.b.unit_key)
        if side == "1":
            return (self.a.unit_key, self.b._gen_key(base))
        raise AlgebraError(f"unknown generator {name!r}")

    def include_left(self, x: AlgElement) -> AlgElement:
        if x.parent is not self.a:
            raise AlgebraError("element is not in the left factor")
        return AlgElement(self, frozenset((k, self.b.unit_key) for k in x.terms), x.degree)

    def include_right(self, y: AlgElement) -> AlgElement:
        if y.parent is not self.b:
            raise AlgebraError("element is not in the right factor")
        return AlgElement(self, frozenset((self.a.unit_key, k) for k in y.terms), y.degree)

    def factor_key(self, key) -> list[str]:
        return [f"{n}@0" for n in self.a.factor_key(key[0])] + [
            f"{n}@1" for n in self.b.factor_key(key[1])
        ]

    def key_str(self, key) -> str:
        return f"{self.a.key_str(key[0])}⊗{self.b.key_str(key[1])}"

    def __repr__(self):
        return f"TensorDGA({self.a!r}, {self.b!r})"


def tensor_algebras(a: DGAlgebra, b: DGAlgebra, cap: int | None = None) -> TensorDGA:
    return TensorDGA(a, b, cap)


def cobar(c: DGCoalgebra, cap: int = 12) -> FreeDGA:
    """Adams cobar construction on ``c``, materialized up to degree ``cap``.

    The generator for a reduced element ``x`` is named ``"s" + x``.
    """
    gens = [(f"s{x}", c.degrees[x] - 1) for x in c.reduced]
    diff = {}
    for x in c.reduced:
        words = [[f"s{y}"] for y in c.differential[x]]
        words += [[f"s{a}", f"s{b}"] for a, b in c.coproduct[x]]
        diff[f"s{x}"] = words
    alg = FreeDGA(gens, diff, cap)
    alg.coalgebra = c
    return alg


def homology_dims(alg: DGAlgebra, cap: int) -> list[tuple[int, int]]:
    """``(q, dim H_q)`` for ``0 <= q <= cap - 1``."""
    if alg.degree_cap is not None and cap > alg.degree_cap:
        raise CapOverflow(f"cap {cap} exceeds the algebra cap {alg.degree_cap}")
    ranks = [rank(alg.boundary_matrix(q)) if q > 0 else 0 for q in range(cap + 1)]
    return [(q, alg.dim(q) - ranks[q] - ranks[q + 1]) for q in range(cap)]


def cycle_classes(alg: DGAlgebra, degree: int):
    """Cycles and boundaries of a degree as subspaces of the degree's basis."""
    z = kernel(alg.boundary_matrix(degree)) if degree > 0 else F2Subspace.full(alg.dim(0))
    b = image(alg.boundary_matrix(degree + 1))
    return z, b


def to_vector(x: AlgElement) -> int:
    idx = x.parent.index(x.degree)
    v = 0
    for k in x.terms:
        v ^= 1 << idx[k]
    return v


def from_vector(alg: DGAlgebra, degree: int, v: int) -> AlgElement:
    basis = alg.basis(degree)
    return AlgElement(alg, frozenset(basis[i] for i in iter_bits(v)), degree)


# ----------------------------------------------------------------- morphisms


class MorphismError(ValueError):
    pass


class DGAMorphism:
    """Multiplicative, degree-preserving chain map between algebras.

    Free and tensor sources are determined by generator images; table
    sources need an image for every non-unit basis element.
    """

    def __init__(self, source: DGAlgebra, target: DGAlgebra, images: Mapping[str, AlgElement]):
        self.source = source
        self.target = target
        self.images = dict(images)
        gens = [n for n, _ in source.generators]
        for n in gens:
            if n not in self.images:
                self.images[n] = target.zero(source.degree_of(source._gen_key(n)))
        unknown = set(self.images) - set(gens)
        if unknown:
            raise MorphismError(f"images given for unknown generators {sorted(unknown)}")
        self._cache: dict = {}
        self.check()

    def check(self):
        for n, deg in self.source.generators:
            img = self.images[n]
            if img.parent is not self.target:
                raise MorphismError(f"image of {n} is not in the target algebra")
            if img.terms and img.degree != deg:
                raise MorphismError(f"image of {n} has degree {img.degree}, expected {deg}")
        for n, deg in self.source.generators:
            if self.source.degree_cap is not None and deg > self.source.degree_cap:
                continue
            g = self.source.gen(n)
            if self(boundary(g)) != boundary(self(g)):
                raise MorphismError(f"morphism does not commute with d on {n}")
        if self.source.kind == "table":
            names = [n for n, _ in self.source.generators]
            for a, b in cartesian(names, repeat=2):
                x, y = self.source.gen(a), self.source.gen(b)
                if self(x * y) != self(x) * self(y):
                    raise MorphismError(f"not multiplicative on ({a},{b})")

    def apply_key(self, key) -> AlgElement:
        hit = self._cache.get(key)
        if hit is None:
            names = self.source.factor_key(key)
            out = self.target.one()
            for n in names:
                out = out * self.images[n]
            if not names:
                out = self.target.one()
            hit = self._cache[key] = out
        return hit

    def __call__(self, x: AlgElement) -> AlgElement:
        if x.parent is not self.source:
            raise MorphismError("element is not in the source algebra")
        out = self.target.zero(x.degree)
        for k in x.terms:
            out = out + self.apply_key(k)
        return AlgElement(self.target, out.terms, x.degree)

    @classmethod
    def identity(cls, alg: DGAlgebra) -> "DGAMorphism":
        return cls(alg, alg, {n: alg.gen(n) for n, _ in alg.generators})
