"""Truncated Borel chain complexes and the invariants a, b, c, d.

A chain of ``C(EG) (x)_G Z`` is written in normal form as a sum of
``e_i (x) z`` with ``e_i`` an equivariant cell of EG and ``z`` a basis element
of Z.  Moving an algebra element across the tensor sign uses the
anti-automorphism ``j -> j^3, s -> j^2 s``.  For the circle subgroup the
coefficient ring only absorbs ``j^2`` and ``s``, so each cell contributes the
two cosets ``e_i`` and ``j e_i``.

The invariants are found by first-failure searches: the test classes
``e_k (x) f`` are checked for membership in the image of the boundary map one
degree up.  Only the two chain groups around the test degree are ever built.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import IdentityFailure, InvalidInput
from .f2linalg import EchelonBasis, bits
from .galgebra import GElement, mono, mono_parts
from .gcomplex import SWFLikeComplex, Triple

TRUNCATION_MARGIN = 8


class SearchExhausted(IdentityFailure):
    """A first-failure search ran past the truncation of EG."""


def eg_cells(max_cell_degree: int) -> list[int]:
    return [i for i in range(max_cell_degree + 1) if i % 4 != 3]


def eg_boundary(i: int) -> list[tuple[GElement, int]]:
    """Boundary of the cell e_i as a list of (coefficient, cell index)."""
    if i % 4 == 3 or i < 0:
        raise InvalidInput(f"e_{i} is not a cell of EG")
    r = i % 4
    if i == 0:
        return []
    if r == 0:
        return [(GElement.from_monomials((0, 1), (1, 1), (2, 1), (3, 1)), i - 2)]
    if r == 1:
        return [(GElement.from_monomials((0, 0), (1, 0)), i - 1)]
    return [(GElement.from_monomials((0, 0), (1, 0)), i - 1), (GElement.monomial(0, 1), i - 2)]


def _s1_split(m: int) -> tuple[int, int]:
    """Write the monomial ``m`` as ``h * j^eps`` with h in the circle subalgebra.

    Returns ``(h, eps)`` where ``h`` is a monomial in {1, j^2, s, j^2 s}.
    """
    a, b = mono_parts(m)
    eps = a % 2
    if b == 0:
        return mono(a - eps), eps
    # j^a s = j^(2k) s j^eps  and  s j^eps = j^(3 eps) s
    return mono(a - 3 * eps, 1), eps


@dataclass
class BorelChainComplex:
    """Truncated ``C(EG) (x) Z`` over G (``cosets=1``) or over S^1 (``cosets=2``).

    Basis of the degree-n chains: triples (cell i, coset r, basis index k of Z)
    with ``i + deg z_k == n``; blocks are laid out by (i, r) and inside a block
    by k, so a bitset over Z restricted to one degree shifts into place.
    """

    complex: SWFLikeComplex
    trunc: int
    cosets: int

    def __post_init__(self):
        if self.trunc < self.complex.max_degree + TRUNCATION_MARGIN:
            raise InvalidInput(
                f"truncation {self.trunc} below max degree {self.complex.max_degree} + {TRUNCATION_MARGIN}")
        self.cells = eg_cells(self.trunc)
        self._layouts: dict[int, tuple[dict, int]] = {}
        self._images: dict[int, EchelonBasis] = {}
        self._terms = {i: self._cell_terms(i) for i in self.cells}

    def _cell_terms(self, i: int):
        """For each coset r of e_i: the boundary as {(cell, coset'): element acting on Z}."""
        out = []
        for r in range(self.cosets):
            terms: dict[tuple[int, int], int] = {}
            for g, k in eg_boundary(i):
                coeff = GElement.monomial(r) * g if self.cosets == 2 else g
                for m in coeff.monomials():
                    if self.cosets == 1:
                        h, eps = m, 0
                    else:
                        h, eps = _s1_split(m)
                    key = (k, eps)
                    conj = GElement(1 << h).conjugate()
                    terms[key] = terms.get(key, 0) ^ conj.mask
            out.append({key: GElement(mask) for key, mask in terms.items() if mask})
        return out

    def layout(self, n: int):
        """Offsets of the blocks (i, r) in degree n, and the total dimension."""
        cached = self._layouts.get(n)
        if cached is not None:
            return cached
        z = self.complex
        blocks = {}
        offset = 0
        for i in self.cells:
            if i > n:
                break
            lo, hi = z.degree_range(n - i)
            if hi == lo:
                continue
            for r in range(self.cosets):
                blocks[i, r] = (offset, lo, hi)
                offset += hi - lo
        self._layouts[n] = (blocks, offset)
        return blocks, offset

    def dim(self, n: int) -> int:
        return self.layout(n)[1]

    def _place(self, blocks, key, zvec: int) -> int:
        block = blocks.get(key)
        if block is None or not zvec:
            return 0
        offset, lo, hi = block
        return ((zvec >> lo) & ((1 << (hi - lo)) - 1)) << offset

    def boundary_column(self, n: int, key, k: int) -> int:
        """Boundary of the basis chain (cell, coset) (x) z_k living in degree n."""
        z = self.complex
        target, _ = self.layout(n - 1)
        i, r = key
        out = self._place(target, key, z.differential[k])
        for key2, g in self._terms[i][r].items():
            out ^= self._place(target, key2, z.act(g, 1 << k))
        return out

    def boundary_columns(self, n: int) -> list[int]:
        blocks, _ = self.layout(n)
        cols = []
        for key, (offset, lo, hi) in sorted(blocks.items(), key=lambda kv: kv[1][0]):
            for k in range(lo, hi):
                cols.append(self.boundary_column(n, key, k))
        return cols

    def image(self, n: int) -> EchelonBasis:
        """Echelon basis of the boundaries in degree n (images of degree n+1)."""
        if n + 1 > self.trunc:
            raise SearchExhausted(f"degree {n} needs cells beyond truncation {self.trunc}")
        basis = self._images.get(n)
        if basis is None:
            basis = EchelonBasis(self.boundary_columns(n + 1))
            self._images[n] = basis
        return basis

    def chain(self, n: int, terms) -> int:
        """Bitset of sum of (cell, coset, z-bitset) in degree n."""
        blocks, _ = self.layout(n)
        out = 0
        for i, r, zvec in terms:
            out ^= self._place(blocks, (i, r), zvec)
        return out

    def is_boundary(self, n: int, v: int) -> bool:
        return self.image(n).contains(v)

    def d_squared_zero(self, n: int) -> bool:
        return all(not self._apply_boundary(n - 1, c) for c in self.boundary_columns(n))

    def _apply_boundary(self, n: int, v: int) -> int:
        blocks, _ = self.layout(n)
        out = 0
        for key, (offset, lo, hi) in blocks.items():
            chunk = (v >> offset) & ((1 << (hi - lo)) - 1)
            for k in bits(chunk):
                out ^= self.boundary_column(n, key, lo + k)
        return out

    def homology_dim(self, n: int) -> int:
        cols = self.boundary_columns(n)
        rank_out = len(EchelonBasis(cols))
        return len(cols) - rank_out - len(self.image(n))


def default_trunc(z: SWFLikeComplex) -> int:
    return z.max_degree + TRUNCATION_MARGIN


def g_borel_complex(z: SWFLikeComplex, trunc: int | None = None) -> BorelChainComplex:
    return BorelChainComplex(z, default_trunc(z) if trunc is None else trunc, 1)


def s1_borel_complex(z: SWFLikeComplex, trunc: int | None = None) -> BorelChainComplex:
    return BorelChainComplex(z, default_trunc(z) if trunc is None else trunc, 2)


def _first_failure(borel: BorelChainComplex, cell_of, z: SWFLikeComplex) -> int:
    t = z.level
    k = 0
    while True:
        cell = cell_of(k)
        if cell + t + 1 > borel.trunc:
            raise SearchExhausted(f"test class e_{cell} (x) f exceeds truncation {borel.trunc}")
        v = borel.chain(cell + t, [(cell, 0, z.fundamental)])
        if not borel.is_boundary(cell + t, v):
            return k
        k += 1


@dataclass(frozen=True)
class AbcdValues:
    a: int
    b: int
    c: int
    d: int


def abc(z: SWFLikeComplex, trunc: int | None = None) -> tuple[int, int, int]:
    borel = g_borel_complex(z, trunc)
    t = z.level
    a = 4 * _first_failure(borel, lambda k: 4 * k, z) + t
    b = 4 * _first_failure(borel, lambda k: 4 * k + 1, z) + t
    c = 4 * _first_failure(borel, lambda k: 4 * k + 2, z) + t
    return a, b, c


def _d_test_class(borel: BorelChainComplex, k: int, z: SWFLikeComplex) -> tuple[int, int]:
    """The k-th class of e_0, j((1+j)e_2 + s e_1), e_4, ... tensored with f.

    Returns the total degree and the chain in S^1-Borel normal form.
    """
    n = 2 * k
    f = z.fundamental
    deg = n + z.level
    if k % 2 == 0:
        return deg, borel.chain(deg, [(n, 0, f)])
    terms = []
    # j(1+j) e_n + js e_(n-1)
    for m, cell in ((mono(1), n), (mono(2), n), (mono(1, 1), n - 1)):
        h, eps = _s1_split(m)
        terms.append((cell, eps, z.act(GElement(1 << h).conjugate(), f)))
    return deg, borel.chain(deg, terms)


def d_invariant_chain(z: SWFLikeComplex, trunc: int | None = None) -> int:
    borel = s1_borel_complex(z, trunc)
    k = 0
    while True:
        deg, v = _d_test_class(borel, k, z)
        if deg + 1 > borel.trunc:
            raise SearchExhausted(f"test class in degree {deg} exceeds truncation {borel.trunc}")
        if not borel.is_boundary(deg, v):
            return z.level + 2 * k
        k += 1


def abcd(z: SWFLikeComplex, trunc: int | None = None) -> AbcdValues:
    a, b, c = abc(z, trunc)
    return AbcdValues(a, b, c, d_invariant_chain(z, trunc))


@dataclass(frozen=True)
class ManolescuSet:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    delta: Fraction

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.alpha, self.beta, self.gamma, self.delta)


def from_abcd(values: AbcdValues, m: int = 0, n=0) -> ManolescuSet:
    shift = Fraction(m, 2) + 2 * Fraction(n)
    return ManolescuSet(*(Fraction(x, 2) - shift for x in (values.a, values.b, values.c, values.d)))


def manolescu(tr: Triple, trunc: int | None = None) -> ManolescuSet:
    return from_abcd(abcd(tr.complex, trunc), tr.m, tr.n)
