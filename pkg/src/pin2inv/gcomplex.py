"""Finite chain complexes over the Pin(2) chain algebra.

A complex is stored on an F2-basis sorted by degree.  For every basis element
we keep bitsets for ``j * b``, ``s * b`` and ``d b``; any other algebra element
acts through these two generators.  The fixed part is a subcomplex with the
homology of a sphere in degree ``level`` and a marked cycle ``fundamental``;
everything else is a free module over the algebra, spanned by the orbits of
``free_generators``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from .errors import InvalidInput
from .f2linalg import EchelonBasis, F2Matrix, bits, homology_dim
from .galgebra import GElement, mono, mono_mul, mono_name, mono_parts


@dataclass(frozen=True, eq=False)
class SWFLikeComplex:
    names: tuple[str, ...]
    degrees: tuple[int, ...]
    j_action: tuple[int, ...]
    s_action: tuple[int, ...]
    differential: tuple[int, ...]
    level: int
    fundamental: int
    fixed: int
    free_generators: tuple[int, ...]
    factors: tuple["SWFLikeComplex", ...] = ()
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def atoms(self) -> tuple["SWFLikeComplex", ...]:
        """The untensored complexes this one was built from (itself if none)."""
        return self.factors or (self,)

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def max_degree(self) -> int:
        return max(self.degrees) if self.degrees else 0

    def degree_range(self, d: int) -> tuple[int, int]:
        """Half-open index range of the basis elements in degree ``d``."""
        ranges = self._cache.get("ranges")
        if ranges is None:
            ranges = {}
            for i, deg in enumerate(self.degrees):
                lo, hi = ranges.get(deg, (i, i))
                ranges[deg] = (lo, i + 1)
            self._cache["ranges"] = ranges
        return ranges.get(d, (0, 0))

    def dim_in_degree(self, d: int) -> int:
        lo, hi = self.degree_range(d)
        return hi - lo

    def monomial_table(self, m: int) -> tuple[int, ...]:
        """Bitset images of every basis element under the monomial ``m``."""
        key = ("mono", m)
        table = self._cache.get(key)
        if table is None:
            a, b = mono_parts(m)
            table = []
            for k in range(self.dim):
                v = 1 << k
                if b:
                    v = _apply(self.s_action, v)
                for _ in range(a):
                    v = _apply(self.j_action, v)
                table.append(v)
            table = tuple(table)
            self._cache[key] = table
        return table

    def element_table(self, g: GElement) -> tuple[int, ...]:
        key = ("elem", g.mask)
        table = self._cache.get(key)
        if table is None:
            table = [0] * self.dim
            for m in g.monomials():
                mt = self.monomial_table(m)
                for k in range(self.dim):
                    table[k] ^= mt[k]
            table = tuple(table)
            self._cache[key] = table
        return table

    def act(self, g: GElement, v: int) -> int:
        return _apply(self.element_table(g), v)

    def boundary_of(self, v: int) -> int:
        return _apply(self.differential, v)

    def describe(self, v: int) -> str:
        return " + ".join(self.names[k] for k in bits(v)) or "0"

    def boundary_matrix(self, d: int, mask: int | None = None) -> F2Matrix:
        """Matrix of d: C_d -> C_{d-1}, optionally restricted to a sub-basis ``mask``."""
        lo, hi = self.degree_range(d)
        plo, phi = self.degree_range(d - 1)
        if mask is None:
            width = (1 << (phi - plo)) - 1
            cols = [(self.differential[k] >> plo) & width for k in range(lo, hi)]
            return F2Matrix.from_columns(phi - plo, cols)
        rows = [i for i in range(plo, phi) if mask >> i & 1]
        where = {i: r for r, i in enumerate(rows)}
        cols = []
        for k in range(lo, hi):
            if mask >> k & 1:
                v = 0
                for i in bits(self.differential[k] & mask):
                    v |= 1 << where[i]
                cols.append(v)
        return F2Matrix.from_columns(len(rows), cols)


def _apply(table, v: int) -> int:
    out = 0
    while v:
        low = v & -v
        out ^= table[low.bit_length() - 1]
        v ^= low
    return out


class _Builder:
    """Collects cells in any order; ``build`` sorts them by degree."""

    def __init__(self):
        self.names: list[str] = []
        self.degrees: list[int] = []
        self.j: list[int] = []
        self.s: list[int] = []
        self.d: list[int] = []
        self.fixed = 0
        self.generators: list[int] = []

    def add(self, name: str, degree: int, fixed: bool = False) -> int:
        k = len(self.names)
        self.names.append(name)
        self.degrees.append(degree)
        self.j.append(0)
        self.s.append(0)
        self.d.append(0)
        if fixed:
            self.fixed |= 1 << k
        return k

    def add_fixed_pair(self, name: str, degree: int) -> int:
        """A cell ``c`` with ``j c`` distinct and ``j^2 c = c``, ``s c = 0``."""
        c = self.add(name, degree, fixed=True)
        jc = self.add("j" + name, degree, fixed=True)
        self.j[c] = 1 << jc
        self.j[jc] = 1 << c
        return c

    def add_fixed_point(self, name: str, degree: int) -> int:
        c = self.add(name, degree, fixed=True)
        self.j[c] = 1 << c
        return c

    def add_free_orbit(self, name: str, degree: int) -> int:
        """Eight cells ``j^a s^b x``; returns the index of ``x``."""
        idx = {}
        for b in (0, 1):
            for a in range(4):
                label = name if (a, b) == (0, 0) else f"{mono_name(mono(a, b))}{name}"
                idx[a, b] = self.add(label, degree + b)
        for a in range(4):
            self.j[idx[a, 0]] = 1 << idx[(a + 1) % 4, 0]
            self.j[idx[a, 1]] = 1 << idx[(a + 1) % 4, 1]
            # s j^a = j^(3a) s
            self.s[idx[a, 0]] = 1 << idx[(3 * a) % 4, 1]
        self.generators.append(idx[0, 0])
        return idx[0, 0]

    def orbit(self, x: int) -> dict[tuple[int, int], int]:
        return {(a, b): x + a + 4 * b for a in range(4) for b in (0, 1)}

    def act_mono(self, m: int, v: int) -> int:
        a, b = mono_parts(m)
        if b:
            v = _apply(self.s, v)
        for _ in range(a):
            v = _apply(self.j, v)
        return v

    def act(self, g: GElement, v: int) -> int:
        out = 0
        for m in g.monomials():
            out ^= self.act_mono(m, v)
        return out

    def set_free_boundary(self, x: int, dx: int):
        """Set d x and extend over the orbit by the Leibniz rule."""
        for (a, b), k in self.orbit(x).items():
            m = GElement.monomial(a, b)
            self.d[k] = self.act(m, dx) ^ self.act(m.boundary(), 1 << x)

    def build(self, level: int, fundamental: int) -> SWFLikeComplex:
        order = sorted(range(len(self.names)), key=lambda k: (self.degrees[k], k))
        return _reindexed(self.names, self.degrees, self.j, self.s, self.d, level,
                          fundamental, self.fixed, self.generators, order)


def _reindexed(names, degrees, j, s, d, level, fundamental, fixed, generators, order):
    pos = [0] * len(order)
    for new, old in enumerate(order):
        pos[old] = new

    def move(v):
        out = 0
        while v:
            low = v & -v
            out |= 1 << pos[low.bit_length() - 1]
            v ^= low
        return out

    return SWFLikeComplex(
        names=tuple(names[k] for k in order),
        degrees=tuple(degrees[k] for k in order),
        j_action=tuple(move(j[k]) for k in order),
        s_action=tuple(move(s[k]) for k in order),
        differential=tuple(move(d[k]) for k in order),
        level=level,
        fundamental=move(fundamental),
        fixed=move(fixed),
        free_generators=tuple(sorted(pos[g] for g in generators)),
    )


def _fixed_cells(b: _Builder, t: int) -> int:
    """Cells of the representation sphere at level t; returns the fundamental class."""
    c0 = b.add_fixed_point("c0", 0)
    prev = c0
    for i in range(1, t + 1):
        ci = b.add_fixed_pair(f"c{i}", i)
        jci = ci + 1
        if i == 1:
            b.d[ci] = 1 << c0
            b.d[jci] = 1 << c0
        else:
            b.d[ci] = (1 << prev) | (1 << (prev + 1))
            b.d[jci] = b.d[ci]
        prev = ci
    if t == 0:
        return 1 << c0
    return (1 << prev) | (1 << (prev + 1))


def make_fixed_complex(t: int) -> SWFLikeComplex:
    if t < 0:
        raise InvalidInput("level must be non-negative")
    b = _Builder()
    f = _fixed_cells(b, t)
    return b.build(t, f)


_S1J2 = GElement.from_monomials((0, 1), (2, 1))  # s(1 + j^2)


def make_T(D: int, t: int) -> SWFLikeComplex:
    """The tower complex T_D(t): fixed sphere plus free cells x_{t+1}, x_{t+3}, ..."""
    if D < 0 or t < 0:
        raise InvalidInput("D and t must be non-negative")
    b = _Builder()
    f = _fixed_cells(b, t)
    prev = None
    for i in range(1, D + 1):
        deg = t + 2 * i - 1
        x = b.add_free_orbit(f"x{deg}", deg)
        if prev is None:
            b.set_free_boundary(x, f)
        else:
            b.set_free_boundary(x, b.act(_S1J2, 1 << prev))
        prev = x
    return b.build(t, f)


def _rtilde_sphere() -> SWFLikeComplex:
    return make_fixed_complex(1)


def _h_sphere() -> SWFLikeComplex:
    b = _Builder()
    r0 = b.add_fixed_point("r0", 0)
    y1 = b.add_free_orbit("y1", 1)
    y2 = b.add_free_orbit("y2", 2)
    y3 = b.add_free_orbit("y3", 3)
    one_j = GElement.from_monomials((0, 0), (1, 0))
    b.set_free_boundary(y1, 1 << r0)
    b.set_free_boundary(y2, b.act(one_j, 1 << y1))
    b.set_free_boundary(y3, b.act(GElement.monomial(0, 1), 1 << y1) ^ b.act(one_j, 1 << y2))
    return b.build(0, 1 << r0)


def _free_coordinates(z: SWFLikeComplex) -> dict[int, tuple[int, int]]:
    """Map each non-fixed basis index to (free generator, monomial)."""
    coords = {}
    for g in z.free_generators:
        for m in range(8):
            cell = z.monomial_table(m)[g]
            if cell & (cell - 1) or not cell:
                raise ValueError(f"orbit of {z.names[g]} is not spanned by basis cells")
            coords[cell.bit_length() - 1] = (g, m)
    return coords


_J2S = mono(2, 1)


def tensor(z1: SWFLikeComplex, z2: SWFLikeComplex) -> SWFLikeComplex:
    """Equivariant tensor product with the diagonal action.

    The product is always assembled right-nested, ``A1 (x) (A2 (x) (... (x) Z2))``
    over the untensored factors ``Ai`` of z1; the free-cell construction below
    needs a first factor whose boundary coefficients avoid odd powers of j next
    to s, which holds for the model complexes but not for products of them.
    """
    out = z2
    for atom in reversed(z1.atoms):
        out = _tensor_atom(atom, out)
    return out


def _tensor_atom(z1: SWFLikeComplex, z2: SWFLikeComplex) -> SWFLikeComplex:
    """Tensor product with an untensored first factor.

    On cells ``c (x) w`` with ``c`` in the fixed part of z1 the action is
    ``j(c (x) w) = jc (x) jw`` and ``s(c (x) w) = c (x) sw``.  The cells over a
    free orbit of z1 are rebuilt as the free module on ``x (x) w``: the product
    of a free orbit with anything is equivariantly a free orbit times a plain
    space, so ``m (x (x) w)`` stands for the diagonal translate of the cell.  A
    boundary term ``g x'`` of ``x`` turns into the cellular chain of the graph
    of ``g`` acting on ``w``:

        j^a     ->  j^a (x' (x) j^-a w)
        j^a s   ->  j^a s (x' (x) u) + j^(a+2) (x' (x) j^2 s u),  u = j^-a w

    Writing the action cellwise as ``s(a (x) b) = sa (x) b + j^2 a (x) sb`` does
    not satisfy ``sj = j^3 s`` on a product of two free cells, so it cannot be
    used there; on cells with a fixed first factor both descriptions agree.
    """
    n2 = z2.dim
    coords = _free_coordinates(z1)
    fixed1 = bits(z1.fixed)
    j2 = [z2.monomial_table(m) for m in range(8)]

    names, degrees = [], []
    fixed_index = {}
    for c in fixed1:
        for w in range(n2):
            fixed_index[c, w] = len(names)
            names.append(f"{_wrap(z1.names[c])}*{_wrap(z2.names[w])}")
            degrees.append(z1.degrees[c] + z2.degrees[w])
    free_index = {}
    for x in z1.free_generators:
        for w in range(n2):
            for m in range(8):
                free_index[x, w, m] = len(names)
                label = f"{_wrap(z1.names[x])}*{_wrap(z2.names[w])}"
                prefix = mono_name(m)
                names.append(label if m == 0 else f"{prefix}({label})")
                degrees.append(z1.degrees[x] + z2.degrees[w] + m // 4)
    total = len(names)

    def fixed_cells(c: int, zvec: int) -> int:
        out = 0
        for w in bits(zvec):
            out |= 1 << fixed_index[c, w]
        return out

    def free_cells(x: int, m: int, zvec: int) -> int:
        out = 0
        for w in bits(zvec):
            out |= 1 << free_index[x, w, m]
        return out

    jt, st = [0] * total, [0] * total
    for (c, w), k in fixed_index.items():
        jc = z1.j_action[c]
        jt[k] = fixed_cells(jc.bit_length() - 1, z2.j_action[w])
        st[k] = fixed_cells(c, z2.s_action[w])
    for (x, w, m), k in free_index.items():
        jm = mono_mul(mono(1), m)
        jt[k] = 1 << free_index[x, w, jm]
        sm = mono_mul(mono(0, 1), m)
        st[k] = 0 if sm is None else 1 << free_index[x, w, sm]

    def act(m: int, v: int) -> int:
        a, b = mono_parts(m)
        if b:
            v = _apply(st, v)
        for _ in range(a):
            v = _apply(jt, v)
        return v

    dd = [0] * total
    for (c, w), k in fixed_index.items():
        dv = 0
        for c2 in bits(z1.differential[c]):
            dv ^= fixed_cells(c2, 1 << w)
        dd[k] = dv ^ fixed_cells(c, z2.differential[w])
    for x in z1.free_generators:
        dx = z1.differential[x]
        for w in range(n2):
            v = free_cells(x, 0, z2.differential[w])
            for c in bits(dx & z1.fixed):
                v ^= fixed_cells(c, 1 << w)
            for cell in bits(dx & ~z1.fixed):
                x2, m = coords[cell]
                a, b = mono_parts(m)
                u = j2[mono(-a)][w]
                if b == 0:
                    v ^= free_cells(x2, mono(a), u)
                else:
                    v ^= free_cells(x2, mono(a, 1), u)
                    v ^= free_cells(x2, mono(a + 2), _apply(j2[_J2S], u))
            dd[free_index[x, w, 0]] = v
            for m in range(1, 8):
                g = GElement(1 << m)
                dd[free_index[x, w, m]] = act(m, v) ^ _apply_element(act, g.boundary(), 1 << free_index[x, w, 0])

    fixed = 0
    for (c, w), k in fixed_index.items():
        if z2.fixed >> w & 1:
            fixed |= 1 << k
    fundamental = 0
    for c in bits(z1.fundamental):
        fundamental ^= fixed_cells(c, z2.fundamental)
    gens = [free_index[x, w, 0] for x in z1.free_generators for w in range(n2)]
    gens += [fixed_index[c, y] for c in fixed1 for y in z2.free_generators]
    order = sorted(range(total), key=lambda k: (degrees[k], k))
    out = _reindexed(names, degrees, jt, st, dd, z1.level + z2.level, fundamental, fixed, gens, order)
    return replace(out, factors=(z1,) + z2.atoms)


def _apply_element(act, g: GElement, v: int) -> int:
    out = 0
    for m in g.monomials():
        out ^= act(m, v)
    return out


def _wrap(name: str) -> str:
    return f"({name})" if "*" in name else name


def tensor_all(zs) -> SWFLikeComplex:
    zs = list(zs)
    if not zs:
        return make_fixed_complex(0)
    out = zs[-1]
    for z in reversed(zs[:-1]):
        out = tensor(z, out)
    return out


def suspend_rtilde(z: SWFLikeComplex) -> SWFLikeComplex:
    return tensor(_rtilde_sphere(), z)


def suspend_h(z: SWFLikeComplex) -> SWFLikeComplex:
    return tensor(_h_sphere(), z)


@dataclass(frozen=True)
class Triple:
    """The formal desuspension (Z, m, n) of Z by m copies of R~ and n copies of H."""

    complex: SWFLikeComplex
    m: int = 0
    n: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "n", Fraction(self.n))


# -- validation -------------------------------------------------------------

@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class Diagnostics:
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _first_bad(z, pred):
    for k in range(z.dim):
        if not pred(k):
            return k
    return None


def validate(z: SWFLikeComplex) -> Diagnostics:
    checks = []

    def record(name, bad, what):
        if bad is None:
            checks.append(Check(name, True))
        else:
            checks.append(Check(name, False, f"{what} at {z.names[bad]}"))

    deg = z.degrees

    def graded(k):
        for v, shift in ((z.differential[k], -1), (z.j_action[k], 0), (z.s_action[k], 1)):
            if any(deg[i] != deg[k] + shift for i in bits(v)):
                return False
        return True

    record("grading", _first_bad(z, graded), "map changes degree wrongly")
    record("d_squared", _first_bad(z, lambda k: z.boundary_of(z.differential[k]) == 0), "d^2 != 0")

    jt, st = z.j_action, z.s_action

    def relations(k):
        v = 1 << k
        j4 = _apply(jt, _apply(jt, _apply(jt, _apply(jt, v))))
        s2 = _apply(st, _apply(st, v))
        sj = _apply(st, _apply(jt, v))
        j3s = _apply(jt, _apply(jt, _apply(jt, _apply(st, v))))
        return j4 == v and s2 == 0 and sj == j3s

    record("module_relations", _first_bad(z, relations), "algebra relations fail")

    def leibniz(k):
        v = 1 << k
        dj = z.boundary_of(jt[k]) == _apply(jt, z.differential[k])
        one_j2 = v ^ z.monomial_table(mono(2))[k]
        ds = z.boundary_of(st[k]) == one_j2 ^ _apply(st, z.differential[k])
        return dj and ds

    record("leibniz", _first_bad(z, leibniz), "d(a z) != a dz + da z")

    fixed = z.fixed
    closed = all((jt[k] | st[k] | z.differential[k]) & ~fixed == 0 for k in bits(fixed))
    checks.append(Check("fixed_subcomplex", closed, "" if closed else "fixed part not closed"))
    no_s = all(st[k] == 0 for k in bits(fixed))
    checks.append(Check("fixed_s_trivial", no_s, "" if no_s else "s acts nontrivially on fixed part"))

    # free part: orbits of the generators form a basis of the complement of the fixed part
    span = EchelonBasis()
    independent = True
    for g in z.free_generators:
        for m in range(8):
            if not span.add(z.monomial_table(m)[g]):
                independent = False
    full = (1 << z.dim) - 1
    covers = independent and len(span) == z.dim - bin(fixed).count("1")
    if covers:
        covers = all(span.contains(1 << k) for k in bits(full & ~fixed))
    checks.append(Check("free_part", covers, "" if covers else "free generators do not span a free complement"))
    low_free = [g for g in z.free_generators if deg[g] < 1]
    checks.append(Check("free_degrees", not low_free,
                        "" if not low_free else f"free generator {z.names[low_free[0]]} in degree 0"))

    # fixed-point homology is one copy of F2 in degree t, carried by f
    f = z.fundamental
    f_ok = f != 0 and f & ~fixed == 0 and all(deg[i] == z.level for i in bits(f))
    f_ok = f_ok and z.boundary_of(f) == 0
    homology_ok = f_ok
    detail = ""
    if f_ok:
        fixed_degs = sorted({deg[i] for i in bits(fixed)})
        for d in range(min(fixed_degs), max(fixed_degs) + 1):
            h = homology_dim(z.boundary_matrix(d + 1, fixed), z.boundary_matrix(d, fixed))
            if h != (1 if d == z.level else 0):
                homology_ok = False
                detail = f"fixed homology has rank {h} in degree {d}"
                break
        if homology_ok:
            lo, hi = z.degree_range(z.level + 1)
            plo, _ = z.degree_range(z.level)
            images = EchelonBasis(z.differential[k] & fixed for k in range(lo, hi) if fixed >> k & 1)
            if images.contains(f):
                homology_ok = False
                detail = "fundamental class is a boundary in the fixed part"
    else:
        detail = "fundamental class is not a fixed cycle of degree t"
    checks.append(Check("fixed_homology", homology_ok, detail))
    j_inv = _apply(jt, f) == f and _apply(jt, _apply(jt, f)) == f
    checks.append(Check("fundamental_j_invariant", j_inv, "" if j_inv else "j f != f"))
    return Diagnostics(tuple(checks))
