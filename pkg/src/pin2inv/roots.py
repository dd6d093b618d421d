"""Delta sequences, graded roots and their F[U]-modules.

A delta sequence is a finite list of nonzero integers; its tau function is the
running sum starting at 0.  The graded root glues one downward ray per index
``n`` starting at height ``tau(n)``: two rays share the vertex at height ``h``
when tau stays ``<= h`` on every index between them.  So the vertices at
height ``h`` are the maximal intervals of ``{n : tau(n) <= h}``, and everything
in this module is computed from tau alone without materializing infinite trees.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .errors import InvalidInput


@dataclass(frozen=True)
class DeltaSequence:
    """Values of a delta sequence, optionally with the integer positions they sit at."""

    values: tuple[int, ...] = ()
    positions: tuple[int, ...] | None = None

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if any(v == 0 for v in values):
            raise InvalidInput("delta sequence values must be nonzero")
        if values and values[0] < 0:
            raise InvalidInput("delta sequence must start with a positive value")
        if self.positions is not None:
            positions = tuple(int(p) for p in self.positions)
            if len(positions) != len(values):
                raise InvalidInput("positions and values differ in length")
            if any(a >= b for a, b in zip(positions, positions[1:])):
                raise InvalidInput("positions must be strictly increasing")
            object.__setattr__(self, "positions", positions)

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __str__(self):
        return "<" + ", ".join(str(v) for v in self.values) + ">"


def as_delta(d: DeltaSequence | Sequence[int]) -> DeltaSequence:
    return d if isinstance(d, DeltaSequence) else DeltaSequence(tuple(d))


def tau(d: DeltaSequence | Sequence[int]) -> tuple[int, ...]:
    out = [0]
    for v in as_delta(d).values:
        out.append(out[-1] + v)
    return tuple(out)


def reduce(d: DeltaSequence | Sequence[int]) -> DeltaSequence:
    """Merge each maximal same-sign run into one entry holding the run's sum.

    With positions, a positive run is placed at its last position and a
    negative run at its first one.
    """
    d = as_delta(d)
    values: list[int] = []
    positions: list[int] = []
    for i, v in enumerate(d.values):
        if values and (values[-1] > 0) == (v > 0):
            values[-1] += v
            if v > 0 and d.positions is not None:
                positions[-1] = d.positions[i]
        else:
            values.append(v)
            if d.positions is not None:
                positions.append(d.positions[i])
    return DeltaSequence(tuple(values), tuple(positions) if d.positions is not None else None)


def is_reduced(d: DeltaSequence | Sequence[int]) -> bool:
    vals = as_delta(d).values
    return all((a > 0) != (b > 0) for a, b in zip(vals, vals[1:]))


def refine(d: DeltaSequence | Sequence[int], index: int, parts: Sequence[int]) -> DeltaSequence:
    d = as_delta(d)
    if not 0 <= index < len(d):
        raise InvalidInput(f"index {index} out of range")
    v = d.values[index]
    parts = tuple(int(p) for p in parts)
    if not parts or any((p > 0) != (v > 0) or p == 0 for p in parts):
        raise InvalidInput("refinement parts must be nonzero and share the sign of the entry")
    if sum(parts) != v:
        raise InvalidInput(f"refinement parts sum to {sum(parts)}, expected {v}")
    return DeltaSequence(d.values[:index] + parts + d.values[index + 1:])


def symmetrize(d: DeltaSequence | Sequence[int]) -> DeltaSequence:
    vals = as_delta(d).values
    return DeltaSequence(vals + tuple(-v for v in reversed(vals)))


def is_symmetric(d: DeltaSequence | Sequence[int]) -> bool:
    vals = as_delta(d).values
    n = len(vals)
    return n % 2 == 0 and all(vals[i] == -vals[n - 1 - i] for i in range(n))


def join(d1: DeltaSequence | Sequence[int], d2: DeltaSequence | Sequence[int]) -> DeltaSequence:
    d1, d2 = as_delta(d1), as_delta(d2)
    positions = None
    if d1.positions is not None and d2.positions is not None:
        positions = d1.positions + d2.positions
    elif not len(d1) and d2.positions is not None:
        positions = d2.positions
    elif not len(d2) and d1.positions is not None:
        positions = d1.positions
    return DeltaSequence(d1.values + d2.values, positions)


def is_sinking(d: DeltaSequence | Sequence[int]) -> bool:
    """Reduced form ends negative; each positive entry is at most the size of the
    next negative one, strictly less for the last pair.  Empty counts as sinking."""
    vals = reduce(d).values
    if not vals:
        return True
    if vals[-1] > 0:
        return False
    pairs = list(zip(vals[0::2], vals[1::2]))
    if any(p > -q for p, q in pairs):
        return False
    p, q = pairs[-1]
    return p < -q


# -- graded roots -------------------------------------------------------------

@dataclass(frozen=True)
class GradedRoot:
    """The finite part of a graded root, stored through its tau function.

    A vertex is ``(h, lo, hi)``: the class of the index interval ``[lo, hi]`` at
    height ``h``.  Above ``stem`` there is one vertex per height.
    """

    tau: tuple[int, ...]
    symmetric: bool = False

    @property
    def stem(self) -> int:
        return max(self.tau)

    @property
    def min_grading(self) -> int:
        return min(self.tau)

    def vertices_at(self, h: int) -> list[tuple[int, int, int]]:
        out = []
        start = None
        for n, t in enumerate(self.tau):
            if t <= h:
                if start is None:
                    start = n
            elif start is not None:
                out.append((h, start, n - 1))
                start = None
        if start is not None:
            out.append((h, start, len(self.tau) - 1))
        return out

    def vertices(self) -> list[tuple[int, int, int]]:
        out = []
        for h in range(self.min_grading, self.stem + 1):
            out.extend(self.vertices_at(h))
        return out

    def vertex_counts(self) -> dict[int, int]:
        return {h: len(self.vertices_at(h)) for h in range(self.min_grading, self.stem + 1)}

    def parent(self, v: tuple[int, int, int]) -> tuple[int, int, int]:
        h, lo, _ = v
        for w in self.vertices_at(h + 1):
            if w[1] <= lo <= w[2]:
                return w
        raise AssertionError("vertex without parent")

    def edges(self) -> list[tuple[tuple[int, int, int], tuple[int, int, int]]]:
        return [(v, self.parent(v)) for v in self.vertices() if v[0] < self.stem]

    def involution(self, v: tuple[int, int, int]) -> tuple[int, int, int]:
        if not self.symmetric:
            raise InvalidInput("root carries no involution (sequence not symmetric)")
        last = len(self.tau) - 1
        h, lo, hi = v
        return (h, last - hi, last - lo)

    def canonical(self, top: int | None = None):
        """Isomorphism-invariant form of the root, grown down from height ``top``."""
        top = self.stem if top is None else max(top, self.stem)

        def shape(h, lo, hi):
            kids = [w for w in self.vertices_at(h - 1) if lo <= w[1] and w[2] <= hi]
            return (h, tuple(sorted(shape(*w) for w in kids)))

        return shape(top, 0, len(self.tau) - 1)

    def isomorphic(self, other: "GradedRoot") -> bool:
        top = max(self.stem, other.stem)
        return self.canonical(top) == other.canonical(top)


def build_root(d: DeltaSequence | Sequence[int]) -> GradedRoot:
    d = as_delta(d)
    return GradedRoot(tau(d), is_symmetric(d))


@dataclass(frozen=True)
class Tower:
    bottom: int
    length: int | None  # None for the infinite tower
    multiplicity: int = 1

    def __str__(self):
        if self.length is None:
            return f"T+({self.bottom})"
        tail = f"^{self.multiplicity}" if self.multiplicity > 1 else ""
        return f"T({self.bottom}, {self.length}){tail}"


@dataclass(frozen=True)
class UModule:
    infinite: Tower
    finite: tuple[Tower, ...]
    absolute: bool = False

    def rank_in_grading(self, g: int) -> int:
        total = 1 if g >= self.infinite.bottom and (g - self.infinite.bottom) % 2 == 0 else 0
        for t in self.finite:
            if t.bottom <= g < t.bottom + 2 * t.length and (g - t.bottom) % 2 == 0:
                total += t.multiplicity
        return total

    def shifted(self, offset: int) -> "UModule":
        move = lambda t: Tower(t.bottom + offset, t.length, t.multiplicity)
        return UModule(move(self.infinite), tuple(move(t) for t in self.finite), True)


def u_module(r: GradedRoot, d: int | None = None) -> UModule:
    """Split H(root) into towers by the elder rule; gradings are 2 * height.

    Without ``d`` the gradings are relative.  With ``d`` they are shifted so the
    infinite tower starts at ``-d``.
    """
    t = r.tau
    parent = list(range(len(t)))
    birth = list(t)
    active = [False] * len(t)

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    deaths: Counter = Counter()
    for n in sorted(range(len(t)), key=lambda k: (t[k], k)):
        h = t[n]
        active[n] = True
        for m in (n - 1, n + 1):
            if 0 <= m < len(t) and active[m]:
                a, b = find(n), find(m)
                if a == b:
                    continue
                # the younger component dies; ties go to the left one surviving
                old, young = (a, b) if (birth[a], a) < (birth[b], b) else (b, a)
                if h > birth[young]:
                    deaths[2 * birth[young], h - birth[young]] += 1
                parent[young] = old
    root_birth = min(t)
    finite = tuple(Tower(b, length, mult) for (b, length), mult in sorted(deaths.items()))
    module = UModule(Tower(2 * root_birth, None), finite)
    if d is not None:
        module = module.shifted(-d - 2 * root_birth)
    return module


@dataclass(frozen=True)
class DeltaTilde:
    chi_v: int
    chi_min: int
    delta_tilde: int
    projective: bool

    def __iter__(self):
        return iter((self.chi_v, self.chi_min, self.delta_tilde, self.projective))


def delta_tilde(d: DeltaSequence | Sequence[int]) -> DeltaTilde:
    """Height gap between the lowest involution-fixed vertex and the bottom of the root.

    For a symmetric sequence of length 2L the involution-fixed vertices are the
    intervals containing L, so the lowest one sits at height tau(L).  A
    grading-decreasing path from it to a bottom vertex exists iff the interval
    of ``tau <= tau(L)`` around L already reaches the global minimum.
    """
    d = as_delta(d)
    if not len(d):
        return DeltaTilde(0, 0, 0, True)
    if not is_symmetric(d):
        raise InvalidInput("delta_tilde needs a symmetric sequence of even length")
    t = tau(d)
    mid = len(d) // 2
    chi_v = t[mid]
    lo = mid
    while lo > 0 and t[lo - 1] <= chi_v:
        lo -= 1
    hi = mid
    while hi < len(t) - 1 and t[hi + 1] <= chi_v:
        hi += 1
    chi_min = min(t)
    return DeltaTilde(chi_v, chi_min, chi_v - chi_min, min(t[lo:hi + 1]) == chi_min)
