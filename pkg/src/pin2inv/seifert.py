"""Brieskorn spheres: semigroup delta sequences, per-space invariants, and the
splitting of the family Y_p = Sigma(p, 2p-1, 2p+1) into a sinking part and a
fixed "creature" part."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path

from .borel import ManolescuSet
from .errors import IdentityFailure, InvalidInput, MissingDInvariant, ResourceLimit, Unsupported
from .gcomplex import Triple, make_T
from .roots import DeltaSequence, delta_tilde, is_sinking, join, reduce, symmetrize

# N of Sigma(401, 801, 803); a bitset of this many bits is about 32 MB
MAX_SIEVE_N = 401 * 801 * 803 - 401 * 801 - 401 * 803 - 801 * 803


def round_up_even(x: int) -> int:
    """E(x) = 2 * floor((x + 1) / 2): the least even integer >= x."""
    return 2 * ((x + 1) // 2)


def semigroup_sieve(generators, bound: int) -> int:
    """Bitset of the integers in [0, bound] that are sums of the generators."""
    if bound < 0:
        raise InvalidInput("bound must be non-negative")
    gens = [int(g) for g in generators]
    if any(g <= 0 for g in gens):
        raise InvalidInput("generators must be positive")
    mask = (1 << (bound + 1)) - 1
    members = 1
    for g in gens:
        # closing under +g by doubling the step: after k rounds every multiple < 2^k * g is in
        step = g
        while step <= bound:
            members |= (members << step) & mask
            step *= 2
    return members & mask


def set_bits(x: int) -> list[int]:
    text = bin(x)[2:][::-1]
    return [i for i, ch in enumerate(text) if ch == "1"]


def _check_triple(p: int, q: int, r: int):
    if min(p, q, r) <= 0:
        raise InvalidInput("Brieskorn parameters must be positive")
    if gcd(p, q) != 1 or gcd(p, r) != 1 or gcd(q, r) != 1:
        raise InvalidInput(f"({p}, {q}, {r}) is not pairwise coprime")


@dataclass(frozen=True)
class BrieskornData:
    p: int
    q: int
    r: int

    def __post_init__(self):
        _check_triple(self.p, self.q, self.r)

    @property
    def N(self) -> int:
        p, q, r = self.p, self.q, self.r
        return p * q * r - p * q - p * r - q * r

    @property
    def generators(self) -> tuple[int, int, int]:
        return (self.p * self.q, self.p * self.r, self.q * self.r)

    def in_family(self) -> bool:
        """True for Sigma(p, 2p-1, 2p+1) with p odd and at least 3."""
        p, q, r = sorted((self.p, self.q, self.r))
        return p >= 3 and p % 2 == 1 and q == 2 * p - 1 and r == 2 * p + 1

    @property
    def r_minus(self) -> int:
        return self._family_p() * (2 * self._family_p() - 1)

    @property
    def r_plus(self) -> int:
        return self._family_p() * (2 * self._family_p() + 1)

    @property
    def w(self) -> int:
        p = self._family_p()
        return (2 * p - 1) * (2 * p + 1)

    @property
    def xi(self) -> int:
        return (self._family_p() - 1) // 2

    @property
    def K(self) -> int:
        return (self.xi - 1) * (self.r_minus + self.r_plus)

    def _family_p(self) -> int:
        if not self.in_family():
            raise InvalidInput("family data only exists for Sigma(p, 2p-1, 2p+1), p odd >= 3")
        return min(self.p, self.q, self.r)


def brieskorn_delta(p: int, q: int, r: int) -> DeltaSequence:
    """Expanded delta sequence: +1 on the semigroup part S of [0, N], -1 on N - S."""
    data = BrieskornData(p, q, r)
    N = data.N
    if N < 0:
        return DeltaSequence((), ())
    if N > MAX_SIEVE_N:
        raise ResourceLimit(f"N = {N} exceeds the sieve bound {MAX_SIEVE_N}")
    members = semigroup_sieve(data.generators, N)
    mirrored = int(bin(members)[2:].zfill(N + 1)[::-1], 2)  # bit x set iff N - x in S
    if members & mirrored:
        raise IdentityFailure("semigroup part and its mirror overlap")
    both = members | mirrored
    positions = set_bits(both)
    values = [1 if members >> x & 1 else -1 for x in positions]
    return DeltaSequence(tuple(values), tuple(positions))


def first_half(d: DeltaSequence, N: int) -> DeltaSequence:
    """Entries of a positioned sequence at positions <= N / 2."""
    keep = [i for i, x in enumerate(d.positions) if 2 * x <= N]
    return DeltaSequence(tuple(d.values[i] for i in keep), tuple(d.positions[i] for i in keep))


def semigroup_gaps(p: int, q: int) -> list[int]:
    if p <= 0 or q <= 0 or gcd(p, q) != 1:
        raise InvalidInput("need coprime positive p, q")
    conductor = (p - 1) * (q - 1)
    if conductor == 0:
        return []
    members = semigroup_sieve((p, q), conductor)
    return [n for n in range(conductor) if not members >> n & 1]


def genus(p: int, q: int) -> int:
    return (p - 1) * (q - 1) // 2


def alpha_count(p: int, q: int, i: int) -> int:
    """Number of gaps of the semigroup <p, q> that exceed i."""
    if i < -1:
        raise InvalidInput("i must be at least -1")
    return sum(1 for s in semigroup_gaps(p, q) if s > i)


# -- d-invariant table --------------------------------------------------------

@dataclass
class DTable:
    """Known d-invariants, by built-in family rules plus optional overrides."""

    overrides: dict[tuple[int, int, int], int] = field(default_factory=dict)
    source: str | None = None

    @classmethod
    def from_file(cls, path: str | Path) -> "DTable":
        try:
            records = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidInput(f"cannot read d-table {path}: {exc}") from exc
        if not isinstance(records, list):
            raise InvalidInput("d-table must be a JSON array of {p, q, r, d} records")
        table = {}
        for rec in records:
            try:
                key = tuple(sorted((int(rec["p"]), int(rec["q"]), int(rec["r"]))))
                table[key] = int(rec["d"])
            except (KeyError, TypeError, ValueError) as exc:
                raise InvalidInput(f"bad d-table record {rec!r}") from exc
        return cls(table, str(path))

    def lookup(self, p: int, q: int, r: int) -> tuple[int, str] | None:
        a, b, c = sorted((p, q, r))
        if (a, b, c) in self.overrides:
            return self.overrides[a, b, c], f"override file {self.source}"
        return builtin_d(a, b, c)


def builtin_d(a: int, b: int, c: int) -> tuple[int, str] | None:
    """Built-in d-invariant rules on a sorted triple, with a provenance label."""
    if (a, b, c) == (2, 3, 5):
        return 2, "built-in: Sigma(2,3,5)"
    if (a, b) == (2, 3) and c % 12 == 11:
        return 2, "built-in: Sigma(2,3,12k-1)"
    if (a, b) == (2, 3) and c % 12 == 5:
        return 2, "built-in: Sigma(2,3,12k-7)"
    if a >= 3 and a % 2 == 1 and b == 2 * a - 1 and c == 2 * a + 1:
        return a - 1, "built-in: Sigma(p,2p-1,2p+1), d = p-1"
    if c > a * b and c % (a * b) == 1:
        return 0, "built-in: Sigma(p,q,pqn+1), d = 0"
    return None


DEFAULT_TABLE = DTable()


# -- per-space invariants -----------------------------------------------------

@dataclass(frozen=True)
class SeifertInvariants:
    triple: tuple[int, int, int]
    d: int
    delta_tilde: int
    mu_bar: Fraction
    manolescu: ManolescuSet | None
    projective: bool
    chi_v: int = 0
    chi_min: int = 0
    d_provenance: str = ""

    @property
    def name(self) -> str:
        return "Sigma({},{},{})".format(*self.triple)


def invariants_from_data(d: int, dt: int, projective: bool = True, triple=(0, 0, 0),
                         provenance: str = "") -> SeifertInvariants:
    """Invariants of a negative Seifert space of projective type from d and delta-tilde."""
    if dt < 0:
        raise IdentityFailure(f"delta-tilde {dt} is negative; the supplied d is inconsistent")
    mu = Fraction(dt) - Fraction(d, 2)
    man = None
    if projective:
        man = ManolescuSet(Fraction(round_up_even(dt)) - mu, -mu, -mu, Fraction(d, 2))
    return SeifertInvariants(tuple(triple), d, dt, mu, man, projective, d_provenance=provenance)


def seifert_invariants(p: int, q: int, r: int, d: int | None = None,
                       table: DTable | None = None) -> SeifertInvariants:
    _check_triple(p, q, r)
    provenance = "supplied"
    if d is None:
        hit = (table or DEFAULT_TABLE).lookup(p, q, r)
        if hit is None:
            raise MissingDInvariant(
                f"absolute grading unknown for Sigma({p},{q},{r}): not in the d-table; pass d explicitly")
        d, provenance = hit
    dt = delta_tilde(reduce(brieskorn_delta(p, q, r)))
    out = invariants_from_data(d, dt.delta_tilde, dt.projective, (p, q, r), provenance)
    return SeifertInvariants(out.triple, out.d, out.delta_tilde, out.mu_bar, out.manolescu,
                             out.projective, dt.chi_v, dt.chi_min, provenance)


def local_class(s: SeifertInvariants) -> Triple:
    """The tower complex T_dt(0) desuspended by mu_bar / 2 copies of H."""
    if not s.projective:
        raise Unsupported(f"{s.name} is not of projective type")
    return Triple(make_T(s.delta_tilde, 0), 0, s.mu_bar / 2)


# -- the family Y_p -----------------------------------------------------------

def _check_family_p(p: int):
    if p < 3 or p % 2 == 0:
        raise InvalidInput("p must be odd and at least 3")


def creature_delta(p: int) -> DeltaSequence:
    _check_family_p(p)
    xi = (p - 1) // 2
    values = []
    for k in range(xi, 1, -1):
        values += [k, -k]
    values += [1, -2, 1]
    for k in range(2, xi + 1):
        values += [-k, k]
    return DeltaSequence(tuple(values))


@dataclass(frozen=True)
class CreatureReport:
    p: int
    N: int
    K: int
    z_part: DeltaSequence
    c_part: DeltaSequence
    checks: dict


def creature_decompose(p: int) -> CreatureReport:
    """Split the first half of the reduced sequence of Y_p at position K and check
    the pieces: sinking lower part, creature upper part, and the symmetrized join
    reproducing the whole reduced sequence."""
    _check_family_p(p)
    data = BrieskornData(p, 2 * p - 1, 2 * p + 1)
    N, K = data.N, data.K
    if N % 2:
        raise IdentityFailure(f"N = {N} is odd")
    reduced = reduce(brieskorn_delta(data.p, data.q, data.r))
    half = first_half(reduced, N)
    if 2 * len(half) != len(reduced):
        raise IdentityFailure("reduced sequence is not split evenly by N/2")
    low = [i for i, x in enumerate(half.positions) if x < K]
    high = [i for i, x in enumerate(half.positions) if x >= K]
    z_part = DeltaSequence(tuple(half.values[i] for i in low), tuple(half.positions[i] for i in low))
    c_part = DeltaSequence(tuple(half.values[i] for i in high), tuple(half.positions[i] for i in high))

    rm, rp = data.r_minus, data.r_plus
    limit = 2 * rm + (p - 3) * rp
    support = [x for x, v in zip(reduced.positions, reduced.values) if v > 0 and x <= limit]
    two_gen = set_bits(semigroup_sieve((rm, rp), limit))
    expected = [x for x in two_gen if x != (p - 2) * rp]
    checks = {
        "sinking": is_sinking(z_part),
        "creature": c_part.values == creature_delta(p).values,
        "symmetrized_join": symmetrize(join(z_part, c_part)).values == reduced.values,
        "positive_support": support == expected,
    }
    failed = [k for k, ok in checks.items() if not ok]
    if failed:
        raise IdentityFailure(f"creature decomposition of Y_{p} failed: {', '.join(failed)}")
    return CreatureReport(p, N, K, z_part, c_part, checks)
