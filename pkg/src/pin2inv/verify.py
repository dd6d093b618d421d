"""Named identity checks shared by ``pin2inv verify`` and the test-suite.

Every check returns ``(ok, detail)``; the quick suite shrinks the ranges so it
runs in well under a minute.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .borel import abcd, manolescu
from .gcomplex import Triple, make_T, tensor_all
from .roots import build_root, is_sinking, reduce, refine, tau
from .roots import delta_tilde as root_delta_tilde
from .seifert import (DTable, alpha_count, brieskorn_delta, creature_decompose,
                      seifert_invariants)
from .sums import (check_sum_inequalities, connected_sum_chain, connected_sum_invariants,
                   asymptotic_table, round_up_even)

FAMILY_P = (3, 5, 7, 9, 11, 13)


@dataclass(frozen=True)
class CheckSpec:
    key: str
    statement: str
    run: Callable[[bool, DTable | None], tuple[bool, str]]


def _family_delta_tilde(quick, table):
    bad = []
    for p in FAMILY_P:
        dt = root_delta_tilde(reduce(brieskorn_delta(p, 2 * p - 1, 2 * p + 1)))
        if dt.delta_tilde != (p - 1) // 2:
            bad.append((p, dt.delta_tilde))
    return not bad, f"mismatches {bad}" if bad else f"p in {FAMILY_P}"


def _family_invariants(quick, table):
    bad = []
    for p in FAMILY_P:
        s = seifert_invariants(p, 2 * p - 1, 2 * p + 1, table=table)
        if s.d != p - 1 or s.mu_bar != 0 or not s.projective or s.manolescu.beta != 0:
            bad.append((p, s.d, str(s.mu_bar), s.projective))
    return not bad, f"mismatches {bad}" if bad else "d = p-1, mu-bar = 0, beta = 0"


def _creature(quick, table):
    ps = (3, 5, 7) if quick else (3, 5, 7, 9, 11)
    for p in ps:
        creature_decompose(p)
    return True, f"p in {ps}"


def _alpha_count(quick, table):
    bad = []
    for q in range(3, 22, 2):
        g = (q - 1) // 2
        if alpha_count(2, q, g - 1) != (q + 1) // 4:
            bad.append(q)
    return not bad, f"mismatches at q = {bad}" if bad else "odd q in 3..21"


def _worked_example(quick, table):
    y = seifert_invariants(2, 3, 7, table=table)
    even, odd = (0, 0, -2, 0), (1, -1, -1, 0)
    chain_max = 3 if quick else 4
    for k in range(1, 11):
        want = odd if k % 2 else even
        got = connected_sum_invariants([y] * k).as_tuple()
        if got != want:
            return False, f"formula k={k}: {got}"
        if k <= chain_max:
            got = connected_sum_chain([y] * k).as_tuple()
            if got != want:
                return False, f"chain k={k}: {got}"
    return True, f"k <= 10 by formula, k <= {chain_max} by chain"


def _multisets(total_max):
    for total in range(1, total_max + 1):
        def parts(rest, largest):
            if rest == 0:
                yield ()
                return
            for x in range(min(rest, largest), 0, -1):
                for tail in parts(rest - x, x):
                    yield (x,) + tail
        yield from parts(total, total)


def closed_form_abcd(dts) -> tuple[int, int, int, int]:
    dts = sorted(dts)
    n = len(dts)
    prefix = lambda k: sum(dts[:max(k, 0)])
    return (2 * round_up_even(prefix(n)), 2 * round_up_even(prefix(n - 1)),
            2 * round_up_even(prefix(n - 2)), 2 * prefix(n))


def _closed_forms(quick, table):
    limit = 3 if quick else 5
    count = 0
    for ms in _multisets(limit):
        v = abcd(tensor_all([make_T(x, 0) for x in ms]))
        got = (v.a, v.b, v.c, v.d)
        if got != closed_form_abcd(ms):
            return False, f"{ms}: {got} vs {closed_form_abcd(ms)}"
        count += 1
    return True, f"{count} multisets with total <= {limit}"


def corpus(table=None):
    names = {"Y3": (3, 5, 7), "Y5": (5, 9, 11), "Y7": (7, 13, 15),
             "S237": (2, 3, 7), "S235": (2, 3, 5), "S2311": (2, 3, 11)}
    return {k: seifert_invariants(*v, table=table) for k, v in names.items()}


def _inequalities(quick, table):
    spaces = corpus(table)
    for (n1, a), (n2, b) in itertools.product(spaces.items(), repeat=2):
        report = check_sum_inequalities(a.manolescu, b.manolescu, connected_sum_invariants([a, b]))
        failed = [k for k, ok in report.items() if not ok]
        if failed:
            return False, f"{n1} # {n2}: {failed}"
    n_max = 20 if quick else 100
    for s in spaces.values():
        asymptotic_table(s, n_max)
    return True, f"{len(spaces) ** 2} ordered pairs; bounded columns for n <= {n_max}"


def _tower_properties(quick, table):
    for D in range(4):
        for t in range(3):
            z = make_T(D, t)
            m = manolescu(Triple(z))
            if m.beta != Fraction(t, 2) or m.gamma != Fraction(t, 2):
                return False, f"T_{D}({t}): beta, gamma = {m.beta}, {m.gamma}"
            if m.delta * 2 != 2 * D + t:
                return False, f"T_{D}({t}): d = {m.delta * 2}"
    return True, "D <= 3, t <= 2"


def _truncation(quick, table):
    cases = [(1,), (2,), (1, 1)] if quick else [(1,), (2,), (3,), (1, 1), (1, 2), (1, 1, 1)]
    for ms in cases:
        z = tensor_all([make_T(x, 0) for x in ms])
        if abcd(z, z.max_degree + 8) != abcd(z, z.max_degree + 12):
            return False, f"{ms} depends on the truncation"
    return True, f"{len(cases)} complexes, margin 8 vs 12"


def random_delta(rng: random.Random, length: int, alternating: bool = False) -> tuple[int, ...]:
    """Random delta sequence starting positive; signs alternate only on request."""
    out = []
    for i in range(length):
        v = rng.randint(1, 4)
        negative = i % 2 == 1 if alternating else (i > 0 and rng.random() < 0.5)
        out.append(-v if negative else v)
    return tuple(out)


def minimum_only_at_end(t) -> bool:
    return min(t) == t[-1] and t.count(t[-1]) == 1


def _root_invariants(quick, table):
    rng = random.Random(20261019)
    trials = 50 if quick else 200
    for _ in range(trials):
        d = random_delta(rng, rng.randint(1, 10))
        idx = rng.randrange(len(d))
        v = d[idx]
        if abs(v) > 1:
            cut = rng.randint(1, abs(v) - 1)
            sign = 1 if v > 0 else -1
            finer = refine(d, idx, (sign * cut, sign * (abs(v) - cut)))
            if not build_root(finer).isomorphic(build_root(d)):
                return False, f"refinement changed the root of {d}"
        if not build_root(reduce(d)).isomorphic(build_root(d)):
            return False, f"reduction changed the root of {d}"
    triples = [(2, 3, 5), (2, 3, 7), (2, 3, 11), (3, 5, 7), (5, 9, 11), (7, 13, 15), (2, 5, 7), (3, 4, 5)]
    for p, q, r in triples:
        exp = brieskorn_delta(p, q, r)
        N = p * q * r - p * q - p * r - q * r
        lookup = dict(zip(exp.positions, exp.values))
        if any(lookup.get(N - x) != -v for x, v in lookup.items()):
            return False, f"Sigma({p},{q},{r}) is not antisymmetric"
        red = reduce(exp)
        t = tau(red)
        L = len(red) // 2
        if any(t[k] != t[2 * L - k] for k in range(len(t))):
            return False, f"tau of Sigma({p},{q},{r}) is not symmetric"
    sinking = [creature_decompose(p).z_part for p in FAMILY_P[:5]]
    sinking += [d for d in (random_delta(rng, 2 * rng.randint(1, 5), alternating=True) for _ in range(trials)) if is_sinking(d)]
    for z in sinking:
        if len(z) and not minimum_only_at_end(tau(z)):
            return False, f"sinking sequence {z} has its minimum before the end"
    return True, f"{trials} random sequences, {len(triples)} Brieskorn spheres"


CHECKS = (
    CheckSpec("1", "delta-tilde of Sigma(p,2p-1,2p+1) equals (p-1)/2", _family_delta_tilde),
    CheckSpec("2", "Sigma(p,2p-1,2p+1): d = p-1 gives mu-bar = 0, beta = 0, projective", _family_invariants),
    CheckSpec("3", "reduced sequence of Y_p = symmetrized join of sinking part and creature", _creature),
    CheckSpec("4", "gaps of <2,q> above g-1 number floor((q+1)/4)", _alpha_count),
    CheckSpec("5", "k-fold Sigma(2,3,7) by formula and chain", _worked_example),
    CheckSpec("6", "(a,b,c,d) of tensor towers equals the prefix-sum closed form", _closed_forms),
    CheckSpec("7a", "connected-sum inequalities and bounded asymptotics on the corpus", _inequalities),
    CheckSpec("7b", "beta = gamma = t/2 and d = 2D+t for T_D(t)", _tower_properties),
    CheckSpec("7c", "Borel results stable under a larger truncation", _truncation),
    CheckSpec("8", "root invariance, tau symmetry, sinking minimum, Brieskorn antisymmetry", _root_invariants),
)


@dataclass(frozen=True)
class CheckResult:
    key: str
    statement: str
    ok: bool
    detail: str
    seconds: float


def run_suite(suite: str = "quick", table: DTable | None = None) -> list[CheckResult]:
    if suite not in ("quick", "full"):
        raise ValueError(f"unknown suite {suite!r}")
    quick = suite == "quick"
    out = []
    for check in CHECKS:
        t0 = time.perf_counter()
        try:
            ok, detail = check.run(quick, table)
        except (AssertionError, ValueError) as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(check.key, check.statement, ok, detail, time.perf_counter() - t0))
    return out
