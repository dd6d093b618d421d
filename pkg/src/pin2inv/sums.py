"""Connected sums of negative Seifert spaces of projective type.

Two routes to the same numbers: the closed form in the sorted delta-tilde
prefix sums, and the chain route that tensors the local tower complexes and
runs the Borel searches.  Also the inequality checkers, the H-split test,
the psi coordinates and the recovery of the largest delta-tilde.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .borel import ManolescuSet, manolescu
from .errors import IdentityFailure, InvalidInput, ResourceLimit, Unsupported
from .gcomplex import Triple, make_fixed_complex, make_T, tensor_all
from .seifert import SeifertInvariants, round_up_even

__all__ = [
    "round_up_even", "connected_sum_invariants", "connected_sum_chain", "dualize",
    "check_sum_inequalities", "h_split", "non_seifert_witness", "NonSeifertReport",
    "psi_coordinates", "recover_max_delta_tilde", "asymptotic_table", "DEFAULT_COST_LIMIT",
]

DEFAULT_COST_LIMIT = 6


def _check_parts(parts: Sequence[SeifertInvariants]):
    if not parts:
        raise InvalidInput("need at least one summand")
    for p in parts:
        if not p.projective:
            raise Unsupported(f"{p.name} is not of projective type; no formula for its sums")
        if p.delta_tilde < 0:
            raise InvalidInput(f"{p.name} has negative delta-tilde")


def connected_sum_invariants(parts: Sequence[SeifertInvariants]) -> ManolescuSet:
    _check_parts(parts)
    dts = sorted(p.delta_tilde for p in parts)
    n = len(dts)
    mu = sum((p.mu_bar for p in parts), Fraction(0))
    prefix = lambda k: sum(dts[:max(k, 0)])
    return ManolescuSet(
        Fraction(round_up_even(prefix(n))) - mu,
        Fraction(round_up_even(prefix(n - 1))) - mu,
        Fraction(round_up_even(prefix(n - 2))) - mu,
        sum((Fraction(p.d, 2) for p in parts), Fraction(0)),
    )


def connected_sum_chain(parts: Sequence[SeifertInvariants], cost_limit: int = DEFAULT_COST_LIMIT,
                        trunc: int | None = None) -> ManolescuSet:
    """Tensor the local classes T_dt(0) and desuspend by the total mu-bar / 2 copies of H."""
    _check_parts(parts)
    total = sum(p.delta_tilde for p in parts)
    if total > cost_limit:
        raise ResourceLimit(f"total delta-tilde {total} exceeds the cost limit {cost_limit}")
    towers = [make_T(p.delta_tilde, 0) for p in parts if p.delta_tilde > 0]
    z = tensor_all(towers) if towers else make_fixed_complex(0)
    n = sum((p.mu_bar for p in parts), Fraction(0)) / 2
    return manolescu(Triple(z, 0, n), trunc)


def dualize(m: ManolescuSet) -> ManolescuSet:
    """Invariants of the orientation reversal."""
    return ManolescuSet(-m.gamma, -m.beta, -m.alpha, -m.delta)


def _ordering(m: ManolescuSet) -> dict[str, bool]:
    return {
        "alpha>=beta": m.alpha >= m.beta,
        "beta>=gamma": m.beta >= m.gamma,
        "gamma<=delta": m.gamma <= m.delta,
        "delta<=alpha": m.delta <= m.alpha,
    }


def check_sum_inequalities(m1: ManolescuSet, m2: ManolescuSet, m12: ManolescuSet) -> dict[str, bool]:
    """Pass/fail per inequality relating two spaces and their connected sum."""
    report = {
        "alpha:lower": m1.alpha + m2.gamma <= m12.alpha,
        "alpha:upper": m12.alpha <= m1.alpha + m2.alpha,
        "gamma:lower": m1.gamma + m2.gamma <= m12.gamma,
        "gamma:upper": m12.gamma <= m1.alpha + m2.gamma,
        "beta:lower": m1.gamma + m2.beta <= m12.beta,
        "beta:upper": m12.beta <= m1.alpha + m2.beta,
        "beta-sum:lower": m12.gamma <= m1.beta + m2.beta,
        "beta-sum:upper": m1.beta + m2.beta <= m12.alpha,
    }
    for label, m in (("Y1", m1), ("Y2", m2), ("Y1#Y2", m12)):
        for name, ok in _ordering(m).items():
            report[f"{label}:{name}"] = ok
    return report


def h_split(m: ManolescuSet) -> bool:
    return m.alpha == m.beta == m.gamma


@dataclass(frozen=True)
class NonSeifertReport:
    """``witness`` follows the delta-tilde count; ``gap_criterion`` is the
    weaker reading through the invariant differences.  They can disagree."""

    witness: bool
    gap_criterion: bool
    large_parts: int
    invariants: ManolescuSet

    def __bool__(self):
        return self.witness


def non_seifert_witness(parts: Sequence[SeifertInvariants]) -> NonSeifertReport:
    """True when at least two summands have delta-tilde >= 2, which forces the sum
    away from every Seifert fibered homology cobordism class."""
    m = connected_sum_invariants(parts)
    large = sum(1 for p in parts if p.delta_tilde >= 2)
    gap = m.beta - m.gamma >= 2 or m.alpha - m.beta >= 2
    witness = large >= 2
    if witness and not gap:
        raise IdentityFailure("two summands with delta-tilde >= 2 but no invariant gap of 2")
    return NonSeifertReport(witness, gap, large, m)


def psi_coordinates(parts: Sequence[SeifertInvariants]) -> Counter:
    """Multiset of the positive delta-tilde values."""
    for p in parts:
        if not p.projective:
            raise Unsupported(f"{p.name} is not of projective type")
    return Counter(p.delta_tilde for p in parts if p.delta_tilde > 0)


def recover_max_delta_tilde(m_y: ManolescuSet, m_y_plus: ManolescuSet) -> int:
    """Largest delta-tilde of Y from the invariants of Y and of Y # Sigma(2,3,11).

    H-split Y means every summand has delta-tilde 0; otherwise the two
    alpha - beta gaps straddle the answer by the same amount on either side.
    """
    if h_split(m_y):
        return 0
    total = (m_y.alpha - m_y.beta) + (m_y_plus.alpha - m_y_plus.beta)
    half = Fraction(total) / 2
    if half.denominator != 1 or half < 0:
        raise InvalidInput(f"alpha-beta differences give {half}, not a non-negative integer")
    return int(half)


def asymptotic_table(part: SeifertInvariants, n_max: int) -> list[tuple[int, Fraction, Fraction, Fraction]]:
    """Rows (n, alpha - n delta, beta - n delta, gamma - n delta) for the n-fold sum."""
    _check_parts([part])
    if n_max < 1:
        raise InvalidInput("n_max must be positive")
    bound = 2 * part.delta_tilde + 2 * abs(part.mu_bar) + 2
    rows = []
    for n in range(1, n_max + 1):
        m = connected_sum_invariants([part] * n)
        shift = n * Fraction(part.d, 2)
        row = (n, m.alpha - shift, m.beta - shift, m.gamma - shift)
        if any(abs(x) > bound for x in row[1:]):
            raise IdentityFailure(f"n = {n}: row {row[1:]} exceeds the bound {bound}")
        rows.append(row)
    return rows
