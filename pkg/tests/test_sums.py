from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pin2inv.borel import ManolescuSet
from pin2inv.errors import InvalidInput, ResourceLimit, Unsupported
from pin2inv.seifert import invariants_from_data, seifert_invariants
from pin2inv.sums import (asymptotic_table, check_sum_inequalities, connected_sum_chain,
                          connected_sum_invariants, dualize, h_split, non_seifert_witness,
                          psi_coordinates, recover_max_delta_tilde, round_up_even)

S237 = seifert_invariants(2, 3, 7)
S235 = seifert_invariants(2, 3, 5)
S2311 = seifert_invariants(2, 3, 11)
Y3 = seifert_invariants(3, 5, 7)
Y5 = seifert_invariants(5, 9, 11)
Y7 = seifert_invariants(7, 13, 15)
CORPUS = [Y3, Y5, Y7, S237, S235, S2311]


def ms(*xs):
    return ManolescuSet(*(Fraction(x) for x in xs))


def test_round_up_even():
    assert [round_up_even(x) for x in (0, 1, 5, -1, -2, 4)] == [0, 2, 6, 0, -2, 4]


def test_formula_examples():
    assert connected_sum_invariants([S237, S237]).as_tuple() == (0, 0, -2, 0)
    assert connected_sum_invariants([S237] * 3).as_tuple() == (1, -1, -1, 0)
    assert connected_sum_invariants([Y5, S237]).as_tuple() == (3, 1, -1, 2)


def test_single_summand_matches_per_space_formula():
    for s in CORPUS:
        assert connected_sum_invariants([s]) == s.manolescu


@pytest.mark.parametrize("parts", [[S237, S237], [S235], [Y3, Y3], [Y5, S237], [S235, S237], [Y3, S2311]],
                         ids=lambda ps: "+".join(p.name for p in ps))
def test_chain_agrees_with_formula(parts):
    assert connected_sum_chain(parts) == connected_sum_invariants(parts)


def test_y3_pair_value():
    # both pipelines give beta = 2 here
    assert connected_sum_chain([Y3, Y3]).as_tuple() == (2, 2, 0, 2)


def test_chain_cost_limit():
    with pytest.raises(ResourceLimit):
        connected_sum_chain([Y7, Y5, Y3, S237])
    with pytest.raises(ResourceLimit):
        connected_sum_chain([Y3, Y3], cost_limit=1)


def test_non_projective_rejected():
    odd = invariants_from_data(0, 1, projective=False)
    with pytest.raises(Unsupported):
        connected_sum_invariants([odd])
    with pytest.raises(InvalidInput):
        connected_sum_invariants([])


@given(st.lists(st.sampled_from(CORPUS), min_size=1, max_size=6), st.randoms())
def test_permutation_invariant(parts, rnd):
    shuffled = list(parts)
    rnd.shuffle(shuffled)
    assert connected_sum_invariants(parts) == connected_sum_invariants(shuffled)


@given(st.lists(st.sampled_from(CORPUS), min_size=1, max_size=6))
def test_delta_is_additive_and_order_holds(parts):
    m = connected_sum_invariants(parts)
    assert m.delta == sum(s.manolescu.delta for s in parts)
    assert m.alpha >= m.beta >= m.gamma and m.gamma <= m.delta <= m.alpha


def test_zero_delta_tilde_parts_can_be_dropped():
    for parts in ([S235, S237], [S235, S235, Y5], [Y3, S235, Y3]):
        kept = [p for p in parts if p.delta_tilde > 0]
        shift = sum(p.mu_bar for p in parts if p.delta_tilde == 0)
        full = connected_sum_invariants(parts)
        short = connected_sum_invariants(kept)
        assert (full.alpha, full.beta, full.gamma) == (short.alpha - shift, short.beta - shift, short.gamma - shift)


def test_dualize():
    assert dualize(ms(1, -1, -1, 0)).as_tuple() == (1, 1, -1, 0)
    assert dualize(ms(0, 0, 0, 0)).as_tuple() == (0, 0, 0, 0)
    m = ms(3, 1, -1, 2)
    assert dualize(dualize(m)) == m


def test_inequalities_on_corpus_pairs():
    for a, b in itertools.product(CORPUS, repeat=2):
        report = check_sum_inequalities(a.manolescu, b.manolescu, connected_sum_invariants([a, b]))
        assert all(report.values()), (a.name, b.name, report)
        assert len([k for k in report if ":" in k and not k.startswith("Y")]) == 8


def test_inequality_checker_catches_corruption():
    m12 = connected_sum_invariants([S237, S237])
    bad = ManolescuSet(m12.alpha - 2, m12.beta, m12.gamma, m12.delta)
    report = check_sum_inequalities(S237.manolescu, S237.manolescu, bad)
    assert not report["alpha:lower"]


def test_h_split():
    assert h_split(S235.manolescu)
    assert not h_split(S237.manolescu)
    assert not h_split(connected_sum_invariants([S237, S237]))


def test_non_seifert_witness():
    assert non_seifert_witness([Y5, Y5])
    rep = non_seifert_witness([S237, S237])
    assert not rep and rep.gap_criterion
    assert not non_seifert_witness([Y5, S235])


def test_psi():
    assert psi_coordinates([Y3, Y5, S235]) == Counter({1: 1, 2: 1})
    assert psi_coordinates([S235]) == Counter()
    assert psi_coordinates([Y7, Y7]) == Counter({3: 2})


@given(st.lists(st.sampled_from(CORPUS)), st.lists(st.sampled_from(CORPUS)))
def test_psi_is_additive(a, b):
    assert psi_coordinates(a + b) == psi_coordinates(a) + psi_coordinates(b)


def test_recover_examples():
    plus = lambda s: connected_sum_invariants([s, S2311])
    assert recover_max_delta_tilde(S237.manolescu, plus(S237)) == 1
    assert recover_max_delta_tilde(ms(1, 1, 1, 1), ms(2, 2, 0, 0)) == 0
    assert recover_max_delta_tilde(Y5.manolescu, plus(Y5)) == 2
    with pytest.raises(InvalidInput):
        recover_max_delta_tilde(ms(1, 0, 0, 0), ms(0, 0, 0, 0))


@settings(max_examples=50)
@given(st.lists(st.sampled_from(CORPUS), min_size=1, max_size=5))
def test_recover_on_sums(parts):
    y = connected_sum_invariants(parts)
    y_plus = connected_sum_invariants(parts + [S2311])
    assert recover_max_delta_tilde(y, y_plus) == max(p.delta_tilde for p in parts)


def test_asymptotic_tables():
    rows = asymptotic_table(S237, 20)
    assert [r[1] for r in rows] == [1, 0] * 10
    for s in CORPUS:
        rows = asymptotic_table(s, 100)
        assert len(rows) == 100
    flat = asymptotic_table(S235, 10)
    assert len({r[1:] for r in flat}) == 1
