from __future__ import annotations

import itertools
import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pin2inv.borel import manolescu
from pin2inv.errors import InvalidInput, MissingDInvariant, Unsupported
from pin2inv.roots import reduce
from pin2inv.seifert import (BrieskornData, DTable, alpha_count, brieskorn_delta, creature_decompose,
                             creature_delta, first_half, invariants_from_data, local_class,
                             seifert_invariants, semigroup_gaps, semigroup_sieve, set_bits)


def brute_members(gens, bound):
    """Numbers in [0, bound] that are non-negative combinations of gens."""
    reach = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x + g
            if y <= bound and y not in reach:
                reach.add(y)
                frontier.append(y)
    return sorted(reach)


def test_sieve_examples():
    assert set_bits(semigroup_sieve((6, 10, 15), 1)) == [0]
    assert set_bits(semigroup_sieve((15, 21, 35), 34)) == [0, 15, 21, 30]
    assert set_bits(semigroup_sieve((1,), 5)) == list(range(6))
    with pytest.raises(InvalidInput):
        semigroup_sieve((0, 3), 5)


@settings(max_examples=60)
@given(st.lists(st.integers(1, 30), min_size=1, max_size=3), st.integers(0, 300))
def test_sieve_matches_brute_force(gens, bound):
    assert set_bits(semigroup_sieve(gens, bound)) == brute_members(gens, bound)


def test_brieskorn_examples():
    d = brieskorn_delta(2, 3, 7)
    assert d.values == (1, -1) and d.positions == (0, 1)
    assert len(brieskorn_delta(2, 3, 5)) == 0
    d = brieskorn_delta(3, 5, 7)
    assert d.positions == (0, 4, 13, 15, 19, 21, 30, 34)
    assert d.values == (1, -1, -1, 1, -1, 1, 1, -1)
    assert reduce(d).values == (1, -2, 1, -1, 2, -1)
    with pytest.raises(InvalidInput):
        brieskorn_delta(2, 4, 5)


coprime_triples = [t for t in itertools.combinations(range(2, 14), 3)
                   if all(math.gcd(a, b) == 1 for a, b in itertools.combinations(t, 2))]


@pytest.mark.parametrize("p,q,r", coprime_triples[:25])
def test_brieskorn_antisymmetry(p, q, r):
    data = BrieskornData(p, q, r)
    d = brieskorn_delta(p, q, r)
    lookup = dict(zip(d.positions, d.values))
    assert all(lookup[data.N - x] == -v for x, v in lookup.items())
    members = set(brute_members(data.generators, max(data.N, 0)))
    if data.N >= 0:
        assert {x for x, v in lookup.items() if v > 0} == members
    else:
        assert not lookup
    half = first_half(reduce(d), data.N)
    assert 2 * len(half) == len(reduce(d))


def test_alpha_count_examples():
    assert alpha_count(2, 3, 0) == 1
    assert alpha_count(2, 7, 2) == 2
    assert alpha_count(2, 3, 1) == 0 and alpha_count(2, 3, 5) == 0
    assert semigroup_gaps(3, 5) == [1, 2, 4, 7]
    with pytest.raises(InvalidInput):
        alpha_count(2, 3, -2)


def test_invariants_examples():
    s = seifert_invariants(2, 3, 7, d=0)
    assert (s.delta_tilde, s.mu_bar) == (1, 1)
    assert s.manolescu.as_tuple() == (1, -1, -1, 0)
    s = seifert_invariants(5, 9, 11, d=4)
    assert (s.delta_tilde, s.mu_bar, s.manolescu.beta) == (2, 0, 0)
    s = seifert_invariants(2, 3, 5, d=2)
    assert (s.delta_tilde, s.mu_bar) == (0, -1)
    assert s.manolescu.as_tuple() == (1, 1, 1, 1)


def test_table_lookups():
    assert seifert_invariants(2, 3, 7).d == 0
    assert seifert_invariants(2, 3, 11).d == 2
    assert seifert_invariants(2, 3, 5).d == 2
    assert seifert_invariants(7, 13, 15).d == 6
    assert seifert_invariants(2, 3, 17).d == 2
    with pytest.raises(MissingDInvariant, match="d-table"):
        seifert_invariants(3, 5, 49)


def test_override_file(tmp_path):
    path = tmp_path / "d.json"
    path.write_text(json.dumps([{"p": 3, "q": 5, "r": 49, "d": 0}, {"p": 7, "q": 2, "r": 3, "d": 2}]))
    table = DTable.from_file(path)
    assert seifert_invariants(3, 5, 49, table=table).d_provenance.startswith("override")
    assert seifert_invariants(2, 3, 7, table=table).d == 2
    path.write_text("{}")
    with pytest.raises(InvalidInput):
        DTable.from_file(path)


def test_inconsistent_d_is_caught():
    with pytest.raises(AssertionError):
        invariants_from_data(10, -1)


def test_local_class():
    s = seifert_invariants(2, 3, 7)
    tr = local_class(s)
    assert tr.m == 0 and tr.n == Fraction(1, 2) and tr.complex.names[-1] == "j3sx1"
    assert manolescu(tr) == s.manolescu
    tr = local_class(seifert_invariants(2, 3, 5))
    assert tr.complex.names == ("c0",) and tr.n == Fraction(-1, 2)
    flat = invariants_from_data(0, 1, projective=False)
    with pytest.raises(Unsupported):
        local_class(flat)


def test_creature_delta():
    assert creature_delta(5).values == (2, -2, 1, -2, 1, -2, 2)
    assert creature_delta(3).values == (1, -2, 1)
    for p in (7, 9, 11):
        vals = creature_delta(p).values
        assert vals[0] == vals[-1] == (p - 1) // 2
    with pytest.raises(InvalidInput):
        creature_delta(4)


def test_creature_decompose_small_cases():
    rep = creature_decompose(3)
    assert len(rep.z_part) == 0 and rep.c_part.values == (1, -2, 1)
    rep = creature_decompose(5)
    data = BrieskornData(5, 9, 11)
    assert (rep.K, data.r_minus, data.r_plus, data.xi) == (100, 45, 55, 2)
    assert all(rep.checks.values())


@pytest.mark.parametrize("p", [7, 9, 11])
def test_creature_decompose(p):
    assert all(creature_decompose(p).checks.values())


def test_family_data_only_for_family():
    with pytest.raises(InvalidInput):
        BrieskornData(2, 3, 7).r_minus
