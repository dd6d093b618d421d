from __future__ import annotations

from dataclasses import replace
from fractions import Fraction

import pytest

from pin2inv.borel import abc, manolescu
from pin2inv.errors import InvalidInput
from pin2inv.f2linalg import homology_dim
from pin2inv.gcomplex import (Triple, make_fixed_complex, make_T, suspend_h, suspend_rtilde,
                              tensor, tensor_all, validate)


def reduced_homology(z):
    return [homology_dim(z.boundary_matrix(d + 1), z.boundary_matrix(d)) for d in range(z.max_degree + 1)]


def test_fixed_complex_cells():
    z = make_fixed_complex(2)
    assert z.names == ("c0", "c1", "jc1", "c2", "jc2")
    assert z.describe(z.differential[3]) == "c1 + jc1"
    assert z.describe(z.fundamental) == "c2 + jc2"
    z0 = make_fixed_complex(0)
    assert z0.names == ("c0",) and z0.describe(z0.fundamental) == "c0"


def test_tower_cells():
    t1 = make_T(1, 0)
    assert t1.describe(t1.differential[t1.names.index("x1")]) == "c0"
    t2 = make_T(2, 0)
    x3 = t2.names.index("x3")
    assert t2.describe(t2.differential[x3]) == "sx1 + j2sx1"
    assert make_T(0, 3).names == make_fixed_complex(3).names


@pytest.mark.parametrize("z", [
    make_fixed_complex(0), make_fixed_complex(5), make_T(1, 0), make_T(3, 2), make_T(2, 1),
    suspend_h(make_fixed_complex(0)), suspend_rtilde(make_T(1, 0)), suspend_h(make_T(1, 0)),
    tensor(make_T(2, 1), make_T(1, 0)), tensor_all([make_T(1, 0)] * 3),
    tensor(make_T(1, 1), make_T(2, 0)),
], ids=lambda z: " * ".join(f.names[-1] for f in z.atoms))
def test_validate_passes(z):
    diag = validate(z)
    assert diag.ok, diag.failures


def test_validate_catches_wrong_degree():
    z = make_T(1, 1)
    x2 = z.names.index("x2")
    bad = list(z.differential)
    bad[x2] ^= 1 << z.names.index("c0")
    broken = replace(z, differential=tuple(bad), _cache={})
    diag = validate(broken)
    assert not diag["grading"].passed
    assert not diag.ok


def test_negative_parameters_rejected():
    with pytest.raises(InvalidInput):
        make_T(-1, 0)
    with pytest.raises(InvalidInput):
        make_fixed_complex(-2)


def test_h_sphere_homology():
    assert reduced_homology(suspend_h(make_fixed_complex(0))) == [0, 0, 0, 0, 1]


def test_rtilde_suspension_of_unit_is_fixed_sphere():
    z = suspend_rtilde(make_fixed_complex(0))
    assert z.level == 1 and reduced_homology(z) == reduced_homology(make_fixed_complex(1))
    assert suspend_rtilde(make_T(1, 0)).level == 1


def test_unit_for_tensor():
    for z in (make_T(1, 0), make_T(2, 1)):
        u = tensor(z, make_fixed_complex(0))
        assert u.dim == z.dim and reduced_homology(u) == reduced_homology(z)
        assert abc(u) == abc(z)


def test_tensor_fundamental_class():
    z = tensor(make_T(1, 0), make_T(2, 0))
    assert z.describe(z.fundamental) == "c0*c0"
    assert abc(tensor(make_T(1, 0), make_T(1, 0))) == (4, 4, 0)


@pytest.mark.parametrize("base", [make_T(1, 0), make_T(2, 0), make_T(1, 1)])
def test_suspension_invariance(base):
    plain = manolescu(Triple(base))
    assert manolescu(Triple(suspend_rtilde(base), 1, 0)) == plain
    assert manolescu(Triple(suspend_h(base), 0, 1)) == plain


def test_associativity_through_invariants():
    a, b, c = make_T(1, 0), make_T(2, 0), make_T(1, 1)
    left = tensor(tensor(a, b), c)
    right = tensor(a, tensor(b, c))
    assert validate(left).ok and validate(right).ok
    assert manolescu(Triple(left)) == manolescu(Triple(right))


def test_triple_coerces_n():
    assert Triple(make_T(1, 0), 0, "1/2").n == Fraction(1, 2)
