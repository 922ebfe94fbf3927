import math

import pytest
from hypothesis import given, strategies as st

from kratzer2d import (
    PhysicalConstants,
    PotentialSpec,
    QuantumNumbers,
    bound_state,
    degeneracy_classes,
    energy_coulomb_limit,
    energy_kratzer,
    enumerate_levels,
)
from kratzer2d.spectrum import kratzer_equivalent, modified1_minus_d0_energy


def E(spec, n, m, c=PhysicalConstants()):
    return bound_state(spec, c, QuantumNumbers(n, m)).energy


def test_kratzer_reference_levels(kratzer):
    assert E(kratzer, 0, 0) == pytest.approx(-0.545820, abs=5e-7)
    assert E(kratzer, 1, 1) == pytest.approx(-0.191458, abs=5e-7)


def test_kratzer_closed_form_by_hand(kratzer):
    # k = gamma^2 / (n + 1/2 + alpha), E = -k^2 / 2 in these units
    for n in range(4):
        for m in range(4):
            k = 2.0 / (n + 0.5 + math.sqrt(m * m + 2.0))
            assert E(kratzer, n, m) == pytest.approx(-0.5 * k * k, rel=1e-15)


def test_mod1_is_kratzer_plus_depth(units):
    m1 = PotentialSpec.modified1(1.0)
    assert E(m1, 0, 0) == pytest.approx(0.454180, abs=5e-7)
    for n in range(4):
        assert E(m1, n, 2) < 1.0
        assert E(m1, n, 2) - E(PotentialSpec.kratzer(1.0), n, 2) == pytest.approx(1.0, rel=1e-13)
    minus = modified1_minus_d0_energy(m1, units, QuantumNumbers(0, 0))
    assert minus == pytest.approx(-1.545820, abs=5e-7)


def test_mod1_stores_beta(units):
    s = bound_state(PotentialSpec.modified1(1.0), units, QuantumNumbers(0, 0))
    assert s.k == s.scale


def test_coulomb_levels(coulomb, units):
    assert E(coulomb, 0, 0) == -2.0
    assert E(coulomb, 1, 1) == pytest.approx(-0.08, rel=1e-15)
    assert energy_coulomb_limit(coulomb, units, 1) == pytest.approx(-2.0 / 9.0, rel=1e-15)
    assert energy_coulomb_limit(coulomb, units, 2) == pytest.approx(-0.08, rel=1e-15)
    with pytest.raises(ValueError):
        energy_coulomb_limit(PotentialSpec.modified2(1.0, 0.3), units, 0)


def test_exciton_kratzer_coincidence(units):
    k = PotentialSpec.kratzer(0.7, 1.3)
    x = kratzer_equivalent(k)
    assert x.g == pytest.approx(1 / math.sqrt(2)) and x.q == pytest.approx(1.4)
    for n in range(6):
        for m in range(-5, 6):
            assert abs(E(x, n, m) / E(k, n, m) - 1.0) <= 1e-14


def test_enumerate_and_classes(kratzer, coulomb, units):
    levels = enumerate_levels(kratzer, units, 1, 1)
    assert len(levels) == 6 and levels[0].qn == QuantumNumbers(0, 0)
    assert all(len(g) <= 2 for g in degeneracy_classes(enumerate_levels(kratzer, units, 6, 6)))
    coul = enumerate_levels(coulomb, units, 2, 2)
    assert coul[0].energy == -2.0 and coul[1].energy > -2.0
    classes = degeneracy_classes(enumerate_levels(coulomb, units, 3, 3))
    assert [len(g) for g in classes[:4]] == [1, 3, 5, 7]
    assert {(s.n, s.m) for s in classes[2]} == {(2, 0), (1, 1), (1, -1), (0, 2), (0, -2)}


def test_wrong_kind_rejected(coulomb, units):
    with pytest.raises(ValueError):
        energy_kratzer(coulomb, units, QuantumNumbers(0, 0))


depth = st.floats(min_value=1e-2, max_value=1e2)


@given(d0=depth, n=st.integers(0, 8), m=st.integers(0, 8))
def test_kratzer_level_invariants(d0, n, m):
    spec = PotentialSpec.kratzer(d0)
    e = E(spec, n, m)
    assert -d0 < e < 0
    assert e == E(spec, n, -m)
    assert E(spec, n + 1, m) > e
    assert E(spec, n, m + 1) > e
    assert abs(bound_state(spec, PhysicalConstants(), QuantumNumbers(n, m)).quantization_residual) < 1e-12


@given(q=depth, g=st.floats(0.0, 3.0), n=st.integers(0, 8), m=st.integers(0, 8))
def test_exciton_level_invariants(q, g, n, m):
    spec = PotentialSpec.modified2(q, g)
    e = E(spec, n, m)
    assert e < 0
    assert e == E(spec, n, -m)
    assert E(spec, n + 1, m) > e


@given(hbar=st.floats(0.2, 5.0), mu=st.floats(0.2, 5.0), r0=st.floats(0.2, 5.0))
def test_energy_scales_with_units(hbar, mu, r0):
    # keep gamma^2 fixed at 2 and the level moves with hbar^2 / (mu r0^2)
    d0 = hbar**2 / (mu * r0**2)
    spec = PotentialSpec.kratzer(d0, r0)
    c = PhysicalConstants(hbar, mu)
    assert E(spec, 1, 2, c) == pytest.approx(d0 * E(PotentialSpec.kratzer(1.0), 1, 2), rel=1e-12)
