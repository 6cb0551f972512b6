import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cpforge.constants import EV, e, hbar, k_B, matsubara_frequency
from cpforge.materials import (
    GOLD, INFINITE_PERMITTIVITY, DrudeMetal, GrapheneSheet, drude_model_valid, fermi_dirac,
    permittivity_drude, sigma_drude, sigma_interband, sigma_total, substrate_permittivity,
)
from oracles import sigma_interband_trapezoid

SIGMA_0 = e**2 / (4 * hbar)


def test_gold_parameters_and_skin_depth():
    assert GOLD.omega_p == 1.4e16 and GOLD.gamma_damping == 3e13
    assert GOLD.skin_depth == pytest.approx(21.4e-9, rel=1e-2)


@pytest.mark.parametrize("kwargs", [dict(omega_p=0, gamma_damping=1), dict(omega_p=1, gamma_damping=-1)])
def test_drude_metal_rejects_bad_parameters(kwargs):
    with pytest.raises(ValueError):
        DrudeMetal(**kwargs)


def test_drude_permittivity():
    xi = 1e15
    assert permittivity_drude(GOLD, xi) == pytest.approx(1 + 1.4e16**2 / (xi * (xi + 3e13)), rel=1e-15)
    assert permittivity_drude(GOLD, 0.0) is INFINITE_PERMITTIVITY
    assert permittivity_drude(GOLD, 1e-307) is INFINITE_PERMITTIVITY  # overflow, not inf


@given(st.floats(1e9, 1e19))
def test_drude_permittivity_decreases_toward_one(xi):
    eps = permittivity_drude(GOLD, xi)
    assert math.isfinite(eps)
    assert eps > 1.0
    assert permittivity_drude(GOLD, 2 * xi) <= eps


def test_sheet_validation_and_energy_units():
    sheet = GrapheneSheet(fermi_level=0.5)
    assert sheet.fermi_energy == pytest.approx(0.5 * EV)
    assert sheet.suspended
    with pytest.raises(ValueError):
        GrapheneSheet(fermi_level=-0.1)
    with pytest.raises(ValueError):
        GrapheneSheet(relaxation_time=0)
    with pytest.raises(ValueError):
        GrapheneSheet(substrate=0.5)


def test_substrate_permittivity():
    assert substrate_permittivity(GrapheneSheet(), 1e14) == 1.0
    assert substrate_permittivity(GrapheneSheet(substrate=3.9), 1e14) == 3.9
    assert substrate_permittivity(GrapheneSheet(substrate=GOLD), 1e14) == permittivity_drude(GOLD, 1e14)


def test_fermi_dirac_is_half_at_fermi_level_and_stable():
    sheet = GrapheneSheet(fermi_level=0.3)
    assert fermi_dirac(sheet.fermi_energy / hbar, sheet) == pytest.approx(0.5)
    assert fermi_dirac(1e20, sheet) == 0.0
    assert fermi_dirac(-1e20, sheet) == 1.0


def test_sigma_drude_closed_form():
    sheet = GrapheneSheet(fermi_level=0.5)
    kT = k_B * 300
    xi = 1e14
    expected = 2 * e**2 * kT / (math.pi * hbar**2) * math.log(2 * math.cosh(sheet.fermi_energy / (2 * kT)))
    assert sigma_drude(sheet, xi) == pytest.approx(expected / (xi + 1e12), rel=1e-13)


def test_sigma_drude_large_fermi_level_does_not_overflow():
    assert math.isfinite(sigma_drude(GrapheneSheet(fermi_level=50.0, temperature=1.0), 1e14))


def test_sigma_interband_limits():
    sheet = GrapheneSheet(fermi_level=0.5)
    assert sigma_interband(sheet, 0.0) == 0.0
    assert sigma_interband(sheet, 1e18) / SIGMA_0 == pytest.approx(1.0, abs=1e-2)
    # kT << E_F: the occupation difference is a step at E_F; corrections are O((kT/E_F)^2)
    cold = GrapheneSheet(fermi_level=0.5, temperature=1.0)
    for xi in (1e15, 1e16, 1e18):
        blocked = 2 / math.pi * math.atan(2 * cold.fermi_energy / (hbar * xi))
        assert sigma_interband(cold, xi) / SIGMA_0 == pytest.approx(1 - blocked, rel=1e-7)
    # Pauli blocking: a large E_F suppresses interband absorption at low xi
    assert sigma_interband(GrapheneSheet(fermi_level=1.0), 1e13) < sigma_interband(GrapheneSheet(), 1e13)


def test_sigma_total_and_validity_flag():
    sheet = GrapheneSheet(fermi_level=0.2)
    assert not drude_model_valid(sheet, 1e11)
    assert drude_model_valid(sheet, 1e13)
    xi = matsubara_frequency(4, 300)
    assert sigma_total(sheet, xi) == sigma_drude(sheet, xi) + sigma_interband(sheet, xi)


def test_sigma_rejects_negative_frequency():
    with pytest.raises(ValueError):
        sigma_drude(GrapheneSheet(), -1.0)
    with pytest.raises(ValueError):
        sigma_interband(GrapheneSheet(), -1.0)


def test_sigma_interband_matches_brute_force():
    rng = np.random.default_rng(20240611)
    for _ in range(20):
        T = rng.uniform(100, 600)
        xi = 10 ** rng.uniform(13, math.log10(5e14))
        ef = rng.uniform(0, 1)
        ref = sigma_interband_trapezoid(ef, T, xi)
        got = sigma_interband(GrapheneSheet(fermi_level=ef, temperature=T), xi)
        assert got == pytest.approx(ref, rel=1e-9), (ef, T, xi)


@settings(max_examples=40, deadline=None)
@given(st.floats(0, 1.5), st.floats(50, 800), st.floats(1e12, 1e17))
def test_sigma_interband_bounded_by_universal_value(ef, T, xi):
    s = sigma_interband(GrapheneSheet(fermi_level=ef, temperature=T), xi)
    assert 0 <= s <= SIGMA_0 * (1 + 1e-9)
