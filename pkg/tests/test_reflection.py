import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cpforge.constants import alpha_fs, c, hbar, k_B, matsubara_frequency
from cpforge.errors import MissingIndex, UnsupportedLimit
from cpforge.materials import GOLD, GrapheneSheet, INFINITE_PERMITTIVITY, sigma_total
from cpforge.reflection import (
    FERMI_VELOCITY, DrudeHalfSpace, IdealMetal, LocalGraphene, NonlocalGraphene, axial_wavevectors,
    fresnel_halfspace, polarization_tensor, reflect, reflect_graphene_local,
)
from oracles import fresnel_drude_direct, graphene_direct, polarization_tensor_simpson

KAPPAS = np.geomspace(1e3, 1e10, 57)


def test_ideal_metal_is_constant():
    r = reflect(IdealMetal(), 1e14, KAPPAS)
    assert np.all(r.r_s == -1) and np.all(r.r_p == 1)
    assert r.r_s.shape == KAPPAS.shape


def test_axial_wavevectors():
    g = axial_wavevectors(4.0, 1e15, 2e7)
    assert g.gamma0_tilde == pytest.approx(math.hypot(1e15 / c, 2e7))
    assert g.gamma_tilde == pytest.approx(math.sqrt(4 * (1e15 / c) ** 2 + 4e14))


def test_fresnel_matches_direct_formulas():
    for xi in (1e13, 1e15, 1e17):
        r_s, r_p = reflect(DrudeHalfSpace(), xi, KAPPAS)
        e_s, e_p = fresnel_drude_direct(GOLD.omega_p, GOLD.gamma_damping, xi, KAPPAS)
        np.testing.assert_allclose(r_s, e_s, rtol=1e-12, atol=1e-15)
        np.testing.assert_allclose(r_p, e_p, rtol=1e-12, atol=1e-15)


def test_fresnel_vacuum_and_perfect_conductor():
    r = fresnel_halfspace(1.0, 1e14, KAPPAS)
    assert np.all(r.r_s == 0) and np.all(r.r_p == 0)
    r = fresnel_halfspace(INFINITE_PERMITTIVITY, 1e14, KAPPAS)
    assert np.all(r.r_s == -1) and np.all(r.r_p == 1)


def test_static_limits_and_errors():
    for model in (DrudeHalfSpace(), LocalGraphene(GrapheneSheet())):
        r = reflect(model, 0.0, KAPPAS)
        assert np.all(r.r_s == 0) and np.all(r.r_p == 1)
    with pytest.raises(UnsupportedLimit):
        reflect(DrudeHalfSpace(), 0.0, 0.0)
    with pytest.raises(ValueError):
        reflect(IdealMetal(), -1.0, 1e6)
    with pytest.raises(MissingIndex):
        reflect(NonlocalGraphene(), matsubara_frequency(1, 300), 1e6)
    with pytest.raises(ValueError):
        reflect(NonlocalGraphene(), 1e14, 1e6, matsubara_index=1)


def test_suspended_graphene_matches_boundary_conditions():
    sheet = GrapheneSheet(fermi_level=0.3)
    for n in (1, 5, 40):
        xi = matsubara_frequency(n, 300)
        r_s, r_p = reflect(LocalGraphene(sheet), xi, KAPPAS)
        e_s, e_p = graphene_direct(sigma_total(sheet, xi), xi, KAPPAS)
        np.testing.assert_allclose(r_s, e_s, rtol=1e-12)
        np.testing.assert_allclose(r_p, e_p, rtol=1e-12)


def test_graphene_limits():
    xi = 1e14
    zero = reflect_graphene_local(GrapheneSheet(), xi, KAPPAS, sigma=0.0)
    assert np.allclose(zero.r_s, 0) and np.allclose(zero.r_p, 0)
    inf = reflect_graphene_local(GrapheneSheet(), xi, KAPPAS, sigma=math.inf)
    assert np.all(inf.r_s == -1) and np.all(inf.r_p == 1)
    # with sigma = 0 a substrate sheet reduces to the bare substrate
    on_gold = reflect_graphene_local(GrapheneSheet(substrate=GOLD), xi, KAPPAS, sigma=0.0)
    bare = reflect(DrudeHalfSpace(), xi, KAPPAS)
    np.testing.assert_allclose(on_gold.r_s, bare.r_s, rtol=1e-12)
    np.testing.assert_allclose(on_gold.r_p, bare.r_p, rtol=1e-12)
    with pytest.raises(ValueError):
        reflect_graphene_local(GrapheneSheet(), 0.0, KAPPAS)


@settings(max_examples=60, deadline=None)
@given(st.floats(1e11, 1e18), st.floats(0.0, 1e10), st.sampled_from([None, 3.9, GOLD]), st.floats(0, 1))
def test_local_coefficients_are_bounded(xi, kappa, substrate, ef):
    for model in (DrudeHalfSpace(), LocalGraphene(GrapheneSheet(fermi_level=ef, substrate=substrate))):
        r_s, r_p = reflect(model, xi, kappa)
        assert -1 <= r_s <= 0 and 0 <= r_p <= 1


@pytest.mark.parametrize("kappa", [1e5, 1e7, 1e8])
def test_polarization_tensor_matches_simpson(kappa):
    got = polarization_tensor(3, kappa, 300.0)
    ref = polarization_tensor_simpson(3, kappa, 300.0)
    assert got[0] == pytest.approx(ref[0], rel=1e-7)
    assert got[1] == pytest.approx(ref[1], rel=1e-7)


def test_polarization_tensor_charge_conservation():
    # Pi_00 has to vanish for kappa -> 0 at nonzero frequency
    for n in (1, 4, 20):
        p00, _ = polarization_tensor(n, 1e-2, 300.0)
        scale = 8 * alpha_fs * hbar * (c / FERMI_VELOCITY) ** 2 * matsubara_frequency(n, 300) / c
        assert abs(p00) < 1e-12 * scale


def test_polarization_tensor_gauge_relation():
    # at kappa -> 0: Pi_tr = 2 (xi/c)^2 lim Pi_00/kappa^2
    for n in (1, 3, 10):
        xc = matsubara_frequency(n, 300.0) / c
        k1, k2 = 1e2, 2e2
        p1, tr = polarization_tensor(n, k1, 300.0)
        p2, _ = polarization_tensor(n, k2, 300.0)
        # Richardson-extrapolate the O(kappa^2) correction of Pi_00/kappa^2
        lim = (4 * p1 / k1**2 - p2 / k2**2) / 3
        assert tr == pytest.approx(2 * xc**2 * lim, rel=1e-6)


def test_polarization_tensor_vectorised_and_static():
    ks = np.array([1e5, 1e6, 1e7])
    p00, ptr = polarization_tensor(2, ks, 300.0)
    for k, a, b in zip(ks, p00, ptr):
        assert (a, b) == pytest.approx(polarization_tensor(2, k, 300.0), rel=1e-9)
    p00, ptr = polarization_tensor(0, 1e7, 300.0)
    assert p00 > 0 and ptr >= p00
    with pytest.raises(UnsupportedLimit):
        polarization_tensor(0, 0.0, 300.0)


def test_static_tensor_zero_temperature_part():
    # n = 0: the temperature-independent part of Pi_00 is pi hbar alpha kappa c / v_F
    kappa = 1e9  # theta_T large, thermal corrections negligible
    p00, _ = polarization_tensor(0, kappa, 300.0)
    assert p00 == pytest.approx(math.pi * hbar * alpha_fs * kappa * c / FERMI_VELOCITY, rel=1e-6)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 60), st.floats(1e4, 1e9))
def test_nonlocal_coefficients_are_bounded(n, kappa):
    xi = matsubara_frequency(n, 300.0)
    r_s, r_p = reflect(NonlocalGraphene(), xi, kappa, matsubara_index=n)
    assert -1 <= r_s <= 0 and 0 <= r_p <= 1


def test_nonlocal_close_to_local_for_undoped_graphene():
    sheet = GrapheneSheet(fermi_level=0.0)
    n = 5
    xi = matsubara_frequency(n, 300.0)
    ks = np.geomspace(1e5, 5e7, 9)
    loc = reflect(LocalGraphene(sheet), xi, ks)
    nl = reflect(NonlocalGraphene(), xi, ks, matsubara_index=n)
    np.testing.assert_allclose(nl.r_p, loc.r_p, rtol=0.05)
    np.testing.assert_allclose(nl.r_s, loc.r_s, rtol=0.05)
