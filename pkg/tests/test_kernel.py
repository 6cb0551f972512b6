import math

import numpy as np
import pytest

from cpforge.constants import c, characteristic_frequency, matsubara_frequency
from cpforge.kernel import (
    KernelRequest, energy_kernel, force_kernel, ideal_metal_components, ideal_metal_energy_kernel,
    ideal_metal_force_kernel, interface_components,
)
from cpforge.materials import GrapheneSheet
from cpforge.particle import PolarizabilityTensor
from cpforge.reflection import DrudeHalfSpace, IdealMetal, LocalGraphene, reflect
from oracles import kernels_kappa_trapezoid

ALPHA = PolarizabilityTensor(2.0e-24, 2.0e-24, 5.0e-24)


@pytest.mark.parametrize("d", [10e-9, 1e-6, 50e-6])
def test_generic_quadrature_reproduces_ideal_metal(d):
    for u in np.linspace(0.0, 30.0, 50):
        xi = u * characteristic_frequency(d)
        generic = interface_components(IdealMetal(), xi, d, closed_form=False)
        closed = ideal_metal_components(xi, d)
        for g, cl in zip(generic[:4], closed[:4]):
            assert g == pytest.approx(cl, rel=1e-10)


def test_isotropic_closed_forms_agree_with_components():
    d, xi, a = 100e-9, 3e14, 1e-24
    iso = PolarizabilityTensor(a, a, a)
    comp = ideal_metal_components(xi, d)
    assert comp.energy(iso) == pytest.approx(ideal_metal_energy_kernel(a, xi, d), rel=1e-14)
    assert comp.force(iso) == pytest.approx(ideal_metal_force_kernel(a, xi, d), rel=1e-14)


CASES = [
    (DrudeHalfSpace(), 0), (DrudeHalfSpace(), 3),
    (LocalGraphene(GrapheneSheet(0.5)), 5), (LocalGraphene(GrapheneSheet(0.0, substrate=3.9)), 1),
]


@pytest.mark.parametrize("interface,n", CASES)
@pytest.mark.parametrize("d", [50e-9, 1e-6])
def test_kernels_match_kappa_trapezoid(interface, n, d):
    xi = matsubara_frequency(n, 300.0)

    def refl(kappa):
        return reflect(interface, xi, np.where(kappa == 0, 1e-3, kappa), n)

    f, ft = kernels_kappa_trapezoid(xi, d, refl, ALPHA.transverse, ALPHA.alpha_z)
    req = KernelRequest(xi, d, interface, ALPHA, n)
    assert energy_kernel(req) == pytest.approx(f, rel=1e-9)
    assert force_kernel(req) == pytest.approx(ft, rel=1e-9)


def test_force_kernel_is_minus_d_derivative_of_energy_kernel():
    iface = LocalGraphene(GrapheneSheet(0.2))
    xi = matsubara_frequency(2, 300.0)
    d = 200e-9
    h = d * 1e-4
    e_p = interface_components(iface, xi, d + h, 2, 1e-13).energy(ALPHA)
    e_m = interface_components(iface, xi, d - h, 2, 1e-13).energy(ALPHA)
    ft = interface_components(iface, xi, d, 2, 1e-13).force(ALPHA)
    assert -(e_p - e_m) / (2 * h) == pytest.approx(ft, rel=1e-7)


def test_kernels_attractive_and_bounded_by_ideal_metal():
    for iface in (DrudeHalfSpace(), LocalGraphene(GrapheneSheet(1.0))):
        for n in (0, 1, 10, 100):
            xi = matsubara_frequency(n, 300.0)
            comp = interface_components(iface, xi, 100e-9, n)
            ref = ideal_metal_components(xi, 100e-9)
            assert ref.force(ALPHA) <= comp.force(ALPHA) <= 0
            assert ref.energy(ALPHA) <= comp.energy(ALPHA) <= 0


def test_static_term_ideal_metal_limit():
    # xi = 0 gives r_p = 1 for both metal and graphene; the kernels coincide with the ideal metal
    comp = interface_components(DrudeHalfSpace(), 0.0, 1e-6, 0)
    ref = ideal_metal_components(0.0, 1e-6)
    assert comp.force(ALPHA) == pytest.approx(ref.force(ALPHA), rel=1e-12)


def test_request_validation():
    with pytest.raises(ValueError):
        KernelRequest(1e14, 0.0, IdealMetal(), ALPHA)
    with pytest.raises(ValueError):
        KernelRequest(-1.0, 1e-7, IdealMetal(), ALPHA)
    assert KernelRequest(1e14, 1e-7, IdealMetal(), ALPHA).omega_c == pytest.approx(c / 2e-7)
