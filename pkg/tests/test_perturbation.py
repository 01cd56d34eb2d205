"""Second-order perturbation-theory constants and the factor-3 cross-check."""
import math

import pytest

from vactrap.errors import SingularDenominator
from vactrap.params import (
    CODATA_2018,
    ELECTRON,
    ParticleSpec,
    cutoff_frequency,
    load_config,
)
from vactrap.perturbation import (
    pt_constants,
    pt_constants_for,
    pt_energy_shift,
    pt_frequency_shift_renormalized,
    pt_renormalization_term,
)
from vactrap.rates import (
    damping_rate,
    free_particle_shift,
    level_shifts_renormalized,
)

W_REF = 9.42e11  # reference trap frequency, rad/s
OMEGA_MAX_1 = 376730313461770.6  # largest-amplitude cutoff at the reference trap

# frozen against an independent straight-line transcription of the closed
# forms (no package imports), evaluated once and pinned here
FROZEN = {
    "delta0_pm": (2091.7729802463605, -2155.4001158756687),
    "delta1_pm": (0.06817721987621193, -0.06920799536196874),
    "delta2a_pm": (9.904757696127466e-07, -1.0092268015625581e-06),
    "delta2b_pm": (9.966430668019056e-07, -1.0028927852084967e-06),
    "delta2c_pm": (0.06843109774051416, -0.06894638754169176),
}


def test_constants_frozen_values():
    shifts = pt_constants(ELECTRON, W_REF, OMEGA_MAX_1)
    for name, (plus, minus) in FROZEN.items():
        got_plus, got_minus = getattr(shifts, name)
        assert got_plus == pytest.approx(plus, rel=1e-12), name
        assert got_minus == pytest.approx(minus, rel=1e-12), name
    assert shifts.kappa == pytest.approx(
        CODATA_2018.hbar * W_REF / (ELECTRON.mass * CODATA_2018.c**2), rel=1e-15
    )


def test_constants_hierarchy_in_recoil_parameter():
    # successive orders shrink by the recoil ratio ~ 1e-9, but the W^3 and
    # W^5 cutoff powers promote d1 and d2 back up; at the hardest physical
    # cutoff they settle ~ 3e-5 below d0 -- small yet far above rounding
    shifts = pt_constants(ELECTRON, W_REF, OMEGA_MAX_1)
    d0 = abs(shifts.delta0_pm[0])
    assert abs(shifts.delta1_pm[0]) / d0 < 1e-3
    assert abs(shifts.delta1_pm[0]) / d0 == pytest.approx(3.2593e-5, rel=1e-3)
    assert abs(shifts.delta2c_pm[0]) / d0 == pytest.approx(3.2714e-5, rel=1e-3)
    assert abs(shifts.delta2a_pm[0]) < abs(shifts.delta1_pm[0])


def test_ground_level_combination():
    shifts = pt_constants(ELECTRON, W_REF, OMEGA_MAX_1)
    d0p = shifts.delta0_pm[0]
    d1p = shifts.delta1_pm[0]
    d2ap = shifts.delta2a_pm[0]
    d2bp = shifts.delta2b_pm[0]
    d2cp = shifts.delta2c_pm[0]
    expected = -d0p - 2.0 * d1p - 6.0 * d2ap + d2bp - d2cp
    got = pt_energy_shift(0, shifts)
    assert got == pytest.approx(expected, rel=1e-14)
    assert got == pytest.approx(-2091.977770730065, rel=1e-12)


def test_energy_shift_rejects_negative_level():
    shifts = pt_constants(ELECTRON, W_REF, OMEGA_MAX_1)
    with pytest.raises(ValueError):
        pt_energy_shift(-1, shifts)


def test_zero_cutoff_gives_zero_constants():
    shifts = pt_constants(ELECTRON, W_REF, 0.0)
    for name in FROZEN:
        plus, minus = getattr(shifts, name)
        assert plus == 0.0
        assert minus == 0.0


@pytest.mark.parametrize("order", [1, 2, 3])
def test_resonant_cutoffs_are_rejected(order):
    with pytest.raises(SingularDenominator):
        pt_constants(ELECTRON, W_REF, order * W_REF)


def test_invalid_frequencies_are_rejected():
    with pytest.raises(SingularDenominator):
        pt_constants(ELECTRON, 0.0, OMEGA_MAX_1)
    with pytest.raises(SingularDenominator):
        pt_constants(ELECTRON, W_REF, -1.0)


def test_constants_for_reference_config():
    # the reference device resolves its own zero-point cutoff, so the
    # convenience wrapper must agree with the explicit two-argument route
    config = load_config("sec-reference")
    assert pt_constants_for(config) == pt_constants(
        ELECTRON, config.omega_c, cutoff_frequency(config)
    )


def test_renormalization_term_matches_free_particle_route():
    # 2 a_q kappa W / pi == 1.5 * delta_e_lin * omega_c, for any charge/mass
    for particle in (
        ELECTRON,
        ParticleSpec(mass=3.0 * CODATA_2018.m_e, charge=2.0 * CODATA_2018.e),
    ):
        term = pt_renormalization_term(particle, W_REF, OMEGA_MAX_1)
        lin = free_particle_shift(particle, OMEGA_MAX_1).delta_e_lin
        assert term == pytest.approx(1.5 * lin * W_REF, rel=1e-12)


@pytest.mark.parametrize("ratio", [5.0, 1000.0])
@pytest.mark.parametrize("omega_c", [W_REF, 2.5e11])
def test_renormalized_spacing_is_three_times_master_equation_shift(ratio, omega_c):
    omega_max = ratio * omega_c
    pt = pt_frequency_shift_renormalized(ELECTRON, omega_c, omega_max)
    gamma = damping_rate(ELECTRON, omega_c)
    dp_ren, dm_ren = level_shifts_renormalized(gamma, omega_c, omega_max)
    me = dm_ren - dp_ren
    assert pt / me == pytest.approx(3.0, rel=1e-9)
    assert pt > 0.0


def test_renormalized_spacing_requires_cutoff_above_trap():
    with pytest.raises(SingularDenominator):
        pt_frequency_shift_renormalized(ELECTRON, W_REF, W_REF)
    with pytest.raises(SingularDenominator):
        pt_frequency_shift_renormalized(ELECTRON, W_REF, 0.5 * W_REF)
