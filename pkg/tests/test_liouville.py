"""Ladder operators, vectorization, and the master-equation generators."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vactrap.errors import DimensionMismatch, DimensionTooSmall
from vactrap.liouville import (
    DensityMatrix,
    FockSpace,
    build_2d_generator,
    build_fock_operators,
    build_lindblad_generator,
    build_redfield_generator,
    build_xp_generator,
    reduce_to_1d,
    sandwich,
    sigma02_rhs,
    spectral_abscissa,
    spost,
    spre,
    superoperator_to_csv,
    unvec,
    vec,
)
from vactrap.rates import RateSet

RATES = RateSet.scaled(1e-2, 5e-3, 8e-3)


# ---------------------------------------------------------------- operators


def test_fock_space_validation():
    with pytest.raises(DimensionTooSmall):
        FockSpace(dim=1)
    with pytest.raises(DimensionMismatch):
        FockSpace(dim=4, omega_c=-1.0)


def test_ladder_matrix_elements():
    ops = build_fock_operators(FockSpace(dim=6))
    for n in range(1, 6):
        assert ops.b[n - 1, n] == pytest.approx(math.sqrt(n))
    assert np.count_nonzero(ops.b) == 5
    assert np.array_equal(ops.bdag, ops.b.conj().T)
    assert np.allclose(np.diag(ops.n), np.arange(6))


def test_truncated_commutator_corner():
    dim = 7
    ops = build_fock_operators(FockSpace(dim=dim))
    comm = ops.b @ ops.bdag - ops.bdag @ ops.b
    expected = np.eye(dim)
    expected[-1, -1] = 1 - dim
    assert np.allclose(comm, expected, atol=1e-14)


def test_quadrature_scalings():
    space = FockSpace(dim=5, omega_c=3.0, mass=2.0, hbar=1.5)
    ops = build_fock_operators(space)
    xs = math.sqrt(space.hbar / (2.0 * space.mass * space.omega_c))
    ps = math.sqrt(space.mass * space.omega_c * space.hbar / 2.0)
    assert np.allclose(ops.x, xs * (ops.b + ops.bdag))
    assert np.allclose(ops.p, -1j * ps * (ops.b - ops.bdag))
    # canonical pair up to the truncation corner
    comm = ops.x @ ops.p - ops.p @ ops.x
    assert np.allclose(np.diag(comm)[:-1], 1j * space.hbar)


# ---------------------------------------------------------- vectorization


def test_vec_unvec_roundtrip(rng):
    m = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    assert np.array_equal(unvec(vec(m), 5), m)


def test_vec_is_column_major():
    m = np.arange(4.0).reshape(2, 2)  # [[0, 1], [2, 3]]
    assert np.array_equal(vec(m), [0.0, 2.0, 1.0, 3.0])


def test_spre_spost_sandwich_actions(rng):
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    s = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    assert np.allclose(unvec(spre(a) @ vec(s), 4), a @ s)
    assert np.allclose(unvec(spost(b) @ vec(s), 4), s @ b)
    assert np.allclose(unvec(sandwich(a, b) @ vec(s), 4), a @ s @ b)


# ------------------------------------------------------------ DensityMatrix


def test_density_matrix_validation():
    good = np.diag([0.5, 0.5]).astype(complex)
    assert DensityMatrix(good).dim == 2
    with pytest.raises(DimensionMismatch):
        DensityMatrix(np.array([[0.5, 0.1], [0.3, 0.5]], dtype=complex))
    with pytest.raises(DimensionMismatch):
        DensityMatrix(np.diag([0.7, 0.7]).astype(complex))
    with pytest.raises(DimensionMismatch):
        DensityMatrix(np.diag([1.5, -0.5]).astype(complex))
    # unvalidated snapshots may carry anything
    DensityMatrix(np.diag([1.5, -0.5]).astype(complex), validate=False)


def test_density_matrix_must_be_square():
    with pytest.raises(DimensionMismatch):
        DensityMatrix(np.zeros((2, 3)))


# -------------------------------------------------------------- generators


def test_generator_annihilates_trace_and_preserves_hermiticity(herm_factory):
    space = FockSpace(dim=8)
    for build in (build_redfield_generator, build_lindblad_generator):
        gen = build(space, RATES)
        for _ in range(20):
            h = herm_factory(8)
            image = gen.apply(h)
            assert abs(np.trace(image)) < 1e-12
            assert np.max(np.abs(image - image.conj().T)) < 1e-12


@settings(max_examples=25, deadline=None)
@given(
    gamma=st.floats(0.0, 0.5),
    dp=st.floats(-0.1, 0.1),
    dm=st.floats(-0.1, 0.1),
)
def test_trace_annihilation_over_rate_space(gamma, dp, dm):
    gen = build_redfield_generator(FockSpace(dim=5), RateSet.scaled(gamma, dp, dm))
    rng = np.random.default_rng(3)
    a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    h = (a + a.conj().T) / 2.0
    assert abs(np.trace(gen.apply(h))) < 1e-12


def test_vacuum_is_stationary_under_lindblad():
    space = FockSpace(dim=6)
    gen = build_lindblad_generator(space, RATES)
    vac = np.zeros((6, 6), dtype=complex)
    vac[0, 0] = 1.0
    assert np.max(np.abs(gen.apply(vac))) < 1e-15


def test_vacuum_is_not_stationary_beyond_rwa():
    # the counter-rotating channels push the ground state toward a dressed
    # vacuum: the (0, 2) coherence acquires a nonzero derivative
    space = FockSpace(dim=6)
    gen = build_redfield_generator(space, RATES)
    vac = np.zeros((6, 6), dtype=complex)
    vac[0, 0] = 1.0
    image = gen.apply(vac)
    assert abs(image[0, 2]) > 1e-4
    assert abs(image[0, 0]) < 1e-15


def test_population_sector_matches_rwa_on_diagonal_states(rng):
    # on a populations-only state the two-quantum channels feed coherences
    # exclusively: the diagonal of the derivative is identical between the
    # two treatments, and the difference lives entirely on the n <-> n+-2
    # lines.  This is the structural reason witness growth separates them.
    space = FockSpace(dim=9)
    gen_b = build_redfield_generator(space, RATES)
    gen_l = build_lindblad_generator(space, RATES)
    weights = rng.random(9)
    weights /= weights.sum()
    sigma = np.diag(weights.astype(complex))
    image_b = gen_b.apply(sigma)
    image_l = gen_l.apply(sigma)
    assert np.max(np.abs(np.diag(image_b) - np.diag(image_l))) < 1e-15
    assert abs(image_b[0, 2]) > 1e-5  # coherence actually being generated
    diff = image_b - image_l
    off = np.abs(diff) > 1e-14
    rows, cols = np.nonzero(off)
    assert np.all(np.abs(rows - cols) == 2)


def test_redfield_with_zero_shifts_keeps_anomalous_damping_blocks():
    # setting both shifts to zero does NOT collapse the generator to the
    # excitation-conserving form: the two-quantum channels keep their
    # gamma/2 weights.  Pinned here so the difference is a documented
    # feature, not a surprise.
    space = FockSpace(dim=6)
    zero_shift = RateSet.scaled(1e-2, 0.0, 0.0)
    gen_b = build_redfield_generator(space, zero_shift)
    gen_l = build_lindblad_generator(space, zero_shift)
    diff = gen_b.matrix - gen_l.matrix
    # the largest surviving entry is the anomalous-damping coupling of the
    # topmost two-quantum coherence pair, weight gamma/2 * sqrt(n) * sqrt(n)
    # with n = dim - 1
    assert np.max(np.abs(diff)) == pytest.approx(
        0.5 * zero_shift.gamma * (space.dim - 1), rel=1e-12
    )
    row = (space.dim - 2) * space.dim + (space.dim - 1)  # sigma[dim-1, dim-2]
    col = (space.dim - 1) * space.dim + (space.dim - 2)  # sigma[dim-2, dim-1]
    assert diff[row, col] == pytest.approx(
        -0.5 * zero_shift.gamma * (space.dim - 1), rel=1e-12
    )


def test_sigma02_rhs_matches_generator_row(rng):
    space = FockSpace(dim=7)
    gen = build_redfield_generator(space, RATES)
    for _ in range(100):
        a = rng.normal(size=(7, 7)) + 1j * rng.normal(size=(7, 7))
        sigma = (a + a.conj().T) / 2.0
        sigma /= np.trace(sigma).real
        expected = gen.apply(sigma)[0, 2]
        got = sigma02_rhs(sigma, RATES)
        assert abs(got - expected) <= 1e-12 * max(1.0, abs(expected))


def test_sigma02_rhs_single_excitation_coefficient():
    # |1><1| probes the single term -(i sqrt2 (dp + dm) + gamma/sqrt2)
    m = np.zeros((9, 9), dtype=complex)
    m[1, 1] = 1.0
    got = sigma02_rhs(m, RATES)
    want = -(
        1j * math.sqrt(2.0) * (RATES.delta_plus + RATES.delta_minus)
        + RATES.gamma / math.sqrt(2.0)
    )
    assert got == pytest.approx(want, rel=1e-14)


def test_sigma02_rhs_needs_five_levels():
    with pytest.raises(DimensionTooSmall):
        sigma02_rhs(np.eye(4) / 4.0, RATES)


def test_xp_generator_equals_ladder_generator():
    for dim in (4, 8, 12):
        space = FockSpace(dim=dim)
        g_xp = build_xp_generator(space, RATES).matrix
        g_b = build_redfield_generator(space, RATES).matrix
        scale = np.max(np.abs(g_b))
        assert np.max(np.abs(g_xp - g_b)) < 1e-10 * scale


def test_xp_generator_equality_with_si_scalings():
    space = FockSpace(dim=6, omega_c=2.5, mass=3.0, hbar=0.7)
    rates = RateSet.scaled(0.02, 0.004, 0.009, omega_c=2.5)
    g_xp = build_xp_generator(space, rates).matrix
    g_b = build_redfield_generator(space, rates).matrix
    assert np.max(np.abs(g_xp - g_b)) < 1e-10 * np.max(np.abs(g_b))


def test_planar_generator_reduces_to_single_axis():
    g2 = build_2d_generator(FockSpace(dim=6), FockSpace(dim=5), RATES)
    assert g2.dims == (6, 5)
    g1 = reduce_to_1d(g2)
    ref = build_redfield_generator(FockSpace(dim=6), RATES)
    assert np.max(np.abs(g1.matrix - ref.matrix)) < 1e-12


def test_reduce_to_1d_needs_planar_input():
    with pytest.raises(DimensionMismatch):
        reduce_to_1d(build_redfield_generator(FockSpace(dim=4), RATES))


def test_apply_checks_state_shape():
    gen = build_redfield_generator(FockSpace(dim=5), RATES)
    with pytest.raises(DimensionMismatch):
        gen.apply(np.eye(4) / 4.0)


# ---------------------------------------------------------------- spectrum


def test_spectral_abscissa_zero_for_dissipative_generators():
    assert abs(spectral_abscissa(
        build_lindblad_generator(FockSpace(dim=20), RateSet.scaled(1e-2, 2e-2, 3e-2))
    )) < 1e-10
    assert abs(spectral_abscissa(
        build_redfield_generator(FockSpace(dim=20), RATES)
    )) < 1e-10


def test_spectral_abscissa_flags_truncation_instability():
    # with shifts large enough that dim * delta competes with omega_c the
    # truncated generator acquires genuinely growing modes; this pins the
    # regression that motivated the probe
    gen = build_redfield_generator(
        FockSpace(dim=20), RateSet.scaled(1e-2, 2e-2, 3e-2)
    )
    assert spectral_abscissa(gen) > 0.1


# --------------------------------------------------------------------- csv


def test_superoperator_csv_header_and_shape():
    gen = build_lindblad_generator(FockSpace(dim=3), RATES)
    text = superoperator_to_csv(gen)
    lines = text.strip().splitlines()
    assert lines[0] == "row,col,re,im"
    assert len(lines) == 1 + np.count_nonzero(gen.matrix)
    row, col, re, im = lines[1].split(",")
    assert gen.matrix[int(row), int(col)] == complex(float(re), float(im))
