"""Truncated-level ladder operators and master-equation superoperators.

Vectorization convention (column-major / Fortran order throughout):
``vec(A @ sigma @ B) == kron(B.T, A) @ vec(sigma)`` with the matrix entry
``(i, j)`` at vector position ``i + j*dim``.

Truncation policy: operators are built on an ``dim``-level ladder and
products are formed *after* truncation, so the commutator ``[b, b+]`` is the
identity except for the ``(dim-1, dim-1)`` entry, which is ``1 - dim``.
The top two levels are treated as a guard band by the evolution layer:
population reaching them means the physical state no longer fits the
truncation, not that anything here silently fixed it up.

Generators consume the renormalized shift pair of a
:class:`~vactrap.rates.RateSet` (``rates.delta_plus`` / ``rates.delta_minus``).
For scaled-unit studies build the rate set with ``RateSet.scaled``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, DimensionTooSmall
from .params import CODATA_2018, ApproximationMode
from .rates import RateSet

__all__ = [
    "FockSpace",
    "FockOperators",
    "DensityMatrix",
    "Superoperator",
    "build_fock_operators",
    "vec",
    "unvec",
    "spre",
    "spost",
    "sandwich",
    "build_redfield_generator",
    "build_lindblad_generator",
    "build_xp_generator",
    "build_2d_generator",
    "reduce_to_1d",
    "sigma02_rhs",
    "spectral_abscissa",
    "superoperator_to_csv",
]


@dataclass(frozen=True)
class FockSpace:
    """A truncated ``dim``-level oscillator ladder.

    ``omega_c`` (rad/s), ``mass`` (kg) and ``hbar`` fix the position and
    momentum scalings; set all three to 1.0 for scaled-unit work.
    """

    dim: int
    omega_c: float = 1.0
    mass: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.dim < 2:
            raise DimensionTooSmall(f"need at least 2 levels, got dim={self.dim}")
        if not (self.omega_c > 0 and self.mass > 0 and self.hbar > 0):
            raise DimensionMismatch(
                "omega_c, mass and hbar must be positive scalings"
            )

    @classmethod
    def si(cls, dim: int, omega_c: float, mass: float) -> "FockSpace":
        """SI-unit space (hbar from CODATA)."""
        return cls(dim=dim, omega_c=omega_c, mass=mass, hbar=CODATA_2018.hbar)


class FockOperators(NamedTuple):
    """Ladder and quadrature matrices on a truncated space."""

    b: np.ndarray
    bdag: np.ndarray
    x: np.ndarray
    p: np.ndarray
    n: np.ndarray


def build_fock_operators(space: FockSpace) -> FockOperators:
    """Lowering/raising/position/momentum/number matrices (complex dense).

    ``b[n-1, n] = sqrt(n)``;  ``x = sqrt(hbar/(2 m w)) (b + b+)``;
    ``p = -i sqrt(m w hbar / 2) (b - b+)``;  ``n = b+ b`` (exact ladder on
    the first ``dim-1`` levels, corner-truncated at the top).
    """
    dim = space.dim
    b = np.zeros((dim, dim), dtype=complex)
    ns = np.arange(1, dim)
    b[ns - 1, ns] = np.sqrt(ns)
    bdag = b.conj().T
    x_scale = np.sqrt(space.hbar / (2.0 * space.mass * space.omega_c))
    p_scale = np.sqrt(space.mass * space.omega_c * space.hbar / 2.0)
    x = x_scale * (b + bdag)
    p = -1j * p_scale * (b - bdag)
    n = bdag @ b
    return FockOperators(b=b, bdag=bdag, x=x, p=p, n=n)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A (validated) density matrix on a truncated space.

    Validation enforces Hermiticity and unit trace to 1e-12 and eigenvalues
    above -1e-10.  The evolution layer stores *unvalidated* snapshots
    (``validate=False``) and reports their deviations explicitly instead of
    hiding them behind renormalization.
    """

    matrix: np.ndarray
    validate: bool = True

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"density matrix must be square, got shape {m.shape}")
        object.__setattr__(self, "matrix", m)
        if self.validate:
            herm = np.max(np.abs(m - m.conj().T))
            if herm > 1e-12:
                raise DimensionMismatch(f"not Hermitian: max|s - s+| = {herm:.3e}")
            tr = abs(np.trace(m).real - 1.0) + abs(np.trace(m).imag)
            if tr > 1e-12:
                raise DimensionMismatch(f"trace deviates from 1 by {tr:.3e}")
            min_eig = float(np.linalg.eigvalsh((m + m.conj().T) / 2.0).min())
            if min_eig < -1e-10:
                raise DimensionMismatch(f"negative eigenvalue {min_eig:.3e}")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


# --------------------------------------------------------------------------
# Vectorization helpers (column-major convention, see module docstring)
# --------------------------------------------------------------------------

def vec(matrix: np.ndarray) -> np.ndarray:
    """Column-stack a matrix into a vector (Fortran order)."""
    return np.asarray(matrix, dtype=complex).reshape(-1, order="F")


def unvec(vector: np.ndarray, dim: int) -> np.ndarray:
    """Inverse of :func:`vec`."""
    return np.asarray(vector, dtype=complex).reshape((dim, dim), order="F")


def spre(op: np.ndarray) -> np.ndarray:
    """Superoperator for left multiplication: sigma -> op @ sigma."""
    dim = op.shape[0]
    return np.kron(np.eye(dim), op)


def spost(op: np.ndarray) -> np.ndarray:
    """Superoperator for right multiplication: sigma -> sigma @ op."""
    dim = op.shape[0]
    return np.kron(op.T, np.eye(dim))


def sandwich(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Superoperator for sigma -> left @ sigma @ right."""
    return np.kron(right.T, left)


def _commutator_super(op: np.ndarray) -> np.ndarray:
    return spre(op) - spost(op)


def _dissipator(op: np.ndarray) -> np.ndarray:
    opd = op.conj().T
    anti = opd @ op
    return sandwich(op, opd) - 0.5 * spre(anti) - 0.5 * spost(anti)


@dataclass(frozen=True, eq=False)
class Superoperator:
    """A dense generator on vectorized density matrices.

    ``matrix`` is ``(dim**2, dim**2)`` for a single ladder, or
    ``(prod(dims)**2, prod(dims)**2)`` with ``dims`` recording the per-axis
    level counts for tensor-product spaces.
    """

    matrix: np.ndarray
    dim: int
    mode: ApproximationMode
    rates: RateSet
    dims: tuple[int, ...] = field(default=())

    def apply(self, sigma: np.ndarray | DensityMatrix) -> np.ndarray:
        """Time derivative of ``sigma`` under this generator."""
        mat = sigma.matrix if isinstance(sigma, DensityMatrix) else np.asarray(sigma)
        if mat.shape != (self.dim, self.dim):
            raise DimensionMismatch(
                f"state shape {mat.shape} does not match generator dim {self.dim}"
            )
        return unvec(self.matrix @ vec(mat), self.dim)


def _five_line_generator(
    b: np.ndarray, gamma: float, delta_plus: float, delta_minus: float, omega_c: float
) -> np.ndarray:
    """Beyond-RWA generator for one ladder matrix ``b`` (may be embedded).

    The frequency in the coherent part is shifted to
    ``omega_c + delta_minus - delta_plus``; the two-quantum (counter-
    rotating) channels appear both with shift weights ``i delta_+-`` and
    with a ``gamma/2`` weight that survives even at zero shifts.
    """
    bdag = b.conj().T
    n = bdag @ b
    b2 = b @ b
    bdag2 = bdag @ bdag
    omega_tilde = omega_c + delta_minus - delta_plus

    gen = -1j * omega_tilde * _commutator_super(n)
    gen = gen + gamma * _dissipator(b)
    gen = gen + (-1j * delta_plus) * (sandwich(b, b) - spost(b2))
    gen = gen + (-(0.5 * gamma + 1j * delta_minus)) * (sandwich(b, b) - spre(b2))
    gen = gen + (1j * delta_plus) * (sandwich(bdag, bdag) - spre(bdag2))
    gen = gen + (-(0.5 * gamma - 1j * delta_minus)) * (sandwich(bdag, bdag) - spost(bdag2))
    return gen


def build_redfield_generator(space: FockSpace, rates: RateSet) -> Superoperator:
    """Beyond-RWA (Redfield-class) generator on a truncated ladder.

    Not of Lindblad form: besides the damping channel it carries two-quantum
    sandwich terms that create/destroy coherences two levels apart.  Setting
    both shifts to zero does *not* reduce it to the RWA generator - the
    ``gamma/2`` weights of those terms remain.
    """
    ops = build_fock_operators(space)
    gen = _five_line_generator(
        ops.b, rates.gamma, rates.delta_plus, rates.delta_minus, space.omega_c
    )
    return Superoperator(
        matrix=gen, dim=space.dim, mode=ApproximationMode.BEYOND_RWA, rates=rates
    )


def build_lindblad_generator(space: FockSpace, rates: RateSet) -> Superoperator:
    """RWA generator: damped oscillator with frequency ``w + delta_minus``.

    Completely positive by construction; the vacuum (ground state) is
    stationary and diagonal states stay diagonal.
    """
    ops = build_fock_operators(space)
    omega = space.omega_c + rates.delta_minus
    gen = -1j * omega * _commutator_super(ops.n) + rates.gamma * _dissipator(ops.b)
    return Superoperator(
        matrix=gen, dim=space.dim, mode=ApproximationMode.WITH_RWA, rates=rates
    )


def build_xp_generator(space: FockSpace, rates: RateSet) -> Superoperator:
    """The beyond-RWA generator written in position/momentum operators.

    Same physics as :func:`build_redfield_generator` in a different algebra:
    a kinetic-energy commutator with renormalized mass, the bare potential
    commutator, momentum diffusion, two mixed ``p .. x`` channels and two
    pure-commutator counterterms.  Every term is bilinear in (x, p), so the
    truncated matrix agrees with the ladder form to rounding error -- the
    equality is exercised as a test invariant.
    """
    ops = build_fock_operators(space)
    x, p = ops.x, ops.p
    hb = space.hbar
    m = space.mass
    w = space.omega_c
    g = rates.gamma
    dp_ = rates.delta_plus
    dm_ = rates.delta_minus

    p2 = p @ p
    x2 = x @ x
    xp = x @ p
    px = p @ x

    gen = (-1j / hb) * (1.0 + 2.0 * (dm_ - dp_) / w) * _commutator_super(p2 / (2.0 * m))
    gen = gen + (-1j * m * w**2 / (2.0 * hb)) * _commutator_super(x2)
    gen = gen + (g / (hb * m * w)) * (
        sandwich(p, p) - 0.5 * spre(p2) - 0.5 * spost(p2)
    )
    gen = gen + ((dm_ + dp_ + 0.5j * g) / hb) * (
        sandwich(p, x) - 0.5 * spre(xp) - 0.5 * spost(xp)
    )
    gen = gen + ((dm_ + dp_ - 0.5j * g) / hb) * (
        sandwich(x, p) - 0.5 * spre(px) - 0.5 * spost(px)
    )
    gen = gen + ((dm_ - dp_ + w - 0.5j * g) / (2.0 * hb)) * (spost(px) - spre(px))
    gen = gen + ((dm_ - dp_ + w + 0.5j * g) / (2.0 * hb)) * (spre(xp) - spost(xp))
    return Superoperator(
        matrix=gen, dim=space.dim, mode=ApproximationMode.BEYOND_RWA, rates=rates
    )


def build_2d_generator(
    space_x: FockSpace, space_y: FockSpace, rates: RateSet
) -> Superoperator:
    """Beyond-RWA generator for planar motion (two ladders).

    The isotropic vacuum couples to the two orthogonal motions without
    cross terms (the mixed angular integrals vanish), so the planar
    generator is exactly the sum of two commuting single-axis generators
    acting on the tensor-product space.
    """
    bx = np.zeros((space_x.dim, space_x.dim), dtype=complex)
    ns = np.arange(1, space_x.dim)
    bx[ns - 1, ns] = np.sqrt(ns)
    by = np.zeros((space_y.dim, space_y.dim), dtype=complex)
    ns = np.arange(1, space_y.dim)
    by[ns - 1, ns] = np.sqrt(ns)

    bx_full = np.kron(bx, np.eye(space_y.dim))
    by_full = np.kron(np.eye(space_x.dim), by)

    gen = _five_line_generator(
        bx_full, rates.gamma, rates.delta_plus, rates.delta_minus, space_x.omega_c
    ) + _five_line_generator(
        by_full, rates.gamma, rates.delta_plus, rates.delta_minus, space_y.omega_c
    )
    dim = space_x.dim * space_y.dim
    return Superoperator(
        matrix=gen,
        dim=dim,
        mode=ApproximationMode.BEYOND_RWA,
        rates=rates,
        dims=(space_x.dim, space_y.dim),
    )


def reduce_to_1d(gen2d: Superoperator) -> Superoperator:
    """Recover the single-axis generator from a planar one.

    Applies the planar generator to ``sigma_x (x) |0><0|_y`` basis inputs
    and partial-traces the second axis away.  Because the two axes do not
    couple and each axis generator annihilates the trace, the result does
    not depend on the reference state of the traced axis.
    """
    if len(gen2d.dims) != 2:
        raise DimensionMismatch("reduce_to_1d needs a generator with dims=(nx, ny)")
    nx, ny = gen2d.dims
    tau = np.zeros((ny, ny), dtype=complex)
    tau[0, 0] = 1.0
    out = np.zeros((nx * nx, nx * nx), dtype=complex)
    for j in range(nx):
        for i in range(nx):
            basis = np.zeros((nx, nx), dtype=complex)
            basis[i, j] = 1.0
            image = gen2d.apply(np.kron(basis, tau))
            reduced = np.einsum(
                "ikjk->ij", image.reshape(nx, ny, nx, ny)
            )
            out[:, i + j * nx] = vec(reduced)
    return Superoperator(
        matrix=out, dim=nx, mode=gen2d.mode, rates=gen2d.rates
    )


def sigma02_rhs(sigma: np.ndarray | DensityMatrix, rates: RateSet) -> complex:
    """Time derivative of the two-quantum coherence entry ``sigma[0, 2]``.

    Hand-expanded matrix element of the beyond-RWA generator; exists as an
    independently written cross-check of the generator build (the two must
    agree to rounding error).  The entry couples to ``sigma[0, 0]``,
    ``sigma[1, 1]`` and ``sigma[2, 2]`` through the two-quantum channels --
    a diagonal (hence classical-looking) state of an undamped trap acquires
    this coherence at a rate proportional to the shifts, which is the
    qualitative signature separating the two treatments.

    Needs at least 5 levels so every coupled entry exists.
    """
    mat = sigma.matrix if isinstance(sigma, DensityMatrix) else np.asarray(sigma)
    if mat.shape[0] < 5:
        raise DimensionTooSmall(
            f"sigma02_rhs couples entries up to sigma[0, 4]; need dim >= 5, got {mat.shape[0]}"
        )
    g = rates.gamma
    dp_ = rates.delta_plus
    dm_ = rates.delta_minus
    w = rates.omega_c
    rt2 = np.sqrt(2.0)
    rt3 = np.sqrt(3.0)
    return (
        (2j * (w + dm_ - dp_) - g) * mat[0, 2]
        + (rt3 * g - 2j * rt3 * dm_) * mat[0, 4]
        + rt3 * g * mat[1, 3]
        - (1j * rt2 * (dp_ + dm_) + g / rt2) * mat[1, 1]
        + rt2 * (1j * dm_ + 0.5 * g) * mat[2, 2]
        + 1j * rt2 * dp_ * mat[0, 0]
    )


def spectral_abscissa(superop: Superoperator) -> float:
    """Largest real part over the generator's eigenvalues.

    Zero (to roundoff) for a healthy dissipative generator.  The truncated
    beyond-RWA generator goes genuinely unstable once the two-quantum
    coupling at the top of the ladder competes with the trap frequency
    (roughly ``dim * delta ~ omega_c``): growing modes appear, seeded by
    roundoff, and long integrations explode.  Probe this before trusting a
    long run at large dimension or large shifts.
    """
    return float(np.linalg.eigvals(superop.matrix).real.max())


def superoperator_to_csv(superop: Superoperator) -> str:
    """Nonzero entries as ``row,col,re,im`` lines (row-major order)."""
    lines = ["row,col,re,im"]
    mat = superop.matrix
    rows, cols = np.nonzero(mat)
    for r, c in zip(rows.tolist(), cols.tolist()):
        z = mat[r, c]
        lines.append(f"{r},{c},{float(z.real)!r},{float(z.imag)!r}")
    return "\n".join(lines) + "\n"
