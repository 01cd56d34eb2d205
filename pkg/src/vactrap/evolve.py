"""Time integration with trace/Hermiticity/positivity monitors.

The propagated matrix is never projected, renormalized or symmetrized:
whatever the integrator produces is stored, and its defects (trace drift,
Hermiticity drift, most negative eigenvalue, guard-band population) are
recorded per time point.  Breaches raise by default, carrying the partial
record, so studies *of* a breach can pass ``raise_on_breach=False`` and
look at the diagnostics instead.  What counts as a positivity breach
depends on the generator: the RWA equation is completely positive, so any
visible negativity there is an integration defect and raises, while the
beyond-RWA equation is *supposed* to leak negativity (a small immediate
dip, growing without bound past the Gaussian horizon) -- for it min_eig
is diagnostic data only and positivity never aborts a run.  Truncation
overflow into the guard band aborts either way.

Time scales: real single-electron parameters put ``w/G`` near 1e11, so
direct integration over laboratory times is hopeless; dynamical studies are
meant to run in scaled units (``w = 1``, rates as dimensionless ratios, see
``RateSet.scaled``), while everything analytic stays in SI.

The analytic positivity horizon for Gaussian states is

    ``T_max = (G + sqrt(G^2 + 4 D^2)) / (4 D^2)``,   ``D = delta_minus_ren``

-- the positive root of ``4 D^2 t^2 - 2 G t - 1 = 0``; the state map stays
positive on Gaussian inputs strictly below it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import (
    DimensionMismatch,
    GuardBandOverflow,
    PositivityBreach,
    ToleranceFailure,
    UnboundedWindow,
)
from .liouville import DensityMatrix, Superoperator, unvec, vec
from .params import ApproximationMode
from .rates import RateSet

__all__ = [
    "EvolutionRecord",
    "ValidityWindow",
    "integrate",
    "validity_window",
    "gaussian_positivity_check",
    "record_to_csv",
]

#: Positivity floor for completely positive (RWA) dynamics, where any
#: negative eigenvalue is integrator error.
POSITIVITY_FLOOR_CP = -1e-8
#: Maximum tolerated population in the top two (guard-band) levels.
GUARD_BAND_LIMIT = 1e-6


@dataclass(frozen=True, eq=False)
class EvolutionRecord:
    """Stored trajectory plus per-point diagnostics.

    ``states[k]`` is the unvalidated snapshot at ``times[k]`` (the first
    entry is the supplied initial state).  Diagnostics arrays align with
    ``times``: absolute trace deviation, max Hermiticity deviation, lowest
    eigenvalue of the Hermitized snapshot, and guard-band population.
    """

    times: np.ndarray
    states: list[DensityMatrix]
    trace_dev: np.ndarray
    herm_dev: np.ndarray
    min_eig: np.ndarray
    guard_pop: np.ndarray

    def state_matrices(self) -> list[np.ndarray]:
        return [s.matrix for s in self.states]


def integrate(
    generator: Superoperator,
    rho0: DensityMatrix | np.ndarray,
    t_span: tuple[float, float],
    tol: float = 1e-10,
    n_points: int = 201,
    raise_on_breach: bool = True,
) -> EvolutionRecord:
    """Propagate ``rho0`` under ``generator`` over ``t_span``.

    Uses an adaptive high-order explicit Runge-Kutta scheme (DOP853) on the
    vectorized state with ``rtol = atol = tol``; ``n_points`` evenly spaced
    snapshots (including both endpoints) are stored.

    Raises
    ------
    ToleranceFailure
        If the integrator cannot meet ``tol``.
    PositivityBreach
        First stored time where the lowest eigenvalue drops below -1e-6.
    GuardBandOverflow
        First stored time where the top two levels hold more than 1e-6
        population.
    """
    if not isinstance(rho0, DensityMatrix):
        rho0 = DensityMatrix(np.asarray(rho0, dtype=complex))
    if rho0.dim != generator.dim:
        raise DimensionMismatch(
            f"initial state dim {rho0.dim} does not match generator dim {generator.dim}"
        )
    t0, t1 = float(t_span[0]), float(t_span[1])
    if not t1 > t0:
        raise ValueError(f"t_span must increase, got {t_span}")
    if n_points < 2:
        raise ValueError("n_points must be at least 2")

    gen_matrix = generator.matrix

    def rhs(_t: float, y: np.ndarray) -> np.ndarray:
        return gen_matrix @ y

    times = np.linspace(t0, t1, n_points)
    sol = solve_ivp(
        rhs,
        (t0, t1),
        vec(rho0.matrix),
        method="DOP853",
        t_eval=times,
        rtol=tol,
        atol=tol,
    )
    if not sol.success:
        raise ToleranceFailure(f"integrator failed: {sol.message}")

    dim = generator.dim
    # The RWA generator is completely positive, so negativity there means
    # the integration itself broke.  The beyond-RWA generator leaks genuine
    # negativity (immediately at small amplitude, substantially past the
    # Gaussian horizon), so for it min_eig is recorded but never raised on.
    floor = (
        POSITIVITY_FLOOR_CP
        if generator.mode is ApproximationMode.WITH_RWA
        else -math.inf
    )
    states: list[DensityMatrix] = []
    trace_dev = np.empty(n_points)
    herm_dev = np.empty(n_points)
    min_eig = np.empty(n_points)
    guard_pop = np.empty(n_points)
    first_breach: tuple[str, int] | None = None
    for k in range(n_points):
        mat = unvec(sol.y[:, k], dim)
        states.append(DensityMatrix(mat, validate=False))
        tr = np.trace(mat)
        trace_dev[k] = abs(tr - 1.0)
        herm_dev[k] = float(np.max(np.abs(mat - mat.conj().T)))
        min_eig[k] = float(np.linalg.eigvalsh((mat + mat.conj().T) / 2.0).min())
        guard_pop[k] = float(mat[-1, -1].real + mat[-2, -2].real)
        if first_breach is None:
            if min_eig[k] < floor:
                first_breach = ("positivity", k)
            elif guard_pop[k] > GUARD_BAND_LIMIT:
                first_breach = ("guard", k)

    record = EvolutionRecord(
        times=times,
        states=states,
        trace_dev=trace_dev,
        herm_dev=herm_dev,
        min_eig=min_eig,
        guard_pop=guard_pop,
    )
    if raise_on_breach and first_breach is not None:
        kind, k = first_breach
        if kind == "positivity":
            raise PositivityBreach(
                f"state eigenvalue {min_eig[k]:.3e} below {floor} "
                f"at t = {times[k]!r}",
                time=float(times[k]),
                min_eigenvalue=float(min_eig[k]),
                record=record,
            )
        raise GuardBandOverflow(
            f"guard-band population {guard_pop[k]:.3e} above {GUARD_BAND_LIMIT} "
            f"at t = {times[k]!r}; enlarge the truncation",
            time=float(times[k]),
            population=float(guard_pop[k]),
            record=record,
        )
    return record


@dataclass(frozen=True)
class ValidityWindow:
    """Analytic Gaussian-positivity horizon and its inputs."""

    t_max: float
    gamma: float
    delta_minus_ren: float


def validity_window(rates: RateSet) -> ValidityWindow:
    """Horizon ``T_max`` for the rate set (uses the renormalized shift).

    Raises
    ------
    UnboundedWindow
        If the renormalized single-quantum shift vanishes (the horizon
        recedes to infinity; at ``G = 0`` the formula's limit
        ``1/(2 |D|)`` is returned normally).
    """
    d = rates.delta_minus_ren
    g = rates.gamma
    if d == 0.0:
        raise UnboundedWindow(
            "delta_minus_ren = 0: the Gaussian positivity window is unbounded"
        )
    t_max = (g + math.sqrt(g * g + 4.0 * d * d)) / (4.0 * d * d)
    return ValidityWindow(t_max=t_max, gamma=g, delta_minus_ren=d)


def gaussian_positivity_check(rates: RateSet, t: float) -> bool:
    """Whether the Gaussian state map is positivity-preserving at time ``t``.

    Evaluates ``G - 2 D^2 t > -1/(2 t)`` (equivalently ``t < T_max``); with
    ``D = 0`` the condition holds for every ``t``.
    """
    if not t > 0.0:
        raise ValueError(f"t must be positive, got {t}")
    d = rates.delta_minus_ren
    return rates.gamma - 2.0 * d * d * t > -1.0 / (2.0 * t)


def record_to_csv(
    record: EvolutionRecord,
    observables: dict[str, np.ndarray] | None = None,
) -> str:
    """Render a record as CSV: diagnostics plus optional observable columns.

    ``observables`` maps a column name to the operator whose expectation is
    evaluated against each stored state (real part).
    """
    names = list(observables) if observables else []
    header = ["time", "trace_dev", "herm_dev", "min_eig", "guard_pop", *names]
    lines = [",".join(header)]
    for k, t in enumerate(record.times):
        row = [
            repr(float(t)),
            repr(float(record.trace_dev[k])),
            repr(float(record.herm_dev[k])),
            repr(float(record.min_eig[k])),
            repr(float(record.guard_pop[k])),
        ]
        mat = record.states[k].matrix
        for name in names:
            row.append(repr(float(np.trace(observables[name] @ mat).real)))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"
