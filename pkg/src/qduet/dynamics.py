"""Propagator and decision functions on a uniform time grid.

The reduced mode dynamics has the closed solution b(t) = V(t) b(0) + noise
with the propagator V(t) = exp(i U t).  Averaging the number operators in
the initial joint state and over the bath splits each decision function
into three parts,

    n_j(t) = mu_j(t) + dmu_j(t) + nB_j(t),

computed entirely from V(t), the initial amplitudes alpha_kl and the bath
occupations N_j:

  * mu_j: a quadratic form in |V_jk(t)|^2 with weights given by sums of
    |alpha_kl|^2.  Linear in the probabilities |alpha_kl|^2, so it obeys
    the classical law of total probability on its own.
  * dmu_j: the interference part, built from cross products
    conj(V_jk) V_jl with coefficients conj(alpha) alpha between basis
    states differing in both bits or swapped across players.  It vanishes
    identically whenever the initial state is a single basis vector.
  * nB_j: the bath feed, 2 pi times the running integral of a positive
    combination of |V_jk(s)|^2 weighted by lambda_j^2/Omega_j and the
    occupations N_j, 1 - N_j.  Independent of the initial player state.

The propagator is computed from one eigendecomposition of U per scenario,
V(t) = P diag(exp(i w t)) P^-1, which costs O(1) linear algebra plus O(nt)
phase arithmetic for the whole grid.  U is not normal once damping and
couplings compete, so the eigenvector matrix can be ill-conditioned near
parameter points where eigenvalues coalesce; the module falls back to a
per-point scaling-and-squaring exponential when cond(P) exceeds 1e8 or
when the reconstructed V(0) misses the identity by more than 1e-12.

The bath integral uses composite trapezoid accumulation on the uniform
grid (second order in dt, cumulative outputs at every grid point).  The
grid rule enforced by the model module keeps its error below about 1e-4
of a probability unit on the stiffest built-in presets.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.linalg import expm

from .model import (
    EvolutionGenerator,
    InitialState,
    ModelParams,
    ReservoirState,
    Scenario,
    born_probabilities,
    build_generator,
    validate_scenario,
)

__all__ = [
    "NumericalError",
    "PropagatorGrid",
    "DecisionSeries",
    "make_times",
    "propagator",
    "mu_player",
    "delta_mu",
    "bath_contribution",
    "decision_series",
]

COND_LIMIT = 1e8
IDENTITY_TOL = 1e-12
BOUND_TOL = 1e-4


class NumericalError(RuntimeError):
    """A numerical invariant failed at run time (diagnostics in message)."""


@dataclass(frozen=True)
class PropagatorGrid:
    """V(t_k) = exp(i U t_k) sampled on a uniform grid starting at 0.

    eigenvalues/eigenvectors cache the spectral data of U when the
    eigendecomposition route was used; both are None when the per-point
    scaling-and-squaring fallback was active (used_fallback True).
    """

    times: np.ndarray
    V: np.ndarray
    eigenvalues: np.ndarray | None
    eigenvectors: np.ndarray | None
    used_fallback: bool


@dataclass(frozen=True)
class DecisionSeries:
    """Decision functions and their three parts on the grid.

    Component arrays have shape (nt, 2); column j-1 belongs to player j.
    n = mu + dmu + nB row by row.  The originating scenario is kept for
    labeling and default analysis windows; synthetic series may set it
    to None.
    """

    times: np.ndarray
    mu: np.ndarray
    dmu: np.ndarray
    nB: np.ndarray
    n: np.ndarray
    scenario: Scenario | None = None

    @property
    def n1(self) -> np.ndarray:
        return self.n[:, 0]

    @property
    def n2(self) -> np.ndarray:
        return self.n[:, 1]

    @property
    def dt(self) -> float:
        return float(self.times[1] - self.times[0])

    @property
    def t_max(self) -> float:
        return float(self.times[-1])


def make_times(t_max: float, dt: float) -> np.ndarray:
    """Uniform grid 0, dt, ..., round(t_max/dt)*dt (inclusive)."""
    n_steps = int(round(t_max / dt))
    return np.arange(n_steps + 1) * dt


def _check_times(times: np.ndarray) -> float:
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size < 2:
        raise ValueError("times must be a 1-d grid with at least 2 points")
    if abs(times[0]) > 1e-12:
        raise ValueError(f"times must start at 0, got {times[0]!r}")
    steps = np.diff(times)
    dt = float(times[1] - times[0])
    if dt <= 0 or not np.allclose(steps, dt, rtol=1e-9, atol=1e-15):
        raise ValueError("times must be uniformly increasing")
    return dt


def propagator(gen: EvolutionGenerator, times: np.ndarray) -> PropagatorGrid:
    """Evaluate V(t) = exp(i U t) on the whole grid.

    Route 1: one eigendecomposition U = P diag(w) P^-1, then
    V(t) = P diag(exp(i w t)) P^-1 for all grid points at once.  Route 2
    (fallback): scaling-and-squaring exponential per grid point, used when
    P is ill-conditioned (cond > 1e8, U nearly defective) or when route 1
    fails to reproduce V(0) = 1 within 1e-12.
    """
    times = np.asarray(times, dtype=float)
    _check_times(times)
    U = np.asarray(gen.U, dtype=complex)
    if not np.all(np.isfinite(U)):
        raise ValueError("generator contains non-finite entries")

    eigenvalues = eigenvectors = None
    V = None
    used_fallback = False
    try:
        w, P = np.linalg.eig(U)
        cond = np.linalg.cond(P)
    except np.linalg.LinAlgError:
        cond = np.inf
    if np.isfinite(cond) and cond <= COND_LIMIT:
        Pinv = np.linalg.inv(P)
        phases = np.exp(1j * np.outer(times, w))
        V = np.einsum("ab,tb,bc->tac", P, phases, Pinv)
        if np.abs(V[0] - np.eye(4)).max() <= IDENTITY_TOL:
            eigenvalues, eigenvectors = w, P
        else:
            V = None
    if V is None:
        used_fallback = True
        try:
            V = np.stack([expm(1j * U * t) for t in times])
        except Exception as exc:
            raise NumericalError(
                f"propagator failed on both routes: eigenvector condition "
                f"number {cond:.3g}, fallback error: {exc}") from exc
        if np.abs(V[0] - np.eye(4)).max() > IDENTITY_TOL:
            raise NumericalError(
                f"propagator failed on both routes: eigenvector condition "
                f"number {cond:.3g}, fallback V(0) deviates from identity by "
                f"{np.abs(V[0] - np.eye(4)).max():.3g}")
    return PropagatorGrid(times=times, V=V, eigenvalues=eigenvalues,
                          eigenvectors=eigenvectors, used_fallback=used_fallback)


def mu_player(V: np.ndarray, initial: InitialState) -> tuple[np.ndarray, np.ndarray]:
    """Direct (non-interference) part of both decision functions.

    mu_j = |V_j1|^2 (|a10|^2+|a11|^2) + |V_j2|^2 (|a01|^2+|a11|^2)
         + |V_j3|^2 (|a00|^2+|a01|^2) + |V_j4|^2 (|a00|^2+|a10|^2),

    with j the row index of V.  Accepts a single 4x4 matrix or a stacked
    (..., 4, 4) array; returns (mu1, mu2) with the leading shape of V.
    """
    V = np.asarray(V, dtype=complex)
    w = np.abs(initial.amplitudes) ** 2
    weights = np.array([w[1] + w[3], w[2] + w[3], w[0] + w[2], w[0] + w[1]])
    A2 = np.abs(V) ** 2
    mu1 = A2[..., 0, :] @ weights
    mu2 = A2[..., 1, :] @ weights
    return mu1, mu2


def delta_mu(V: np.ndarray, initial: InitialState) -> tuple[np.ndarray, np.ndarray]:
    """Interference part of both decision functions.

    dmu_j = 2 Re[conj(V_j1) V_j2 conj(a10) a01 + conj(V_j1) V_j4 conj(a11) a00]
          - 2 Re[conj(V_j2) V_j3 conj(a11) a00 + conj(V_j3) V_j4 conj(a01) a10].

    Every term carries a product of two distinct amplitudes, so the result
    is identically zero for any single-basis-vector initial state and at
    t = 0 where the off-diagonal V entries vanish.  Shapes as in mu_player.
    """
    V = np.asarray(V, dtype=complex)
    a = initial.amplitudes
    c12 = np.conj(a[1]) * a[2]
    c14 = np.conj(a[3]) * a[0]
    c34 = np.conj(a[2]) * a[1]

    def row(j: int) -> np.ndarray:
        Vj = V[..., j, :]
        pos = np.conj(Vj[..., 0]) * Vj[..., 1] * c12 + np.conj(Vj[..., 0]) * Vj[..., 3] * c14
        neg = np.conj(Vj[..., 1]) * Vj[..., 2] * c14 + np.conj(Vj[..., 2]) * Vj[..., 3] * c34
        return 2.0 * (pos.real - neg.real)

    return row(0), row(1)


def bath_contribution(reservoir: ReservoirState, params: ModelParams,
                      grid: PropagatorGrid) -> tuple[np.ndarray, np.ndarray]:
    """Bath part of both decision functions on the grid.

    nB_j(t) = 2 pi * integral from 0 to t of
        (lambda1^2/Omega1) (|V_j1(s)|^2 N1 + |V_j3(s)|^2 (1 - N1))
      + (lambda2^2/Omega2) (|V_j2(s)|^2 N2 + |V_j4(s)|^2 (1 - N2))  ds.

    The integrand depends only on the elapsed time s, so the convolution
    against the flat bath spectrum reduces to a running integral,
    accumulated by composite trapezoid on the uniform grid.
    """
    A2 = np.abs(grid.V) ** 2
    k1 = params.lambda1 ** 2 / params.Omega1
    k2 = params.lambda2 ** 2 / params.Omega2
    N1, N2 = reservoir.N1, reservoir.N2
    out = []
    for j in (0, 1):
        integrand = 2.0 * np.pi * (
            k1 * (A2[:, j, 0] * N1 + A2[:, j, 2] * (1.0 - N1))
            + k2 * (A2[:, j, 1] * N2 + A2[:, j, 3] * (1.0 - N2)))
        out.append(cumulative_trapezoid(integrand, dx=grid.times[1] - grid.times[0],
                                        initial=0.0))
    return out[0], out[1]


def decision_series(s: Scenario) -> DecisionSeries:
    """Run a scenario: validate, propagate, assemble n_j = mu + dmu + nB.

    Enforces at run time that nB and dmu start at zero, that n_j(0)
    reproduces the Born marginals within 1e-10, and that the decision
    functions stay inside [-1e-4, 1 + 1e-4]; violations raise
    NumericalError with the offending values.
    """
    validate_scenario(s)
    times = make_times(s.t_max, s.dt)
    gen = build_generator(s.params)
    grid = propagator(gen, times)

    mu1, mu2 = mu_player(grid.V, s.initial)
    dmu1, dmu2 = delta_mu(grid.V, s.initial)
    nB1, nB2 = bath_contribution(s.reservoir, s.params, grid)

    mu = np.column_stack([mu1, mu2])
    dmu = np.column_stack([dmu1, dmu2])
    nB = np.column_stack([nB1, nB2])
    n = mu + dmu + nB

    _, p1_1, _, p2_1 = born_probabilities(s.initial)
    start_dev = max(abs(n[0, 0] - p1_1), abs(n[0, 1] - p2_1))
    if start_dev > 1e-10:
        raise NumericalError(
            f"n(0) deviates from the Born marginals by {start_dev:.3g} "
            f"(scenario {s.label!r})")
    low, high = n.min(), n.max()
    if low < -BOUND_TOL or high > 1.0 + BOUND_TOL:
        raise NumericalError(
            f"decision function left [0, 1] beyond tolerance {BOUND_TOL}: "
            f"range [{low:.6g}, {high:.6g}] (scenario {s.label!r})")
    return DecisionSeries(times=times, mu=mu, dmu=dmu, nB=nB, n=n, scenario=s)
