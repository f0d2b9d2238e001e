"""Independent verification paths for the simulation pipeline.

Three brute-force checks that share no code with the production route
beyond the operator algebra:

  * exact_closed_evolution: for zero bath coupling the joint state obeys
    an ordinary 4-dimensional Schrodinger equation with the Hermitian
    Hamiltonian

        H = omega1 n1 + omega2 n2 + mu_ex (b1^dag b2 + b2^dag b1)
                                  + mu_coop (b1^dag b2^dag + b2 b1),

    solved exactly through the real eigendecomposition of H.  The
    decision functions are then plain expectation values <psi(t), n_j psi(t)>.
    The production route instead evolves the mode operators with the
    non-Hermitian generator U; agreement of the two is a genuine
    cross-implementation test.

  * propagator_residual: a central-difference check that the sampled
    propagator actually solves dV/dt = i U V on the grid, with the
    expected second-order behavior in dt.

  * ltp_residual: the decision functions compared against the classical
    law of total probability.  Four conditional simulations started from
    the sharp basis states give p_j(1; t | k, m); mixing them with the
    weights |alpha_km|^2 gives the classical prediction, and the residual
    R_j(t) is the actual decision function minus that prediction.  For
    this model the direct part of n_j is linear in |alpha_km|^2 and the
    bath part does not depend on the initial player state at all, so the
    residual isolates exactly the interference part dmu_j; the comparison
    is still run through the four independent simulations, not through
    that identity.

Matrix residuals use the maximum absolute entry as the norm, which is
cheap and adequate for fixed 4x4 operators.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from . import algebra
from .dynamics import PropagatorGrid, decision_series
from .model import EvolutionGenerator, InitialState, ModelParams, Scenario

__all__ = [
    "closed_hamiltonian",
    "exact_closed_evolution",
    "propagator_residual",
    "ltp_residual",
]


def closed_hamiltonian(params: ModelParams) -> np.ndarray:
    """Hermitian 4x4 Hamiltonian of the bath-free two-player system."""
    b1, b2 = algebra.build_mode_operators()
    n1, n2 = algebra.number_operators(b1, b2)
    H = (params.omega1 * n1 + params.omega2 * n2
         + params.mu_ex * (b1.conj().T @ b2 + b2.conj().T @ b1)
         + params.mu_coop * (b1.conj().T @ b2.conj().T + b2 @ b1))
    herm_dev = np.abs(H - H.conj().T).max()
    if herm_dev > 1e-12:
        raise ValueError(f"Hamiltonian not Hermitian, deviation {herm_dev:.3g}")
    return H


def exact_closed_evolution(params: ModelParams, initial: InitialState,
                           times: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Exact decision functions for zero bath coupling.

    psi(t) = exp(-i H t) psi0 through the eigendecomposition of the
    Hermitian H; returns (<n1>(t), <n2>(t)).  Raises ValueError when
    called with nonzero bath couplings, where no closed 4-dimensional
    evolution exists.
    """
    if params.lambda1 != 0.0 or params.lambda2 != 0.0:
        raise ValueError(
            f"closed evolution requires lambda1 = lambda2 = 0, got "
            f"{params.lambda1}, {params.lambda2}")
    times = np.asarray(times, dtype=float)
    H = closed_hamiltonian(params)
    energies, Q = np.linalg.eigh(H)
    coeffs = Q.conj().T @ initial.amplitudes
    phases = np.exp(-1j * np.outer(times, energies))
    psi_t = (Q @ (phases * coeffs).T).T
    prob = np.abs(psi_t) ** 2
    n1 = prob[:, 1] + prob[:, 3]
    n2 = prob[:, 2] + prob[:, 3]
    return n1, n2


def propagator_residual(gen: EvolutionGenerator, grid: PropagatorGrid) -> float:
    """Max norm of the central-difference defect of dV/dt = i U V.

    Evaluated on the interior grid points; needs at least 3 points.  The
    defect of the exact propagator sampled on the grid is the Taylor
    remainder of the central difference, O(dt^2), so halving dt must
    shrink the result by about 4.
    """
    times, V = grid.times, grid.V
    if len(times) < 3:
        raise ValueError("residual needs at least 3 grid points")
    dt = times[1] - times[0]
    dV = (V[2:] - V[:-2]) / (2.0 * dt)
    defect = dV - 1j * np.einsum("ab,tbc->tac", gen.U, V[1:-1])
    return float(np.abs(defect).max())


def ltp_residual(s: Scenario) -> tuple[np.ndarray, np.ndarray]:
    """Law-of-total-probability residual series for both players.

    Runs the scenario itself plus the four conditional scenarios with the
    sharp basis initial states phi_km, then returns (times, R) where
    R[:, j-1] = n_j(t) - sum_km |alpha_km|^2 n_j(t | started from phi_km).

    The residual vanishes identically for basis-state initial conditions
    and reproduces the interference part dmu_j for superpositions.
    """
    series = decision_series(s)
    weights = np.abs(s.initial.amplitudes) ** 2
    classical = np.zeros_like(series.n)
    for idx, w in enumerate(weights):
        k, l = idx % 2, idx // 2
        conditional = dataclasses.replace(
            s, initial=InitialState.basis_state(k, l),
            label=f"{s.label}|phi{k}{l}")
        classical += w * decision_series(conditional).n
    return series.times, series.n - classical
