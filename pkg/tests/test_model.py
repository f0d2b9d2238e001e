"""Model inputs: parameters, generator pattern, Born rule, scenarios."""

import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from conftest import amplitude_vectors
from qduet.model import (
    CALPHA1,
    CALPHA2,
    C1,
    C2,
    PRESETS,
    InitialState,
    ModelParams,
    ReservoirState,
    Scenario,
    ScenarioError,
    born_probabilities,
    build_generator,
    default_dt,
    is_entangled,
    load_scenario,
    save_scenario,
    scenario_from_dict,
    scenario_to_dict,
    validate_scenario,
)

TOL = 1e-12


def make_params(**kw):
    base = dict(omega1=1.0, omega2=2.0, Omega1=0.1, Omega2=0.1,
                lambda1=0.5, lambda2=0.5, mu_ex=0.0, mu_coop=0.0)
    base.update(kw)
    return ModelParams(**base)


params_strategy = st.builds(
    make_params,
    omega1=st.floats(-3, 3), omega2=st.floats(-3, 3),
    Omega1=st.floats(0.1, 2.0), Omega2=st.floats(0.1, 2.0),
    lambda1=st.floats(0, 1.5), lambda2=st.floats(0, 1.5),
    mu_ex=st.floats(-5, 5), mu_coop=st.floats(-5, 5),
)


def test_generator_first_parameter_set():
    gen = build_generator(ModelParams(mu_ex=500.0, mu_coop=0.0, **C1))
    assert abs(gen.nu1 - (1j + 2.5 * math.pi)) <= TOL
    assert abs(gen.nu2 - (2j + 2.5 * math.pi)) <= TOL
    assert abs(gen.U[0, 0] - 1j * gen.nu1) <= TOL
    assert abs(gen.U[0, 1] - (-500.0)) <= TOL


def test_generator_second_parameter_set():
    gen = build_generator(ModelParams(mu_ex=100.0, mu_coop=0.0, **C2))
    assert abs(gen.nu1 - (0.1j + math.pi)) <= TOL
    assert abs(gen.nu2 - (0.2j + 0.49 * math.pi)) <= TOL


def test_generator_free_case_is_diagonal():
    gen = build_generator(make_params(lambda1=0.0, lambda2=0.0))
    assert np.abs(gen.U - np.diag([-1.0, -2.0, 1.0, 2.0])).max() <= TOL


@given(params=params_strategy)
@settings(deadline=None)
def test_generator_entry_pattern(params):
    U = build_generator(params).U
    mx, mc = params.mu_ex, params.mu_coop
    for i, j in ((0, 2), (1, 3), (2, 0), (3, 1)):
        assert U[i, j] == 0.0
    assert U[0, 3] == -mc and U[3, 0] == -mc
    assert U[1, 2] == mc and U[2, 1] == mc
    assert U[0, 1] == -mx and U[1, 0] == -mx
    assert U[2, 3] == mx and U[3, 2] == mx
    # lower diagonal block is the reflected conjugate of the upper one
    assert abs(U[2, 2] + np.conj(U[0, 0])) <= TOL
    assert abs(U[3, 3] + np.conj(U[1, 1])) <= TOL


def test_param_validation():
    with pytest.raises(ScenarioError):
        make_params(Omega1=0.0)
    with pytest.raises(ScenarioError):
        make_params(Omega2=-1.0)
    with pytest.raises(ScenarioError):
        make_params(omega1=float("nan"))


def test_reservoir_validation():
    ReservoirState(0.0, 1.0)
    with pytest.raises(ScenarioError):
        ReservoirState(-0.1, 0.5)
    with pytest.raises(ScenarioError):
        ReservoirState(0.5, 1.1)


def test_initial_state_normalization():
    InitialState(1.0, 0.0, 0.0, 0.0)
    with pytest.raises(ScenarioError):
        InitialState(0.0, 0.0, 0.0, 0.0)
    with pytest.raises(ScenarioError):
        InitialState(1.0, 1.0, 0.0, 0.0)


def test_born_probabilities_examples():
    p = born_probabilities(CALPHA1)
    assert p == pytest.approx((0.5, 0.5, 0.5, 0.5), abs=TOL)
    p = born_probabilities(InitialState.basis_state(1, 0))
    assert p == pytest.approx((0.0, 1.0, 1.0, 0.0), abs=TOL)
    p = born_probabilities(CALPHA2)
    assert p == pytest.approx((0.5, 0.5, 0.5, 0.5), abs=TOL)


@given(alpha=amplitude_vectors())
@settings(deadline=None)
def test_born_probabilities_sum_to_one(alpha):
    p1_0, p1_1, p2_0, p2_1 = born_probabilities(InitialState.from_amplitudes(alpha))
    assert p1_0 + p1_1 == pytest.approx(1.0, abs=1e-9)
    assert p2_0 + p2_1 == pytest.approx(1.0, abs=1e-9)
    assert min(p1_0, p1_1, p2_0, p2_1) >= -TOL


@given(alpha=amplitude_vectors(), theta=st.floats(0, 2 * math.pi))
@settings(deadline=None)
def test_born_probabilities_global_phase_invariant(alpha, theta):
    base = born_probabilities(InitialState.from_amplitudes(alpha))
    rotated = born_probabilities(
        InitialState.from_amplitudes(alpha * np.exp(1j * theta)))
    assert base == pytest.approx(rotated, abs=1e-9)


def test_is_entangled_examples():
    assert not is_entangled(InitialState.basis_state(1, 0))
    assert not is_entangled(CALPHA1)
    bell = InitialState(1 / math.sqrt(2), 0.0, 0.0, 1 / math.sqrt(2))
    assert is_entangled(bell)


@given(alpha=amplitude_vectors(),
       theta=st.floats(0, 2 * math.pi), phi=st.floats(0, 2 * math.pi))
@settings(deadline=None)
def test_is_entangled_local_phase_invariant(alpha, theta, phi):
    # local phases multiply the determinant by a unit modulus factor
    tol = 1e-6
    det = alpha[0] * alpha[3] - alpha[2] * alpha[1]
    assume(abs(abs(det) - tol) > 1e-9)
    phased = alpha * np.array([1.0,
                               np.exp(1j * theta),
                               np.exp(1j * phi),
                               np.exp(1j * (theta + phi))])
    assert (is_entangled(InitialState.from_amplitudes(alpha), tol)
            == is_entangled(InitialState.from_amplitudes(phased), tol))


def test_validate_scenario_grid_rule():
    s = PRESETS["fig1-left"]
    assert validate_scenario(s) is s
    coarse = Scenario(params=s.params, reservoir=s.reservoir, initial=s.initial,
                      t_max=0.5, dt=1e-2, label="coarse")
    with pytest.raises(ScenarioError, match="need dt"):
        validate_scenario(coarse)
    inverted = Scenario(params=s.params, reservoir=s.reservoir, initial=s.initial,
                        t_max=1e-5, dt=1e-4, label="inverted")
    with pytest.raises(ScenarioError):
        validate_scenario(inverted)


def test_default_dt():
    assert default_dt(ModelParams(mu_ex=500.0, mu_coop=0.0, **C1)) == pytest.approx(1e-4)
    assert default_dt(make_params(mu_ex=2000.0)) == pytest.approx(0.1 / 2000.0)
    slow = make_params(omega1=0.5, omega2=0.5, lambda1=0.0, lambda2=0.0)
    assert default_dt(slow) == pytest.approx(1e-4)


def test_preset_table():
    assert set(PRESETS) == {
        "fig1-left", "fig1-right", "fig2-left", "fig2-right",
        "fig3-left", "fig3-right", "fig6-left", "fig6-right",
    }
    for name, s in PRESETS.items():
        assert s.label == name
        assert validate_scenario(s) is s
        assert s.initial == (CALPHA1 if name.endswith("left") else CALPHA2)
    assert PRESETS["fig2-left"].reservoir == ReservoirState(1.0, 1.0)
    assert PRESETS["fig3-left"].params.mu_ex == 100.0
    assert PRESETS["fig3-left"].params.Omega1 == C2["Omega1"]
    assert PRESETS["fig6-right"].params.mu_ex == 10.0
    assert PRESETS["fig6-right"].params.mu_coop == 10.0
    assert PRESETS["fig1-left"].reservoir == ReservoirState(0.0, 1.0)


def test_scenario_json_round_trip(tmp_path):
    s = PRESETS["fig6-right"]
    path = tmp_path / "scenario.json"
    save_scenario(s, path)
    loaded = load_scenario(path)
    assert loaded.params == s.params
    assert loaded.reservoir == s.reservoir
    assert loaded.initial == s.initial
    assert loaded.t_max == s.t_max and loaded.dt == s.dt and loaded.label == s.label


def test_scenario_document_errors(tmp_path):
    d = scenario_to_dict(PRESETS["fig1-left"])
    missing = dict(d)
    del missing["omega1"]
    with pytest.raises(ScenarioError, match="missing key"):
        scenario_from_dict(missing)
    short_alpha = dict(d)
    short_alpha["alpha"] = d["alpha"][:3]
    with pytest.raises(ScenarioError):
        scenario_from_dict(short_alpha)
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ScenarioError, match="JSON"):
        load_scenario(bad)
