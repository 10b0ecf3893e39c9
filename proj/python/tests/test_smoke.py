# Copyright 2026 The gramsched Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json

import numpy as np
import pytest

import gramsched as gs


def numpy_gramians(A, B, C, t):
    n = A.shape[0]
    P = np.zeros((n, n))
    Q = np.zeros((n, n))
    Ak = np.eye(n)
    for _ in range(t):
        P += Ak @ B @ B.T @ Ak.T
        Q += Ak.T @ C.T @ C @ Ak
        Ak = A @ Ak
    return P, Q


def numpy_sandwich(X_ref, X_s):
    L = np.linalg.cholesky(X_ref)
    Li = np.linalg.inv(L)
    lam = np.linalg.eigvalsh(Li @ X_s @ Li.T)
    return max(abs(np.log(lam[0])), abs(np.log(lam[-1])))


@pytest.fixture
def system():
    return gs.random_system(4, 3, 3, seed=12)


def test_system_roundtrip(system):
    assert (system.n, system.m, system.p) == (4, 3, 3)
    again = gs.LtiSystem.from_json(system.to_json())
    np.testing.assert_array_equal(again.A, system.A)
    assert max(abs(np.linalg.eigvals(system.A))) <= 0.9 + 1e-12


def test_gramians_match_numpy(system):
    P, Q = gs.gramians(system, 12)
    P_ref, Q_ref = numpy_gramians(system.A, system.B, system.C, 12)
    np.testing.assert_allclose(P, P_ref, rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(Q, Q_ref, rtol=1e-12, atol=1e-12)


def test_hankel_singular_values_match_svd(system):
    t = 8
    H = gs.hankel_matrix(system, t)
    assert H.shape == (system.p * t, system.m * t)
    sv = np.linalg.svd(H, compute_uv=False)[: system.n]
    np.testing.assert_allclose(gs.hankel_singular_values(system, t), sv, rtol=1e-9)


def test_reachability_observability_shapes(system):
    assert gs.reachability_matrix(system, 5).shape == (4, 15)
    assert gs.observability_matrix(system, 5).shape == (15, 4)


def test_sandwich_epsilon_matches_numpy():
    X = np.array([[2.0, 0.5], [0.5, 1.0]])
    Y = np.array([[1.5, 0.2], [0.2, 1.3]])
    assert gs.loewner_sandwich_epsilon(X, Y) == pytest.approx(numpy_sandwich(X, Y), rel=1e-10)


def test_theoretical_epsilon_closed_form():
    assert gs.theoretical_epsilon(4, 12) == pytest.approx(2 * np.arctanh(np.sqrt(4 / 12)))


def test_bss_pass_sandwich():
    rng = np.random.default_rng(3)
    M = rng.standard_normal((3, 40))
    L = np.linalg.cholesky(M @ M.T)
    V = np.linalg.solve(L, M)
    weights, eps = gs.bss_pass(V, 12)
    assert np.count_nonzero(weights) <= 12
    assert np.all(weights >= 0)
    S = (V * weights) @ V.T
    assert numpy_sandwich(np.eye(3), S) <= eps + 1e-8


def test_joint_schedule_and_verify(system):
    t = 12
    sched = gs.joint_schedule(system, t, 1.5, 1.5)
    assert sched["t"] == t and sched["provenance"] == "joint"
    per_step = {}
    for e in sched["sensors"]:
        per_step[e["k"]] = per_step.get(e["k"], 0) + 1
    assert sum(per_step.values()) <= int(1.5 * t)

    report = gs.verify_schedule(system, sched)
    assert report["certified"] is True
    P, Q = gs.gramians(system, t)
    P_s, Q_s = gs.scheduled_gramians(system, sched)
    assert report["actuators"]["epsilon_empirical"] == pytest.approx(numpy_sandwich(P, P_s), rel=1e-7)
    assert report["sensors"]["epsilon_empirical"] == pytest.approx(numpy_sandwich(Q, Q_s), rel=1e-7)
    assert report["sensors"]["epsilon_empirical"] <= report["sensors"]["epsilon_theory"] + 1e-8


def test_schedule_text_roundtrip(system):
    sched = gs.separation_schedule(system, 10, 2.0, 2.0, variant="listing")
    a = gs.verify_schedule(system, sched)
    b = gs.verify_schedule(system, json.dumps(sched))
    assert a == b


def test_single_sided_schedules(system):
    s = gs.sensor_schedule(system, 10, 2.0)
    a = gs.actuator_schedule(system, 10, 2.0)
    assert len(s["actuators"]) == 10 * system.m
    assert len(a["sensors"]) == 10 * system.p


def test_swing_system():
    params = gs.random_swing_params(3, seed=5)
    sys = gs.swing_system(params)
    assert (sys.n, sys.m, sys.p) == (6, 3, 6)


def test_sweep_tables(system):
    out = gs.run_sweep(system, 10, [1.5, 2.0], [1.5], normalize=True)
    assert set(out) == {"epsilon", "hankel_norm", "log_error", "epsilon_normalized"}
    rows = out["epsilon"].strip().splitlines()
    assert len(rows) == 1 + 3


def test_errors(system):
    with pytest.raises(ValueError):
        gs.joint_schedule(system, 2, 1.5, 1.5)
    with pytest.raises(ValueError):
        gs.joint_schedule(system, 12, 1.5, 1.5, variant="bogus")
    with pytest.raises(ValueError):
        gs.verify_schedule(system, "{not json")
    with pytest.raises(gs.NearSingularError):
        gs.loewner_sandwich_epsilon(np.zeros((2, 2)), np.eye(2))
