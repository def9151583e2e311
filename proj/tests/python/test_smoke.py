# Copyright 2026 The qmeasure Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import qmeasure as qm

H = 1 / math.sqrt(2)


def test_decompose_groups_repeated_eigenvalue():
    obs = qm.Observable.from_matrix(np.diag([2.0, 2.0, 5.0]))
    assert obs.eigenvalues == [2.0, 5.0]
    assert obs.multiplicities == [2, 1]
    np.testing.assert_array_equal(obs.projector(0), np.diag([1, 1, 0]))
    np.testing.assert_allclose(obs.matrix(), np.diag([2, 2, 5]), atol=1e-15)


def test_worked_triple_lueders_versus_von_neumann():
    obs = qm.Observable.from_matrix(np.diag([2.0, 2.0, 5.0]))
    z = qm.from_pure(np.ones(3) / math.sqrt(3))
    probs = [p for _, p in qm.born(obs, z)]
    np.testing.assert_allclose(probs, [2 / 3, 1 / 3], atol=1e-15)
    sel = qm.normalize(qm.lueders_select(obs, 0, z))
    assert np.trace(sel @ sel).real == pytest.approx(1, abs=1e-12)
    vn = qm.von_neumann_aggregate(obs, z)
    np.testing.assert_allclose(vn, np.eye(3) / 3, atol=1e-15)
    lu = qm.lueders_aggregate(obs, z)
    assert lu[0, 1] == pytest.approx(1 / 3)


def test_theta_family_moves_eigenstate():
    obs = qm.Observable.from_matrix(np.diag([2.0, 2.0, 5.0]))
    fam = qm.make_theta_family(
        obs, [[np.array([H, H, 0]), np.array([H, -H, 0])], [np.array([0, 0, 1.0])]]
    )
    out = qm.theta_select(fam, 0, qm.from_pure(np.array([1.0, 0, 0])))
    np.testing.assert_allclose(out, qm.from_pure(np.array([H, H, 0])), atol=1e-15)


def test_compat_report_pauli_pair():
    z = qm.Observable.from_matrix(np.diag([1.0, -1.0]))
    x = qm.Observable.from_matrix(np.array([[0, 1], [1, 0]]))
    rep = qm.compat_report(z, x)
    assert (rep["c1"], rep["c2"], rep["comm"]) == ("false", "false", "false")
    assert rep["commutator_residual"] == pytest.approx(2)
    had = np.array([[H, H], [H, -H]])
    assert qm.compat_report(z, z, u2=had)["comm"] == "false"
    assert qm.compat_report(z, z, u2=np.eye(2))["c1"] == "true"


def test_exchange_constraint():
    n = qm.make_exchange_constraint(2, True)
    total = qm.Observable.from_matrix(np.diag([2.0, 0, 0, -2]))
    single = qm.Observable.from_matrix(np.diag([1.0, 1, -1, -1]))
    assert qm.measurable_under(total, n)
    assert not qm.measurable_under(single, n)
    z = qm.random_constrained_state(n, 4, 3)
    assert all(row["preserved"] for row in qm.preserves_constraint(total, n, z))
    sym = qm.from_pure(np.array([0, H, H, 0]))
    assert not all(row["preserved"] for row in qm.preserves_constraint(single, n, sym))


def test_errors_carry_their_name():
    with pytest.raises(qm.Error, match="NotPositive"):
        qm.validate(np.diag([1.5, -0.5]))
    with pytest.raises(ValueError, match="NotHermitian"):
        qm.Observable.from_matrix(np.array([[0, 1], [0, 0]]))


def test_eigenvalues_match_numpy():
    rng = np.random.default_rng(5)
    g = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    m = (g + g.conj().T) / 2
    np.testing.assert_allclose(qm.eigvalsh(m), np.linalg.eigvalsh(m), atol=1e-10)
