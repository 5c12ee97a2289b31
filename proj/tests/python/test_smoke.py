# This code is part of privstate.
#
# (C) Copyright privstate contributors 2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.
#
# Any modifications or derivative works of this code must retain this
# copyright notice, and modified files need to carry a notice indicating
# that they have been altered from the originals.

"""Smoke tests for the compiled Python bindings."""

import math

import numpy as np
import pytest

import privstate as ps


def test_reference_state_measures():
    state = ps.example1_state(2)
    assert state.dims == [2, 2, 2, 2]
    assert math.isclose(ps.log_negativity(state), math.log2(1.5), abs_tol=1e-9)
    report = ps.verify_private_state(state)
    assert report.ok
    assert report.failures == []


def test_pipeline_record():
    rec = ps.run_pipeline(1.0 / 3.0, 2, 1, 1)
    assert rec["ppt_condition"] is True
    assert abs(rec["en_bound"]) < 1e-9
    assert abs(rec["dw_rate"]) < 1e-9
    assert math.isclose(rec["norm_x"], 1.0 / 6.0, abs_tol=1e-12)


def test_block_dense_round_trip():
    bs = ps.raw_key_state(1.0 / 3.0, 2, 1)
    dense = ps.block_to_dense(bs)
    mat = np.asarray(dense.matrix)
    assert mat.shape == (16, 16)
    assert math.isclose(np.trace(mat).real, 1.0, abs_tol=1e-12)

    back = ps.dense_to_block(dense)
    assert np.max(np.abs(np.asarray(back.x) - np.asarray(bs.x))) < 1e-14
    assert np.max(np.abs(np.asarray(back.d00) - np.asarray(bs.d00))) < 1e-14


def test_corner_norm_agreement():
    closed = ps.off_diag_norm(1.0 / 3.0, 2, 1, 1)
    dense = ps.norm_x_dense(1.0 / 3.0, 2, 1, 1)
    assert math.isclose(closed, dense, abs_tol=1e-9)
    assert math.isclose(closed, 1.0 / 6.0, abs_tol=1e-12)


def test_validation_errors_are_value_errors():
    with pytest.raises(ValueError):
        ps.example1_state(1)
    with pytest.raises(ValueError):
        ps.raw_key_state(0.7, 2, 1)


def test_twist_measurement_invariance():
    state = ps.example1_state(2)
    twist = ps.random_diagonal_twist(2, 4, seed=11)
    assert ps.check_lemma1(state, twist) < 1e-9
