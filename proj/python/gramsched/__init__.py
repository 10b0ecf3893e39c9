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
"""Sparse sensor and actuator scheduling for discrete-time LTI systems.

Schedule and report helpers return plain dictionaries in the same layout as
the JSON files written by the ``gramsched`` command-line tool.
"""

import json

from ._gramsched import (
    BudgetExceeded,
    LtiSystem,
    NearSingularError,
    NumericalBreakdown,
    SwingParams,
    bss_pass,
    gramians,
    hankel_matrix,
    hankel_singular_values,
    loewner_sandwich_epsilon,
    observability_matrix,
    random_swing_params,
    random_system,
    reachability_matrix,
    run_sweep,
    swing_system,
    theoretical_epsilon,
)
from . import _gramsched as _ext

__all__ = [
    "BudgetExceeded",
    "LtiSystem",
    "NearSingularError",
    "NumericalBreakdown",
    "SwingParams",
    "actuator_schedule",
    "bss_pass",
    "gramians",
    "hankel_matrix",
    "hankel_singular_values",
    "joint_schedule",
    "loewner_sandwich_epsilon",
    "observability_matrix",
    "random_swing_params",
    "random_system",
    "reachability_matrix",
    "run_sweep",
    "scheduled_gramians",
    "sensor_schedule",
    "separation_schedule",
    "swing_system",
    "theoretical_epsilon",
    "verify_schedule",
]


def joint_schedule(system, t, d_s, d_a, variant="proof"):
    return json.loads(_ext.joint_schedule(system, t, d_s, d_a, variant))


def separation_schedule(system, t, d_s, d_a, variant="proof"):
    return json.loads(_ext.separation_schedule(system, t, d_s, d_a, variant))


def sensor_schedule(system, t, d_s, variant="proof"):
    return json.loads(_ext.sensor_schedule(system, t, d_s, variant))


def actuator_schedule(system, t, d_a, variant="proof"):
    return json.loads(_ext.actuator_schedule(system, t, d_a, variant))


def _as_text(schedule):
    return schedule if isinstance(schedule, str) else json.dumps(schedule)


def scheduled_gramians(system, schedule):
    return _ext.scheduled_gramians(system, _as_text(schedule))


def verify_schedule(system, schedule, normalize=False):
    return json.loads(_ext.verify_schedule(system, _as_text(schedule), normalize))
