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

"""Projective measurement calculus on finite-dimensional density operators.

Matrices go in and come out as complex NumPy arrays. States are validated
on entry; failures raise :class:`qmeasure.Error` (a ``ValueError``) whose
message starts with the error name, e.g. ``NotPositive: ...``.
"""

from ._qmeasure import (
    DEFAULT_TOL,
    Constraint,
    Error,
    Observable,
    ThetaFamily,
    born,
    commutes,
    compat_report,
    condition1,
    condition2,
    eigvalsh,
    from_pure,
    lemma_check,
    lueders_aggregate,
    lueders_family,
    lueders_select,
    make_exchange_constraint,
    make_theta_family,
    measurable_under,
    normalize,
    preserves_constraint,
    random_constrained_state,
    random_density,
    satisfies,
    theta_aggregate,
    theta_condition1,
    theta_condition2,
    theta_select,
    validate,
    von_neumann_aggregate,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
