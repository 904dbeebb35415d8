# Copyright 2026 The splitmerge Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Merge-split coalition formation: Shapley values, dynamics and oracles.

Players are 1-based ints; a partition is a list of lists of player ids.
"""

from splitmerge._core import (
    CapError,
    DomainError,
    FormatError,
    Game,
    ValidationError,
    additive_game,
    bell_number,
    case_study_game,
    check_assumption1,
    enumerate_partitions,
    enumerate_sfms,
    fixed_points,
    is_sfms,
    largest_weakly_invariant,
    lyapunov,
    merge_surplus,
    negative_mass,
    random_game,
    run,
    shapley,
    shapley_sampled,
    shift_to_nonneg_singletons,
    split_rule,
    step,
    superadditive_game,
    verify,
    zero_progress_set,
)

__all__ = [name for name in dir() if not name.startswith("_")]
