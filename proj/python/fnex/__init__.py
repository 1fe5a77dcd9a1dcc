# Copyright 2026 The fnex Authors.
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

"""Python bindings for fnex.

Allocations are lists of 0-based ad indices with BOT (-1) for empty slots.
"""

import json

from fnex._fnex import (
    BOT,
    Error,
    Instance,
    PreconditionError,
    brute_force_optimum,
    check_monotonicity,
    eval_ctr,
    mir_greedy,
    ratio_bound,
    second_price,
    social_welfare,
    solve,
    solve_lp,
    solver_names,
    vcg,
)
from fnex._fnex import gen_random as _gen_random


def instance(doc):
  """Instance from a dict in the JSON file layout."""
  return Instance.from_json(json.dumps(doc))


def load(path):
  with open(path) as f:
    return Instance.from_json(f.read())


def gen_random(**params):
  return _gen_random(json.dumps(params))


__all__ = [
    "BOT",
    "Error",
    "Instance",
    "PreconditionError",
    "brute_force_optimum",
    "check_monotonicity",
    "eval_ctr",
    "gen_random",
    "instance",
    "load",
    "mir_greedy",
    "ratio_bound",
    "second_price",
    "social_welfare",
    "solve",
    "solve_lp",
    "solver_names",
    "vcg",
]
