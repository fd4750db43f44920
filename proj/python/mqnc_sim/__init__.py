# Copyright 2026 The mqnc-sim Authors
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

"""Simulation of quantum network coding and entanglement swapping protocols.

The heavy lifting lives in the compiled ``_core`` extension.
"""

from ._core import (
    DataPoint,
    InitBias,
    NoiseModel,
    Protocol,
    RunReport,
    Series,
    SweepSpec,
    SweepVariable,
    circuit_text,
    depth_reduction,
    fold,
    inject,
    parse_protocol,
    preset_names,
    preset_spec,
    run_datapoint,
    run_preset,
    run_sweep,
    stats,
    verify,
    verify_text,
    wilson_interval,
)

__all__ = [
    "DataPoint",
    "InitBias",
    "NoiseModel",
    "Protocol",
    "RunReport",
    "Series",
    "SweepSpec",
    "SweepVariable",
    "circuit_text",
    "depth_reduction",
    "fold",
    "inject",
    "parse_protocol",
    "preset_names",
    "preset_spec",
    "run_datapoint",
    "run_preset",
    "run_sweep",
    "stats",
    "verify",
    "verify_text",
    "wilson_interval",
]
