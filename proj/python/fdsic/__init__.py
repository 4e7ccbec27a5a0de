# SPDX-License-Identifier: Apache-2.0
#
# fdsic: baseband waveform simulator for MIMO full-duplex self-interference cancellation
# Copyright (C) 2026 The fdsic authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------

"""Baseband waveform simulator for MIMO full-duplex self-interference cancellation."""

from ._fdsic import (
    ArgumentError,
    ConfigError,
    EstimationError,
    IoError,
    OfdmConfig,
    ScenarioConfig,
    apply_iq_imbalance,
    apply_pa,
    apply_rx_stage,
    budget,
    crlb_per_tap,
    generate_ofdm_frame,
    generate_ofdm_stream,
    load_config,
    measure_power,
    measure_sinr,
    papr_db,
    parse_config,
    quantize,
    required_samples,
    run_canceller,
    run_experiment,
    run_validation,
)

__all__ = [
    "ArgumentError",
    "ConfigError",
    "EstimationError",
    "IoError",
    "OfdmConfig",
    "ScenarioConfig",
    "apply_iq_imbalance",
    "apply_pa",
    "apply_rx_stage",
    "budget",
    "crlb_per_tap",
    "generate_ofdm_frame",
    "generate_ofdm_stream",
    "load_config",
    "measure_power",
    "measure_sinr",
    "papr_db",
    "parse_config",
    "quantize",
    "required_samples",
    "run_canceller",
    "run_experiment",
    "run_validation",
]
