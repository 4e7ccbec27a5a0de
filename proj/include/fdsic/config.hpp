// SPDX-License-Identifier: Apache-2.0
//
// fdsic: baseband waveform simulator for MIMO full-duplex self-interference cancellation
// Copyright (C) 2026 The fdsic authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#pragma once

#include "fdsic/harness.hpp"

#include <string>

namespace fdsic
{

// Scenario from JSON text. Sections: "transceiver", "ofdm", "channel",
// "simulation", plus top-level "experiment", "seed", "trials", "threads" and
// "output". Omitted keys keep their defaults; unknown keys raise ConfigError.
// Infinite values may be written as the strings "inf" / "-inf". The result
// is validated.
ScenarioConfig parse_config(const std::string &json_text);

// Reads and parses a file; IoError when unreadable.
ScenarioConfig load_config(const std::string &path);

// Full JSON rendering of a scenario, accepted by parse_config.
std::string dump_config(const ScenarioConfig &cfg, int indent = 2);

} // namespace fdsic
