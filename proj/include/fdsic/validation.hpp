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

#include "fdsic/transceiver.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace fdsic
{

class ComplexSignal;

struct ValidationCheck
{
    std::string name;
    std::string unit;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct ValidationReport
{
    std::vector<ValidationCheck> checks;
    bool all_passed() const;
};

// Input-referred intercepts extracted from a two-tone measurement; +inf when
// the product is below numerical resolution.
struct TwoToneResult
{
    double iip3_dbm = kInf;
    double iip2_dbm = kInf;
};

using StageFunction = std::function<ComplexSignal(const ComplexSignal &)>;

// Drives `stage` with two equal tones of tone_power_dbm each and
// extrapolates the third- and second-order intercepts from the output
// spectrum.
TwoToneResult two_tone_intercepts(const StageFunction &stage, double tone_power_dbm);

// Image-to-direct power ratio of an IQ imbalance stage for a single tone, dB
// (negative of the realised image rejection).
double measured_image_ratio_db(const StageFunction &stage);

// Checks each stage of `spec` against its nominal parameters: intercepts of
// every nonlinear stage, image rejection of both IQ stages, the thermal noise
// floor and the main ADC's SNDR for a Gaussian test signal.
ValidationReport run_validation(const TransceiverSpec &spec, std::uint64_t seed = 1);

} // namespace fdsic
