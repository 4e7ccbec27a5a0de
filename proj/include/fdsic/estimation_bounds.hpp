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

#include "fdsic/common.hpp"

#include <cstdint>

namespace fdsic
{

// Inputs of the per-tap variance bound. Powers in watts; p_soi_w = 0 models a
// calibration period without a received signal of interest.
struct CrlbInput
{
    double p_soi_w = 0.0;
    double p_n_w = 0.0;
    std::uint64_t n_samples = 1;
    double p_ref_w = 1.0; // per-branch reference power, R_x,ref ~ p_ref * I
};

// Lower bound on the variance of one SI channel tap estimate:
//   (p_soi + p_n) / (N * p_ref)
double crlb_per_tap(const CrlbInput &inp);

// Estimation samples needed without a calibration period to match the tap
// variance reached with n_c calibration samples: ceil(n_c * (snr + 1)).
std::uint64_t required_samples(std::uint64_t n_c, double snr_linear);

// The factor snr + 1 applied by required_samples.
inline double sample_size_multiplier(double snr_linear) { return snr_linear + 1.0; }

} // namespace fdsic
