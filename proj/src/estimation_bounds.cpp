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

#include "fdsic/estimation_bounds.hpp"

namespace fdsic
{

double crlb_per_tap(const CrlbInput &inp)
{
    if (!(inp.p_ref_w > 0.0))
        throw ArgumentError("crlb_per_tap: reference power must be positive");
    if (inp.n_samples < 1)
        throw ArgumentError("crlb_per_tap: n_samples must be >= 1");
    if (inp.p_soi_w < 0.0 || inp.p_n_w < 0.0)
        throw ArgumentError("crlb_per_tap: powers must be non-negative");
    return (inp.p_soi_w + inp.p_n_w) / (static_cast<double>(inp.n_samples) * inp.p_ref_w);
}

std::uint64_t required_samples(std::uint64_t n_c, double snr_linear)
{
    if (!(snr_linear >= 0.0) || !std::isfinite(snr_linear))
        throw ArgumentError("required_samples: snr must be finite and non-negative");
    // guard against 1 ulp overshoot of exact products, e.g. 4000 * 1.0
    const double n = static_cast<double>(n_c) * sample_size_multiplier(snr_linear);
    const double rounded = std::round(n);
    if (std::abs(n - rounded) <= 1e-9 * std::max(1.0, n))
        return static_cast<std::uint64_t>(rounded);
    return static_cast<std::uint64_t>(std::ceil(n));
}

} // namespace fdsic
