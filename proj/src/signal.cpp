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

#include "fdsic/signal.hpp"

namespace fdsic
{

ComplexSignal::ComplexSignal(std::vector<cplx> samples, double sample_rate_hz)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz)
{
    if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz))
        throw ArgumentError("ComplexSignal: sample rate must be positive and finite");
}

ComplexSignal ComplexSignal::zeros(std::size_t n, double sample_rate_hz)
{
    return ComplexSignal(std::vector<cplx>(n), sample_rate_hz);
}

ComplexSignal ComplexSignal::slice(std::size_t offset, std::size_t count) const
{
    if (offset > samples_.size() || count > samples_.size() - offset)
        throw ArgumentError("ComplexSignal::slice: range exceeds signal length");
    auto first = samples_.begin() + static_cast<std::ptrdiff_t>(offset);
    return ComplexSignal(std::vector<cplx>(first, first + static_cast<std::ptrdiff_t>(count)), sample_rate_hz_);
}

ComplexSignal &ComplexSignal::operator+=(const ComplexSignal &other)
{
    if (other.size() != size())
        throw ArgumentError("ComplexSignal: length mismatch in addition");
    for (std::size_t i = 0; i < samples_.size(); ++i)
        samples_[i] += other.samples_[i];
    return *this;
}

ComplexSignal &ComplexSignal::operator-=(const ComplexSignal &other)
{
    if (other.size() != size())
        throw ArgumentError("ComplexSignal: length mismatch in subtraction");
    for (std::size_t i = 0; i < samples_.size(); ++i)
        samples_[i] -= other.samples_[i];
    return *this;
}

ComplexSignal &ComplexSignal::operator*=(cplx factor)
{
    for (auto &s : samples_)
        s *= factor;
    return *this;
}

double mean_power_watts(std::span<const cplx> s)
{
    if (s.empty())
        throw ArgumentError("mean_power_watts: empty signal");
    double acc = 0.0;
    for (const auto &v : s)
        acc += std::norm(v);
    return acc / static_cast<double>(s.size());
}

} // namespace fdsic
