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

#include <span>
#include <vector>

namespace fdsic
{

// Complex baseband samples with a sample rate. |s[n]|^2 is instantaneous
// power in watts.
class ComplexSignal
{
public:
    ComplexSignal() = default;
    ComplexSignal(std::vector<cplx> samples, double sample_rate_hz);

    // Zero-valued signal of the given length.
    static ComplexSignal zeros(std::size_t n, double sample_rate_hz);

    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }
    double sample_rate_hz() const { return sample_rate_hz_; }

    std::span<const cplx> samples() const { return samples_; }
    std::span<cplx> samples() { return samples_; }
    const std::vector<cplx> &vector() const { return samples_; }

    cplx operator[](std::size_t i) const { return samples_[i]; }
    cplx &operator[](std::size_t i) { return samples_[i]; }

    auto begin() const { return samples_.begin(); }
    auto end() const { return samples_.end(); }

    // Samples [offset, offset + count).
    ComplexSignal slice(std::size_t offset, std::size_t count) const;

    ComplexSignal &operator+=(const ComplexSignal &other);
    ComplexSignal &operator-=(const ComplexSignal &other);
    ComplexSignal &operator*=(cplx factor);

    friend ComplexSignal operator+(ComplexSignal a, const ComplexSignal &b) { return a += b; }
    friend ComplexSignal operator-(ComplexSignal a, const ComplexSignal &b) { return a -= b; }
    friend ComplexSignal operator*(ComplexSignal a, cplx f) { return a *= f; }
    friend ComplexSignal operator*(cplx f, ComplexSignal a) { return a *= f; }

private:
    std::vector<cplx> samples_;
    double sample_rate_hz_ = 1.0;
};

// Mean of |s[n]|^2 in watts. Throws ArgumentError on an empty signal.
double mean_power_watts(std::span<const cplx> s);

} // namespace fdsic
