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

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fdsic
{
using cplx = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Reported by power measurements of an all-zero signal.
inline constexpr double kSilentDbm = -std::numeric_limits<double>::infinity();

inline constexpr double kBoltzmann = 1.380649e-23; // J/K
inline constexpr double kT0 = 290.0;               // K

// ----- Errors ------------------------------------------------------------

class ConfigError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

class ArgumentError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// ----- Unit conversions --------------------------------------------------
// Every dB quantity in the library is a power ratio. +inf dB maps to +inf
// linear (ideal attenuation / intercept), -inf dB maps to zero.

inline double db_to_lin(double db) { return std::pow(10.0, db / 10.0); }

inline double lin_to_db(double lin)
{
    if (lin <= 0.0)
        return -kInf;
    return 10.0 * std::log10(lin);
}

inline double dbm_to_watts(double dbm) { return db_to_lin(dbm - 30.0); }
inline double watts_to_dbm(double watts) { return lin_to_db(watts) + 30.0; }

// Amplitude factor for a power gain in dB.
inline double db_to_amplitude(double db) { return std::pow(10.0, db / 20.0); }

// k*T0*B in watts.
inline double thermal_noise_watts(double bandwidth_hz) { return kBoltzmann * kT0 * bandwidth_hz; }

// ----- Seed derivation ---------------------------------------------------
// All randomness flows from explicit 64-bit seeds. Child seeds are derived
// with the SplitMix64 finalizer so that sibling streams are decorrelated.

inline std::uint64_t mix_seed(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag)
{
    return mix_seed(parent ^ mix_seed(tag));
}

inline std::uint64_t derive_seed(std::uint64_t parent, std::string_view tag, std::uint64_t index = 0)
{
    std::uint64_t h = 0xCBF29CE484222325ULL; // FNV-1a
    for (char c : tag)
    {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return derive_seed(derive_seed(parent, h), index);
}

} // namespace fdsic
