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

#include "fdsic/signal.hpp"

#include <cstdint>
#include <vector>

namespace fdsic
{

// OFDM numerology. Defaults: 64 subcarriers (48 loaded), 16-QAM, 16-sample
// guard interval, 4x oversampling, 4 us useful symbol => 64 MHz sampling.
struct OfdmConfig
{
    std::size_t n_subcarriers = 64;
    std::size_t n_data_subcarriers = 48;
    std::size_t constellation_order = 16;   // square QAM
    std::size_t guard_interval_samples = 16; // at the critical rate
    std::size_t oversampling_factor = 4;
    double symbol_duration_s = 4e-6;         // useful part, excluding guard

    // Throws ConfigError when inconsistent.
    void validate() const;

    double sample_rate_hz() const;
    std::size_t fft_size() const { return n_subcarriers * oversampling_factor; }
    std::size_t samples_per_symbol() const { return (n_subcarriers + guard_interval_samples) * oversampling_factor; }
};

// Cyclic-prefixed OFDM frame of n_symbols with uniformly random QAM symbols on
// the data subcarriers (split symmetrically around an empty DC bin), scaled so
// that the mean power of the returned frame is exactly power_dbm.
ComplexSignal generate_ofdm_frame(const OfdmConfig &cfg, std::size_t n_symbols, double power_dbm, std::uint64_t seed);

// Like generate_ofdm_frame, but truncated to n_samples (whole symbols are
// generated first, the power normalization applies to the truncated output).
ComplexSignal generate_ofdm_stream(const OfdmConfig &cfg, std::size_t n_samples, double power_dbm, std::uint64_t seed);

// Mean power in dBm; kSilentDbm for an all-zero signal.
double measure_power(const ComplexSignal &s);
double measure_power(std::span<const cplx> s);

// max |s|^2 / mean |s|^2 in dB.
double papr_db(const ComplexSignal &s);

// Linear convolution truncated to the input length:
//   out[n] = sum_k taps[k] * s[n - k],   s[m < 0] = 0.
ComplexSignal convolve(const ComplexSignal &s, std::span<const cplx> taps);

// Circular complex Gaussian samples with the given mean power.
ComplexSignal complex_gaussian(std::size_t n, double power_dbm, double sample_rate_hz, std::uint64_t seed);

// ----- SI coupling channel -----------------------------------------------

struct SiChannelParams
{
    std::size_t n_rx = 2;
    std::size_t n_tx = 2;
    std::size_t m_taps = 8;
    double k_factor_db = 35.8;      // +inf: pure line-of-sight
    std::size_t los_delay = 0;
    double mean_path_loss_db = 40.0;
};

// Rician FIR responses h_ij for every (rx, tx) pair.
struct MimoChannel
{
    std::size_t n_rx = 0;
    std::size_t n_tx = 0;
    std::size_t m_taps = 0;
    double k_factor_db = kInf;
    std::size_t los_delay = 0;
    std::vector<std::vector<cplx>> taps; // index rx * n_tx + tx

    const std::vector<cplx> &response(std::size_t rx, std::size_t tx) const { return taps.at(rx * n_tx + tx); }
    std::vector<cplx> &response(std::size_t rx, std::size_t tx) { return taps.at(rx * n_tx + tx); }
};

// Each pair gets an independent draw: a line-of-sight tap at los_delay with
// power P*K/(K+1) and random phase, and complex Gaussian scattered taps on the
// remaining positions rescaled to carry exactly P/(K+1), P = 10^(-loss/10).
MimoChannel draw_si_channel(const SiChannelParams &params, std::uint64_t seed);

// Single-pair convenience form.
MimoChannel draw_si_channel(std::size_t m_taps, double k_factor_db, std::size_t los_delay, double mean_path_loss_db,
                            std::uint64_t seed);

} // namespace fdsic
