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

#include <cstddef>

namespace fdsic
{

// Memoryless amplifier / mixer stage. Intercepts are input referred; +inf
// disables the corresponding nonlinearity.
struct AmplifierSpec
{
    double gain_db = 0.0;
    double iip2_dbm = kInf;
    double iip3_dbm = kInf;
    double nf_db = 0.0;

    static AmplifierSpec pa() { return {27.0, kInf, 15.0, 5.0}; }
    static AmplifierSpec lna() { return {25.0, kInf, 5.0, 4.1}; }
    static AmplifierSpec mixer() { return {6.0, 50.0, 15.0, 4.0}; }
    // Gain is set by the AGC; 0 dB is a placeholder.
    static AmplifierSpec vga() { return {0.0, 50.0, 20.0, 4.0}; }
};

struct IqSpec
{
    double irr_db = kInf;

    static IqSpec tx() { return {25.0}; }
    static IqSpec rx() { return {60.0}; }
};

struct AdcSpec
{
    int bits = 12;
    double papr_headroom_db = 10.0;
    double target_power_dbm = -10.0; // mean power requested at the ADC input
};

struct GainRange
{
    double min_db = 0.0;
    double max_db = 69.0;
};

// Architecture parameters for the full-duplex transceiver. Defaults describe
// a 2x2 transceiver with 40 dB antenna separation and 30 dB RF cancellation.
struct TransceiverSpec
{
    std::size_t n_tx = 2;
    std::size_t n_rx = 2;
    double p_tx_dbm = 10.0;       // per transmitter, at the PA output
    double a_ant_db = 40.0;
    double a_rf_db = 30.0;
    double a_dig_db = kInf;       // only used by the analytic budget
    double p_soi_in_dbm = -83.9;
    double f_rx_db = 4.1;
    double bandwidth_hz = 12.5e6;
    double irr_tx_db = 25.0;
    double irr_rx_db = 60.0;

    AmplifierSpec pa = AmplifierSpec::pa();
    AmplifierSpec lna = AmplifierSpec::lna();
    AmplifierSpec mixer = AmplifierSpec::mixer();
    AmplifierSpec vga = AmplifierSpec::vga();
    GainRange vga_range{};

    AdcSpec adc_main{};
    AdcSpec adc_ref{};

    // Throws ConfigError.
    void validate() const;
};

} // namespace fdsic
