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
#include "fdsic/transceiver.hpp"

#include <optional>

namespace fdsic
{

// Time-domain coefficients of y = a1*x + a3*x*|x|^2 + a2*|x|^2 under the
// |x|^2 = watts convention:
//   a1 = 10^(gain/20),  a3 = -a1 / P_iip3,  a2 = a1 / sqrt(P_iip2).
struct PolynomialCoefficients
{
    double a1 = 1.0;
    double a2 = 0.0;
    double a3 = 0.0;
};

PolynomialCoefficients polynomial_coefficients(const AmplifierSpec &spec);

// Odd-order PA model; the second-order intercept is ignored.
ComplexSignal apply_pa(const ComplexSignal &x, const AmplifierSpec &spec);

// Receiver stage (LNA, mixer, VGA): gain, third-order and, when iip2 is
// finite, the second-order envelope term a2*|x|^2.
ComplexSignal apply_rx_stage(const ComplexSignal &x, const AmplifierSpec &spec);

// y = x + g2*conj(x), g2 = 10^(-irr/20). +inf IRR leaves x untouched.
ComplexSignal apply_iq_imbalance(const ComplexSignal &x, const IqSpec &spec);

// Adds circular complex Gaussian noise of power F*k*T0*B watts.
ComplexSignal add_thermal_noise(const ComplexSignal &x, double nf_db, double bandwidth_hz, std::uint64_t seed);

// Gain that brings input_power_dbm to the ADC target, clamped to range.
struct GainDecision
{
    double gain_db = 0.0;
    bool clamped = false;
};

GainDecision select_vga_gain(double input_power_dbm, const AdcSpec &adc, const GainRange &range);

// Per-rail full-scale amplitude: the clip level equals the amplitude of a
// sample whose power sits papr_headroom_db above the target.
double adc_full_scale(const AdcSpec &adc);

// Uniform mid-rise quantizer, identical I and Q rails, clipping at full scale.
ComplexSignal quantize(const ComplexSignal &x, const AdcSpec &adc);

// Nominal quantization SNR, 6.02*bits + 4.76 - PAPR, in dB.
double nominal_adc_snr_db(const AdcSpec &adc);

struct AgcResult
{
    ComplexSignal signal;
    double applied_gain_db = 0.0;
    bool clamped = false;
};

// Chooses the VGA gain from the mean power of x, applies it (through the VGA
// distortion model when vga is given; its gain field is overridden), then
// quantizes. Throws ArgumentError on a silent input.
AgcResult agc_and_quantize(const ComplexSignal &x, const AdcSpec &adc, const GainRange &range,
                           const std::optional<AmplifierSpec> &vga = std::nullopt);

// Attenuator front end of a reference receiver: scales the transmitter output
// by g_LNA / (a_ant * a_RF) so the following mixer sees the level of the
// actual receive chain.
ComplexSignal reference_rx_front_end(const ComplexSignal &x_tx_out, const TransceiverSpec &spec);

} // namespace fdsic
