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

#include "fdsic/impairments.hpp"
#include "fdsic/waveform.hpp"

#include <algorithm>
#include <random>

namespace fdsic
{

void TransceiverSpec::validate() const
{
    if (n_tx == 0 || n_rx == 0)
        throw ConfigError("transceiver: n_tx and n_rx must be >= 1");
    if (a_ant_db < 0.0 || a_rf_db < 0.0 || a_dig_db < 0.0)
        throw ConfigError("transceiver: attenuations must be >= 0 dB");
    if (!(bandwidth_hz > 0.0))
        throw ConfigError("transceiver: bandwidth_hz must be positive");
    if (!(irr_tx_db > 0.0) || !(irr_rx_db > 0.0))
        throw ConfigError("transceiver: IRR must be > 0 dB");
    if (adc_main.bits < 1 || adc_ref.bits < 1)
        throw ConfigError("transceiver: ADC bits must be >= 1");
    if (vga_range.min_db > vga_range.max_db)
        throw ConfigError("transceiver: vga_range min exceeds max");
    for (const AmplifierSpec *a : {&pa, &lna, &mixer, &vga})
        if (!std::isfinite(a->gain_db) || std::isnan(a->iip2_dbm) || std::isnan(a->iip3_dbm))
            throw ConfigError("transceiver: amplifier gains must be finite and intercepts not NaN");
}

PolynomialCoefficients polynomial_coefficients(const AmplifierSpec &spec)
{
    PolynomialCoefficients c;
    c.a1 = db_to_amplitude(spec.gain_db);
    if (std::isfinite(spec.iip3_dbm))
        c.a3 = -c.a1 / dbm_to_watts(spec.iip3_dbm);
    if (std::isfinite(spec.iip2_dbm))
        c.a2 = c.a1 / std::sqrt(dbm_to_watts(spec.iip2_dbm));
    return c;
}

namespace
{

ComplexSignal memoryless(const ComplexSignal &x, const PolynomialCoefficients &c)
{
    std::vector<cplx> y(x.size());
    const auto in = x.samples();
    for (std::size_t i = 0; i < y.size(); ++i)
    {
        const cplx v = in[i];
        const double p = std::norm(v);
        y[i] = v * (c.a1 + c.a3 * p) + c.a2 * p;
    }
    return ComplexSignal(std::move(y), x.sample_rate_hz());
}

} // namespace

ComplexSignal apply_pa(const ComplexSignal &x, const AmplifierSpec &spec)
{
    auto c = polynomial_coefficients(spec);
    c.a2 = 0.0;
    return memoryless(x, c);
}

ComplexSignal apply_rx_stage(const ComplexSignal &x, const AmplifierSpec &spec)
{
    return memoryless(x, polynomial_coefficients(spec));
}

ComplexSignal apply_iq_imbalance(const ComplexSignal &x, const IqSpec &spec)
{
    if (std::isnan(spec.irr_db))
        throw ArgumentError("apply_iq_imbalance: irr_db is NaN");
    if (spec.irr_db == kInf)
        return x;
    const double g2 = db_to_amplitude(-spec.irr_db);
    std::vector<cplx> y(x.size());
    const auto in = x.samples();
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = in[i] + g2 * std::conj(in[i]);
    return ComplexSignal(std::move(y), x.sample_rate_hz());
}

ComplexSignal add_thermal_noise(const ComplexSignal &x, double nf_db, double bandwidth_hz, std::uint64_t seed)
{
    if (!(bandwidth_hz > 0.0))
        throw ArgumentError("add_thermal_noise: bandwidth must be positive");
    if (x.empty())
        return x;
    const double p_w = db_to_lin(nf_db) * thermal_noise_watts(bandwidth_hz);
    return x + complex_gaussian(x.size(), watts_to_dbm(p_w), x.sample_rate_hz(), seed);
}

GainDecision select_vga_gain(double input_power_dbm, const AdcSpec &adc, const GainRange &range)
{
    if (!std::isfinite(input_power_dbm))
        throw ArgumentError("select_vga_gain: input is silent or not finite");
    GainDecision d;
    const double wanted = adc.target_power_dbm - input_power_dbm;
    d.gain_db = std::clamp(wanted, range.min_db, range.max_db);
    d.clamped = d.gain_db != wanted;
    return d;
}

double adc_full_scale(const AdcSpec &adc)
{
    return std::sqrt(dbm_to_watts(adc.target_power_dbm + adc.papr_headroom_db));
}

double nominal_adc_snr_db(const AdcSpec &adc)
{
    return 6.02 * adc.bits + 4.76 - adc.papr_headroom_db;
}

ComplexSignal quantize(const ComplexSignal &x, const AdcSpec &adc)
{
    if (adc.bits < 1 || adc.bits > 48)
        throw ArgumentError("quantize: bits must be in [1, 48]");
    const double full_scale = adc_full_scale(adc);
    const double levels = std::ldexp(1.0, adc.bits);
    const double step = 2.0 * full_scale / levels;
    const double lo = -levels / 2.0;
    const double hi = levels / 2.0 - 1.0;

    auto rail = [&](double v) {
        const double idx = std::clamp(std::floor(v / step), lo, hi);
        return (idx + 0.5) * step;
    };

    std::vector<cplx> y(x.size());
    const auto in = x.samples();
    for (std::size_t i = 0; i < y.size(); ++i)
        y[i] = {rail(in[i].real()), rail(in[i].imag())};
    return ComplexSignal(std::move(y), x.sample_rate_hz());
}

AgcResult agc_and_quantize(const ComplexSignal &x, const AdcSpec &adc, const GainRange &range,
                           const std::optional<AmplifierSpec> &vga)
{
    const double p_in = measure_power(x);
    if (p_in == kSilentDbm)
        throw ArgumentError("agc_and_quantize: input is silent");
    const auto decision = select_vga_gain(p_in, adc, range);

    ComplexSignal amplified;
    if (vga)
    {
        AmplifierSpec stage = *vga;
        stage.gain_db = decision.gain_db;
        amplified = apply_rx_stage(x, stage);
    }
    else
    {
        amplified = x * cplx(db_to_amplitude(decision.gain_db), 0.0);
    }
    return {quantize(amplified, adc), decision.gain_db, decision.clamped};
}

ComplexSignal reference_rx_front_end(const ComplexSignal &x_tx_out, const TransceiverSpec &spec)
{
    const double scale_db = spec.lna.gain_db - spec.a_ant_db - spec.a_rf_db;
    if (scale_db == -kInf)
        return ComplexSignal::zeros(x_tx_out.size(), x_tx_out.sample_rate_hz());
    return x_tx_out * cplx(db_to_amplitude(scale_db), 0.0);
}

} // namespace fdsic
