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


#include "fdsic/validation.hpp"

#include "fdsic/impairments.hpp"
#include "fdsic/waveform.hpp"

#include <numbers>

namespace fdsic
{

namespace
{

constexpr std::size_t kToneLength = 4096;
constexpr std::size_t kBin1 = 400;
constexpr std::size_t kBin2 = 440;
constexpr double kToneRate = 64e6;

double bin_power_watts(const ComplexSignal &y, long bin)
{
    const double n = static_cast<double>(y.size());
    cplx acc{};
    for (std::size_t i = 0; i < y.size(); ++i)
        acc += y[i] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(bin) * static_cast<double>(i) / n);
    return std::norm(acc / n);
}

ComplexSignal tones(const std::vector<long> &bins, double amplitude)
{
    std::vector<cplx> s(kToneLength);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (long b : bins)
            s[i] += std::polar(amplitude, 2.0 * std::numbers::pi * static_cast<double>(b) * static_cast<double>(i) /
                                              static_cast<double>(kToneLength));
    return ComplexSignal(std::move(s), kToneRate);
}

ValidationCheck make_check(std::string name, std::string unit, double measured, double expected, double tol)
{
    ValidationCheck c{std::move(name), std::move(unit), measured, expected, tol, false};
    if (std::isinf(expected))
        c.passed = measured == expected;
    else
        c.passed = std::abs(measured - expected) <= tol;
    return c;
}

StageFunction rx_stage(const AmplifierSpec &spec)
{
    return [spec](const ComplexSignal &x) { return apply_rx_stage(x, spec); };
}

} // namespace

bool ValidationReport::all_passed() const
{
    for (const auto &c : checks)
        if (!c.passed)
            return false;
    return !checks.empty();
}

TwoToneResult two_tone_intercepts(const StageFunction &stage, double tone_power_dbm)
{
    const long b1 = static_cast<long>(kBin1), b2 = static_cast<long>(kBin2);
    const auto y = stage(tones({b1, b2}, std::sqrt(dbm_to_watts(tone_power_dbm))));

    const double fund = 0.5 * (bin_power_watts(y, b1) + bin_power_watts(y, b2));
    const double im3 = 0.5 * (bin_power_watts(y, 2 * b1 - b2) + bin_power_watts(y, 2 * b2 - b1));
    const double im2 = 0.5 * (bin_power_watts(y, b2 - b1) + bin_power_watts(y, b1 - b2));
    // products below this floor are numerical noise
    const double floor = fund * 1e-26;

    TwoToneResult r;
    if (im3 > floor)
        r.iip3_dbm = tone_power_dbm + 0.5 * lin_to_db(fund / im3);
    if (im2 > floor)
        r.iip2_dbm = tone_power_dbm + lin_to_db(fund / im2);
    return r;
}

double measured_image_ratio_db(const StageFunction &stage)
{
    const long b = static_cast<long>(kBin1);
    const auto y = stage(tones({b}, 1.0));
    return lin_to_db(bin_power_watts(y, -b) / bin_power_watts(y, b));
}

ValidationReport run_validation(const TransceiverSpec &spec, std::uint64_t seed)
{
    ValidationReport rep;
    constexpr double kInterceptTol = 0.3;
    constexpr double kBackoffDb = 40.0;

    struct Stage
    {
        const char *name;
        AmplifierSpec spec;
        bool pa;
    };
    const Stage stages[] = {{"pa", spec.pa, true},
                            {"lna", spec.lna, false},
                            {"mixer", spec.mixer, false},
                            {"vga", spec.vga, false}};
    for (const auto &s : stages)
    {
        const StageFunction f = s.pa ? StageFunction([a = s.spec](const ComplexSignal &x) { return apply_pa(x, a); })
                                     : rx_stage(s.spec);
        const double ref = std::isfinite(s.spec.iip3_dbm)   ? s.spec.iip3_dbm
                           : std::isfinite(s.spec.iip2_dbm) ? s.spec.iip2_dbm
                                                            : 0.0;
        const auto tt = two_tone_intercepts(f, ref - kBackoffDb);
        rep.checks.push_back(
            make_check(std::string(s.name) + " iip3", "dBm", tt.iip3_dbm, s.spec.iip3_dbm, kInterceptTol));
        const double expected_iip2 = s.pa ? kInf : s.spec.iip2_dbm;
        if (!s.pa)
            rep.checks.push_back(
                make_check(std::string(s.name) + " iip2", "dBm", tt.iip2_dbm, expected_iip2, kInterceptTol));
    }

    constexpr double kImageTol = 1e-6;
    for (const auto &[name, irr] : {std::pair{"tx iq image", spec.irr_tx_db}, std::pair{"rx iq image", spec.irr_rx_db}})
    {
        const double ratio = measured_image_ratio_db(
            [irr = irr](const ComplexSignal &x) { return apply_iq_imbalance(x, IqSpec{irr}); });
        rep.checks.push_back(make_check(name, "dB", ratio, -irr, kImageTol));
    }

    constexpr std::size_t kNoiseSamples = 1u << 20;
    constexpr double kNoiseTol = 0.1;
    const auto noise = add_thermal_noise(ComplexSignal::zeros(kNoiseSamples, kToneRate), spec.f_rx_db,
                                         spec.bandwidth_hz, derive_seed(seed, "validation-noise"));
    rep.checks.push_back(make_check("thermal noise floor", "dBm", measure_power(noise),
                                    watts_to_dbm(thermal_noise_watts(spec.bandwidth_hz)) + spec.f_rx_db, kNoiseTol));

    constexpr double kSndrTol = 1.0;
    const auto g = complex_gaussian(kNoiseSamples, spec.adc_main.target_power_dbm, kToneRate,
                                    derive_seed(seed, "validation-adc"));
    const auto q = quantize(g, spec.adc_main);
    const double p_err = mean_power_watts((q - g).samples());
    rep.checks.push_back(make_check("adc sndr (gaussian)", "dB", lin_to_db(mean_power_watts(g.samples()) / p_err),
                                    nominal_adc_snr_db(spec.adc_main), kSndrTol));
    return rep;
}

} // namespace fdsic
