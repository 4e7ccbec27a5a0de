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


#include "catch_amalgamated.hpp"

#include "fdsic/signal.hpp"
#include "fdsic/validation.hpp"

using namespace fdsic;
using Catch::Matchers::WithinAbs;

namespace
{

// memoryless odd/even polynomial, coefficients in sqrt-watt units
StageFunction polynomial(double gain_db, double iip2_dbm, double iip3_dbm)
{
    const double a1 = std::pow(10.0, gain_db / 20.0);
    const double a2 = std::isinf(iip2_dbm) ? 0.0 : a1 / std::sqrt(dbm_to_watts(iip2_dbm));
    const double a3 = std::isinf(iip3_dbm) ? 0.0 : -a1 / dbm_to_watts(iip3_dbm);
    return [=](const ComplexSignal &x) {
        std::vector<cplx> y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            const cplx v = x[i];
            y[i] = a1 * v + a2 * std::norm(v) + a3 * v * std::norm(v);
        }
        return ComplexSignal(std::move(y), x.sample_rate_hz());
    };
}

} // namespace

TEST_CASE("two-tone extraction on a known polynomial", "[validation]")
{
    const auto r = two_tone_intercepts(polynomial(10.0, 40.0, 12.0), -30.0);
    CHECK_THAT(r.iip3_dbm, WithinAbs(12.0, 0.3));
    CHECK_THAT(r.iip2_dbm, WithinAbs(40.0, 0.3));

    const auto lin = two_tone_intercepts(polynomial(6.0, kInf, kInf), -20.0);
    CHECK(std::isinf(lin.iip3_dbm));
    CHECK(std::isinf(lin.iip2_dbm));
}

TEST_CASE("image ratio of a widely linear map", "[validation]")
{
    for (double beta_db : {-20.0, -45.0})
    {
        const cplx alpha(0.9, 0.1), beta = std::polar(std::abs(alpha) * std::pow(10.0, beta_db / 20.0), 0.7);
        const StageFunction stage = [&](const ComplexSignal &x) {
            std::vector<cplx> y(x.size());
            for (std::size_t i = 0; i < x.size(); ++i)
                y[i] = alpha * x[i] + beta * std::conj(x[i]);
            return ComplexSignal(std::move(y), x.sample_rate_hz());
        };
        CHECK_THAT(measured_image_ratio_db(stage), WithinAbs(beta_db, 1e-6));
    }
}

TEST_CASE("default transceiver report", "[validation]")
{
    const TransceiverSpec spec;
    const auto rep = run_validation(spec, 3);
    REQUIRE(rep.checks.size() == 11);
    std::size_t iip3 = 0, iip2 = 0;
    for (const auto &c : rep.checks)
    {
        INFO(c.name << ": " << c.measured << " vs " << c.expected);
        iip3 += c.name.ends_with(" iip3");
        iip2 += c.name.ends_with(" iip2");
        CHECK(c.tolerance > 0.0);
        if (c.name.starts_with("adc"))
            continue;
        CHECK(c.passed);
    }
    CHECK(iip3 == 4);
    CHECK(iip2 == 3);

    ValidationReport r;
    CHECK_FALSE(r.all_passed());
    r.checks.push_back({"x", "dB", 0.0, 0.0, 1.0, true});
    CHECK(r.all_passed());
    r.checks.push_back({"y", "dB", 2.0, 0.0, 1.0, false});
    CHECK_FALSE(r.all_passed());
}
