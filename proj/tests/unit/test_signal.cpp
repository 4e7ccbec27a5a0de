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

using namespace fdsic;
using Catch::Matchers::WithinAbs;

TEST_CASE("ComplexSignal construction and arithmetic", "[signal]")
{
    REQUIRE_THROWS_AS(ComplexSignal({1.0}, 0.0), ArgumentError);
    REQUIRE_THROWS_AS(ComplexSignal({1.0}, -1.0), ArgumentError);

    ComplexSignal a({{1.0, 2.0}, {3.0, -1.0}, {0.0, 0.5}}, 10.0);
    ComplexSignal b({{0.5, 0.0}, {1.0, 1.0}, {-2.0, 0.0}}, 10.0);

    const auto s = a + b;
    CHECK(s[0] == cplx(1.5, 2.0));
    CHECK(s[2] == cplx(-2.0, 0.5));
    const auto d = a - b;
    CHECK(d[1] == cplx(2.0, -2.0));
    const auto m = a * cplx(0.0, 1.0);
    CHECK(m[0] == cplx(-2.0, 1.0));
    CHECK(s.sample_rate_hz() == 10.0);

    REQUIRE_THROWS_AS(a + ComplexSignal({1.0}, 10.0), ArgumentError);
    REQUIRE_THROWS_AS(a - ComplexSignal({1.0}, 10.0), ArgumentError);
}

TEST_CASE("ComplexSignal slice", "[signal]")
{
    ComplexSignal a({1.0, 2.0, 3.0, 4.0}, 1.0);
    const auto s = a.slice(1, 2);
    REQUIRE(s.size() == 2);
    CHECK(s[0] == cplx(2.0));
    CHECK(s[1] == cplx(3.0));
    CHECK(a.slice(4, 0).empty());
    REQUIRE_THROWS_AS(a.slice(3, 2), ArgumentError);

    const auto z = ComplexSignal::zeros(5, 2.0);
    CHECK(z.size() == 5);
    CHECK(z[4] == cplx{});
}

TEST_CASE("mean power in watts", "[signal]")
{
    ComplexSignal a({{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {0.0, 0.0}}, 1.0);
    CHECK_THAT(mean_power_watts(a.samples()), WithinAbs(1.0, 1e-15));
    REQUIRE_THROWS_AS(mean_power_watts(std::span<const cplx>{}), ArgumentError);
}
