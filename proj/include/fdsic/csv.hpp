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

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace fdsic::csv
{

// Locale-independent fixed-point rendering; infinities print as inf / -inf.
inline std::string format_number(double v, int decimals = 6)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, decimals);
    std::string out(buf, res.ptr);
    if (out.find_first_not_of("-0.") == std::string::npos)
        out = std::string("0.") + std::string(static_cast<std::size_t>(decimals), '0');
    return out;
}

// Shortest round-trip representation; for values spanning many decades.
inline std::string format_exact(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::vector<std::string> split(std::string_view line, char sep = ',')
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true)
    {
        const auto pos = line.find(sep, start);
        if (pos == std::string_view::npos)
        {
            out.emplace_back(line.substr(start));
            return out;
        }
        out.emplace_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace fdsic::csv
