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

#include "fdsic/waveform.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <numbers>
#include <random>

namespace fdsic
{

namespace
{

std::size_t qam_side(std::size_t order)
{
    auto side = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(order))));
    return side;
}

// FFT bin indices (in the oversampled grid) carrying data.
std::vector<std::size_t> data_bins(const OfdmConfig &cfg)
{
    const std::size_t nfft = cfg.fft_size();
    const auto n_data = static_cast<std::ptrdiff_t>(cfg.n_data_subcarriers);
    const bool skip_dc = cfg.n_data_subcarriers < cfg.n_subcarriers;
    const std::ptrdiff_t n_neg = n_data / 2;
    const std::ptrdiff_t n_pos = n_data - n_neg;

    std::vector<std::size_t> bins;
    bins.reserve(cfg.n_data_subcarriers);
    for (std::ptrdiff_t k = -n_neg; k < 0; ++k)
        bins.push_back(static_cast<std::size_t>(static_cast<std::ptrdiff_t>(nfft) + k));
    const std::ptrdiff_t first_pos = skip_dc ? 1 : 0;
    for (std::ptrdiff_t k = first_pos; k < first_pos + n_pos; ++k)
        bins.push_back(static_cast<std::size_t>(k));
    return bins;
}

void normalize_power(std::vector<cplx> &x, double power_dbm)
{
    const double p = mean_power_watts(x);
    if (p <= 0.0)
        return;
    const double scale = std::sqrt(dbm_to_watts(power_dbm) / p);
    for (auto &v : x)
        v *= scale;
}

std::vector<cplx> ofdm_symbols(const OfdmConfig &cfg, std::size_t n_symbols, std::uint64_t seed)
{
    cfg.validate();
    if (n_symbols == 0)
        throw ArgumentError("generate_ofdm_frame: n_symbols must be >= 1");

    const std::size_t nfft = cfg.fft_size();
    const std::size_t ncp = cfg.guard_interval_samples * cfg.oversampling_factor;
    const std::size_t side = qam_side(cfg.constellation_order);
    const auto bins = data_bins(cfg);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> level(0, side - 1);

    Eigen::FFT<double> fft;
    std::vector<cplx> freq(nfft), time(nfft);
    std::vector<cplx> out;
    out.reserve(n_symbols * (nfft + ncp));

    const double offset = static_cast<double>(side) - 1.0;
    for (std::size_t s = 0; s < n_symbols; ++s)
    {
        std::fill(freq.begin(), freq.end(), cplx{});
        for (std::size_t b : bins)
        {
            const double re = 2.0 * static_cast<double>(level(rng)) - offset;
            const double im = 2.0 * static_cast<double>(level(rng)) - offset;
            freq[b] = {re, im};
        }
        fft.inv(time, freq);
        out.insert(out.end(), time.end() - static_cast<std::ptrdiff_t>(ncp), time.end());
        out.insert(out.end(), time.begin(), time.end());
    }
    return out;
}

} // namespace

void OfdmConfig::validate() const
{
    if (n_subcarriers == 0)
        throw ConfigError("ofdm: n_subcarriers must be >= 1");
    if (n_data_subcarriers == 0 || n_data_subcarriers > n_subcarriers)
        throw ConfigError("ofdm: n_data_subcarriers must be in [1, n_subcarriers]");
    if (oversampling_factor == 0)
        throw ConfigError("ofdm: oversampling_factor must be >= 1");
    if (!(symbol_duration_s > 0.0) || !std::isfinite(symbol_duration_s))
        throw ConfigError("ofdm: symbol_duration_s must be positive");
    const std::size_t side = qam_side(constellation_order);
    if (constellation_order < 4 || side * side != constellation_order)
        throw ConfigError("ofdm: constellation_order must be a square QAM order >= 4");
}

double OfdmConfig::sample_rate_hz() const
{
    return static_cast<double>(n_subcarriers * oversampling_factor) / symbol_duration_s;
}

ComplexSignal generate_ofdm_frame(const OfdmConfig &cfg, std::size_t n_symbols, double power_dbm, std::uint64_t seed)
{
    auto x = ofdm_symbols(cfg, n_symbols, seed);
    normalize_power(x, power_dbm);
    return ComplexSignal(std::move(x), cfg.sample_rate_hz());
}

ComplexSignal generate_ofdm_stream(const OfdmConfig &cfg, std::size_t n_samples, double power_dbm, std::uint64_t seed)
{
    if (n_samples == 0)
        throw ArgumentError("generate_ofdm_stream: n_samples must be >= 1");
    const std::size_t per_symbol = cfg.samples_per_symbol();
    const std::size_t n_symbols = (n_samples + per_symbol - 1) / per_symbol;
    auto x = ofdm_symbols(cfg, n_symbols, seed);
    x.resize(n_samples);
    normalize_power(x, power_dbm);
    return ComplexSignal(std::move(x), cfg.sample_rate_hz());
}

double measure_power(std::span<const cplx> s)
{
    if (s.empty())
        throw ArgumentError("measure_power: empty signal");
    const double p = mean_power_watts(s);
    if (p == 0.0)
        return kSilentDbm;
    return watts_to_dbm(p);
}

double measure_power(const ComplexSignal &s) { return measure_power(s.samples()); }

double papr_db(const ComplexSignal &s)
{
    const double mean = mean_power_watts(s.samples());
    double peak = 0.0;
    for (const auto &v : s)
        peak = std::max(peak, std::norm(v));
    return lin_to_db(peak / mean);
}

ComplexSignal convolve(const ComplexSignal &s, std::span<const cplx> taps)
{
    if (taps.empty())
        throw ArgumentError("convolve: impulse response must have at least one tap");
    const std::size_t n = s.size();
    std::vector<cplx> out(n);
    const auto in = s.samples();
    for (std::size_t k = 0; k < taps.size(); ++k)
    {
        const cplx h = taps[k];
        if (h == cplx{})
            continue;
        for (std::size_t i = k; i < n; ++i)
            out[i] += h * in[i - k];
    }
    return ComplexSignal(std::move(out), s.sample_rate_hz());
}

ComplexSignal complex_gaussian(std::size_t n, double power_dbm, double sample_rate_hz, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(dbm_to_watts(power_dbm) / 2.0));
    std::vector<cplx> x(n);
    for (auto &v : x)
    {
        const double re = gauss(rng);
        v = {re, gauss(rng)};
    }
    return ComplexSignal(std::move(x), sample_rate_hz);
}

MimoChannel draw_si_channel(const SiChannelParams &params, std::uint64_t seed)
{
    if (params.m_taps == 0)
        throw ArgumentError("draw_si_channel: m_taps must be >= 1");
    if (params.los_delay >= params.m_taps)
        throw ArgumentError("draw_si_channel: los_delay must be < m_taps");
    if (std::isnan(params.k_factor_db) || params.k_factor_db == -kInf)
        throw ArgumentError("draw_si_channel: k_factor_db must be finite or +inf");
    if (params.n_rx == 0 || params.n_tx == 0)
        throw ArgumentError("draw_si_channel: antenna counts must be >= 1");

    MimoChannel ch;
    ch.n_rx = params.n_rx;
    ch.n_tx = params.n_tx;
    ch.m_taps = params.m_taps;
    ch.k_factor_db = params.k_factor_db;
    ch.los_delay = params.los_delay;
    ch.taps.resize(params.n_rx * params.n_tx);

    const double total = db_to_lin(-params.mean_path_loss_db);
    const bool pure_los = params.k_factor_db == kInf || params.m_taps == 1;
    const double k_lin = pure_los ? kInf : db_to_lin(params.k_factor_db);
    const double p_los = pure_los ? total : total * k_lin / (k_lin + 1.0);
    const double p_scatter = pure_los ? 0.0 : total / (k_lin + 1.0);

    for (std::size_t pair = 0; pair < ch.taps.size(); ++pair)
    {
        std::mt19937_64 rng(derive_seed(seed, "si-channel-pair", pair));
        std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
        std::normal_distribution<double> gauss(0.0, 1.0);

        auto &h = ch.taps[pair];
        h.assign(params.m_taps, cplx{});
        h[params.los_delay] = std::polar(std::sqrt(p_los), phase(rng));
        if (p_scatter == 0.0)
            continue;

        double drawn = 0.0;
        for (std::size_t k = 0; k < params.m_taps; ++k)
        {
            if (k == params.los_delay)
                continue;
            const double re = gauss(rng);
            h[k] = {re, gauss(rng)};
            drawn += std::norm(h[k]);
        }
        const double scale = std::sqrt(p_scatter / drawn);
        for (std::size_t k = 0; k < params.m_taps; ++k)
            if (k != params.los_delay)
                h[k] *= scale;
    }
    return ch;
}

MimoChannel draw_si_channel(std::size_t m_taps, double k_factor_db, std::size_t los_delay, double mean_path_loss_db,
                            std::uint64_t seed)
{
    SiChannelParams p;
    p.n_rx = 1;
    p.n_tx = 1;
    p.m_taps = m_taps;
    p.k_factor_db = k_factor_db;
    p.los_delay = los_delay;
    p.mean_path_loss_db = mean_path_loss_db;
    return draw_si_channel(p, seed);
}

} // namespace fdsic
