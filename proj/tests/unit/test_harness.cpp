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

#include "fdsic/harness.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using namespace fdsic;
using Catch::Matchers::WithinAbs;

namespace
{

ScenarioConfig small_config()
{
    ScenarioConfig cfg;
    cfg.n_est = 4000;
    cfg.n_eval = 4000;
    cfg.n_trials = 2;
    cfg.p_tx_grid = {10.0};
    cfg.n_est_grid = {1000, 4000};
    return cfg;
}

ScenarioConfig ideal_config()
{
    auto cfg = small_config();
    auto &tr = cfg.transceiver;
    tr.irr_tx_db = tr.irr_rx_db = kInf;
    for (auto *a : {&tr.pa, &tr.lna, &tr.mixer, &tr.vga})
        a->iip2_dbm = a->iip3_dbm = kInf;
    cfg.chain.thermal_noise = false;
    cfg.chain.quantization = false;
    return cfg;
}

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::filesystem::path temp_path(const std::string &name)
{
    return std::filesystem::temp_directory_path() / ("fdsic-" + std::to_string(::getpid()) + "-" + name);
}

} // namespace

TEST_CASE("experiment names", "[harness]")
{
    for (auto e : {Experiment::budget_sweep, Experiment::sinr_vs_ptx, Experiment::sinr_vs_n})
        CHECK(parse_experiment(to_string(e)) == e);
    CHECK(parse_experiment("sinr-n") == Experiment::sinr_vs_n);
    CHECK_THROWS_AS(parse_experiment("fig5"), ConfigError);
}

TEST_CASE("scenario validation", "[harness]")
{
    ScenarioConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.effective_variants().size() == 4);
    cfg.experiment = Experiment::sinr_vs_n;
    CHECK(cfg.effective_variants() == std::vector<CancellerVariant>{CancellerVariant::ref_rx});

    auto bad = [](auto mutate) {
        ScenarioConfig c;
        mutate(c);
        return c;
    };
    CHECK_THROWS_AS(bad([](auto &c) { c.n_trials = 0; }).validate(), ConfigError);
    CHECK_THROWS_AS(bad([](auto &c) { c.p_tx_grid.clear(); }).validate(), ConfigError);
    CHECK_THROWS_AS(bad([](auto &c) { c.m_taps = 0; }).validate(), ConfigError);
    CHECK_THROWS_AS(bad([](auto &c) { c.nonlinear_order = 4; }).validate(), ConfigError);
    CHECK_THROWS_AS(bad([](auto &c) { c.n_est = 10; }).validate(), ConfigError);
    CHECK_THROWS_AS(bad([](auto &c) {
                        c.experiment = Experiment::sinr_vs_n;
                        c.n_est_grid.clear();
                    }).validate(),
                    ConfigError);

    CHECK(trial_seed(1, 0) != trial_seed(1, 1));
    CHECK(trial_seed(1, 0) != trial_seed(2, 0));
    CHECK(trial_seed(7, 3) == trial_seed(7, 3));
}

TEST_CASE("SINR measurement", "[harness][sinr]")
{
    constexpr std::size_t n = 10000;
    const OfdmConfig ofdm;
    const double fs = ofdm.sample_rate_hz();
    const auto soi = generate_ofdm_stream(ofdm, n, -60.0, 1);
    const auto noise = complex_gaussian(n, -60.0, fs, 2);

    CHECK(measure_sinr(soi, soi) == 60.0);
    CHECK(measure_sinr(soi * cplx(0.0, 3.0), soi, 4, 45.0) == 45.0);
    CHECK_THAT(measure_sinr(soi + noise, soi), WithinAbs(0.0, 0.2));
    CHECK_THAT(measure_sinr(soi + noise * cplx(std::sqrt(0.1), 0.0), soi), WithinAbs(10.0, 0.2));
    CHECK(measure_sinr(noise, soi) < -20.0);
    CHECK(measure_sinr(ComplexSignal::zeros(n, fs), soi) == kSilentDbm);

    CHECK_THROWS_AS(measure_sinr(soi, soi.slice(0, n - 1)), ArgumentError);
    CHECK_THROWS_AS(measure_sinr(soi.slice(0, 7), soi.slice(0, 7)), ArgumentError);
}

TEST_CASE("ideal chain reaches the reporting cap", "[harness]")
{
    const auto cfg = ideal_config();
    const auto cap = simulate_capture(cfg, 10.0, cfg.n_est, true, 5);
    CHECK(cap.ideal_sinr_db == cfg.sinr_cap_db);
    for (auto v : kAllVariants)
    {
        const auto r = evaluate_variant(cfg, cap, v);
        INFO(to_string(v));
        CHECK(r.sinr_db == cfg.sinr_cap_db);
    }
}

TEST_CASE("capture layout", "[harness]")
{
    auto cfg = small_config();
    const auto cap = simulate_capture(cfg, 10.0, 1000, true, 9);
    const auto &tr = cfg.transceiver;
    REQUIRE(cap.rx_adc.size() == tr.n_rx);
    REQUIRE(cap.soi.size() == tr.n_rx);
    REQUIRE(cap.tx_data.size() == tr.n_tx);
    REQUIRE(cap.ref_adc.size() == tr.n_tx);
    for (const auto &s : cap.rx_adc)
        CHECK(s.size() == 1000 + cfg.n_eval);
    for (const auto &s : cap.soi)
    {
        CHECK(measure_power(s.slice(0, 1000)) == kSilentDbm);
        CHECK_THAT(measure_power(s.slice(1000, cfg.n_eval)), WithinAbs(tr.p_soi_in_dbm, 0.5));
    }
    const auto uncal = simulate_capture(cfg, 10.0, 1000, false, 9);
    CHECK(measure_power(uncal.soi[0].slice(0, 1000)) > tr.p_soi_in_dbm - 1.0);
    CHECK(uncal.tx_data[1].vector() == cap.tx_data[1].vector());

    const double noise_dbm = watts_to_dbm(thermal_noise_watts(tr.bandwidth_hz)) + tr.f_rx_db;
    CHECK_THAT(cap.ideal_sinr_db, WithinAbs(tr.p_soi_in_dbm - noise_dbm, 0.5));
    CHECK(cap.warnings.empty());
}

TEST_CASE("default chain at 10 dBm", "[harness][chain]")
{
    ScenarioConfig cfg;
    double ref = 0.0, lin = 0.0, ideal = 0.0;
    constexpr int trials = 3;
    for (int t = 0; t < trials; ++t)
    {
        const auto cap = simulate_capture(cfg, 10.0, cfg.n_est, true, trial_seed(11, t));
        ref += evaluate_variant(cfg, cap, CancellerVariant::ref_rx).sinr_db / trials;
        lin += evaluate_variant(cfg, cap, CancellerVariant::linear).sinr_db / trials;
        ideal += cap.ideal_sinr_db / trials;
    }
    CHECK_THAT(ref, WithinAbs(ideal, 1.0));
    CHECK(lin <= ref - 8.0);
}

TEST_CASE("estimating without calibration never helps", "[harness][chain]")
{
    ScenarioConfig cfg;
    cfg.n_eval = 4000;
    for (std::size_t n_est : {1000u, 10000u})
    {
        double cal = 0.0, uncal = 0.0;
        for (int t = 0; t < 3; ++t)
        {
            const auto seed = trial_seed(3, t);
            cal += evaluate_variant(cfg, simulate_capture(cfg, 15.0, n_est, true, seed), CancellerVariant::ref_rx)
                       .sinr_db;
            uncal += evaluate_variant(cfg, simulate_capture(cfg, 15.0, n_est, false, seed), CancellerVariant::ref_rx)
                         .sinr_db;
        }
        INFO("n_est " << n_est);
        CHECK(uncal <= cal);
    }
}

TEST_CASE("AGC clamp surfaces as a warning", "[harness]")
{
    auto cfg = small_config();
    cfg.transceiver.vga_range = {0.0, 1.0};
    const auto r = simulate_trial(cfg, CancellerVariant::ref_rx, 10.0, cfg.n_est, 1);
    CHECK(std::find(r.warnings.begin(), r.warnings.end(), "vga-clamped:rx0") != r.warnings.end());
}

TEST_CASE("experiment output", "[harness][csv]")
{
    auto cfg = small_config();
    cfg.n_trials = 1;
    cfg.variants = {CancellerVariant::ref_rx};
    const auto out = temp_path("one.csv");
    cfg.output_path = out.string();
    const auto res = run_experiment(cfg);
    REQUIRE(res.rows.size() == 1);
    REQUIRE(res.summary.size() == 1);
    CHECK(res.summary[0].trials == 1);
    CHECK(res.summary[0].std_db == 0.0);
    CHECK(res.at(CancellerVariant::ref_rx, 10.0, cfg.n_est, true).mean_db == res.rows[0].sinr_db);
    CHECK_THROWS_AS(res.at(CancellerVariant::linear, 10.0, cfg.n_est, true), ArgumentError);

    std::istringstream csv(slurp(out));
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(csv, line))
        lines.push_back(line);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == kSinrCsvHeader);
    CHECK(lines[1].rfind("sinr-vs-ptx,ref-rx,", 0) == 0);
    CHECK(slurp(out).back() == '\n');

    std::istringstream summary(slurp(out.string() + ".summary.csv"));
    std::getline(summary, line);
    CHECK(line == kSummaryCsvHeader);
    std::filesystem::remove(out);
    std::filesystem::remove(out.string() + ".summary.csv");

    cfg.output_path = "/nonexistent-dir/fdsic/out.csv";
    CHECK_THROWS_AS(run_experiment(cfg), IoError);
}

TEST_CASE("budget sweep experiment", "[harness][csv]")
{
    ScenarioConfig cfg;
    cfg.experiment = Experiment::budget_sweep;
    const auto out = temp_path("budget.csv");
    cfg.output_path = out.string();
    const auto res = run_experiment(cfg);
    CHECK(res.budget_proposed.size() == cfg.p_tx_grid.size());
    CHECK(res.budget_traditional.size() == cfg.p_tx_grid.size());
    CHECK(res.rows.empty());
    std::istringstream csv(slurp(out));
    std::string line;
    std::size_t n = 0;
    while (std::getline(csv, line))
        ++n;
    CHECK(n == 1 + 2 * cfg.p_tx_grid.size());
    std::filesystem::remove(out);
}

TEST_CASE("runs are reproducible", "[harness][determinism]")
{
    auto cfg = small_config();
    cfg.experiment = Experiment::sinr_vs_n;
    const auto a = temp_path("det-a.csv"), b = temp_path("det-b.csv");
    cfg.threads = 1;
    cfg.output_path = a.string();
    run_experiment(cfg);
    cfg.threads = 3;
    cfg.output_path = b.string();
    const auto res = run_experiment(cfg);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a.string() + ".summary.csv") == slurp(b.string() + ".summary.csv"));
    CHECK(res.rows.size() == cfg.n_trials * cfg.n_est_grid.size() * 2);
    for (const auto &p : {a, b})
    {
        std::filesystem::remove(p);
        std::filesystem::remove(p.string() + ".summary.csv");
    }

    cfg.master_seed = 2;
    cfg.output_path.clear();
    const auto other = run_experiment(cfg);
    CHECK(other.rows[0].sinr_db != res.rows[0].sinr_db);
}

TEST_CASE("reference receiver tracks the analytic budget", "[budget-tracking]")
{
    ScenarioConfig cfg;
    auto spec = cfg.transceiver;
    spec.a_dig_db = kInf;
    const auto budget = sweep_budget(spec, cfg.p_tx_grid, BudgetVariant::proposed);
    for (std::size_t k = 0; k < cfg.p_tx_grid.size(); ++k)
    {
        double sinr = 0.0;
        constexpr int trials = 3;
        for (int t = 0; t < trials; ++t)
            sinr += simulate_trial(cfg, CancellerVariant::ref_rx, cfg.p_tx_grid[k], cfg.n_est, trial_seed(21, t))
                        .sinr_db /
                    trials;
        INFO("p_tx " << cfg.p_tx_grid[k] << " dBm");
        CHECK_THAT(sinr, WithinAbs(budget[k].sinr_db, 2.0));
    }
}
