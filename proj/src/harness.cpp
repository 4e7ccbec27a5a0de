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

#include "fdsic/harness.hpp"

#include "fdsic/csv.hpp"
#include "fdsic/impairments.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>
#include <tuple>

namespace fdsic
{

std::string to_string(Experiment e)
{
    switch (e)
    {
    case Experiment::budget_sweep:
        return "budget-sweep";
    case Experiment::sinr_vs_ptx:
        return "sinr-vs-ptx";
    case Experiment::sinr_vs_n:
        return "sinr-vs-n";
    }
    return "unknown";
}

Experiment parse_experiment(const std::string &s)
{
    if (s == "budget-sweep" || s == "budget")
        return Experiment::budget_sweep;
    if (s == "sinr-vs-ptx" || s == "sinr-ptx")
        return Experiment::sinr_vs_ptx;
    if (s == "sinr-vs-n" || s == "sinr-n")
        return Experiment::sinr_vs_n;
    throw ConfigError("unknown experiment '" + s + "'");
}

void ScenarioConfig::validate() const
{
    transceiver.validate();
    ofdm.validate();
    if (m_taps < 1)
        throw ConfigError("m_taps must be >= 1");
    if (los_delay >= m_taps)
        throw ConfigError("los_delay must be < m_taps");
    if (std::isnan(k_factor_db))
        throw ConfigError("k_factor_db must be a number");
    if (n_trials < 1)
        throw ConfigError("n_trials must be >= 1");
    if (n_eval < 2 * sinr_fit_taps || sinr_fit_taps < 1)
        throw ConfigError("n_eval must cover at least twice the SINR fit taps");
    if (nonlinear_order < 1 || nonlinear_order % 2 == 0)
        throw ConfigError("nonlinear_order must be odd and >= 1");
    if (!(max_condition > 1.0))
        throw ConfigError("max_condition must be > 1");
    if (!(sinr_cap_db > 0.0) || !std::isfinite(sinr_cap_db))
        throw ConfigError("sinr_cap_db must be positive and finite");
    if (p_tx_grid.empty() && experiment != Experiment::sinr_vs_n)
        throw ConfigError("p_tx_grid must not be empty");
    for (double p : p_tx_grid)
        if (!std::isfinite(p))
            throw ConfigError("p_tx_grid entries must be finite");
    if (!std::isfinite(sinr_vs_n_p_tx_dbm))
        throw ConfigError("sinr_vs_n_p_tx_dbm must be finite");

    const auto variants_used = effective_variants();
    std::size_t max_coeffs = 0;
    for (auto v : variants_used)
    {
        max_coeffs = std::max(max_coeffs, transceiver.n_tx * basis_for(v, nonlinear_order).size() * m_taps);
    }
    auto check_n = [&](std::size_t n, const char *what) {
        if (n < m_taps + max_coeffs)
            throw ConfigError(std::string(what) + " is too short for " + std::to_string(max_coeffs) +
                              " coefficients");
    };
    if (experiment == Experiment::sinr_vs_ptx)
        check_n(n_est, "n_est");
    if (experiment == Experiment::sinr_vs_n)
    {
        if (n_est_grid.empty())
            throw ConfigError("n_est_grid must not be empty");
        for (auto n : n_est_grid)
            check_n(n, "n_est_grid entry");
    }
}

std::vector<CancellerVariant> ScenarioConfig::effective_variants() const
{
    if (!variants.empty())
        return variants;
    if (experiment == Experiment::sinr_vs_n)
        return {CancellerVariant::ref_rx};
    return {std::begin(kAllVariants), std::end(kAllVariants)};
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial)
{
    return derive_seed(master_seed, "trial", trial);
}

namespace
{

AmplifierSpec with_gain(AmplifierSpec s, double gain_db)
{
    s.gain_db = gain_db;
    return s;
}

} // namespace

TrialCapture simulate_capture(const ScenarioConfig &cfg, double p_tx_dbm, std::size_t n_est, bool calibrated,
                              std::uint64_t seed)
{
    const auto &tr = cfg.transceiver;
    const std::size_t n = n_est + cfg.n_eval;
    const double fs = cfg.ofdm.sample_rate_hz();

    TrialCapture cap;
    cap.p_tx_dbm = p_tx_dbm;
    cap.n_est = n_est;
    cap.calibrated = calibrated;
    cap.seed = seed;

    // transmitters
    std::vector<ComplexSignal> pa_out;
    for (std::size_t j = 0; j < tr.n_tx; ++j)
    {
        auto data =
            generate_ofdm_stream(cfg.ofdm, n, p_tx_dbm - tr.pa.gain_db, derive_seed(seed, "tx-data", j));
        auto iq = apply_iq_imbalance(data, IqSpec{tr.irr_tx_db});
        pa_out.push_back(apply_pa(iq, tr.pa));
        cap.tx_data.push_back(std::move(data));
    }

    SiChannelParams chp;
    chp.n_rx = tr.n_rx;
    chp.n_tx = tr.n_tx;
    chp.m_taps = cfg.m_taps;
    chp.k_factor_db = cfg.k_factor_db;
    chp.los_delay = cfg.los_delay;
    chp.mean_path_loss_db = tr.a_ant_db;
    const auto channel = draw_si_channel(chp, derive_seed(seed, "si-channel"));

    const double noise_w = thermal_noise_watts(tr.bandwidth_hz) * db_to_lin(tr.f_rx_db);
    double ideal_sum = 0.0;

    for (std::size_t i = 0; i < tr.n_rx; ++i)
    {
        auto soi = generate_ofdm_stream(cfg.ofdm, n, tr.p_soi_in_dbm, derive_seed(seed, "soi", i));
        if (calibrated)
            std::fill_n(soi.samples().begin(), n_est, cplx{});

        auto y = ComplexSignal::zeros(n, fs);
        for (std::size_t j = 0; j < tr.n_tx; ++j)
            y += convolve(pa_out[j], channel.response(i, j));
        y += soi;

        auto rf = rf_cancel(y, pa_out, channel, i, tr.a_rf_db);
        if (rf.shortfall)
            cap.warnings.push_back("rf-shortfall:rx" + std::to_string(i));

        auto x = apply_rx_stage(rf.signal, tr.lna);
        x = apply_iq_imbalance(x, IqSpec{tr.irr_rx_db});
        x = apply_rx_stage(x, tr.mixer);
        // receiver noise, input referred F*k*T0*B, seen through LNA and mixer gain
        if (cfg.chain.thermal_noise)
            x += complex_gaussian(n, watts_to_dbm(noise_w) + tr.lna.gain_db + tr.mixer.gain_db, fs,
                                  derive_seed(seed, "thermal-noise", i));

        // AGC level taken over the evaluation window
        const auto gain = select_vga_gain(measure_power(x.slice(n_est, cfg.n_eval)), tr.adc_main, tr.vga_range);
        if (gain.clamped)
            cap.warnings.push_back("vga-clamped:rx" + std::to_string(i));
        x = apply_rx_stage(x, with_gain(tr.vga, gain.gain_db));
        if (cfg.chain.quantization)
            x = quantize(x, tr.adc_main);

        const double p_soi_eval = mean_power_watts(soi.slice(n_est, cfg.n_eval).samples());
        ideal_sum += cfg.chain.thermal_noise ? lin_to_db(p_soi_eval / noise_w) : cfg.sinr_cap_db;

        cap.rx_adc.push_back(std::move(x));
        cap.soi.push_back(std::move(soi));
        cap.vga_gain_db.push_back(gain.gain_db);
    }
    cap.ideal_sinr_db = std::min(ideal_sum / static_cast<double>(tr.n_rx), cfg.sinr_cap_db);

    for (std::size_t j = 0; j < tr.n_tx; ++j)
    {
        auto r = apply_rx_stage(reference_rx_front_end(pa_out[j], tr), tr.mixer);
        r = apply_rx_stage(r, with_gain(tr.vga, cap.vga_gain_db[j % tr.n_rx]));
        if (cfg.chain.quantization)
            r = quantize(r, tr.adc_ref);
        cap.ref_adc.push_back(std::move(r));
    }
    return cap;
}

double measure_sinr(const ComplexSignal &residual, const ComplexSignal &soi_reference, std::size_t fit_taps,
                    double cap_db)
{
    if (residual.size() != soi_reference.size())
        throw ArgumentError("measure_sinr: residual and SOI reference lengths differ");
    if (fit_taps < 1 || residual.size() < 2 * fit_taps)
        throw ArgumentError("measure_sinr: signal too short for the fit");
    double p_res = 0.0;
    for (auto v : residual)
        p_res += std::norm(v);
    if (p_res == 0.0)
        return kSilentDbm;
    if (measure_power(soi_reference) == kSilentDbm)
        return -cap_db;

    const ComplexSignal refs[] = {soi_reference};
    const auto X = build_regression_matrix(refs, fit_taps, CancellerVariant::linear);
    const auto est = ls_estimate(residual, X);
    const auto fitted = regenerate(residual.size(), residual.sample_rate_hz(), refs, est);

    double p_fit = 0.0, p_rem = 0.0;
    for (std::size_t k = fit_taps - 1; k < residual.size(); ++k)
    {
        p_fit += std::norm(fitted[k]);
        p_rem += std::norm(residual[k] - fitted[k]);
    }
    if (p_rem <= p_fit * db_to_lin(-cap_db))
        return cap_db;
    return std::clamp(lin_to_db(p_fit / p_rem), -cap_db, cap_db);
}

SinrResult evaluate_variant(const ScenarioConfig &cfg, const TrialCapture &capture, CancellerVariant variant)
{
    SinrResult res;
    res.experiment = cfg.experiment;
    res.variant = variant;
    res.p_tx_dbm = capture.p_tx_dbm;
    res.n_est = capture.n_est;
    res.calibrated = capture.calibrated;
    res.seed = capture.seed;
    res.ideal_sinr_db = capture.ideal_sinr_db;
    res.warnings = capture.warnings;

    const CancellerOptions opts{cfg.nonlinear_order, cfg.max_condition};
    double sum = 0.0;
    for (std::size_t i = 0; i < capture.rx_adc.size(); ++i)
    {
        double sinr;
        try
        {
            const auto out = run_canceller(variant, capture.rx_adc[i], capture.tx_data, capture.ref_adc, cfg.m_taps,
                                           capture.n_est, opts);
            sinr = measure_sinr(out.residual.slice(capture.n_est, cfg.n_eval),
                                capture.soi[i].slice(capture.n_est, cfg.n_eval), cfg.sinr_fit_taps,
                                cfg.sinr_cap_db);
        }
        catch (const EstimationError &)
        {
            res.warnings.push_back("ill-conditioned:rx" + std::to_string(i));
            sinr = kSilentDbm;
        }
        if (sinr == kSilentDbm)
            res.warnings.push_back("silent-residual:rx" + std::to_string(i));
        sum += sinr;
    }
    res.sinr_db = sum / static_cast<double>(capture.rx_adc.size());
    return res;
}

SinrResult simulate_trial(const ScenarioConfig &cfg, CancellerVariant variant, double p_tx_dbm, std::size_t n_est,
                          std::uint64_t seed)
{
    const auto cap = simulate_capture(cfg, p_tx_dbm, n_est, cfg.calibration, seed);
    return evaluate_variant(cfg, cap, variant);
}

const char *const kSinrCsvHeader = "experiment,variant,p_tx_dbm,n_est,calibrated,trial,seed,sinr_db,warnings";
const char *const kSummaryCsvHeader =
    "experiment,variant,p_tx_dbm,n_est,calibrated,trials,sinr_mean_db,sinr_std_db,ideal_sinr_db";

void write_sinr_csv(std::ostream &os, const std::vector<SinrResult> &rows)
{
    os << kSinrCsvHeader << '\n';
    for (const auto &r : rows)
    {
        std::string w;
        for (const auto &s : r.warnings)
            w += (w.empty() ? "" : ";") + s;
        os << to_string(r.experiment) << ',' << to_string(r.variant) << ',' << csv::format_number(r.p_tx_dbm, 3)
           << ',' << r.n_est << ',' << (r.calibrated ? "true" : "false") << ',' << r.trial << ',' << r.seed << ','
           << csv::format_number(r.sinr_db, 6) << ',' << w << '\n';
    }
}

void write_summary_csv(std::ostream &os, const std::vector<SinrSummary> &rows)
{
    os << kSummaryCsvHeader << '\n';
    for (const auto &r : rows)
        os << to_string(r.experiment) << ',' << to_string(r.variant) << ',' << csv::format_number(r.p_tx_dbm, 3)
           << ',' << r.n_est << ',' << (r.calibrated ? "true" : "false") << ',' << r.trials << ','
           << csv::format_number(r.mean_db, 6) << ',' << csv::format_number(r.std_db, 6) << ','
           << csv::format_number(r.ideal_sinr_db, 6) << '\n';
}

const SinrSummary &ExperimentResult::at(CancellerVariant v, double p_tx_dbm, std::size_t n_est,
                                        bool calibrated) const
{
    for (const auto &s : summary)
        if (s.variant == v && std::abs(s.p_tx_dbm - p_tx_dbm) < 1e-9 && s.n_est == n_est &&
            s.calibrated == calibrated)
            return s;
    throw ArgumentError("no summary for " + to_string(v) + " at p_tx " + std::to_string(p_tx_dbm) + " dBm, n_est " +
                        std::to_string(n_est));
}

namespace
{

struct GridPoint
{
    double p_tx_dbm;
    std::size_t n_est;
    bool calibrated;
};

void parallel_for(std::size_t n_jobs, std::size_t threads, const std::function<void(std::size_t)> &fn)
{
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, n_jobs);
    if (threads <= 1)
    {
        for (std::size_t k = 0; k < n_jobs; ++k)
            fn(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            while (true)
            {
                const std::size_t k = next.fetch_add(1);
                if (k >= n_jobs)
                    return;
                try
                {
                    fn(k);
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next.store(n_jobs);
                }
            }
        });
    for (auto &th : pool)
        th.join();
    if (failure)
        std::rethrow_exception(failure);
}

std::vector<SinrSummary> summarize(const std::vector<SinrResult> &rows)
{
    using Key = std::tuple<int, int, double, std::size_t>;
    std::map<Key, std::vector<const SinrResult *>> groups;
    for (const auto &r : rows)
        groups[{r.calibrated ? 0 : 1, static_cast<int>(r.variant), r.p_tx_dbm, r.n_est}].push_back(&r);

    std::vector<SinrSummary> out;
    for (const auto &[key, members] : groups)
    {
        SinrSummary s;
        s.experiment = members.front()->experiment;
        s.variant = members.front()->variant;
        s.p_tx_dbm = members.front()->p_tx_dbm;
        s.n_est = members.front()->n_est;
        s.calibrated = members.front()->calibrated;
        double sum = 0.0, ideal = 0.0;
        std::size_t finite = 0;
        for (const auto *m : members)
        {
            ideal += m->ideal_sinr_db;
            if (std::isfinite(m->sinr_db))
            {
                sum += m->sinr_db;
                ++finite;
            }
        }
        s.trials = finite;
        s.ideal_sinr_db = ideal / static_cast<double>(members.size());
        s.mean_db = finite ? sum / static_cast<double>(finite) : kSilentDbm;
        double var = 0.0;
        for (const auto *m : members)
            if (std::isfinite(m->sinr_db))
                var += (m->sinr_db - s.mean_db) * (m->sinr_db - s.mean_db);
        s.std_db = finite > 1 ? std::sqrt(var / static_cast<double>(finite - 1)) : 0.0;
        out.push_back(s);
    }
    return out;
}

} // namespace

ExperimentResult run_experiment(const ScenarioConfig &cfg)
{
    cfg.validate();

    std::ofstream out, summary_out;
    if (!cfg.output_path.empty())
    {
        out.open(cfg.output_path);
        if (!out)
            throw IoError("cannot open output file '" + cfg.output_path + "'");
        if (cfg.experiment != Experiment::budget_sweep)
        {
            summary_out.open(cfg.output_path + ".summary.csv");
            if (!summary_out)
                throw IoError("cannot open output file '" + cfg.output_path + ".summary.csv'");
        }
    }

    ExperimentResult result;
    result.experiment = cfg.experiment;

    if (cfg.experiment == Experiment::budget_sweep)
    {
        result.budget_proposed = sweep_budget(cfg.transceiver, cfg.p_tx_grid, BudgetVariant::proposed);
        result.budget_traditional = sweep_budget(cfg.transceiver, cfg.p_tx_grid, BudgetVariant::traditional);
        if (out.is_open())
        {
            write_budget_csv_header(out);
            write_budget_csv_rows(out, BudgetVariant::proposed, result.budget_proposed);
            write_budget_csv_rows(out, BudgetVariant::traditional, result.budget_traditional);
            if (!out)
                throw IoError("failed writing '" + cfg.output_path + "'");
        }
        return result;
    }

    std::vector<GridPoint> grid;
    if (cfg.experiment == Experiment::sinr_vs_ptx)
    {
        for (double p : cfg.p_tx_grid)
            grid.push_back({p, cfg.n_est, cfg.calibration});
    }
    else
    {
        for (bool cal : {true, false})
            for (auto n : cfg.n_est_grid)
                grid.push_back({cfg.sinr_vs_n_p_tx_dbm, n, cal});
    }

    const auto variants = cfg.effective_variants();
    const std::size_t n_jobs = cfg.n_trials * grid.size();
    std::vector<std::vector<SinrResult>> slots(n_jobs);

    parallel_for(n_jobs, cfg.threads, [&](std::size_t job) {
        const std::size_t trial = job / grid.size();
        const auto &g = grid[job % grid.size()];
        const auto seed = trial_seed(cfg.master_seed, trial);
        const auto cap = simulate_capture(cfg, g.p_tx_dbm, g.n_est, g.calibrated, seed);
        for (auto v : variants)
        {
            auto r = evaluate_variant(cfg, cap, v);
            r.trial = trial;
            slots[job].push_back(std::move(r));
        }
    });

    for (auto &s : slots)
        for (auto &r : s)
            result.rows.push_back(std::move(r));
    std::stable_sort(result.rows.begin(), result.rows.end(), [](const SinrResult &a, const SinrResult &b) {
        return std::make_tuple(!a.calibrated, static_cast<int>(a.variant), a.p_tx_dbm, a.n_est, a.trial) <
               std::make_tuple(!b.calibrated, static_cast<int>(b.variant), b.p_tx_dbm, b.n_est, b.trial);
    });
    result.summary = summarize(result.rows);

    if (out.is_open())
    {
        write_sinr_csv(out, result.rows);
        write_summary_csv(summary_out, result.summary);
        if (!out || !summary_out)
            throw IoError("failed writing '" + cfg.output_path + "'");
    }
    return result;
}

} // namespace fdsic
