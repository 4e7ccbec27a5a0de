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


#include "fdsic/config.hpp"
#include "fdsic/harness.hpp"
#include "fdsic/link_budget.hpp"
#include "fdsic/validation.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace fdsic;

namespace
{

struct Options
{
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    std::optional<std::size_t> threads;
    std::string out;
    std::vector<std::string> variants;
    bool dump = false;
};

ScenarioConfig build_config(const Options &o, Experiment e)
{
    ScenarioConfig cfg = o.config_path.empty() ? ScenarioConfig{} : load_config(o.config_path);
    cfg.experiment = e;
    if (o.seed)
        cfg.master_seed = *o.seed;
    if (o.trials)
        cfg.n_trials = *o.trials;
    if (o.threads)
        cfg.threads = *o.threads;
    if (!o.out.empty())
        cfg.output_path = o.out;
    if (!o.variants.empty())
    {
        cfg.variants.clear();
        for (const auto &v : o.variants)
            cfg.variants.push_back(parse_canceller_variant(v));
    }
    cfg.validate();
    return cfg;
}

void print_summary(const ExperimentResult &r)
{
    std::cout << std::left << std::setw(15) << "variant" << std::setw(6) << "cal" << std::right << std::setw(9)
              << "p_tx" << std::setw(9) << "n_est" << std::setw(11) << "sinr_db" << std::setw(9) << "std" << std::setw(10)
              << "ideal" << '\n';
    std::cout << std::fixed << std::setprecision(2);
    for (const auto &s : r.summary)
        std::cout << std::left << std::setw(15) << to_string(s.variant) << std::setw(6) << (s.calibrated ? "yes" : "no")
                  << std::right << std::setw(9) << s.p_tx_dbm << std::setw(9) << s.n_est << std::setw(11) << s.mean_db
                  << std::setw(9) << s.std_db << std::setw(10) << s.ideal_sinr_db << '\n';
}

int run_sim(const Options &o, Experiment e)
{
    const auto cfg = build_config(o, e);
    if (o.dump)
    {
        std::cout << dump_config(cfg) << '\n';
        return 0;
    }
    const auto r = run_experiment(cfg);
    if (e == Experiment::budget_sweep)
    {
        if (cfg.output_path.empty())
        {
            write_budget_csv_header(std::cout);
            write_budget_csv_rows(std::cout, BudgetVariant::proposed, r.budget_proposed);
            write_budget_csv_rows(std::cout, BudgetVariant::traditional, r.budget_traditional);
        }
        return 0;
    }
    print_summary(r);
    std::size_t warned = 0;
    for (const auto &row : r.rows)
        warned += !row.warnings.empty();
    if (warned)
        std::cerr << "fdsim: " << warned << " trial rows carry warnings (see the warnings column)\n";
    return 0;
}

int run_validate(const Options &o)
{
    const auto cfg = build_config(o, Experiment::sinr_vs_ptx);
    const auto rep = run_validation(cfg.transceiver, cfg.master_seed);
    for (const auto &c : rep.checks)
    {
        std::ostringstream line;
        line << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(22) << c.name << std::right << std::fixed
             << std::setprecision(3) << " measured " << std::setw(10) << c.measured << " expected " << std::setw(10)
             << c.expected << " tol " << c.tolerance << ' ' << c.unit;
        std::cout << line.str() << '\n';
    }
    return rep.all_passed() ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"fdsim: MIMO full-duplex self-interference cancellation simulator"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App *sub, bool sim) {
        sub->add_option("--config", o.config_path, "JSON scenario file")->check(CLI::ExistingFile);
        sub->add_option("--seed", o.seed, "master seed");
        if (sim)
        {
            sub->add_option("--trials", o.trials, "Monte-Carlo trials per grid point")->check(CLI::PositiveNumber);
            sub->add_option("--threads", o.threads, "worker threads (0: all cores)");
            sub->add_option("--variants", o.variants, "cancellers: ref-rx,linear,widely-linear,nonlinear")
                ->delimiter(',');
        }
        sub->add_option("--out", o.out, "output CSV path");
        sub->add_flag("--dump-config", o.dump, "print the effective scenario as JSON and exit");
    };

    auto *budget = app.add_subcommand("budget", "analytic power budget over the transmit power grid");
    auto *ptx = app.add_subcommand("sinr-ptx", "simulated SINR versus transmit power");
    auto *nest = app.add_subcommand("sinr-n", "simulated SINR versus estimation samples");
    auto *val = app.add_subcommand("validate", "measure every impairment stage against its nominal parameters");
    add_common(budget, false);
    add_common(ptx, true);
    add_common(nest, true);
    add_common(val, false);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try
    {
        if (*budget)
            return run_sim(o, Experiment::budget_sweep);
        if (*ptx)
            return run_sim(o, Experiment::sinr_vs_ptx);
        if (*nest)
            return run_sim(o, Experiment::sinr_vs_n);
        return run_validate(o);
    }
    catch (const IoError &e)
    {
        std::cerr << "fdsim: " << e.what() << '\n';
        return 3;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "fdsim: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "fdsim: " << e.what() << '\n';
        return 4;
    }
}
