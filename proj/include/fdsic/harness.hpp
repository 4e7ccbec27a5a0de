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

#include "fdsic/cancellation.hpp"
#include "fdsic/link_budget.hpp"
#include "fdsic/transceiver.hpp"
#include "fdsic/waveform.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fdsic
{

enum class Experiment
{
    budget_sweep,
    sinr_vs_ptx,
    sinr_vs_n,
};

std::string to_string(Experiment e);
Experiment parse_experiment(const std::string &s);

// Switches for the waveform chain. Disabling everything (together with
// infinite intercepts and IRRs) leaves a purely linear chain.
struct ChainSwitches
{
    bool thermal_noise = true;
    bool quantization = true;
};

struct ScenarioConfig
{
    TransceiverSpec transceiver{};
    OfdmConfig ofdm{};

    // SI coupling: n_rx / n_tx come from the transceiver, the mean path loss
    // from its antenna separation.
    std::size_t m_taps = 8;
    double k_factor_db = 35.8;
    std::size_t los_delay = 0;

    Experiment experiment = Experiment::sinr_vs_ptx;
    std::vector<double> p_tx_grid{-5.0, 0.0, 5.0, 10.0, 15.0, 20.0, 25.0};
    std::vector<std::size_t> n_est_grid{100, 300, 1000, 3000, 10000, 30000, 100000, 300000};
    // Empty: all four for sinr-vs-ptx, ref-rx only for sinr-vs-n.
    std::vector<CancellerVariant> variants{};

    std::size_t n_trials = 20;
    bool calibration = true;          // sinr-vs-ptx only; sinr-vs-n runs both
    std::size_t n_est = 10000;        // sinr-vs-ptx estimation window
    double sinr_vs_n_p_tx_dbm = 15.0; // fixed transmit power of sinr-vs-n
    std::size_t n_eval = 10000;       // evaluation window after the estimation window

    std::uint64_t master_seed = 1;
    std::string output_path{};

    int nonlinear_order = 3;
    double max_condition = 1e8;
    double sinr_cap_db = 60.0;
    std::size_t sinr_fit_taps = 4;
    ChainSwitches chain{};
    std::size_t threads = 0; // 0: hardware concurrency

    void validate() const;
    std::vector<CancellerVariant> effective_variants() const;
};

// Per-trial seed; every stream inside a trial derives from it.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t trial);

// Digital captures of one trial, before digital cancellation.
struct TrialCapture
{
    double p_tx_dbm = 0.0;
    std::size_t n_est = 0;
    bool calibrated = true;
    std::uint64_t seed = 0;

    std::vector<ComplexSignal> rx_adc;  // per receive chain
    std::vector<ComplexSignal> soi;     // signal of interest at each RX input
    std::vector<ComplexSignal> tx_data; // digital transmit samples
    std::vector<ComplexSignal> ref_adc; // reference receiver observations
    std::vector<double> vga_gain_db;    // per receive chain
    double ideal_sinr_db = 0.0;         // SOI power over F*k*T0*B, evaluation window
    std::vector<std::string> warnings;
};

// Full transceiver chain: OFDM data -> TX IQ imbalance -> PA -> SI channel and
// reference taps; per receive chain RF cancellation, LNA, RX IQ imbalance,
// mixer, thermal noise, AGC-controlled VGA and ADC; per transmitter an
// attenuator front end, mixer, the matching chain's VGA gain and the
// reference ADC. With `calibrated`, the SOI is absent in the first n_est
// samples. The capture is n_est + n_eval samples long.
TrialCapture simulate_capture(const ScenarioConfig &cfg, double p_tx_dbm, std::size_t n_est, bool calibrated,
                              std::uint64_t seed);

struct SinrResult
{
    Experiment experiment = Experiment::sinr_vs_ptx;
    CancellerVariant variant = CancellerVariant::ref_rx;
    double p_tx_dbm = 0.0;
    std::size_t n_est = 0;
    bool calibrated = true;
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    double sinr_db = 0.0;       // mean over receive chains
    double ideal_sinr_db = 0.0;
    std::vector<std::string> warnings;
};

// Cancels with one variant and measures SINR on the evaluation window.
SinrResult evaluate_variant(const ScenarioConfig &cfg, const TrialCapture &capture, CancellerVariant variant);

// simulate_capture + evaluate_variant, calibration from cfg.calibration.
SinrResult simulate_trial(const ScenarioConfig &cfg, CancellerVariant variant, double p_tx_dbm, std::size_t n_est,
                          std::uint64_t seed);

// SINR of `residual` with respect to the known SOI waveform: a few-tap LS fit
// of soi_reference is the signal part, everything else interference plus
// noise. Clamped to cap_db; an all-zero residual yields kSilentDbm.
double measure_sinr(const ComplexSignal &residual, const ComplexSignal &soi_reference, std::size_t fit_taps = 4,
                    double cap_db = 60.0);

struct SinrSummary
{
    Experiment experiment = Experiment::sinr_vs_ptx;
    CancellerVariant variant = CancellerVariant::ref_rx;
    double p_tx_dbm = 0.0;
    std::size_t n_est = 0;
    bool calibrated = true;
    std::size_t trials = 0;
    double mean_db = 0.0;
    double std_db = 0.0;
    double ideal_sinr_db = 0.0;
};

struct ExperimentResult
{
    Experiment experiment = Experiment::sinr_vs_ptx;
    std::vector<SinrResult> rows;       // sorted by grid point, then trial
    std::vector<SinrSummary> summary;   // one per grid point and variant
    std::vector<PowerBudget> budget_proposed;
    std::vector<PowerBudget> budget_traditional;

    // Summary lookup; throws ArgumentError when absent.
    const SinrSummary &at(CancellerVariant v, double p_tx_dbm, std::size_t n_est, bool calibrated) const;
};

// Runs the configured experiment. When cfg.output_path is set, the CSV is
// written there (and the per-point summary next to it as
// <output>.summary.csv); the path is opened before any simulation starts.
ExperimentResult run_experiment(const ScenarioConfig &cfg);

// experiment,variant,p_tx_dbm,n_est,calibrated,trial,seed,sinr_db,warnings
extern const char *const kSinrCsvHeader;
// experiment,variant,p_tx_dbm,n_est,calibrated,trials,sinr_mean_db,sinr_std_db,ideal_sinr_db
extern const char *const kSummaryCsvHeader;

void write_sinr_csv(std::ostream &os, const std::vector<SinrResult> &rows);
void write_summary_csv(std::ostream &os, const std::vector<SinrSummary> &rows);

} // namespace fdsic
