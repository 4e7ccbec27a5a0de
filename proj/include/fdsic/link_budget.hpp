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

#include "fdsic/transceiver.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace fdsic
{

enum class BudgetVariant
{
    proposed,    // reference-receiver aided digital cancellation
    traditional, // linear digital cancellation from transmit data
};

std::string to_string(BudgetVariant v);
BudgetVariant parse_budget_variant(const std::string &s);

// Power levels at the detector input of one receive chain, dBm (g_rx in dB).
// Components that vanish are reported as -inf.
struct PowerBudget
{
    double p_tx_dbm = 0.0;
    double g_rx_db = 0.0;
    double p_soi_dbm = 0.0;
    double p_n_dbm = 0.0;
    double p_si_dbm = 0.0;
    double p_si_im_dbm = 0.0;
    double p_nl_tx_dbm = 0.0;
    double p_nl_rx_dbm = 0.0;
    double p_q_tot_dbm = 0.0;
    double sinr_db = 0.0;
};

// Closed-form component powers for the reference-receiver architecture. All
// arithmetic happens in linear power units; conversion to dB is the last step.
PowerBudget budget_proposed(const TransceiverSpec &spec);

// Same calculus for the traditional architecture: digital cancellation does
// not reach the TX image or the PA distortion, and there is no reference ADC.
PowerBudget budget_traditional(const TransceiverSpec &spec);

PowerBudget evaluate_budget(const TransceiverSpec &spec, BudgetVariant variant);

// One budget per transmit power; spec.p_tx_dbm is overridden.
std::vector<PowerBudget> sweep_budget(const TransceiverSpec &spec, const std::vector<double> &p_tx_dbm,
                                      BudgetVariant variant);

// CSV columns, in order:
//   variant,p_tx_dbm,g_rx_db,p_soi_dbm,p_n_dbm,p_si_dbm,p_si_im_dbm,
//   p_nl_tx_dbm,p_nl_rx_dbm,p_q_tot_dbm,sinr_db
extern const char *const kBudgetCsvHeader;

void write_budget_csv_header(std::ostream &os);
void write_budget_csv_rows(std::ostream &os, BudgetVariant variant, const std::vector<PowerBudget> &rows);

} // namespace fdsic
