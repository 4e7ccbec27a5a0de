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

#include "fdsic/link_budget.hpp"
#include "fdsic/csv.hpp"
#include "fdsic/impairments.hpp"

#include <ostream>

namespace fdsic
{

std::string to_string(BudgetVariant v)
{
    return v == BudgetVariant::proposed ? "proposed" : "traditional";
}

BudgetVariant parse_budget_variant(const std::string &s)
{
    if (s == "proposed")
        return BudgetVariant::proposed;
    if (s == "traditional")
        return BudgetVariant::traditional;
    throw ConfigError("unknown budget variant '" + s + "'");
}

namespace
{

double intercept_watts(double dbm, const char *what)
{
    const double w = dbm_to_watts(dbm);
    if (w == 0.0)
        throw ConfigError(std::string("link budget: zero intercept point for ") + what);
    return w;
}

// 1/x with 1/inf = 0.
double inv(double x) { return 1.0 / x; }

PowerBudget evaluate(const TransceiverSpec &s, BudgetVariant variant)
{
    s.validate();

    const double n = static_cast<double>(s.n_tx);
    const double p_tx = dbm_to_watts(s.p_tx_dbm);
    const double p_target = dbm_to_watts(s.adc_main.target_power_dbm);
    const double a_ant = db_to_lin(s.a_ant_db);
    const double a_rf = db_to_lin(s.a_rf_db);
    const double a_dig = db_to_lin(s.a_dig_db);
    const double p_soi_in = dbm_to_watts(s.p_soi_in_dbm);
    const double f_rx = db_to_lin(s.f_rx_db);
    const double p_th = thermal_noise_watts(s.bandwidth_hz);
    const double irr_tx = db_to_lin(s.irr_tx_db);
    const double irr_rx = db_to_lin(s.irr_rx_db);

    const double g_pa = db_to_lin(s.pa.gain_db);
    const double g_lna = db_to_lin(s.lna.gain_db);
    const double g_mixer = db_to_lin(s.mixer.gain_db);
    const double iip3_pa = intercept_watts(s.pa.iip3_dbm, "PA");
    const double iip3_lna = intercept_watts(s.lna.iip3_dbm, "LNA");
    const double iip2_mixer = intercept_watts(s.mixer.iip2_dbm, "mixer");
    const double iip3_mixer = intercept_watts(s.mixer.iip3_dbm, "mixer");
    const double iip2_vga = intercept_watts(s.vga.iip2_dbm, "VGA");
    const double iip3_vga = intercept_watts(s.vga.iip3_dbm, "VGA");

    const double snr_adc = db_to_lin(nominal_adc_snr_db(s.adc_main));
    const double snr_adc_ref = db_to_lin(nominal_adc_snr_db(s.adc_ref));

    // PA third-order term relative to the linear SI, p_tx^2 / (iip3^2 g^2).
    const double pa_ratio = p_tx * p_tx * inv(iip3_pa * iip3_pa * g_pa * g_pa);

    const double si_in = n * p_tx * inv(a_ant) * (inv(a_rf) + pa_ratio * inv(a_rf));
    const double g_rx = p_target / (si_in + p_soi_in);

    const double coupled = p_tx * inv(a_ant * a_rf); // one transmitter at one RX input
    const double dig = variant == BudgetVariant::proposed ? inv(a_dig) : 1.0;

    const double p_soi = g_rx * p_soi_in;
    const double p_n = f_rx * g_rx * p_th;
    const double p_si = n * g_rx * coupled * inv(a_dig);
    const double p_si_im = g_rx * coupled * (n * dig * inv(irr_tx) + (n + 1.0) * inv(irr_rx));
    const double p_nl_tx = n * g_rx * coupled * pa_ratio * dig;

    const double second_order = (n + 1.0) * (g_lna / iip2_mixer + g_lna * g_mixer / (2.0 * iip2_vga));
    const double mixer3 = g_lna / iip3_mixer;
    const double vga3 = g_lna * g_mixer / (2.0 * iip3_vga);
    const double third_order = (n * n + 1.0) * coupled * (mixer3 * mixer3 + vga3 * vga3);
    const double lna3 = n * n * coupled / (iip3_lna * iip3_lna);
    const double p_nl_rx = n * g_rx * coupled * coupled * (second_order + third_order + lna3);

    const double ref_adc = variant == BudgetVariant::proposed ? n / snr_adc_ref : 0.0;
    const double p_q_tot = p_target * (1.0 / snr_adc + ref_adc);

    PowerBudget b;
    b.p_tx_dbm = s.p_tx_dbm;
    b.g_rx_db = lin_to_db(g_rx);
    b.p_soi_dbm = watts_to_dbm(p_soi);
    b.p_n_dbm = watts_to_dbm(p_n);
    b.p_si_dbm = watts_to_dbm(p_si);
    b.p_si_im_dbm = watts_to_dbm(p_si_im);
    b.p_nl_tx_dbm = watts_to_dbm(p_nl_tx);
    b.p_nl_rx_dbm = watts_to_dbm(p_nl_rx);
    b.p_q_tot_dbm = watts_to_dbm(p_q_tot);
    b.sinr_db = lin_to_db(p_soi / (p_n + p_si + p_si_im + p_nl_tx + p_nl_rx + p_q_tot));
    return b;
}

} // namespace

PowerBudget budget_proposed(const TransceiverSpec &spec) { return evaluate(spec, BudgetVariant::proposed); }

PowerBudget budget_traditional(const TransceiverSpec &spec) { return evaluate(spec, BudgetVariant::traditional); }

PowerBudget evaluate_budget(const TransceiverSpec &spec, BudgetVariant variant) { return evaluate(spec, variant); }

std::vector<PowerBudget> sweep_budget(const TransceiverSpec &spec, const std::vector<double> &p_tx_dbm,
                                      BudgetVariant variant)
{
    if (p_tx_dbm.empty())
        throw ArgumentError("sweep_budget: empty transmit power range");
    std::vector<PowerBudget> rows;
    rows.reserve(p_tx_dbm.size());
    TransceiverSpec point = spec;
    for (double p : p_tx_dbm)
    {
        point.p_tx_dbm = p;
        rows.push_back(evaluate(point, variant));
    }
    return rows;
}

const char *const kBudgetCsvHeader = "variant,p_tx_dbm,g_rx_db,p_soi_dbm,p_n_dbm,p_si_dbm,p_si_im_dbm,"
                                     "p_nl_tx_dbm,p_nl_rx_dbm,p_q_tot_dbm,sinr_db";

void write_budget_csv_header(std::ostream &os) { os << kBudgetCsvHeader << '\n'; }

void write_budget_csv_rows(std::ostream &os, BudgetVariant variant, const std::vector<PowerBudget> &rows)
{
    const std::string name = to_string(variant);
    for (const auto &b : rows)
    {
        os << name;
        for (double v : {b.p_tx_dbm, b.g_rx_db, b.p_soi_dbm, b.p_n_dbm, b.p_si_dbm, b.p_si_im_dbm, b.p_nl_tx_dbm,
                         b.p_nl_rx_dbm, b.p_q_tot_dbm, b.sinr_db})
            os << ',' << csv::format_number(v);
        os << '\n';
    }
}

} // namespace fdsic
