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
#include "fdsic/estimation_bounds.hpp"
#include "fdsic/harness.hpp"
#include "fdsic/impairments.hpp"
#include "fdsic/validation.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace fdsic;

namespace
{

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

ComplexSignal to_signal(const CArray &a, double fs = 1.0)
{
    if (a.ndim() != 1)
        throw py::value_error("expected a one-dimensional array");
    return ComplexSignal(std::vector<cplx>(a.data(), a.data() + a.size()), fs);
}

CArray to_array(const ComplexSignal &s)
{
    return CArray(static_cast<py::ssize_t>(s.size()), s.vector().data());
}

std::vector<ComplexSignal> to_signals(const std::vector<CArray> &v)
{
    std::vector<ComplexSignal> out;
    for (const auto &a : v)
        out.push_back(to_signal(a));
    return out;
}

py::dict budget_dict(const PowerBudget &b)
{
    py::dict d;
    d["p_tx_dbm"] = b.p_tx_dbm;
    d["g_rx_db"] = b.g_rx_db;
    d["p_soi_dbm"] = b.p_soi_dbm;
    d["p_n_dbm"] = b.p_n_dbm;
    d["p_si_dbm"] = b.p_si_dbm;
    d["p_si_im_dbm"] = b.p_si_im_dbm;
    d["p_nl_tx_dbm"] = b.p_nl_tx_dbm;
    d["p_nl_rx_dbm"] = b.p_nl_rx_dbm;
    d["p_q_tot_dbm"] = b.p_q_tot_dbm;
    d["sinr_db"] = b.sinr_db;
    return d;
}

} // namespace

PYBIND11_MODULE(_fdsic, m)
{
    m.doc() = "Baseband waveform simulator for MIMO full-duplex self-interference cancellation";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<EstimationError>(m, "EstimationError", PyExc_ArithmeticError);

    py::class_<OfdmConfig>(m, "OfdmConfig")
        .def(py::init<>())
        .def_readwrite("n_subcarriers", &OfdmConfig::n_subcarriers)
        .def_readwrite("n_data_subcarriers", &OfdmConfig::n_data_subcarriers)
        .def_readwrite("constellation_order", &OfdmConfig::constellation_order)
        .def_readwrite("guard_interval_samples", &OfdmConfig::guard_interval_samples)
        .def_readwrite("oversampling_factor", &OfdmConfig::oversampling_factor)
        .def_readwrite("symbol_duration_s", &OfdmConfig::symbol_duration_s)
        .def_property_readonly("sample_rate_hz", &OfdmConfig::sample_rate_hz)
        .def_property_readonly("samples_per_symbol", &OfdmConfig::samples_per_symbol);

    py::class_<ScenarioConfig>(m, "ScenarioConfig")
        .def(py::init<>())
        .def_property(
            "experiment", [](const ScenarioConfig &c) { return to_string(c.experiment); },
            [](ScenarioConfig &c, const std::string &s) { c.experiment = parse_experiment(s); })
        .def_readwrite("ofdm", &ScenarioConfig::ofdm)
        .def_readwrite("n_trials", &ScenarioConfig::n_trials)
        .def_readwrite("master_seed", &ScenarioConfig::master_seed)
        .def_readwrite("threads", &ScenarioConfig::threads)
        .def_readwrite("output_path", &ScenarioConfig::output_path)
        .def_readwrite("n_est", &ScenarioConfig::n_est)
        .def_readwrite("n_eval", &ScenarioConfig::n_eval)
        .def_readwrite("p_tx_grid", &ScenarioConfig::p_tx_grid)
        .def_readwrite("n_est_grid", &ScenarioConfig::n_est_grid)
        .def_readwrite("calibration", &ScenarioConfig::calibration)
        .def_property(
            "variants",
            [](const ScenarioConfig &c) {
                std::vector<std::string> v;
                for (auto x : c.variants)
                    v.push_back(to_string(x));
                return v;
            },
            [](ScenarioConfig &c, const std::vector<std::string> &v) {
                c.variants.clear();
                for (const auto &s : v)
                    c.variants.push_back(parse_canceller_variant(s));
            })
        .def("validate", &ScenarioConfig::validate)
        .def("to_json", [](const ScenarioConfig &c) { return dump_config(c); });

    m.def("parse_config", &parse_config, py::arg("json_text"));
    m.def("load_config", &load_config, py::arg("path"));

    m.def(
        "generate_ofdm_frame",
        [](std::size_t n_symbols, double power_dbm, std::uint64_t seed, const OfdmConfig &cfg) {
            return to_array(generate_ofdm_frame(cfg, n_symbols, power_dbm, seed));
        },
        py::arg("n_symbols"), py::arg("power_dbm"), py::arg("seed"), py::arg("config") = OfdmConfig{});
    m.def(
        "generate_ofdm_stream",
        [](std::size_t n_samples, double power_dbm, std::uint64_t seed, const OfdmConfig &cfg) {
            return to_array(generate_ofdm_stream(cfg, n_samples, power_dbm, seed));
        },
        py::arg("n_samples"), py::arg("power_dbm"), py::arg("seed"), py::arg("config") = OfdmConfig{});
    m.def(
        "measure_power", [](const CArray &x) { return measure_power(to_signal(x)); }, py::arg("x"));
    m.def(
        "papr_db", [](const CArray &x) { return papr_db(to_signal(x)); }, py::arg("x"));

    m.def(
        "apply_pa",
        [](const CArray &x, double gain_db, double iip3_dbm) {
            return to_array(apply_pa(to_signal(x), AmplifierSpec{gain_db, kInf, iip3_dbm, 0.0}));
        },
        py::arg("x"), py::arg("gain_db") = 27.0, py::arg("iip3_dbm") = 15.0);
    m.def(
        "apply_rx_stage",
        [](const CArray &x, double gain_db, double iip2_dbm, double iip3_dbm) {
            return to_array(apply_rx_stage(to_signal(x), AmplifierSpec{gain_db, iip2_dbm, iip3_dbm, 0.0}));
        },
        py::arg("x"), py::arg("gain_db"), py::arg("iip2_dbm"), py::arg("iip3_dbm"));
    m.def(
        "apply_iq_imbalance",
        [](const CArray &x, double irr_db) { return to_array(apply_iq_imbalance(to_signal(x), IqSpec{irr_db})); },
        py::arg("x"), py::arg("irr_db"));
    m.def(
        "quantize",
        [](const CArray &x, int bits, double papr_headroom_db, double target_power_dbm) {
            return to_array(quantize(to_signal(x), AdcSpec{bits, papr_headroom_db, target_power_dbm}));
        },
        py::arg("x"), py::arg("bits") = 12, py::arg("papr_headroom_db") = 10.0, py::arg("target_power_dbm") = -10.0);

    m.def(
        "budget",
        [](const ScenarioConfig &cfg, double p_tx_dbm, const std::string &variant) {
            auto spec = cfg.transceiver;
            spec.p_tx_dbm = p_tx_dbm;
            return budget_dict(evaluate_budget(spec, parse_budget_variant(variant)));
        },
        py::arg("config"), py::arg("p_tx_dbm"), py::arg("variant") = "proposed");

    m.def(
        "crlb_per_tap",
        [](double p_soi_w, double p_n_w, std::uint64_t n, double p_ref_w) {
            return crlb_per_tap({p_soi_w, p_n_w, n, p_ref_w});
        },
        py::arg("p_soi_w"), py::arg("p_n_w"), py::arg("n_samples"), py::arg("p_ref_w") = 1.0);
    m.def("required_samples", &required_samples, py::arg("n_c"), py::arg("snr_linear"));

    m.def(
        "run_canceller",
        [](const std::string &variant, const CArray &rx, const std::vector<CArray> &tx_data,
           const std::vector<CArray> &ref_rx, std::size_t m_taps, std::size_t n_est, int nonlinear_order) {
            const auto tx = to_signals(tx_data);
            const auto ref = to_signals(ref_rx);
            const auto out = run_canceller(parse_canceller_variant(variant), to_signal(rx), tx, ref, m_taps, n_est,
                                           CancellerOptions{nonlinear_order, 1e8});
            std::vector<CArray> taps;
            for (const auto &t : out.estimate.taps)
            {
                taps.emplace_back(static_cast<py::ssize_t>(t.size()), t.data());
            }
            return py::make_tuple(to_array(out.residual), taps);
        },
        py::arg("variant"), py::arg("rx"), py::arg("tx_data"), py::arg("ref_rx") = std::vector<CArray>{},
        py::arg("m_taps") = 8, py::arg("n_est") = 10000, py::arg("nonlinear_order") = 3);
    m.def(
        "measure_sinr",
        [](const CArray &residual, const CArray &soi, std::size_t fit_taps, double cap_db) {
            return measure_sinr(to_signal(residual), to_signal(soi), fit_taps, cap_db);
        },
        py::arg("residual"), py::arg("soi"), py::arg("fit_taps") = 4, py::arg("cap_db") = 60.0);

    m.def(
        "run_experiment",
        [](const ScenarioConfig &cfg) {
            ExperimentResult r;
            {
                py::gil_scoped_release release;
                r = run_experiment(cfg);
            }
            py::dict out;
            out["experiment"] = to_string(r.experiment);
            py::list rows, summary, prop, trad;
            for (const auto &x : r.rows)
            {
                py::dict d;
                d["variant"] = to_string(x.variant);
                d["p_tx_dbm"] = x.p_tx_dbm;
                d["n_est"] = x.n_est;
                d["calibrated"] = x.calibrated;
                d["trial"] = x.trial;
                d["seed"] = x.seed;
                d["sinr_db"] = x.sinr_db;
                d["ideal_sinr_db"] = x.ideal_sinr_db;
                d["warnings"] = x.warnings;
                rows.append(d);
            }
            for (const auto &x : r.summary)
            {
                py::dict d;
                d["variant"] = to_string(x.variant);
                d["p_tx_dbm"] = x.p_tx_dbm;
                d["n_est"] = x.n_est;
                d["calibrated"] = x.calibrated;
                d["trials"] = x.trials;
                d["sinr_mean_db"] = x.mean_db;
                d["sinr_std_db"] = x.std_db;
                d["ideal_sinr_db"] = x.ideal_sinr_db;
                summary.append(d);
            }
            for (const auto &b : r.budget_proposed)
                prop.append(budget_dict(b));
            for (const auto &b : r.budget_traditional)
                trad.append(budget_dict(b));
            out["rows"] = rows;
            out["summary"] = summary;
            out["budget_proposed"] = prop;
            out["budget_traditional"] = trad;
            return out;
        },
        py::arg("config"));

    m.def(
        "run_validation",
        [](const ScenarioConfig &cfg, std::uint64_t seed) {
            const auto rep = run_validation(cfg.transceiver, seed);
            py::list out;
            for (const auto &c : rep.checks)
            {
                py::dict d;
                d["name"] = c.name;
                d["unit"] = c.unit;
                d["measured"] = c.measured;
                d["expected"] = c.expected;
                d["tolerance"] = c.tolerance;
                d["passed"] = c.passed;
                out.append(d);
            }
            return out;
        },
        py::arg("config") = ScenarioConfig{}, py::arg("seed") = 1);
}
