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

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace fdsic
{

namespace
{

using nlohmann::json;

// Reads keys from one JSON object and rejects anything left unread.
class Section
{
public:
    Section(const json &j, std::string path) : j_(j), path_(std::move(path))
    {
        if (!j_.is_object())
            throw ConfigError(where() + "expected an object");
    }

    ~Section() = default;

    bool has(const char *key) const { return j_.contains(key); }

    const json *get(const char *key)
    {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    void number(const char *key, double &out)
    {
        if (const auto *v = get(key))
            out = to_number(*v, key);
    }

    template <typename T>
    void integer(const char *key, T &out)
    {
        if (const auto *v = get(key))
        {
            if (!v->is_number_integer() || (std::is_unsigned_v<T> && v->get<long long>() < 0))
                throw ConfigError(where() + "'" + key + "' must be a non-negative integer");
            out = v->get<T>();
        }
    }

    void boolean(const char *key, bool &out)
    {
        if (const auto *v = get(key))
        {
            if (!v->is_boolean())
                throw ConfigError(where() + "'" + key + "' must be true or false");
            out = v->get<bool>();
        }
    }

    void string(const char *key, std::string &out)
    {
        if (const auto *v = get(key))
        {
            if (!v->is_string())
                throw ConfigError(where() + "'" + key + "' must be a string");
            out = v->get<std::string>();
        }
    }

    double to_number(const json &v, const std::string &key) const
    {
        if (v.is_number())
            return v.get<double>();
        if (v.is_string())
        {
            const auto s = v.get<std::string>();
            if (s == "inf" || s == "+inf" || s == "Infinity")
                return kInf;
            if (s == "-inf" || s == "-Infinity")
                return -kInf;
        }
        throw ConfigError(where() + "'" + key + "' must be a number");
    }

    Section child(const char *key)
    {
        const auto *v = get(key);
        static const json empty = json::object();
        return Section(v ? *v : empty, path_.empty() ? key : path_ + "." + key);
    }

    void finish() const
    {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key()))
                throw ConfigError(where() + "unknown key '" + it.key() + "'");
    }

    std::string where() const { return "config" + (path_.empty() ? std::string() : " [" + path_ + "]") + ": "; }

private:
    const json &j_;
    std::string path_;
    std::set<std::string> seen_;
};

void read_amplifier(Section s, AmplifierSpec &a)
{
    s.number("gain_db", a.gain_db);
    s.number("iip2_dbm", a.iip2_dbm);
    s.number("iip3_dbm", a.iip3_dbm);
    s.number("nf_db", a.nf_db);
    s.finish();
}

void read_adc(Section s, AdcSpec &a)
{
    s.integer("bits", a.bits);
    s.number("papr_headroom_db", a.papr_headroom_db);
    s.number("target_power_dbm", a.target_power_dbm);
    s.finish();
}

json number_json(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return v;
}

json amplifier_json(const AmplifierSpec &a)
{
    return {{"gain_db", number_json(a.gain_db)},
            {"iip2_dbm", number_json(a.iip2_dbm)},
            {"iip3_dbm", number_json(a.iip3_dbm)},
            {"nf_db", number_json(a.nf_db)}};
}

json adc_json(const AdcSpec &a)
{
    return {{"bits", a.bits}, {"papr_headroom_db", a.papr_headroom_db}, {"target_power_dbm", a.target_power_dbm}};
}

} // namespace

ScenarioConfig parse_config(const std::string &json_text)
{
    json root;
    try
    {
        root = json::parse(json_text);
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }

    ScenarioConfig cfg;
    Section top(root, "");

    if (const auto *e = top.get("experiment"))
    {
        if (!e->is_string())
            throw ConfigError("config: 'experiment' must be a string");
        cfg.experiment = parse_experiment(e->get<std::string>());
    }
    top.integer("seed", cfg.master_seed);
    top.integer("trials", cfg.n_trials);
    top.integer("threads", cfg.threads);
    top.string("output", cfg.output_path);

    {
        auto t = top.child("transceiver");
        auto &tr = cfg.transceiver;
        t.integer("n_tx", tr.n_tx);
        t.integer("n_rx", tr.n_rx);
        t.number("p_tx_dbm", tr.p_tx_dbm);
        t.number("a_ant_db", tr.a_ant_db);
        t.number("a_rf_db", tr.a_rf_db);
        t.number("a_dig_db", tr.a_dig_db);
        t.number("p_soi_in_dbm", tr.p_soi_in_dbm);
        t.number("f_rx_db", tr.f_rx_db);
        t.number("bandwidth_hz", tr.bandwidth_hz);
        t.number("irr_tx_db", tr.irr_tx_db);
        t.number("irr_rx_db", tr.irr_rx_db);
        read_amplifier(t.child("pa"), tr.pa);
        read_amplifier(t.child("lna"), tr.lna);
        read_amplifier(t.child("mixer"), tr.mixer);
        read_amplifier(t.child("vga"), tr.vga);
        {
            auto g = t.child("vga_range");
            g.number("min_db", tr.vga_range.min_db);
            g.number("max_db", tr.vga_range.max_db);
            g.finish();
        }
        read_adc(t.child("adc_main"), tr.adc_main);
        read_adc(t.child("adc_ref"), tr.adc_ref);
        t.finish();
    }
    {
        auto o = top.child("ofdm");
        auto &of = cfg.ofdm;
        o.integer("n_subcarriers", of.n_subcarriers);
        o.integer("n_data_subcarriers", of.n_data_subcarriers);
        o.integer("constellation_order", of.constellation_order);
        o.integer("guard_interval_samples", of.guard_interval_samples);
        o.integer("oversampling_factor", of.oversampling_factor);
        o.number("symbol_duration_s", of.symbol_duration_s);
        o.finish();
    }
    {
        auto c = top.child("channel");
        c.integer("m_taps", cfg.m_taps);
        c.number("k_factor_db", cfg.k_factor_db);
        c.integer("los_delay", cfg.los_delay);
        c.finish();
    }
    {
        auto s = top.child("simulation");
        if (const auto *g = s.get("p_tx_grid"))
        {
            if (!g->is_array())
                throw ConfigError("config [simulation]: 'p_tx_grid' must be an array");
            cfg.p_tx_grid.clear();
            for (const auto &v : *g)
                cfg.p_tx_grid.push_back(s.to_number(v, "p_tx_grid"));
        }
        if (const auto *g = s.get("n_est_grid"))
        {
            if (!g->is_array())
                throw ConfigError("config [simulation]: 'n_est_grid' must be an array");
            cfg.n_est_grid.clear();
            for (const auto &v : *g)
            {
                if (!v.is_number_unsigned())
                    throw ConfigError("config [simulation]: 'n_est_grid' entries must be non-negative integers");
                cfg.n_est_grid.push_back(v.get<std::size_t>());
            }
        }
        if (const auto *g = s.get("variants"))
        {
            if (!g->is_array())
                throw ConfigError("config [simulation]: 'variants' must be an array");
            cfg.variants.clear();
            for (const auto &v : *g)
            {
                if (!v.is_string())
                    throw ConfigError("config [simulation]: 'variants' entries must be strings");
                try
                {
                    cfg.variants.push_back(parse_canceller_variant(v.get<std::string>()));
                }
                catch (const std::invalid_argument &e)
                {
                    throw ConfigError(std::string("config [simulation]: ") + e.what());
                }
            }
        }
        s.boolean("calibration", cfg.calibration);
        s.integer("n_est", cfg.n_est);
        s.integer("n_eval", cfg.n_eval);
        s.number("sinr_vs_n_p_tx_dbm", cfg.sinr_vs_n_p_tx_dbm);
        s.integer("nonlinear_order", cfg.nonlinear_order);
        s.number("max_condition", cfg.max_condition);
        s.number("sinr_cap_db", cfg.sinr_cap_db);
        s.integer("sinr_fit_taps", cfg.sinr_fit_taps);
        s.boolean("thermal_noise", cfg.chain.thermal_noise);
        s.boolean("quantization", cfg.chain.quantization);
        s.finish();
    }
    top.finish();
    cfg.validate();
    return cfg;
}

ScenarioConfig load_config(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string dump_config(const ScenarioConfig &cfg, int indent)
{
    const auto &tr = cfg.transceiver;
    json variants = json::array();
    for (auto v : cfg.variants)
        variants.push_back(to_string(v));
    json p_tx = json::array();
    for (double p : cfg.p_tx_grid)
        p_tx.push_back(p);

    json j = {
        {"experiment", to_string(cfg.experiment)},
        {"seed", cfg.master_seed},
        {"trials", cfg.n_trials},
        {"threads", cfg.threads},
        {"output", cfg.output_path},
        {"transceiver",
         {{"n_tx", tr.n_tx},
          {"n_rx", tr.n_rx},
          {"p_tx_dbm", number_json(tr.p_tx_dbm)},
          {"a_ant_db", number_json(tr.a_ant_db)},
          {"a_rf_db", number_json(tr.a_rf_db)},
          {"a_dig_db", number_json(tr.a_dig_db)},
          {"p_soi_in_dbm", number_json(tr.p_soi_in_dbm)},
          {"f_rx_db", number_json(tr.f_rx_db)},
          {"bandwidth_hz", tr.bandwidth_hz},
          {"irr_tx_db", number_json(tr.irr_tx_db)},
          {"irr_rx_db", number_json(tr.irr_rx_db)},
          {"pa", amplifier_json(tr.pa)},
          {"lna", amplifier_json(tr.lna)},
          {"mixer", amplifier_json(tr.mixer)},
          {"vga", amplifier_json(tr.vga)},
          {"vga_range", {{"min_db", tr.vga_range.min_db}, {"max_db", tr.vga_range.max_db}}},
          {"adc_main", adc_json(tr.adc_main)},
          {"adc_ref", adc_json(tr.adc_ref)}}},
        {"ofdm",
         {{"n_subcarriers", cfg.ofdm.n_subcarriers},
          {"n_data_subcarriers", cfg.ofdm.n_data_subcarriers},
          {"constellation_order", cfg.ofdm.constellation_order},
          {"guard_interval_samples", cfg.ofdm.guard_interval_samples},
          {"oversampling_factor", cfg.ofdm.oversampling_factor},
          {"symbol_duration_s", cfg.ofdm.symbol_duration_s}}},
        {"channel", {{"m_taps", cfg.m_taps}, {"k_factor_db", number_json(cfg.k_factor_db)}, {"los_delay", cfg.los_delay}}},
        {"simulation",
         {{"p_tx_grid", p_tx},
          {"n_est_grid", cfg.n_est_grid},
          {"variants", variants},
          {"calibration", cfg.calibration},
          {"n_est", cfg.n_est},
          {"n_eval", cfg.n_eval},
          {"sinr_vs_n_p_tx_dbm", cfg.sinr_vs_n_p_tx_dbm},
          {"nonlinear_order", cfg.nonlinear_order},
          {"max_condition", cfg.max_condition},
          {"sinr_cap_db", cfg.sinr_cap_db},
          {"sinr_fit_taps", cfg.sinr_fit_taps},
          {"thermal_noise", cfg.chain.thermal_noise},
          {"quantization", cfg.chain.quantization}}},
    };
    return j.dump(indent);
}

} // namespace fdsic
