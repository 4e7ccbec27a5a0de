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

#include "fdsic/cancellation.hpp"
#include "fdsic/csv.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <ostream>

namespace fdsic
{

std::string to_string(CancellerVariant v)
{
    switch (v)
    {
    case CancellerVariant::ref_rx:
        return "ref-rx";
    case CancellerVariant::linear:
        return "linear";
    case CancellerVariant::widely_linear:
        return "widely-linear";
    case CancellerVariant::nonlinear:
        return "nonlinear";
    }
    return "unknown";
}

CancellerVariant parse_canceller_variant(const std::string &s)
{
    for (auto v : kAllVariants)
        if (to_string(v) == s)
            return v;
    throw ConfigError("unknown canceller variant '" + s + "'");
}

cplx BasisTerm::apply(cplx x) const
{
    cplx v = conjugate ? std::conj(x) : x;
    if (order > 1)
        v *= std::pow(std::abs(x), order - 1);
    return v;
}

std::vector<BasisTerm> basis_for(CancellerVariant variant, int nonlinear_order)
{
    switch (variant)
    {
    case CancellerVariant::ref_rx:
    case CancellerVariant::linear:
        return {BasisTerm{false, 1}};
    case CancellerVariant::widely_linear:
        return {BasisTerm{false, 1}, BasisTerm{true, 1}};
    case CancellerVariant::nonlinear: {
        if (nonlinear_order < 1 || nonlinear_order % 2 == 0)
            throw ConfigError("nonlinear_order must be a positive odd integer");
        std::vector<BasisTerm> b;
        for (int p = 1; p <= nonlinear_order; p += 2)
            b.push_back(BasisTerm{false, p});
        return b;
    }
    }
    throw ConfigError("unknown canceller variant");
}

namespace
{

std::vector<cplx> expand(const ComplexSignal &x, const BasisTerm &term)
{
    std::vector<cplx> out(x.size());
    const auto in = x.samples();
    if (term == BasisTerm{false, 1})
        std::copy(in.begin(), in.end(), out.begin());
    else
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = term.apply(in[i]);
    return out;
}

} // namespace

RegressionMatrix build_regression_matrix(std::span<const ComplexSignal> refs, std::size_t m_taps,
                                         CancellerVariant variant, int nonlinear_order)
{
    if (refs.empty())
        throw ArgumentError("build_regression_matrix: no reference streams");
    if (m_taps == 0)
        throw ArgumentError("build_regression_matrix: m_taps must be >= 1");
    const std::size_t n = refs.front().size();
    for (const auto &r : refs)
        if (r.size() != n)
            throw ArgumentError("build_regression_matrix: reference streams differ in length");
    if (n < m_taps)
        throw ArgumentError("build_regression_matrix: references shorter than m_taps");

    const auto basis = basis_for(variant, nonlinear_order);
    const std::size_t rows = n - m_taps + 1;

    RegressionMatrix X;
    X.m_taps = m_taps;
    X.n_samples = n;
    X.variant = variant;
    X.data.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(basis.size() * refs.size() * m_taps));

    Eigen::Index col = 0;
    for (std::size_t b = 0; b < basis.size(); ++b)
    {
        for (std::size_t branch = 0; branch < refs.size(); ++branch)
        {
            X.blocks.push_back({branch, b, basis[b]});
            const auto u = expand(refs[branch], basis[b]);
            for (std::size_t c = 0; c < m_taps; ++c, ++col)
            {
                // column c holds u(M - 1 + r - c)
                const cplx *src = u.data() + (m_taps - 1 - c);
                X.data.col(col) = Eigen::Map<const Eigen::VectorXcd>(src, static_cast<Eigen::Index>(rows));
            }
        }
    }
    return X;
}

Eigen::VectorXcd ChannelEstimateSet::stacked() const
{
    Eigen::VectorXcd h(static_cast<Eigen::Index>(coefficient_count()));
    Eigen::Index i = 0;
    for (const auto &t : taps)
        for (const auto &v : t)
            h(i++) = v;
    return h;
}

ChannelEstimateSet ls_estimate(const ComplexSignal &y, const RegressionMatrix &X, const LsOptions &opts)
{
    if (y.size() != X.n_samples)
        throw ArgumentError("ls_estimate: observation length does not match the regression source length");
    const auto rows = static_cast<Eigen::Index>(X.rows());
    const auto cols = static_cast<Eigen::Index>(X.cols());
    if (rows < cols)
        throw EstimationError("ls_estimate: fewer observations than unknowns", kInf);

    Eigen::Map<const Eigen::VectorXcd> yw(y.samples().data() + (X.m_taps - 1), rows);

    Eigen::VectorXd scale = X.data.colwise().norm().transpose();
    for (Eigen::Index c = 0; c < cols; ++c)
        if (!(scale(c) > 0.0) || !std::isfinite(scale(c)))
            throw EstimationError("ls_estimate: zero or non-finite regression column", kInf);

    const Eigen::MatrixXcd A = X.data * scale.cwiseInverse().asDiagonal();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
    const Eigen::MatrixXcd R = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();

    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(R);
    const auto &sv = svd.singularValues();
    const double cond = sv(cols - 1) > 0.0 ? sv(0) / sv(cols - 1) : kInf;
    if (!(cond <= opts.max_condition))
        throw EstimationError("ls_estimate: regression matrix is ill-conditioned (condition " + std::to_string(cond) +
                                  ")",
                              cond);

    const Eigen::VectorXcd z = qr.solve(Eigen::VectorXcd(yw));
    const Eigen::VectorXcd h = z.cwiseQuotient(scale.cast<cplx>());

    ChannelEstimateSet est;
    est.variant = X.variant;
    est.n_samples = X.n_samples;
    est.m_taps = X.m_taps;
    est.condition_number = cond;
    est.blocks = X.blocks;
    est.taps.resize(X.blocks.size());
    for (std::size_t b = 0; b < X.blocks.size(); ++b)
    {
        est.taps[b].resize(X.m_taps);
        for (std::size_t k = 0; k < X.m_taps; ++k)
        {
            const cplx v = h(static_cast<Eigen::Index>(b * X.m_taps + k));
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw EstimationError("ls_estimate: non-finite coefficient", cond);
            est.taps[b][k] = v;
        }
    }
    return est;
}

ComplexSignal regenerate(std::size_t n, double sample_rate_hz, std::span<const ComplexSignal> refs,
                         const ChannelEstimateSet &est)
{
    if (est.taps.size() != est.blocks.size())
        throw ArgumentError("digital_cancel: estimate has inconsistent block count");
    ComplexSignal out = ComplexSignal::zeros(n, sample_rate_hz);
    for (std::size_t b = 0; b < est.blocks.size(); ++b)
    {
        const auto &tag = est.blocks[b];
        if (tag.branch >= refs.size())
            throw ArgumentError("digital_cancel: estimate references a missing branch");
        if (est.taps[b].size() != est.m_taps)
            throw ArgumentError("digital_cancel: tap-length mismatch");
        if (refs[tag.branch].size() != n)
            throw ArgumentError("digital_cancel: reference length differs from the observation");
        ComplexSignal u(expand(refs[tag.branch], tag.term), sample_rate_hz);
        out += convolve(u, est.taps[b]);
    }
    return out;
}

ComplexSignal digital_cancel(const ComplexSignal &y, std::span<const ComplexSignal> refs,
                             const ChannelEstimateSet &est)
{
    return y - regenerate(y.size(), y.sample_rate_hz(), refs, est);
}

RfCancelResult rf_cancel(const ComplexSignal &y_rx, std::span<const ComplexSignal> tx_pa_outputs,
                         const MimoChannel &channel, std::size_t rx_index, double a_rf_db)
{
    if (!(a_rf_db >= 0.0))
        throw ArgumentError("rf_cancel: a_rf_db must be >= 0");
    if (tx_pa_outputs.size() != channel.n_tx || rx_index >= channel.n_rx)
        throw ArgumentError("rf_cancel: branch counts do not match the channel");
    if (a_rf_db == 0.0)
        return {y_rx, 0.0, false};

    const std::size_t n = y_rx.size();
    ComplexSignal si = ComplexSignal::zeros(n, y_rx.sample_rate_hz());
    ComplexSignal los = ComplexSignal::zeros(n, y_rx.sample_rate_hz());
    for (std::size_t j = 0; j < channel.n_tx; ++j)
    {
        if (tx_pa_outputs[j].size() != n)
            throw ArgumentError("rf_cancel: transmit stream length differs from the capture");
        const auto &h = channel.response(rx_index, j);
        si += convolve(tx_pa_outputs[j], h);
        std::vector<cplx> los_taps(channel.los_delay + 1);
        los_taps[channel.los_delay] = h[channel.los_delay];
        los += convolve(tx_pa_outputs[j], los_taps);
    }

    double p_si = 0.0, p_los = 0.0, cross = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        p_si += std::norm(si[i]);
        p_los += std::norm(los[i]);
        cross += (si[i] * std::conj(los[i])).real();
    }
    if (p_si == 0.0 || p_los == 0.0)
        return {y_rx, 0.0, p_si != 0.0};

    // |si - c*los|^2 = p_si - 2 c cross + c^2 p_los  == p_si / a_rf
    const double target = p_si / db_to_lin(a_rf_db);
    const double disc = cross * cross - p_los * (p_si - target);
    RfCancelResult res;
    double c;
    if (disc >= 0.0)
    {
        c = (cross - std::sqrt(disc)) / p_los;
    }
    else
    {
        c = cross / p_los;
        res.shortfall = true;
    }
    const double residual = p_si - 2.0 * c * cross + c * c * p_los;
    res.achieved_db = lin_to_db(p_si / std::max(residual, 0.0));
    res.signal = y_rx - los * cplx(c, 0.0);
    return res;
}

CancellerOutput run_canceller(CancellerVariant variant, const ComplexSignal &rx_capture,
                              std::span<const ComplexSignal> tx_data, std::span<const ComplexSignal> ref_rx_captures,
                              std::size_t m_taps, std::size_t n_est, const CancellerOptions &opts)
{
    const auto refs = variant == CancellerVariant::ref_rx ? ref_rx_captures : tx_data;
    if (refs.empty())
        throw ArgumentError("run_canceller: no reference streams for variant " + to_string(variant));
    if (n_est > rx_capture.size())
        throw ArgumentError("run_canceller: n_est exceeds the capture length");
    if (n_est < m_taps)
        throw ArgumentError("run_canceller: n_est must be >= m_taps");

    std::vector<ComplexSignal> window;
    window.reserve(refs.size());
    for (const auto &r : refs)
    {
        if (r.size() != rx_capture.size())
            throw ArgumentError("run_canceller: reference length differs from the capture");
        window.push_back(r.slice(0, n_est));
    }

    const auto X = build_regression_matrix(window, m_taps, variant, opts.nonlinear_order);
    auto est = ls_estimate(rx_capture.slice(0, n_est), X, LsOptions{opts.max_condition});
    auto residual = digital_cancel(rx_capture, refs, est);
    return {std::move(residual), std::move(est)};
}

void write_estimate_csv(std::ostream &os, const ChannelEstimateSet &est, bool header)
{
    if (header)
        os << "rx,tx,basis,lag,real,imag\n";
    for (std::size_t b = 0; b < est.blocks.size(); ++b)
        for (std::size_t k = 0; k < est.taps[b].size(); ++k)
            os << est.rx_index << ',' << est.blocks[b].branch << ',' << est.blocks[b].basis << ',' << k << ','
               << csv::format_exact(est.taps[b][k].real()) << ',' << csv::format_exact(est.taps[b][k].imag())
               << '\n';
}

} // namespace fdsic
