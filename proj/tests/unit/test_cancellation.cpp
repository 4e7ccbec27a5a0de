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

#include "fdsic/cancellation.hpp"
#include "fdsic/csv.hpp"
#include "fdsic/impairments.hpp"
#include "fdsic/waveform.hpp"

#include <Eigen/Cholesky>

#include <random>
#include <sstream>

using namespace fdsic;
using Catch::Matchers::WithinAbs;

namespace
{

std::vector<cplx> gauss(std::size_t n, std::uint64_t seed, double power = 1.0)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, std::sqrt(power / 2.0));
    std::vector<cplx> v(n);
    for (auto &x : v)
        x = {g(rng), g(rng)};
    return v;
}

ComplexSignal sig(std::vector<cplx> v) { return ComplexSignal(std::move(v), 1.0); }

double power_db(const ComplexSignal &s, std::size_t from = 0)
{
    return lin_to_db(mean_power_watts(s.samples().subspan(from)));
}

} // namespace

TEST_CASE("regression matrix layout", "[cancellation][matrix]")
{
    const std::vector<cplx> x{{1, 1}, {2, -1}, {3, 0.5}, {4, 2}};
    const ComplexSignal r[] = {sig(x)};

    const auto m1 = build_regression_matrix(r, 1, CancellerVariant::linear);
    REQUIRE(m1.rows() == 4);
    REQUIRE(m1.cols() == 1);
    for (int i = 0; i < 4; ++i)
        CHECK(m1.data(i, 0) == x[i]);

    const auto m2 = build_regression_matrix(r, 2, CancellerVariant::linear);
    REQUIRE(m2.rows() == 3);
    REQUIRE(m2.cols() == 2);
    for (int row = 0; row < 3; ++row)
    {
        CHECK(m2.data(row, 0) == x[row + 1]);
        CHECK(m2.data(row, 1) == x[row]);
    }

    const ComplexSignal two[] = {sig(gauss(20, 1)), sig(gauss(20, 2))};
    const auto wl = build_regression_matrix(two, 3, CancellerVariant::widely_linear);
    REQUIRE(wl.blocks.size() == 4);
    CHECK(wl.cols() == 12);
    CHECK(wl.data.middleCols(6, 3) == wl.data.middleCols(0, 3).conjugate());
    CHECK(wl.data.middleCols(9, 3) == wl.data.middleCols(3, 3).conjugate());
    CHECK(wl.blocks[2].branch == 0);
    CHECK(wl.blocks[2].term.conjugate);

    const auto nl = build_regression_matrix(two, 3, CancellerVariant::nonlinear, 5);
    CHECK(nl.blocks.size() == 6);
    const cplx u = two[1][7];
    CHECK(std::abs(nl.data(5, 3 * 5 + 0) - u * std::norm(u) * std::norm(u)) < 1e-14);
    CHECK(std::abs(nl.data(5, 3 * 3 + 0) - u * std::norm(u)) < 1e-14);

    const ComplexSignal short_ref[] = {sig(gauss(2, 1))};
    CHECK_THROWS_AS(build_regression_matrix(short_ref, 3, CancellerVariant::linear), ArgumentError);
    const ComplexSignal uneven[] = {sig(gauss(10, 1)), sig(gauss(11, 1))};
    CHECK_THROWS_AS(build_regression_matrix(uneven, 3, CancellerVariant::linear), ArgumentError);
}

TEST_CASE("basis functions", "[cancellation]")
{
    CHECK(basis_for(CancellerVariant::ref_rx).size() == 1);
    CHECK(basis_for(CancellerVariant::widely_linear)[1].conjugate);
    const auto nl = basis_for(CancellerVariant::nonlinear, 7);
    REQUIRE(nl.size() == 4);
    for (const auto &t : nl)
        CHECK_FALSE(t.conjugate);
    CHECK(nl[3].order == 7);
    CHECK_THROWS_AS(basis_for(CancellerVariant::nonlinear, 2), ConfigError);
    for (auto v : kAllVariants)
        CHECK(parse_canceller_variant(to_string(v)) == v);
    CHECK_THROWS_AS(parse_canceller_variant("volterra"), ConfigError);
}

TEST_CASE("least squares estimation", "[cancellation][ls]")
{
    constexpr std::size_t n = 400, m = 5;
    const ComplexSignal refs[] = {sig(gauss(n, 3)), sig(gauss(n, 4))};
    const auto h0 = gauss(m, 5), h1 = gauss(m, 6);
    auto y = convolve(refs[0], h0) + convolve(refs[1], h1);

    SECTION("consistent system is solved exactly")
    {
        const auto X = build_regression_matrix(refs, m, CancellerVariant::linear);
        const auto est = ls_estimate(y, X);
        REQUIRE(est.coefficient_count() == 2 * m);
        for (std::size_t k = 0; k < m; ++k)
        {
            CHECK(std::abs(est.taps[0][k] - h0[k]) < 1e-9 * std::abs(h0[k]) + 1e-12);
            CHECK(std::abs(est.taps[1][k] - h1[k]) < 1e-9 * std::abs(h1[k]) + 1e-12);
        }
        const auto res = digital_cancel(y, refs, est);
        CHECK(lin_to_db(mean_power_watts(res.samples()) / mean_power_watts(y.samples())) < -120.0);
    }
    SECTION("agrees with the normal equations and leaves an orthogonal residual")
    {
        const auto noise = gauss(n, 7, 0.1);
        for (std::size_t i = 0; i < n; ++i)
            y[i] += noise[i];
        const auto X = build_regression_matrix(refs, m, CancellerVariant::widely_linear);
        const auto est = ls_estimate(y, X);

        Eigen::Map<const Eigen::VectorXcd> yw(y.samples().data() + (m - 1), static_cast<Eigen::Index>(X.rows()));
        const Eigen::MatrixXcd G = X.data.adjoint() * X.data;
        const Eigen::VectorXcd ref = G.llt().solve(X.data.adjoint() * yw);
        const Eigen::VectorXcd h = est.stacked();
        CHECK((h - ref).norm() <= 1e-8 * ref.norm());

        const Eigen::VectorXcd r = yw - X.data * h;
        CHECK((X.data.adjoint() * r).norm() <= 1e-9 * (X.data.adjoint() * yw).norm());
    }
    SECTION("rank deficiency is rejected")
    {
        const ComplexSignal dup[] = {refs[0], refs[0]};
        const auto X = build_regression_matrix(dup, m, CancellerVariant::linear);
        CHECK_THROWS_AS(ls_estimate(y, X), EstimationError);
        try
        {
            ls_estimate(y, X);
        }
        catch (const EstimationError &e)
        {
            CHECK(e.condition() > 1e8);
        }
    }
    SECTION("length mismatch")
    {
        const auto X = build_regression_matrix(refs, m, CancellerVariant::linear);
        CHECK_THROWS_AS(ls_estimate(y.slice(0, n - 1), X), ArgumentError);
    }
}

TEST_CASE("digital cancellation edge cases", "[cancellation]")
{
    const ComplexSignal refs[] = {sig(gauss(50, 1))};
    const auto y = sig(gauss(50, 2));
    ChannelEstimateSet zero;
    zero.m_taps = 3;
    zero.blocks = {BlockTag{0, 0, BasisTerm{}}};
    zero.taps = {std::vector<cplx>(3)};
    CHECK(digital_cancel(y, refs, zero).vector() == y.vector());

    auto bad = zero;
    bad.taps[0].resize(2);
    CHECK_THROWS_AS(digital_cancel(y, refs, bad), ArgumentError);
}

TEST_CASE("nested models do not increase the estimation residual", "[cancellation]")
{
    constexpr std::size_t n = 600, m = 4;
    auto x = sig(gauss(n, 11));
    auto tx = apply_iq_imbalance(x, IqSpec{25.0});
    const auto h = gauss(m, 12);
    auto y = convolve(apply_pa(tx, AmplifierSpec{0.0, kInf, 10.0, 0.0}), h) + sig(gauss(n, 13, 1e-3));
    const ComplexSignal refs[] = {x};
    const auto res_lin = run_canceller(CancellerVariant::linear, y, refs, refs, m, n);
    const auto res_wl = run_canceller(CancellerVariant::widely_linear, y, refs, refs, m, n);
    CHECK(power_db(res_wl.residual, m - 1) <= power_db(res_lin.residual, m - 1) + 1e-12);
}

TEST_CASE("RF cancellation", "[cancellation][rf]")
{
    SiChannelParams p;
    p.n_rx = 1;
    p.n_tx = 2;
    const ComplexSignal pa[] = {sig(gauss(20000, 1)), sig(gauss(20000, 2))};

    SECTION("no cancellation")
    {
        const auto ch = draw_si_channel(p, 1);
        const auto y = convolve(pa[0], ch.response(0, 0));
        const auto r = rf_cancel(y, pa, ch, 0, 0.0);
        CHECK(r.signal.vector() == y.vector());
    }
    SECTION("pure line of sight")
    {
        auto q = p;
        q.k_factor_db = kInf;
        const auto ch = draw_si_channel(q, 2);
        const auto si = convolve(pa[0], ch.response(0, 0)) + convolve(pa[1], ch.response(0, 1));
        const auto r = rf_cancel(si, pa, ch, 0, 30.0);
        CHECK_FALSE(r.shortfall);
        CHECK_THAT(power_db(r.signal) - power_db(si), WithinAbs(-30.0, 0.1));
    }
    SECTION("Rician channels reach the target over many draws")
    {
        double acc = 0.0;
        constexpr int draws = 50;
        for (int d = 0; d < draws; ++d)
        {
            const auto ch = draw_si_channel(p, static_cast<std::uint64_t>(100 + d));
            const auto si = convolve(pa[0], ch.response(0, 0)) + convolve(pa[1], ch.response(0, 1));
            const auto r = rf_cancel(si, pa, ch, 0, 30.0);
            CHECK_FALSE(r.shortfall);
            acc += power_db(r.signal) - power_db(si);
        }
        CHECK_THAT(acc / draws, WithinAbs(-30.0, 0.3));
    }
    SECTION("shortfall when the scattered power is too large")
    {
        auto q = p;
        q.k_factor_db = 10.0;
        const auto ch = draw_si_channel(q, 3);
        const auto si = convolve(pa[0], ch.response(0, 0)) + convolve(pa[1], ch.response(0, 1));
        const auto r = rf_cancel(si, pa, ch, 0, 30.0);
        CHECK(r.shortfall);
        CHECK(r.achieved_db < 30.0);
        CHECK(r.achieved_db > 0.0);
    }
    SECTION("errors")
    {
        const auto ch = draw_si_channel(p, 1);
        const auto y = convolve(pa[0], ch.response(0, 0));
        CHECK_THROWS_AS(rf_cancel(y, pa, ch, 0, -1.0), ArgumentError);
        CHECK_THROWS_AS(rf_cancel(y, pa, ch, 1, 30.0), ArgumentError);
    }
}

TEST_CASE("canceller variants on synthetic transmit chains", "[cancellation][variants]")
{
    constexpr std::size_t n = 20000, m = 4, n_est = 10000;
    const auto h = gauss(m, 21);
    const auto noise = sig(gauss(n, 22, 1e-8));
    const auto data = sig(gauss(n, 23));
    const ComplexSignal tx[] = {data};

    SECTION("identical references give identical residuals")
    {
        const auto y = convolve(data, h) + noise;
        const auto a = run_canceller(CancellerVariant::linear, y, tx, tx, m, n_est);
        const auto b = run_canceller(CancellerVariant::ref_rx, y, tx, tx, m, n_est);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(a.residual[i] - b.residual[i]) <= 1e-9 * std::abs(y[i]) + 1e-15);
    }
    SECTION("TX image limits the linear canceller and not the widely-linear one")
    {
        const auto tx_out = apply_iq_imbalance(data, IqSpec{25.0});
        const auto si = convolve(tx_out, h);
        const auto y = si + noise;
        const ComplexSignal refs[] = {tx_out};
        const auto lin = run_canceller(CancellerVariant::linear, y, tx, refs, m, n_est);
        const auto wl = run_canceller(CancellerVariant::widely_linear, y, tx, refs, m, n_est);
        const double si_db = power_db(si, n_est);
        CHECK_THAT(power_db(lin.residual, n_est) - si_db, WithinAbs(-25.0, 0.5));
        CHECK_THAT(power_db(wl.residual, n_est), WithinAbs(power_db(noise, n_est), 0.1));
    }
    SECTION("reference receiver residual does not depend on TX impairments")
    {
        std::vector<double> residuals;
        for (auto [irr, iip3] : {std::pair{25.0, 15.0}, std::pair{kInf, kInf}, std::pair{15.0, 5.0}})
        {
            const auto out = apply_pa(apply_iq_imbalance(data * cplx(0.03, 0.0), IqSpec{irr}),
                                      AmplifierSpec{0.0, kInf, iip3, 0.0});
            const auto y = convolve(out, h) + noise;
            const ComplexSignal refs[] = {out};
            const auto r = run_canceller(CancellerVariant::ref_rx, y, tx, refs, m, n_est);
            residuals.push_back(power_db(r.residual, n_est));
        }
        CHECK_THAT(residuals[1], WithinAbs(residuals[0], 0.2));
        CHECK_THAT(residuals[2], WithinAbs(residuals[0], 0.2));
    }
    SECTION("argument checks")
    {
        const auto y = convolve(data, h);
        CHECK_THROWS_AS(run_canceller(CancellerVariant::linear, y, tx, tx, m, n + 1), ArgumentError);
        CHECK_THROWS_AS(run_canceller(CancellerVariant::linear, y, tx, tx, m, m - 1), ArgumentError);
        CHECK_THROWS_AS(run_canceller(CancellerVariant::ref_rx, y, tx, {}, m, n_est), ArgumentError);
    }
}

TEST_CASE("estimate CSV", "[cancellation][csv]")
{
    const ComplexSignal refs[] = {sig(gauss(100, 1)), sig(gauss(100, 2))};
    const auto y = convolve(refs[0], gauss(3, 3)) + convolve(refs[1], gauss(3, 4));
    const auto X = build_regression_matrix(refs, 3, CancellerVariant::widely_linear);
    auto est = ls_estimate(y, X);
    est.rx_index = 1;
    std::ostringstream os;
    write_estimate_csv(os, est);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "rx,tx,basis,lag,real,imag");
    std::size_t rows = 0;
    while (std::getline(is, line))
    {
        const auto f = csv::split(line);
        REQUIRE(f.size() == 6);
        CHECK(f[0] == "1");
        const std::size_t b = rows / 3, k = rows % 3;
        CHECK(std::stod(f[4]) == est.taps[b][k].real());
        CHECK(std::stod(f[5]) == est.taps[b][k].imag());
        ++rows;
    }
    CHECK(rows == est.coefficient_count());
}
