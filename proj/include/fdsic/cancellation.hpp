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

#include "fdsic/signal.hpp"
#include "fdsic/waveform.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace fdsic
{

enum class CancellerVariant
{
    ref_rx,        // linear model on reference-receiver observations
    linear,        // linear model on transmit data
    widely_linear, // {x, conj(x)} on transmit data
    nonlinear,     // odd-order parallel Hammerstein {x, x|x|^2, ...} on transmit data
};

std::string to_string(CancellerVariant v);
CancellerVariant parse_canceller_variant(const std::string &s);
inline constexpr CancellerVariant kAllVariants[] = {CancellerVariant::ref_rx, CancellerVariant::linear,
                                                    CancellerVariant::widely_linear, CancellerVariant::nonlinear};

// One static basis function: b(x) = x * |x|^(order - 1), conjugated when
// `conjugate` is set.
struct BasisTerm
{
    bool conjugate = false;
    int order = 1;

    cplx apply(cplx x) const;
    bool operator==(const BasisTerm &) const = default;
};

std::vector<BasisTerm> basis_for(CancellerVariant variant, int nonlinear_order = 3);

// Which reference stream and basis function a column block belongs to.
struct BlockTag
{
    std::size_t branch = 0;
    std::size_t basis = 0;
    BasisTerm term{};
};

// Stacked covariance-windowed convolution matrices. Blocks are grouped by
// basis function, then by branch: [X_1 .. X_B | conj(X_1) .. conj(X_B) | ..].
// Row r, column c of a block built from stream u holds u(M - 1 + r - c).
struct RegressionMatrix
{
    Eigen::MatrixXcd data;
    std::size_t m_taps = 0;
    std::size_t n_samples = 0; // N, the length of the source streams
    CancellerVariant variant = CancellerVariant::linear;
    std::vector<BlockTag> blocks;

    std::size_t rows() const { return static_cast<std::size_t>(data.rows()); }
    std::size_t cols() const { return static_cast<std::size_t>(data.cols()); }
};

RegressionMatrix build_regression_matrix(std::span<const ComplexSignal> refs, std::size_t m_taps,
                                         CancellerVariant variant, int nonlinear_order = 3);

struct ChannelEstimateSet
{
    CancellerVariant variant = CancellerVariant::linear;
    bool calibrated = false;
    std::size_t n_samples = 0;
    std::size_t m_taps = 0;
    std::size_t rx_index = 0;
    double condition_number = 0.0;
    std::vector<BlockTag> blocks;
    std::vector<std::vector<cplx>> taps; // one length-M response per block

    std::size_t coefficient_count() const { return blocks.size() * m_taps; }
    Eigen::VectorXcd stacked() const;
};

// Raised when the regression matrix is (numerically) rank deficient.
class EstimationError : public std::runtime_error
{
public:
    EstimationError(const std::string &what, double condition)
        : std::runtime_error(what), condition_(condition)
    {
    }
    double condition() const { return condition_; }

private:
    double condition_;
};

struct LsOptions
{
    double max_condition = 1e8;
};

// Least-squares taps minimizing ||y_w - X h||^2 where y_w = y[M-1 .. N-1].
// Columns are equilibrated and the system is solved by Householder QR; the
// condition number of the equilibrated matrix is checked against the limit.
ChannelEstimateSet ls_estimate(const ComplexSignal &y, const RegressionMatrix &X, const LsOptions &opts = {});

// y - sum over blocks of h_block * basis(ref_branch). Same length as y.
ComplexSignal digital_cancel(const ComplexSignal &y, std::span<const ComplexSignal> refs,
                             const ChannelEstimateSet &est);

// Regenerated SI for the given estimate.
ComplexSignal regenerate(std::size_t n, double sample_rate_hz, std::span<const ComplexSignal> refs,
                         const ChannelEstimateSet &est);

struct RfCancelResult
{
    ComplexSignal signal;
    double achieved_db = 0.0; // SI power before / after, dB
    bool shortfall = false;   // requested suppression not reachable
};

// Subtracts c * sum_j h_ij[los] * x_j(n - los) from the received signal, with
// the real scale c chosen so that the SI power drops by exactly a_rf_db. When
// the scattered taps make that impossible, c minimizes the residual instead.
RfCancelResult rf_cancel(const ComplexSignal &y_rx, std::span<const ComplexSignal> tx_pa_outputs,
                         const MimoChannel &channel, std::size_t rx_index, double a_rf_db);

struct CancellerOptions
{
    int nonlinear_order = 3;
    double max_condition = 1e8;
};

struct CancellerOutput
{
    ComplexSignal residual;
    ChannelEstimateSet estimate;
};

// Estimates on the first n_est samples and cancels over the whole capture.
// ref_rx uses ref_rx_captures as regressors, the other variants tx_data.
CancellerOutput run_canceller(CancellerVariant variant, const ComplexSignal &rx_capture,
                              std::span<const ComplexSignal> tx_data, std::span<const ComplexSignal> ref_rx_captures,
                              std::size_t m_taps, std::size_t n_est, const CancellerOptions &opts = {});

// One coefficient per row: rx,tx,basis,lag,real,imag
void write_estimate_csv(std::ostream &os, const ChannelEstimateSet &est, bool header = true);

} // namespace fdsic
