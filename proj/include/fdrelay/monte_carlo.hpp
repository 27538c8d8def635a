// SPDX-License-Identifier: Apache-2.0
//
// fdrelay: achievable-rate analysis of full-duplex multi-antenna relays and passive IRS
// Copyright (C) 2026 The fdrelay authors
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

#include "fdrelay/channel_models.hpp"
#include "fdrelay/rate_analysis.hpp"

#include <cstddef>
#include <cstdint>
#include <utility>

namespace fdrelay
{

/// Trial budget and random-stream identity of a Monte Carlo run.
///
/// Trials are split into batches of `batch` draws. Batch i always uses the generator
/// make_generator(seed, <estimator stream>, i) and the per-batch moments are merged in
/// batch order, so the result is bit-identical for any `threads` value.
struct McConfig
{
    std::size_t trials = 100000;
    std::uint64_t seed = 1;
    std::size_t batch = 1000;
    unsigned threads = 1;     // 0 selects std::thread::hardware_concurrency()
    std::uint64_t stream = 0; // distinguishes otherwise identical estimator calls

    static constexpr std::size_t minimum_trials = 100;

    /// Throws std::invalid_argument when trials < minimum_trials or batch == 0.
    void validate() const;
};

struct McEstimate
{
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
    double analytic_reference = 0.0;
    double z_score = 0.0;
};

/// (mean - reference) / std_error. A numerically zero standard error yields 0 when the mean
/// matches the reference to rounding, and +-infinity otherwise.
double z_score(double mean, double std_error, double reference);

/// Streaming mean/variance (Welford) with Chan's pairwise merge.
class RunningMoments
{
  public:
    void add(double x);
    void merge(const RunningMoments &other);

    std::size_t count() const { return count_; }
    double mean() const { return mean_; }
    double sample_variance() const;
    double std_error() const;

  private:
    std::size_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

/// How the self-interference term u^T G v is drawn.
enum class SiSampling
{
    full_matrix,     // every g_mn drawn, O(M N) per trial
    aggregated_rows, // (G v)_m ~ CN(0, N eta / M) drawn directly, O(M) per trial
    automatic        // full_matrix when M N <= automatic_full_matrix_limit
};

inline constexpr std::size_t automatic_full_matrix_limit = 65536;

/// cos(phi - quantize_phase(phi)) for phi ~ U[0, 2pi). Reference: sqrt(Q) = sin(pi/2^b) / (pi/2^b).
McEstimate estimate_quantization_efficiency(int b, const McConfig &cfg);

/// |u^T h|^2 with u built from the conjugated quantised channel phases.
/// Reference: M omega (1 + (M-1) q), q = Q (LoS) or (pi/4) Q (Rayleigh).
McEstimate estimate_array_gain(std::size_t M, double omega, int b, FadingKind fading, const McConfig &cfg);

/// (P_R / N) |u^T G v|^2 with G ~ CN(0, eta/M) i.i.d. and independent quantised-phase u, v.
/// Reference: P_R eta.
McEstimate estimate_si_power(std::size_t M, std::size_t N, double eta, double P_R, int b, const McConfig &cfg,
                             SiSampling sampling = SiSampling::full_matrix);

/// |u^T w|^2 with w ~ CN(0, N0 I) and a random quantised-phase u. Reference: M N0.
McEstimate estimate_noise_power(std::size_t M, double N0, const McConfig &cfg, int b = 2);

struct HopSinrEstimates
{
    McEstimate first_hop;
    McEstimate second_hop;
};

/// Empirical hop SINRs composed from independent runs of the estimators above:
/// first = P_S E|u^T h_S|^2 / (M N0 + E[SI]), second = (P_R / N) E|v^T h_D|^2 / N0.
/// Standard errors are propagated to first order; references are the closed-form SINRs.
HopSinrEstimates estimate_hop_sinrs(const RelaySplit &split, const LinkBudget &budget, FadingKind fading,
                                    const McConfig &cfg, SiSampling sampling = SiSampling::automatic);

} // namespace fdrelay
