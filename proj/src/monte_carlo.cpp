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

#include "fdrelay/monte_carlo.hpp"

#include <boost/random/normal_distribution.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace fdrelay
{

namespace
{

constexpr double two_pi = 2.0 * std::numbers::pi;

void require(bool condition, const std::string &what)
{
    if (!condition)
        throw std::invalid_argument(what);
}

// Stream tags keep the estimators on disjoint generator substreams for a shared seed.
enum StreamTag : std::uint64_t
{
    array_gain_stream = 0xA11A,
    si_stream = 0x5151,
    noise_stream = 0x0015E,
    quantizer_stream = 0x0B17,
};

std::uint64_t stream_id(StreamTag tag, const McConfig &cfg)
{
    return (cfg.stream << 20) ^ static_cast<std::uint64_t>(tag);
}

// Runs cfg.trials draws of `trial(gen, workspace)` in deterministic batches.
template <typename Workspace, typename Trial>
RunningMoments run_batches(const McConfig &cfg, std::uint64_t stream, const Workspace &prototype, Trial trial)
{
    const std::size_t batches = (cfg.trials + cfg.batch - 1) / cfg.batch;
    std::vector<RunningMoments> per_batch(batches);

    auto run_range = [&](std::size_t first, std::size_t step) {
        Workspace workspace = prototype;
        for (std::size_t i = first; i < batches; i += step)
        {
            auto gen = make_generator(cfg.seed, stream, i);
            const std::size_t count = std::min(cfg.batch, cfg.trials - i * cfg.batch);
            RunningMoments moments;
            for (std::size_t t = 0; t < count; ++t)
                moments.add(trial(gen, workspace));
            per_batch[i] = moments;
        }
    };

    unsigned threads = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : cfg.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, batches));
    if (threads <= 1)
    {
        run_range(0, 1);
    }
    else
    {
        std::vector<std::thread> workers;
        workers.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
            workers.emplace_back(run_range, t, threads);
        for (auto &w : workers)
            w.join();
    }

    // Canonical reduction order: batch index ascending.
    RunningMoments total;
    for (const auto &m : per_batch)
        total.merge(m);
    return total;
}

McEstimate finish(const RunningMoments &moments, double reference)
{
    McEstimate estimate;
    estimate.mean = moments.mean();
    estimate.std_error = moments.std_error();
    estimate.trials = moments.count();
    estimate.analytic_reference = reference;
    estimate.z_score = z_score(estimate.mean, estimate.std_error, reference);
    return estimate;
}

// Receive/transmit weights: conjugate of the quantised channel phase. Same arithmetic as
// quantize_phase_index, restricted to phases already in [0, 2pi).
struct QuantisedCombiner
{
    PhaseShifterSpec spec;
    std::vector<cdouble> phasors;
    double step;
    std::size_t mask;

    explicit QuantisedCombiner(int b)
        : spec{b}, phasors(conjugate_level_phasors(spec)), step(spec.step()), mask(spec.levels() - 1)
    {
    }

    // phi in [0, 2pi): nearest level index and signed residual phi - level.
    std::size_t index(double phi, double &residual) const
    {
        const double x = phi / step;
        double lower = std::floor(x);
        double offset = x - lower;
        if (offset >= 0.5)
        {
            lower += 1.0;
            offset -= 1.0;
        }
        residual = offset * step;
        return static_cast<std::size_t>(lower) & mask;
    }

    cdouble weight_for_phase(double phi) const
    {
        double residual;
        return phasors[index(phi, residual)];
    }

    // Weight for the phase of (re, im). With at most four levels the nearest level is the one
    // with the largest projection, which avoids atan2.
    cdouble weight_for_vector(double re, double im) const
    {
        if (mask == 1)
            return phasors[re >= 0.0 ? 0 : 1];
        if (mask == 3)
        {
            if (std::abs(re) >= std::abs(im))
                return phasors[re >= 0.0 ? 0 : 2];
            return phasors[im >= 0.0 ? 1 : 3];
        }
        const double phi = std::atan2(im, re);
        return weight_for_phase(phi < 0.0 ? phi + two_pi : phi);
    }
};

struct VectorWorkspace
{
    std::vector<cdouble> weights;
};

} // namespace

void McConfig::validate() const
{
    require(trials >= minimum_trials,
            "Monte Carlo trials must be >= " + std::to_string(minimum_trials) + ", got " + std::to_string(trials));
    require(batch >= 1, "Monte Carlo batch size must be >= 1");
}

double z_score(double mean, double std_error, double reference)
{
    const double scale = std::max(std::abs(mean), std::abs(reference));
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * scale;
    if (std_error > floor)
        return (mean - reference) / std_error;
    const double diff = mean - reference;
    if (std::abs(diff) <= floor)
        return 0.0;
    return diff > 0.0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

void RunningMoments::add(double x)
{
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
}

void RunningMoments::merge(const RunningMoments &other)
{
    if (other.count_ == 0)
        return;
    if (count_ == 0)
    {
        *this = other;
        return;
    }
    const double n_a = static_cast<double>(count_);
    const double n_b = static_cast<double>(other.count_);
    const double n = n_a + n_b;
    const double delta = other.mean_ - mean_;
    mean_ += delta * n_b / n;
    m2_ += other.m2_ + delta * delta * n_a * n_b / n;
    count_ += other.count_;
}

double RunningMoments::sample_variance() const
{
    return count_ > 1 ? m2_ / static_cast<double>(count_ - 1) : 0.0;
}

double RunningMoments::std_error() const
{
    return count_ > 0 ? std::sqrt(sample_variance() / static_cast<double>(count_)) : 0.0;
}

McEstimate estimate_quantization_efficiency(int b, const McConfig &cfg)
{
    const PhaseShifterSpec spec{b};
    spec.validate();
    cfg.validate();
    const QuantisedCombiner combiner(b);
    auto trial = [&](Generator &gen, VectorWorkspace &) {
        double residual;
        combiner.index(draw_uniform_phase(gen), residual);
        return std::cos(residual);
    };
    return finish(run_batches(cfg, stream_id(quantizer_stream, cfg), VectorWorkspace{}, trial),
                  std::sqrt(quantization_factor(spec)));
}

McEstimate estimate_array_gain(std::size_t M, double omega, int b, FadingKind fading, const McConfig &cfg)
{
    require(M >= 1, "estimate_array_gain: M must be >= 1");
    require(std::isfinite(omega) && omega >= 0.0, "estimate_array_gain: omega must be >= 0");
    cfg.validate();
    const QuantisedCombiner combiner(b);
    const double scale = std::sqrt(omega / 2.0);

    auto trial = [&](Generator &gen, VectorWorkspace &) {
        boost::random::normal_distribution<double> normal;
        cdouble sum{0.0, 0.0};
        if (fading == FadingKind::los)
        {
            for (std::size_t m = 0; m < M; ++m)
            {
                // u_m h_m = sqrt(omega) exp(j (phi - level)).
                double residual;
                combiner.index(draw_uniform_phase(gen), residual);
                sum += cdouble(std::cos(residual), std::sin(residual));
            }
        }
        else
        {
            for (std::size_t m = 0; m < M; ++m)
            {
                const double re = normal(gen);
                const double im = normal(gen);
                const cdouble h(scale * re, scale * im);
                sum += combiner.weight_for_vector(re, im) * h;
            }
        }
        return fading == FadingKind::los ? omega * std::norm(sum) : std::norm(sum);
    };

    const double q = combining_weight(b, fading);
    const double reference = static_cast<double>(M) * omega * array_gain_factor(static_cast<double>(M), q);
    return finish(run_batches(cfg, stream_id(array_gain_stream, cfg), VectorWorkspace{}, trial), reference);
}

McEstimate estimate_si_power(std::size_t M, std::size_t N, double eta, double P_R, int b, const McConfig &cfg,
                             SiSampling sampling)
{
    require(M >= 1 && N >= 1, "estimate_si_power: M and N must be >= 1");
    require(std::isfinite(P_R) && P_R >= 0.0, "estimate_si_power: P_R must be >= 0");
    const double variance = si_variance(M, eta);
    cfg.validate();
    const QuantisedCombiner combiner(b);
    if (sampling == SiSampling::automatic)
        sampling = M * N <= automatic_full_matrix_limit ? SiSampling::full_matrix : SiSampling::aggregated_rows;

    VectorWorkspace prototype;
    prototype.weights.resize(N);

    auto trial = [&](Generator &gen, VectorWorkspace &ws) {
        boost::random::normal_distribution<double> normal;
        cdouble sum{0.0, 0.0};
        if (sampling == SiSampling::full_matrix)
        {
            for (auto &v : ws.weights)
                v = combiner.weight_for_phase(draw_uniform_phase(gen));
            const double scale = std::sqrt(variance / 2.0);
            for (std::size_t m = 0; m < M; ++m)
            {
                const cdouble u = combiner.weight_for_phase(draw_uniform_phase(gen));
                cdouble row{0.0, 0.0};
                for (std::size_t n = 0; n < N; ++n)
                {
                    const double re = normal(gen);
                    const double im = normal(gen);
                    row += cdouble(scale * re, scale * im) * ws.weights[n];
                }
                sum += u * row;
            }
        }
        else
        {
            // Given unit-modulus v, (G v)_m is exactly CN(0, N eta / M) and independent over m.
            const double scale = std::sqrt(static_cast<double>(N) * variance / 2.0);
            for (std::size_t m = 0; m < M; ++m)
            {
                const cdouble u = combiner.weight_for_phase(draw_uniform_phase(gen));
                const double re = normal(gen);
                const double im = normal(gen);
                sum += u * cdouble(scale * re, scale * im);
            }
        }
        return P_R * std::norm(sum) / static_cast<double>(N);
    };

    return finish(run_batches(cfg, stream_id(si_stream, cfg), prototype, trial), P_R * eta);
}

McEstimate estimate_noise_power(std::size_t M, double N0, const McConfig &cfg, int b)
{
    require(M >= 1, "estimate_noise_power: M must be >= 1");
    require(std::isfinite(N0) && N0 >= 0.0, "estimate_noise_power: N0 must be >= 0");
    cfg.validate();
    const QuantisedCombiner combiner(b);
    const double scale = std::sqrt(N0 / 2.0);

    auto trial = [&](Generator &gen, VectorWorkspace &) {
        boost::random::normal_distribution<double> normal;
        cdouble sum{0.0, 0.0};
        for (std::size_t m = 0; m < M; ++m)
        {
            const cdouble u = combiner.weight_for_phase(draw_uniform_phase(gen));
            const double re = normal(gen);
            const double im = normal(gen);
            sum += u * cdouble(scale * re, scale * im);
        }
        return std::norm(sum);
    };

    return finish(run_batches(cfg, stream_id(noise_stream, cfg), VectorWorkspace{}, trial),
                  static_cast<double>(M) * N0);
}

HopSinrEstimates estimate_hop_sinrs(const RelaySplit &split, const LinkBudget &budget, FadingKind fading,
                                    const McConfig &cfg, SiSampling sampling)
{
    budget.validate();
    split.validate(budget.P_T);
    cfg.validate();

    auto sub = [&](std::uint64_t index) {
        McConfig c = cfg;
        c.stream = cfg.stream * 8 + index;
        return c;
    };

    const auto source_gain = estimate_array_gain(split.M, budget.omega_S, split.b, fading, sub(1));
    const auto interference = estimate_si_power(split.M, split.N, budget.eta, split.P_R, split.b, sub(3), sampling);
    const auto destination_gain = estimate_array_gain(split.N, budget.omega_D, split.b, fading, sub(4));

    HopSinrEstimates out;

    // First hop: ratio of independent means, delta-method standard error. The noise term
    // M N0 is exact (checked separately by estimate_noise_power).
    const double signal = split.P_S * source_gain.mean;
    const double disturbance = static_cast<double>(split.M) * budget.N0 + interference.mean;
    McEstimate &first = out.first_hop;
    first.mean = signal / disturbance;
    const double rel_signal = source_gain.mean > 0.0 ? source_gain.std_error / source_gain.mean : 0.0;
    const double rel_disturbance = interference.std_error / disturbance;
    first.std_error = std::abs(first.mean) * std::hypot(rel_signal, rel_disturbance);
    first.trials = cfg.trials;
    first.analytic_reference = first_hop_sinr(split, budget, fading);
    first.z_score = z_score(first.mean, first.std_error, first.analytic_reference);

    McEstimate &second = out.second_hop;
    const double scale = split.P_R / (static_cast<double>(split.N) * budget.N0);
    second.mean = scale * destination_gain.mean;
    second.std_error = scale * destination_gain.std_error;
    second.trials = cfg.trials;
    second.analytic_reference = second_hop_sinr(split, budget, fading);
    second.z_score = z_score(second.mean, second.std_error, second.analytic_reference);
    return out;
}

} // namespace fdrelay
