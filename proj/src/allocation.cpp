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

#include "fdrelay/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fdrelay
{

namespace
{
void require(bool condition, const std::string &what)
{
    if (!condition)
        throw std::invalid_argument(what);
}

constexpr std::size_t exhaustive_window = 4096;

struct SplitScorer
{
    const LinkBudget &budget;
    std::size_t K;
    double q;

    // Rate of the balanced allocation at transmit count N (M = K - N).
    double operator()(std::size_t N) const
    {
        const double M = static_cast<double>(K - N);
        const double n = static_cast<double>(N);
        const HopGains gains = exact_hop_gains(M, n, budget, q);
        const double P_R = balanced_relay_power(gains, M, budget);
        const double P_S = budget.P_T - P_R;
        const double first = P_S * gains.source / (budget.N0 + budget.eta / M * P_R);
        const double second = P_R * gains.destination / budget.N0;
        return std::log2(1.0 + std::min(first, second));
    }
};
} // namespace

std::string_view to_string(AllocationMethod method)
{
    switch (method)
    {
    case AllocationMethod::proposition1:
        return "proposition1";
    case AllocationMethod::exact_numeric:
        return "exact_numeric";
    default:
        return "balanced_given_split";
    }
}

HopGains exact_hop_gains(double M, double N, const LinkBudget &budget, double q)
{
    return {budget.omega_S * array_gain_factor(M, q), budget.omega_D * array_gain_factor(N, q)};
}

HopGains large_array_hop_gains(double M, double N, const LinkBudget &budget, double q)
{
    return {budget.omega_S * M * q, budget.omega_D * N * q};
}

double stable_positive_root(double a, double b, double c)
{
    require(a >= 0.0 && b > 0.0 && c >= 0.0, "stable_positive_root: needs a >= 0, b > 0, c >= 0");
    return 2.0 * c / (b + std::sqrt(b * b + 4.0 * a * c));
}

double balanced_relay_power(const HopGains &gains, double receive_antennas, const LinkBudget &budget)
{
    require(gains.source > 0.0 && gains.destination > 0.0, "balanced_relay_power: hop gains must be > 0");
    require(receive_antennas > 0.0, "balanced_relay_power: receive antenna count must be > 0");
    const double a = gains.destination * budget.eta / receive_antennas;
    const double b = (gains.source + gains.destination) * budget.N0;
    const double c = gains.source * budget.N0 * budget.P_T;
    const double root = stable_positive_root(a, b, c);
    // f(0) = -c < 0 and f(P_T) > 0 for positive parameters, so the root is interior.
    if (!(root > 0.0 && root < budget.P_T))
        throw std::logic_error("balanced_relay_power: no interior root");
    return root;
}

double balanced_power_for_split(std::size_t M, std::size_t N, const LinkBudget &budget, int b, FadingKind fading)
{
    require(M >= 1 && N >= 1, "balanced_power_for_split: M and N must be >= 1");
    budget.validate();
    const double q = combining_weight(b, fading);
    const double m = static_cast<double>(M);
    return balanced_relay_power(exact_hop_gains(m, static_cast<double>(N), budget, q), m, budget);
}

ClampedPower clamp_relay_power(double P_R, double P_T)
{
    constexpr double epsilon = 1e-9;
    if (P_R >= P_T)
        return {P_T * (1.0 - epsilon), true};
    return {std::max(P_R, 0.0), false};
}

double proposition1_relay_power(double K, const LinkBudget &budget)
{
    require(K >= 3.0, "proposition1: K must be >= 3");
    budget.validate();
    require(budget.eta > 0.0, "proposition1: eta must be > 0 (use balanced_power_for_split for eta = 0)");
    const double alpha = 2.0 * K * budget.N0 * budget.omega_D + 4.0 * K * budget.N0 * budget.omega_S;
    const double discriminant =
        48.0 * budget.P_T * K * budget.N0 * budget.eta * budget.omega_S * budget.omega_D + alpha * alpha;
    // (-alpha + sqrt(D)) / (6 eta Omega_D), rationalised: D - alpha^2 = 48 P_T K N0 eta Omega_S Omega_D.
    return 8.0 * budget.P_T * K * budget.N0 * budget.omega_S / (alpha + std::sqrt(discriminant));
}

AllocationResult proposition1_allocation(std::size_t K, const LinkBudget &budget, int b, FadingKind fading)
{
    require(K >= 3, "proposition1_allocation: K must be >= 3");
    const double unclamped = proposition1_relay_power(static_cast<double>(K), budget);

    const auto rounded = static_cast<std::size_t>(std::llround(2.0 * static_cast<double>(K) / 3.0));
    AllocationResult result;
    result.M = std::clamp<std::size_t>(rounded, 1, K - 1);
    result.N = K - result.M;
    const auto clamped = clamp_relay_power(unclamped, budget.P_T);
    result.P_R = clamped.P_R;
    result.P_S = budget.P_T - result.P_R;
    result.capped = clamped.capped;
    result.method = AllocationMethod::proposition1;
    result.report = fd_relay_rate(RelaySplit{result.M, result.N, result.P_S, result.P_R, b}, budget, fading);
    result.rate = result.report.rate;
    return result;
}

Proposition1Validity proposition1_validity(std::size_t K, const LinkBudget &budget)
{
    require(K >= 3, "proposition1_validity: K must be >= 3");
    budget.validate();
    require(budget.eta > 0.0, "proposition1_validity: eta must be > 0");
    const double k = static_cast<double>(K);
    const double M = 2.0 * k / 3.0;
    const double N = k / 3.0;
    const double a = budget.omega_S / budget.omega_D;
    const double alpha = budget.eta / budget.N0 * N;
    const double b1 = a * M * M + N * N + 2.0 * a * M * N;
    const double c1 = 2.0 * a * M * N * budget.P_T;
    const double b2 = a * M * M + M * N;
    const double c2 = a * M * M * budget.P_T;
    return {b1 * b1 / (4.0 * alpha * c1), b2 * b2 / (4.0 * alpha * c2)};
}

AllocationResult balanced_allocation(std::size_t M, std::size_t N, const LinkBudget &budget, int b,
                                     FadingKind fading)
{
    AllocationResult result;
    result.M = M;
    result.N = N;
    result.P_R = balanced_power_for_split(M, N, budget, b, fading);
    result.P_S = budget.P_T - result.P_R;
    result.method = AllocationMethod::balanced_given_split;
    result.report = fd_relay_rate(RelaySplit{M, N, result.P_S, result.P_R, b}, budget, fading);
    result.rate = result.report.rate;
    return result;
}

std::vector<std::size_t> split_search_grid(std::size_t K, std::size_t max_points)
{
    require(K >= 2, "split_search_grid: K must be >= 2");
    require(max_points >= 2, "split_search_grid: need at least two grid points");
    const std::size_t upper = K - 1;
    std::vector<std::size_t> grid;
    if (upper <= max_points)
    {
        grid.resize(upper);
        for (std::size_t n = 0; n < upper; ++n)
            grid[n] = n + 1;
        return grid;
    }
    grid.reserve(max_points);
    const double log_upper = std::log(static_cast<double>(upper));
    for (std::size_t i = 0; i < max_points; ++i)
    {
        const double t = static_cast<double>(i) / static_cast<double>(max_points - 1);
        auto n = static_cast<std::size_t>(std::llround(std::exp(t * log_upper)));
        grid.push_back(std::clamp<std::size_t>(n, 1, upper));
    }
    grid.back() = upper;
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

AllocationResult optimize_allocation(std::size_t K, const LinkBudget &budget, int b, FadingKind fading)
{
    require(K >= 2, "optimize_allocation: K must be >= 2");
    budget.validate();
    const SplitScorer score{budget, K, combining_weight(b, fading)};

    const auto grid = split_search_grid(K);
    std::size_t best_index = 0;
    double best_rate = -1.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        const double r = score(grid[i]);
        if (r > best_rate)
        {
            best_rate = r;
            best_index = i;
        }
    }

    std::size_t lo = grid[best_index >= 2 ? best_index - 2 : 0];
    std::size_t hi = grid[std::min(best_index + 2, grid.size() - 1)];

    // Wide windows (very large K): the balanced rate is unimodal in N, so shrink by
    // integer ternary search before the exhaustive pass.
    while (hi - lo > exhaustive_window)
    {
        const std::size_t third = (hi - lo) / 3;
        const std::size_t m1 = lo + third;
        const std::size_t m2 = hi - third;
        if (score(m1) < score(m2))
            lo = m1 + 1;
        else
            hi = m2;
    }

    std::size_t best_N = grid[best_index];
    if (best_N < lo || best_N > hi)
    {
        best_N = lo;
        best_rate = score(lo);
    }
    for (std::size_t n = lo; n <= hi; ++n)
    {
        const double r = score(n);
        if (r > best_rate || (r == best_rate && n < best_N))
        {
            best_rate = r;
            best_N = n;
        }
    }

    auto result = balanced_allocation(K - best_N, best_N, budget, b, fading);
    result.method = AllocationMethod::exact_numeric;
    return result;
}

} // namespace fdrelay
