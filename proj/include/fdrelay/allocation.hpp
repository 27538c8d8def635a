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
#include <string_view>
#include <vector>

namespace fdrelay
{

enum class AllocationMethod
{
    proposition1,          // closed-form M = 2K/3, N = K/3 with the large-array power split
    exact_numeric,         // integer split search with the exact balanced power
    balanced_given_split   // caller-fixed split, exact balanced power
};

std::string_view to_string(AllocationMethod method);

struct AllocationResult
{
    std::size_t M = 0;
    std::size_t N = 0;
    double P_S = 0.0;
    double P_R = 0.0;
    double rate = 0.0;
    AllocationMethod method = AllocationMethod::exact_numeric;
    bool capped = false;
    RateReport report;
};

/// Effective array gains a1 = Omega_S * g(M), a2 = Omega_D * g(N) of the two hops.
struct HopGains
{
    double source = 0.0;
    double destination = 0.0;
};

/// Exact gains: g(X) = 1 + (X - 1) q.
HopGains exact_hop_gains(double M, double N, const LinkBudget &budget, double q);

/// Large-array gains: g(X) = X q, the approximation behind the closed-form split.
HopGains large_array_hop_gains(double M, double N, const LinkBudget &budget, double q);

/// Positive root of a x^2 + b x - c = 0 (a >= 0, b > 0, c >= 0), computed as
/// 2c / (b + sqrt(b^2 + 4ac)) so that a tiny leading coefficient loses no precision.
double stable_positive_root(double a, double b, double c);

/// Relay power that equalises the two hop SINRs for the given gains:
/// (a2 eta / M) P^2 + (a1 + a2) N0 P - a1 N0 P_T = 0.
double balanced_relay_power(const HopGains &gains, double receive_antennas, const LinkBudget &budget);

/// Balanced relay power for an integer split with exact array gains.
double balanced_power_for_split(std::size_t M, std::size_t N, const LinkBudget &budget, int b, FadingKind fading);

/// Relay power clamp: values at or above P_T become P_T (1 - 1e-9) so the source keeps power.
struct ClampedPower
{
    double P_R;
    bool capped;
};
ClampedPower clamp_relay_power(double P_R, double P_T);

/// Closed-form relay power of the 2K/3 : K/3 split (requires eta > 0).
double proposition1_relay_power(double K, const LinkBudget &budget);

/// Closed-form allocation: M = round(2K/3) clamped to [1, K-1], N = K - M, closed-form P_R.
/// Requires K >= 3 and eta > 0.
AllocationResult proposition1_allocation(std::size_t K, const LinkBudget &budget, int b,
                                         FadingKind fading = FadingKind::los);

/// Ratios b^2 / (4 alpha c) of the two quadratics whose smallness justifies the closed form.
struct Proposition1Validity
{
    double first_ratio = 0.0;
    double second_ratio = 0.0;
};
Proposition1Validity proposition1_validity(std::size_t K, const LinkBudget &budget);

/// Balanced allocation for a fixed integer split.
AllocationResult balanced_allocation(std::size_t M, std::size_t N, const LinkBudget &budget, int b,
                                     FadingKind fading);

/// Rate-maximising integer split with the balanced relay power at each candidate.
/// Coarse logarithmic grid of min(K-1, 512) transmit-antenna counts, then an exhaustive
/// integer window of +-2 grid steps around the best coarse point (windows wider than 4096 are
/// first narrowed by ternary search). Ties go to the lowest N.
AllocationResult optimize_allocation(std::size_t K, const LinkBudget &budget, int b, FadingKind fading);

/// Candidate transmit-antenna counts of the coarse grid (sorted, unique, within [1, K-1]).
std::vector<std::size_t> split_search_grid(std::size_t K, std::size_t max_points = 512);

} // namespace fdrelay
