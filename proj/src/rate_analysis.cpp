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

#include "fdrelay/rate_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
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

// Rate evaluators accept P_T = 0 (zero-power limits) but otherwise share LinkBudget's rules.
void check_budget(const LinkBudget &budget)
{
    require(std::isfinite(budget.omega_S) && budget.omega_S > 0.0 && budget.omega_S < 1.0,
            "omega_S must lie in (0, 1)");
    require(std::isfinite(budget.omega_D) && budget.omega_D > 0.0 && budget.omega_D < 1.0,
            "omega_D must lie in (0, 1)");
    require(std::isfinite(budget.N0) && budget.N0 > 0.0, "N0 must be > 0");
    require(std::isfinite(budget.P_T) && budget.P_T >= 0.0, "P_T must be >= 0");
    require(std::isfinite(budget.eta) && budget.eta >= 0.0 && budget.eta <= 1.0, "eta must lie in [0, 1]");
}

double capacity(double sinr)
{
    return std::log2(1.0 + sinr);
}
} // namespace

std::string_view to_string(FadingKind fading)
{
    return fading == FadingKind::los ? "los" : "rayleigh";
}

FadingKind parse_fading(std::string_view text)
{
    if (text == "los" || text == "LoS" || text == "LOS")
        return FadingKind::los;
    if (text == "rayleigh" || text == "Rayleigh")
        return FadingKind::rayleigh;
    throw std::invalid_argument("fading must be 'los' or 'rayleigh', got '" + std::string(text) + "'");
}

std::string_view to_string(Bottleneck bottleneck)
{
    switch (bottleneck)
    {
    case Bottleneck::first:
        return "first";
    case Bottleneck::second:
        return "second";
    default:
        return "tie";
    }
}

void RelaySplit::validate(double P_T) const
{
    require(M >= 1, "RelaySplit: M must be >= 1");
    require(N >= 1, "RelaySplit: N must be >= 1");
    require(b >= 1, "RelaySplit: b must be >= 1");
    require(std::isfinite(P_S) && P_S >= 0.0, "RelaySplit: P_S must be finite and >= 0");
    require(std::isfinite(P_R) && P_R >= 0.0, "RelaySplit: P_R must be finite and >= 0");
    require(std::abs(P_S + P_R - P_T) <= 1e-12 * std::max(P_T, 1e-300) || (P_T == 0.0 && P_S + P_R == 0.0),
            "RelaySplit: P_S + P_R must equal P_T");
}

double combining_weight(int b, FadingKind fading)
{
    const double Q = quantization_factor(PhaseShifterSpec{b});
    return fading == FadingKind::los ? Q : (std::numbers::pi / 4.0) * Q;
}

double array_gain_factor(double count, double q)
{
    return 1.0 + (count - 1.0) * q;
}

double first_hop_sinr(const RelaySplit &split, const LinkBudget &budget, FadingKind fading, SiNormalisation si)
{
    check_budget(budget);
    split.validate(budget.P_T);
    const double q = combining_weight(split.b, fading);
    const double M = static_cast<double>(split.M);
    const double divisor = si == SiNormalisation::per_receive_antenna ? M : static_cast<double>(split.N);
    const double interference = budget.eta / divisor * split.P_R;
    return split.P_S * budget.omega_S * array_gain_factor(M, q) / (budget.N0 + interference);
}

double second_hop_sinr(const RelaySplit &split, const LinkBudget &budget, FadingKind fading)
{
    check_budget(budget);
    split.validate(budget.P_T);
    const double q = combining_weight(split.b, fading);
    return split.P_R * budget.omega_D * array_gain_factor(static_cast<double>(split.N), q) / budget.N0;
}

RateReport fd_relay_rate(const RelaySplit &split, const LinkBudget &budget, FadingKind fading, SiNormalisation si)
{
    RateReport report;
    report.sinr_first_hop = first_hop_sinr(split, budget, fading, si);
    report.sinr_second_hop = second_hop_sinr(split, budget, fading);
    report.rate_first_hop = capacity(report.sinr_first_hop);
    report.rate_second_hop = capacity(report.sinr_second_hop);
    if (report.rate_first_hop < report.rate_second_hop)
        report.bottleneck = Bottleneck::first;
    else if (report.rate_second_hop < report.rate_first_hop)
        report.bottleneck = Bottleneck::second;
    else
        report.bottleneck = Bottleneck::tie;
    report.rate = std::min(report.rate_first_hop, report.rate_second_hop);
    return report;
}

double irs_snr(std::size_t K, const LinkBudget &budget, FadingKind fading)
{
    require(K >= 1, "irs_rate: K must be >= 1");
    check_budget(budget);
    const double k = static_cast<double>(K);
    const double per_path = budget.P_T * budget.omega_S * budget.omega_D / budget.N0;
    if (fading == FadingKind::los)
        return k * k * per_path;
    constexpr double quarter_pi = std::numbers::pi / 4.0;
    return per_path * k * array_gain_factor(k, quarter_pi * quarter_pi);
}

double irs_rate(std::size_t K, const LinkBudget &budget, FadingKind fading)
{
    return capacity(irs_snr(K, budget, fading));
}

double hd_relay_rate(std::size_t K, const LinkBudget &budget, int b, FadingKind fading)
{
    require(K >= 1, "hd_relay_rate: K must be >= 1");
    check_budget(budget);
    const double gain = array_gain_factor(static_cast<double>(K), combining_weight(b, fading));
    const double source_hop = capacity(budget.P_T * budget.omega_S * gain / budget.N0);
    const double destination_hop = capacity(budget.P_T * budget.omega_D * gain / budget.N0);
    if (source_hop <= 0.0 || destination_hop <= 0.0)
        return 0.0;
    // Time-shared hops: the slot lengths that equalise the delivered bits.
    return source_hop * destination_hop / (source_hop + destination_hop);
}

double snr_fading_penalty(PenaltySystem system, std::size_t count, const LinkBudget &budget, int b)
{
    require(count >= 2, "snr_fading_penalty: element count must be >= 2");
    if (system == PenaltySystem::irs)
        return irs_snr(count, budget, FadingKind::rayleigh) / irs_snr(count, budget, FadingKind::los);

    // Equal power split; the interference term is common to both fading kinds.
    RelaySplit split{count, count, budget.P_T / 2.0, budget.P_T / 2.0, b};
    return first_hop_sinr(split, budget, FadingKind::rayleigh) / first_hop_sinr(split, budget, FadingKind::los);
}

} // namespace fdrelay
