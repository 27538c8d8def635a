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

#include <cstddef>
#include <string_view>

namespace fdrelay
{

enum class FadingKind
{
    los,
    rayleigh
};

std::string_view to_string(FadingKind fading);

/// Parses "los" or "rayleigh"; throws std::invalid_argument otherwise.
FadingKind parse_fading(std::string_view text);

/// How the residual self-interference power is normalised in the first-hop SINR.
/// per_receive_antenna (eta / M) follows the worst-case self-interference bound and is
/// used everywhere by default; per_transmit_antenna (eta / N) exists only to compare
/// against the alternative normalisation of the Rayleigh expression.
enum class SiNormalisation
{
    per_receive_antenna,
    per_transmit_antenna
};

struct RelaySplit
{
    std::size_t M = 1; // receive antennas
    std::size_t N = 1; // transmit antennas
    double P_S = 0.0;
    double P_R = 0.0;
    int b = 2;

    std::size_t K() const { return M + N; }

    /// Checks counts, non-negative powers and P_S + P_R = P_T (1e-12 relative).
    void validate(double P_T) const;
};

enum class Bottleneck
{
    first,
    second,
    tie
};

std::string_view to_string(Bottleneck bottleneck);

struct RateReport
{
    double sinr_first_hop = 0.0;
    double sinr_second_hop = 0.0;
    double rate_first_hop = 0.0;
    double rate_second_hop = 0.0;
    Bottleneck bottleneck = Bottleneck::tie;
    double rate = 0.0;
};

/// Effective per-antenna combining weight q: Q for LoS, (pi/4) Q for Rayleigh.
double combining_weight(int b, FadingKind fading);

/// Array gain factor 1 + (count - 1) q of a coherent, phase-quantised array.
double array_gain_factor(double count, double q);

/// First-hop (source -> relay) SINR.
double first_hop_sinr(const RelaySplit &split, const LinkBudget &budget, FadingKind fading,
                      SiNormalisation si = SiNormalisation::per_receive_antenna);

/// Second-hop (relay -> destination) SNR.
double second_hop_sinr(const RelaySplit &split, const LinkBudget &budget, FadingKind fading);

/// Decode-and-forward rate of the single-RF-chain full-duplex relay: min of the hop rates.
RateReport fd_relay_rate(const RelaySplit &split, const LinkBudget &budget, FadingKind fading,
                         SiNormalisation si = SiNormalisation::per_receive_antenna);

/// Received SNR of a K-element passive IRS with continuous phases.
double irs_snr(std::size_t K, const LinkBudget &budget, FadingKind fading);

/// log2(1 + irs_snr).
double irs_rate(std::size_t K, const LinkBudget &budget, FadingKind fading);

/// Half-duplex relay using all K antennas on both hops and full P_T per slot.
/// For Rayleigh fading the array factor uses the (pi/4) Q combining weight.
double hd_relay_rate(std::size_t K, const LinkBudget &budget, int b, FadingKind fading = FadingKind::los);

enum class PenaltySystem
{
    relay_hop,
    irs
};

/// Ratio of the Rayleigh SINR to the LoS SINR at identical power settings.
double snr_fading_penalty(PenaltySystem system, std::size_t count, const LinkBudget &budget, int b);

} // namespace fdrelay
