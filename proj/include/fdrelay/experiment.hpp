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

#include "fdrelay/allocation.hpp"
#include "fdrelay/channel_models.hpp"
#include "fdrelay/monte_carlo.hpp"
#include "fdrelay/rate_analysis.hpp"

#include <filesystem>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fdrelay
{

/// Invalid configuration: names the offending key and the constraint it violates.
class ConfigError : public std::runtime_error
{
  public:
    ConfigError(std::string key, const std::string &message)
        : std::runtime_error(key + ": " + message), key_(std::move(key))
    {
    }
    const std::string &key() const { return key_; }

  private:
    std::string key_;
};

/// File-system failure with the path in the message.
class IoError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

enum class SystemId
{
    fd_relay,
    irs,
    hd_relay
};

std::string_view to_string(SystemId system);

enum class AllocationChoice
{
    proposition1,
    exact
};

std::string_view to_string(AllocationChoice choice);

enum class SweepVariable
{
    K,
    d_D
};

std::string_view to_string(SweepVariable variable);

struct SweepSpec
{
    SweepVariable variable = SweepVariable::K;
    std::vector<double> points;
    std::vector<SystemId> systems{SystemId::fd_relay, SystemId::irs, SystemId::hd_relay};
    FadingKind fading = FadingKind::los;
    std::vector<double> eta_values{1e-5, 1e-6};
    AllocationChoice allocation = AllocationChoice::exact;
    /// Element counts evaluated at every distance point of a d_D sweep.
    std::vector<std::size_t> element_counts{1000, 1000000};

    void validate() const;
};

struct ExperimentConfig
{
    SystemGeometry geometry;
    double P_T = 1.0;
    double N0 = 1e-12;
    PhaseShifterSpec phase{2};
    std::vector<double> eta_values{1e-5, 1e-6};
    FadingKind fading = FadingKind::los;
    AllocationChoice allocation = AllocationChoice::exact;

    double k_min = 1e2;
    double k_max = 1e8;
    double k_per_decade = 40.0;
    std::vector<double> k_values; // overrides the logarithmic grid when non-empty

    double d_D_min = 1.0;
    double d_D_max = 100.0;
    std::size_t d_D_points = 100;
    std::vector<double> d_D_values; // overrides the linear grid when non-empty
    std::vector<std::size_t> distance_k_values{1000, 1000000};

    std::vector<SystemId> systems{SystemId::fd_relay, SystemId::irs, SystemId::hd_relay};

    std::size_t operating_K = 1000; // point used by `validate` and `optimize`
    McConfig mc;

    /// Budget at the configured geometry (Omega_S, Omega_D from far_field_gain).
    LinkBudget budget(double eta) const;
};

/// Ordered key -> raw value pairs of a flat `key = value` document.
using Settings = std::map<std::string, std::string>;

/// Every accepted key, in documentation order.
const std::vector<std::string> &config_keys();

/// Parses `key = value` lines; '#' starts a comment; blank lines are ignored.
/// Unknown or duplicate keys are rejected.
Settings parse_settings(std::string_view text);

/// Builds and validates a configuration from settings; missing keys take the defaults.
ExperimentConfig config_from_settings(const Settings &settings);

/// Reads a configuration file, applies `overrides` on top, and validates the result.
ExperimentConfig load_config(const std::filesystem::path &path, const Settings &overrides = {});

/// Logarithmic grid with `per_decade` points per decade between lo and hi, rounded to
/// integers and deduplicated.
std::vector<double> log_k_grid(double lo, double hi, double per_decade);

/// Linearly spaced grid including both end points.
std::vector<double> linear_grid(double lo, double hi, std::size_t points);

SweepSpec make_k_sweep(const ExperimentConfig &config);
SweepSpec make_distance_sweep(const ExperimentConfig &config);

struct ResultRow
{
    SweepVariable variable = SweepVariable::K;
    double sweep_value = 0.0;
    SystemId system = SystemId::fd_relay;
    double eta = 0.0;
    FadingKind fading = FadingKind::los;
    double rate = 0.0;
    std::size_t M = 0; // for irs and hd_relay: the element count K
    std::size_t N = 0; // for irs and hd_relay: 0
    double P_S = 0.0;
    double P_R = 0.0;
    bool far_field_ok = true;
    bool capped = false;
};

/// Evaluates every (point, system, eta) combination. Distance sweeps additionally iterate
/// spec.element_counts at each point. Row order is deterministic.
std::vector<ResultRow> run_sweep(const ExperimentConfig &config, const SweepSpec &spec);

/// Allocation used for the relay at K under the selected method.
AllocationResult relay_allocation(std::size_t K, const LinkBudget &budget, int b, FadingKind fading,
                                  AllocationChoice choice);

inline constexpr std::string_view csv_header =
    "sweep_var,sweep_value,system,eta,fading,rate_bps_hz,M,N,P_S_w,P_R_w,far_field_ok,capped";

/// Shortest decimal text that round-trips the double exactly.
std::string format_double(double value);

void write_csv(const std::vector<ResultRow> &rows, std::ostream &out);

/// Writes the CSV file; throws IoError (with the path) on failure, std::invalid_argument on no rows.
void emit_csv(const std::vector<ResultRow> &rows, const std::filesystem::path &path);

struct ValidationCheck
{
    std::string name;
    McEstimate estimate;
    bool passed = false;
};

struct ValidationReport
{
    std::vector<ValidationCheck> checks;
    double z_threshold = 4.0;

    bool passed() const;
};

/// Runs every Monte Carlo oracle at the configured operating point (K = operating_K, the
/// configured allocation, each eta) and compares with the closed forms at |z| <= 4.
ValidationReport run_validation(const ExperimentConfig &config, const McConfig &cfg);

void print_validation(const ValidationReport &report, std::ostream &out);

} // namespace fdrelay
