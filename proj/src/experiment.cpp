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

#include "fdrelay/experiment.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace fdrelay
{

namespace
{

// Rows of one system at one (geometry, K, eta) point.
ResultRow evaluate_system(const ExperimentConfig &config, const SweepSpec &spec, const SystemGeometry &geometry,
                          std::size_t K, double eta, SystemId system)
{
    const LinkBudget budget = link_budget_from_geometry(geometry, config.P_T, config.N0, eta);
    ResultRow row;
    row.variable = spec.variable;
    row.system = system;
    row.eta = eta;
    row.fading = spec.fading;
    row.far_field_ok = far_field_check(static_cast<double>(K), geometry).ok;

    switch (system)
    {
    case SystemId::fd_relay: {
        const auto alloc = relay_allocation(K, budget, config.phase.b, spec.fading, spec.allocation);
        row.rate = alloc.rate;
        row.M = alloc.M;
        row.N = alloc.N;
        row.P_S = alloc.P_S;
        row.P_R = alloc.P_R;
        row.capped = alloc.capped;
        break;
    }
    case SystemId::irs:
        row.rate = irs_rate(K, budget, spec.fading);
        row.M = K;
        row.P_S = config.P_T;
        break;
    case SystemId::hd_relay:
        row.rate = hd_relay_rate(K, budget, config.phase.b, spec.fading);
        row.M = K;
        row.P_S = config.P_T;
        row.P_R = config.P_T;
        break;
    }
    return row;
}

std::string point_context(const SweepSpec &spec, double value, std::size_t K)
{
    std::ostringstream os;
    os << "sweep point " << to_string(spec.variable) << "=" << format_double(value);
    if (spec.variable == SweepVariable::d_D)
        os << " (K=" << K << ")";
    return os.str();
}

} // namespace

AllocationResult relay_allocation(std::size_t K, const LinkBudget &budget, int b, FadingKind fading,
                                  AllocationChoice choice)
{
    if (choice == AllocationChoice::proposition1)
        return proposition1_allocation(K, budget, b, fading);
    return optimize_allocation(K, budget, b, fading);
}

std::vector<ResultRow> run_sweep(const ExperimentConfig &config, const SweepSpec &spec)
{
    spec.validate();
    std::vector<ResultRow> rows;

    auto emit_point = [&](double value, std::size_t K, const SystemGeometry &geometry) {
        try
        {
            for (SystemId system : spec.systems)
                for (double eta : spec.eta_values)
                {
                    auto row = evaluate_system(config, spec, geometry, K, eta, system);
                    row.sweep_value = value;
                    rows.push_back(row);
                }
        }
        catch (const std::exception &e)
        {
            throw std::runtime_error(point_context(spec, value, K) + ": " + e.what());
        }
    };

    for (double value : spec.points)
    {
        if (spec.variable == SweepVariable::K)
        {
            emit_point(value, static_cast<std::size_t>(value), config.geometry);
        }
        else
        {
            SystemGeometry geometry = config.geometry;
            geometry.d_D = value;
            for (std::size_t K : spec.element_counts)
                emit_point(value, K, geometry);
        }
    }
    return rows;
}

std::string format_double(double value)
{
    std::array<char, 64> buffer{};
    auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    if (ec != std::errc())
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buffer.data(), ptr);
}

void write_csv(const std::vector<ResultRow> &rows, std::ostream &out)
{
    out << csv_header << '\n';
    for (const auto &r : rows)
    {
        out << to_string(r.variable) << ',' << format_double(r.sweep_value) << ',' << to_string(r.system) << ','
            << format_double(r.eta) << ',' << to_string(r.fading) << ',' << format_double(r.rate) << ',' << r.M
            << ',' << r.N << ',' << format_double(r.P_S) << ',' << format_double(r.P_R) << ','
            << (r.far_field_ok ? "true" : "false") << ',' << (r.capped ? "true" : "false") << '\n';
    }
}

void emit_csv(const std::vector<ResultRow> &rows, const std::filesystem::path &path)
{
    if (rows.empty())
        throw std::invalid_argument("emit_csv: no rows to write");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open '" + path.string() + "' for writing");
    write_csv(rows, out);
    out.flush();
    if (!out)
        throw IoError("write to '" + path.string() + "' failed");
}

bool ValidationReport::passed() const
{
    for (const auto &c : checks)
        if (!c.passed)
            return false;
    return !checks.empty();
}

ValidationReport run_validation(const ExperimentConfig &config, const McConfig &cfg)
{
    cfg.validate();
    ValidationReport report;
    const int b = config.phase.b;
    const std::size_t K = config.operating_K;
    std::uint64_t stream = cfg.stream;

    auto next = [&]() {
        McConfig c = cfg;
        c.stream = stream++;
        return c;
    };
    auto add = [&](std::string name, const McEstimate &estimate) {
        const bool ok = std::isfinite(estimate.z_score) && std::abs(estimate.z_score) <= report.z_threshold;
        report.checks.push_back({std::move(name), estimate, ok});
    };

    const LinkBudget base = config.budget(config.eta_values.front());

    // The operating point's receive count M is taken from the first eta's allocation.
    auto allocation_for = [&](const LinkBudget &budget, FadingKind fading) {
        const auto choice = budget.eta > 0.0 ? config.allocation : AllocationChoice::exact;
        return relay_allocation(K, budget, b, fading, choice);
    };
    const auto nominal = allocation_for(base, FadingKind::los);
    const std::size_t M = nominal.M;

    add("quantization_efficiency b=" + std::to_string(b), estimate_quantization_efficiency(b, next()));
    add("array_gain los M=" + std::to_string(M),
        estimate_array_gain(M, base.omega_S, b, FadingKind::los, next()));
    add("array_gain rayleigh M=" + std::to_string(M),
        estimate_array_gain(M, base.omega_S, b, FadingKind::rayleigh, next()));
    add("noise_power M=" + std::to_string(M), estimate_noise_power(M, base.N0, next(), b));

    for (double eta : config.eta_values)
    {
        const LinkBudget budget = config.budget(eta);
        const std::string tag = " eta=" + format_double(eta);
        add("si_power M=" + std::to_string(M) + " N=" + std::to_string(nominal.N) + tag,
            estimate_si_power(M, nominal.N, eta, nominal.P_R, b, next(), SiSampling::automatic));
        for (FadingKind fading : {FadingKind::los, FadingKind::rayleigh})
        {
            const auto alloc = allocation_for(budget, fading);
            const RelaySplit split{alloc.M, alloc.N, alloc.P_S, alloc.P_R, b};
            const auto hops = estimate_hop_sinrs(split, budget, fading, next());
            const std::string suffix = std::string(" ") + std::string(to_string(fading)) + tag;
            add("first_hop_sinr" + suffix, hops.first_hop);
            add("second_hop_sinr" + suffix, hops.second_hop);
        }
    }
    return report;
}

void print_validation(const ValidationReport &report, std::ostream &out)
{
    const auto flags = out.flags();
    for (const auto &c : report.checks)
    {
        out << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(44) << c.name << std::right
            << " mean=" << std::setprecision(8) << c.estimate.mean << " ref=" << c.estimate.analytic_reference
            << " se=" << std::setprecision(3) << c.estimate.std_error << " z=" << std::fixed
            << std::setprecision(2) << c.estimate.z_score << '\n';
        out.flags(flags);
    }
    out << (report.passed() ? "validation passed" : "validation FAILED") << " (" << report.checks.size()
        << " checks, |z| <= " << report.z_threshold << ")\n";
    out.flags(flags);
}

} // namespace fdrelay
