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

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

namespace
{

enum ExitCode : int
{
    exit_ok = 0,
    exit_other = 1,
    exit_config = 2,
    exit_validation = 3,
    exit_io = 4,
};

struct CommonOptions
{
    std::optional<std::string> config_path;
    std::optional<std::string> out_path;
    std::optional<std::uint64_t> seed;
    fdrelay::Settings overrides;
};

void add_common_options(CLI::App *cmd, CommonOptions &opts)
{
    cmd->add_option("--config", opts.config_path, "flat key = value configuration file");
    cmd->add_option("--out", opts.out_path, "output path (stdout when omitted)");
    cmd->add_option("--seed", opts.seed, "Monte Carlo seed (same as --mc.seed)");
    for (const auto &key : fdrelay::config_keys())
    {
        cmd->add_option_function<std::string>(
               "--" + key, [&opts, key](const std::string &value) { opts.overrides[key] = value; },
               "override config key " + key)
            ->type_name("VALUE");
    }
}

fdrelay::ExperimentConfig resolve_config(const CommonOptions &opts)
{
    auto overrides = opts.overrides;
    if (opts.seed)
        overrides["mc.seed"] = std::to_string(*opts.seed);
    if (opts.config_path)
        return fdrelay::load_config(*opts.config_path, overrides);
    return fdrelay::config_from_settings(overrides);
}

// Writes through `body` to --out or stdout.
template <typename Body>
void with_output(const CommonOptions &opts, Body body)
{
    if (!opts.out_path)
    {
        body(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(*opts.out_path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw fdrelay::IoError("cannot open '" + *opts.out_path + "' for writing");
    body(out);
    out.flush();
    if (!out)
        throw fdrelay::IoError("write to '" + *opts.out_path + "' failed");
}

int run_sweep_command(const CommonOptions &opts, bool distance)
{
    const auto config = resolve_config(opts);
    const auto spec = distance ? fdrelay::make_distance_sweep(config) : fdrelay::make_k_sweep(config);
    const auto rows = fdrelay::run_sweep(config, spec);
    if (opts.out_path)
        fdrelay::emit_csv(rows, *opts.out_path);
    else
        fdrelay::write_csv(rows, std::cout);
    return exit_ok;
}

int run_validate_command(const CommonOptions &opts)
{
    const auto config = resolve_config(opts);
    const auto report = fdrelay::run_validation(config, config.mc);
    with_output(opts, [&](std::ostream &out) { fdrelay::print_validation(report, out); });
    if (opts.out_path)
        fdrelay::print_validation(report, std::cout);
    return report.passed() ? exit_ok : exit_validation;
}

void print_allocation(std::ostream &out, const std::string &label, const fdrelay::AllocationResult &a)
{
    out << "  " << std::left << std::setw(14) << label << std::right << " M=" << a.M << " N=" << a.N
        << " P_S=" << fdrelay::format_double(a.P_S) << " P_R=" << fdrelay::format_double(a.P_R)
        << " rate=" << fdrelay::format_double(a.rate) << " bottleneck=" << fdrelay::to_string(a.report.bottleneck)
        << (a.capped ? " capped" : "") << '\n';
}

int run_optimize_command(const CommonOptions &opts)
{
    const auto config = resolve_config(opts);
    const std::size_t K = config.operating_K;
    const int b = config.phase.b;
    with_output(opts, [&](std::ostream &out) {
        const auto ff = fdrelay::far_field_check(static_cast<double>(K), config.geometry);
        out << "K=" << K << " b=" << b << " fading=" << fdrelay::to_string(config.fading)
            << " far_field_ok=" << (ff.ok ? "true" : "false") << '\n';
        for (double eta : config.eta_values)
        {
            const auto budget = config.budget(eta);
            out << "eta=" << fdrelay::format_double(eta) << '\n';
            print_allocation(out, "exact", fdrelay::optimize_allocation(K, budget, b, config.fading));
            if (eta > 0.0)
            {
                print_allocation(out, "proposition1", fdrelay::proposition1_allocation(K, budget, b, config.fading));
                const auto validity = fdrelay::proposition1_validity(K, budget);
                out << "  closed-form validity ratios: " << fdrelay::format_double(validity.first_ratio) << ", "
                    << fdrelay::format_double(validity.second_ratio) << '\n';
            }
            out << "  irs rate=" << fdrelay::format_double(fdrelay::irs_rate(K, budget, config.fading))
                << "  hd_relay rate=" << fdrelay::format_double(fdrelay::hd_relay_rate(K, budget, b, config.fading))
                << '\n';
        }
    });
    return exit_ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Rate analysis of full-duplex phase-shifter relays, passive IRS and half-duplex relays"};
    app.require_subcommand(1);

    CommonOptions opts;
    auto *sweep_k = app.add_subcommand("sweep-k", "rates versus the total element count K (CSV)");
    auto *sweep_d = app.add_subcommand("sweep-distance", "rates versus the relay-destination distance (CSV)");
    auto *validate = app.add_subcommand("validate", "Monte Carlo check of the closed forms at point.K");
    auto *optimize = app.add_subcommand("optimize", "allocation report at point.K");
    for (auto *cmd : {sweep_k, sweep_d, validate, optimize})
        add_common_options(cmd, opts);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::Success &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return exit_config;
    }

    try
    {
        if (sweep_k->parsed())
            return run_sweep_command(opts, false);
        if (sweep_d->parsed())
            return run_sweep_command(opts, true);
        if (validate->parsed())
            return run_validate_command(opts);
        return run_optimize_command(opts);
    }
    catch (const fdrelay::ConfigError &e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const fdrelay::IoError &e)
    {
        std::cerr << "i/o error: " << e.what() << '\n';
        return exit_io;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_other;
    }
}
