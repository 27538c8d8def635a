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

// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance [--cli PATH] [criterion ...]
//
// With no criterion numbers every criterion runs. Exit status is 0 only if all selected
// criteria pass.

#include "fdrelay/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>
#include <sys/wait.h>
#include <unistd.h>

using namespace fdrelay;

namespace
{

constexpr double pi = std::numbers::pi;
const std::vector<double> reference_etas{1e-5, 1e-6};

struct Outcome
{
    bool pass = true;
    std::string detail;
};

std::string fmt(const char *format, auto... args)
{
    char buffer[512];
    std::snprintf(buffer, sizeof buffer, format, args...);
    return buffer;
}

// Collects sub-check results; the criterion passes only if every sub-check does.
struct Checker
{
    Outcome outcome;
    std::vector<std::string> failures;
    std::string summary;

    void expect(bool ok, const std::string &what)
    {
        if (!ok)
        {
            outcome.pass = false;
            failures.push_back(what);
        }
    }

    Outcome finish()
    {
        outcome.detail = summary;
        for (const auto &f : failures)
            outcome.detail += (outcome.detail.empty() ? "" : "; ") + std::string("failed: ") + f;
        return outcome;
    }
};

LinkBudget reference_budget(double eta)
{
    return link_budget_from_geometry(SystemGeometry{}, 1.0, 1e-12, eta);
}

McConfig mc(std::size_t trials, std::uint64_t seed)
{
    McConfig c;
    c.trials = trials;
    c.seed = seed;
    return c;
}

std::string describe(const McEstimate &e)
{
    return fmt("mean=%.6g ref=%.6g rel=%.2e z=%.2f", e.mean, e.analytic_reference,
               (e.mean - e.analytic_reference) / e.analytic_reference, e.z_score);
}

Outcome criterion_1()
{
    Checker c;
    const double q1 = quantization_factor({1});
    const double q2 = quantization_factor({2});
    const double q20 = quantization_factor({20});
    c.expect(std::abs(q2 - 8.0 / (pi * pi)) <= 1e-12, fmt("Q(2)=%.17g", q2));
    c.expect(std::abs(q1 - 4.0 / (pi * pi)) <= 1e-12, fmt("Q(1)=%.17g", q1));
    c.expect(std::abs(q20 - 1.0) <= 1e-9, fmt("Q(20)=%.17g", q20));
    c.summary = fmt("Q(1)=%.12f Q(2)=%.12f 1-Q(20)=%.2e", q1, q2, 1.0 - q20);
    return c.finish();
}

Outcome array_gain_criterion(FadingKind fading, double q)
{
    Checker c;
    const double reference = 64.0 * (1.0 + 63.0 * q);
    const auto e = estimate_array_gain(64, 1.0, 2, fading, mc(100000, 2));
    c.expect(std::abs(e.analytic_reference - reference) <= 1e-9 * reference, "reference mismatch");
    c.expect(std::abs(e.mean - reference) <= 0.02 * reference, "mean outside 2%");
    c.expect(std::abs(e.z_score) <= 4.0, "|z| > 4");
    c.summary = describe(e);
    return c.finish();
}

Outcome criterion_2()
{
    return array_gain_criterion(FadingKind::los, 8.0 / (pi * pi));
}

Outcome criterion_3()
{
    Checker c;
    const auto e = estimate_si_power(100, 50, 1e-5, 0.5, 2, mc(100000, 3), SiSampling::full_matrix);
    c.expect(std::abs(e.mean - 5e-6) <= 0.02 * 5e-6, "mean outside 2% of 5e-6");
    c.expect(std::abs(e.z_score) <= 4.0, "|z| > 4");

    // Conservation: received self-interference never exceeds the transmitted power.
    struct Case
    {
        std::size_t M, N;
        double eta;
    };
    double worst = 0.0;
    for (const Case k : {Case{1, 1, 1e-5}, Case{2, 2, 0.5}, Case{10, 40, 0.1}, Case{100, 50, 1e-5},
                         Case{64, 8, 1e-3}, Case{200, 100, 1e-6}})
    {
        const double P_R = 0.5;
        const auto s = estimate_si_power(k.M, k.N, k.eta, P_R, 2, mc(2000, 30 + k.M), SiSampling::full_matrix);
        worst = std::max(worst, s.mean / P_R);
        c.expect(s.mean <= P_R, fmt("SI > P_R at M=%zu N=%zu eta=%g", k.M, k.N, k.eta));
    }
    c.summary = describe(e) + fmt("; max SI/P_R over conservation grid=%.3g", worst);
    return c.finish();
}

Outcome criterion_4()
{
    return array_gain_criterion(FadingKind::rayleigh, pi / 4.0 * 8.0 / (pi * pi));
}

Outcome criterion_5()
{
    Checker c;
    // 5000 trials keep this within its runtime budget at M = 6667 receive antennas.
    constexpr std::size_t trials = 5000;
    std::string parts;
    std::uint64_t seed = 50;
    for (double eta : reference_etas)
    {
        const auto budget = reference_budget(eta);
        for (auto fading : {FadingKind::los, FadingKind::rayleigh})
        {
            const auto a = proposition1_allocation(10000, budget, 2, fading);
            const RelaySplit split{a.M, a.N, a.P_S, a.P_R, 2};
            const auto hops = estimate_hop_sinrs(split, budget, fading, mc(trials, seed++));
            const std::string tag = fmt("%s eta=%g", std::string(to_string(fading)).c_str(), eta);
            c.expect(std::abs(hops.first_hop.z_score) <= 4.0, "first hop " + tag);
            c.expect(std::abs(hops.second_hop.z_score) <= 4.0, "second hop " + tag);
            c.expect(hops.first_hop.analytic_reference == first_hop_sinr(split, budget, fading), "reference " + tag);
            parts += fmt("%s%s z1=%.2f z2=%.2f", parts.empty() ? "" : ", ", tag.c_str(), hops.first_hop.z_score,
                         hops.second_hop.z_score);
        }
    }
    c.summary = fmt("K=1e4 closed-form split, %zu trials: ", trials) + parts;
    return c.finish();
}

Outcome criterion_6()
{
    Checker c;
    const double Q = quantization_factor({2});
    double worst = 0.0;
    for (double K : {1e3, 1e4, 1e5, 1e6})
        for (double eta : {1e-6, 1e-5})
        {
            const auto b = reference_budget(eta);
            const double alpha = 2.0 * K * b.N0 * b.omega_D + 4.0 * K * b.N0 * b.omega_S;
            const double printed =
                (-alpha + std::sqrt(48.0 * b.P_T * K * b.N0 * eta * b.omega_S * b.omega_D + alpha * alpha)) /
                (6.0 * eta * b.omega_D);
            const double M = 2.0 * K / 3.0;
            const double root = balanced_relay_power(large_array_hop_gains(M, K / 3.0, b, Q), M, b);
            const double rel = std::abs(printed - root) / root;
            const double rel_impl = std::abs(proposition1_relay_power(K, b) - root) / root;
            worst = std::max({worst, rel, rel_impl});
            c.expect(rel <= 1e-10, fmt("K=%g eta=%g rel=%.2e", K, eta, rel));
            c.expect(rel_impl <= 1e-10, fmt("implementation K=%g eta=%g rel=%.2e", K, eta, rel_impl));
        }
    c.summary = fmt("8 grid points, worst relative difference %.2e", worst);
    return c.finish();
}

double brute_force_rate(std::size_t K, const LinkBudget &budget)
{
    auto rate = [&](std::size_t M, std::size_t N, double P_R) {
        return fd_relay_rate({M, N, budget.P_T - P_R, P_R, 2}, budget, FadingKind::los).rate;
    };
    double best = 0.0;
    constexpr int grid = 10000;
    for (std::size_t N = 1; N < K; ++N)
    {
        const std::size_t M = K - N;
        int best_i = 1;
        double best_here = -1.0;
        for (int i = 1; i < grid; ++i)
        {
            const double r = rate(M, N, budget.P_T * i / grid);
            if (r > best_here)
            {
                best_here = r;
                best_i = i;
            }
        }
        // Ternary refinement inside the bracketing grid cells.
        double lo = budget.P_T * (best_i - 1) / grid;
        double hi = budget.P_T * (best_i + 1) / grid;
        for (int it = 0; it < 200; ++it)
        {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (rate(M, N, m1) < rate(M, N, m2))
                lo = m1;
            else
                hi = m2;
        }
        best = std::max({best, best_here, rate(M, N, 0.5 * (lo + hi))});
    }
    return best;
}

Outcome criterion_7()
{
    Checker c;
    const auto budget = reference_budget(1e-5);
    double worst = 0.0;
    for (std::size_t K = 2; K <= 20; ++K)
    {
        const double opt = optimize_allocation(K, budget, 2, FadingKind::los).rate;
        const double oracle = brute_force_rate(K, budget);
        const double rel = std::abs(opt - oracle) / oracle;
        worst = std::max(worst, rel);
        c.expect(rel <= 1e-6, fmt("K=%zu rel=%.2e", K, rel));
    }
    double min_gain = 1e300;
    for (std::size_t K : {1000u, 10000u, 100000u, 1000000u, 10000000u})
        for (double eta : reference_etas)
        {
            const auto b = reference_budget(eta);
            const double opt = optimize_allocation(K, b, 2, FadingKind::los).rate;
            const double closed = proposition1_allocation(K, b, 2, FadingKind::los).rate;
            min_gain = std::min(min_gain, opt - closed);
            c.expect(opt >= closed, fmt("K=%zu eta=%g optimizer below closed form", K, eta));
        }
    c.summary = fmt("K<=20 worst rel diff vs brute force %.2e; min(opt - closed form) over K=1e3..1e7 = %.3g",
                    worst, min_gain);
    return c.finish();
}

Outcome criterion_8()
{
    Checker c;
    const auto grid = log_k_grid(1e2, 1e7, 40);
    double min_margin = 1e300;
    for (double eta : reference_etas)
    {
        const auto budget = reference_budget(eta);
        for (double k : grid)
        {
            const auto K = static_cast<std::size_t>(k);
            const double fd = optimize_allocation(K, budget, 2, FadingKind::los).rate;
            const double irs = irs_rate(K, budget, FadingKind::los);
            min_margin = std::min(min_margin, fd - irs);
            c.expect(fd > irs, fmt("FD <= IRS at K=%g eta=%g", k, eta));
        }
    }
    std::string ratios;
    for (double eta : reference_etas)
    {
        const auto budget = reference_budget(eta);
        const double fd = optimize_allocation(160000, budget, 2, FadingKind::los).rate;
        const double irs = irs_rate(160000, budget, FadingKind::los);
        const double ratio = fd / irs;
        ratios += fmt("%seta=%g FD=%.4f IRS=%.4f ratio=%.4f", ratios.empty() ? "" : ", ", eta, fd, irs, ratio);
        c.expect(ratio >= 1.7 && ratio <= 2.3, fmt("FD/IRS=%.4f at K=1.6e5 eta=%g not in [1.7, 2.3]", ratio, eta));
    }
    c.summary = fmt("min FD-IRS over %zu K points x 2 eta = %.3f; K=1.6e5: ", grid.size(), min_margin) + ratios;
    return c.finish();
}

Outcome criterion_9()
{
    Checker c;
    std::string parts;
    for (double eta : reference_etas)
    {
        const auto budget = reference_budget(eta);
        for (std::size_t K : {10000u, 100000u, 1000000u})
        {
            auto gap = [&](FadingKind f) {
                return optimize_allocation(K, budget, 2, f).rate - irs_rate(K, budget, f);
            };
            const double los = gap(FadingKind::los);
            const double ray = gap(FadingKind::rayleigh);
            c.expect(ray >= los, fmt("K=%zu eta=%g rayleigh gap %.4f < los gap %.4f", K, eta, ray, los));
            parts += fmt("%sK=%zu eta=%g: %.3f vs %.3f", parts.empty() ? "" : ", ", K, eta, ray, los);
        }
    }
    c.summary = "rayleigh gap vs los gap: " + parts;
    return c.finish();
}

Outcome criterion_10()
{
    Checker c;
    const auto budget = reference_budget(1e-5);
    const double relay = snr_fading_penalty(PenaltySystem::relay_hop, 1000000, budget, 2);
    const double irs = snr_fading_penalty(PenaltySystem::irs, 1000000, budget, 2);
    c.expect(std::abs(relay - pi / 4.0) <= 1e-3, fmt("relay ratio %.6f", relay));
    c.expect(std::abs(irs - pi * pi / 16.0) <= 1e-3, fmt("irs ratio %.6f", irs));
    c.summary = fmt("relay hop %.6f (pi/4=%.6f), irs %.6f ((pi/4)^2=%.6f)", relay, pi / 4.0, irs, pi * pi / 16.0);
    return c.finish();
}

Outcome criterion_11()
{
    Checker c;
    ExperimentConfig config;
    config.distance_k_values = {1000, 1000000};
    const auto spec = make_distance_sweep(config);
    const auto rows = run_sweep(config, spec);
    // Rows per (d_D, K): fd x2 eta, irs x2 eta, hd x2 eta.
    double min_margin = 1e300;
    std::size_t points = 0;
    for (std::size_t i = 0; i + 6 <= rows.size(); i += 6)
        for (std::size_t e = 0; e < 2; ++e)
        {
            const auto &fd = rows[i + e];
            const auto &irs = rows[i + 2 + e];
            const auto &hd = rows[i + 4 + e];
            const double margin = fd.rate - std::max(irs.rate, hd.rate);
            min_margin = std::min(min_margin, margin);
            ++points;
            c.expect(margin > 0.0, fmt("d_D=%g K=%zu eta=%g margin %.4f", fd.sweep_value, fd.M + fd.N, fd.eta, margin));
        }
    c.summary = fmt("%zu (d_D, K, eta) points, min FD - max(IRS, HD) = %.4f", points, min_margin);
    return c.finish();
}

std::string read_bytes(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome criterion_12(const std::string &cli)
{
    Checker c;
    if (cli.empty())
    {
        c.expect(false, "no --cli path given");
        return c.finish();
    }
    const auto dir = std::filesystem::temp_directory_path() / ("fdrelay_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    const auto config = dir / "sweep.cfg";
    std::ofstream(config) << "# default K sweep, fixed seed\nmc.seed = 12345\n";
    std::vector<std::string> outputs;
    for (int run = 0; run < 2; ++run)
    {
        const auto out = dir / ("run" + std::to_string(run) + ".csv");
        const std::string command =
            cli + " sweep-k --config " + config.string() + " --seed 12345 --out " + out.string();
        const int status = std::system(command.c_str());
        c.expect(WIFEXITED(status) && WEXITSTATUS(status) == 0, fmt("run %d exit status %d", run, status));
        outputs.push_back(read_bytes(out));
    }
    c.expect(!outputs[0].empty(), "empty CSV");
    c.expect(outputs[0] == outputs[1], "CSV files differ");
    c.summary = fmt("two sweep-k runs, %zu bytes each, identical=%s", outputs[0].size(),
                    outputs[0] == outputs[1] ? "yes" : "no");
    std::filesystem::remove_all(dir);
    return c.finish();
}

} // namespace

int main(int argc, char **argv)
{
    std::string cli;
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i)
    {
        const std::string arg = argv[i];
        if (arg == "--cli" && i + 1 < argc)
            cli = argv[++i];
        else
            selected.push_back(std::atoi(arg.c_str()));
    }
    if (selected.empty())
        for (int i = 1; i <= 12; ++i)
            selected.push_back(i);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"quantization factor", criterion_1},
        {"LoS array-gain oracle", criterion_2},
        {"self-interference oracle", criterion_3},
        {"Rayleigh array-gain oracle", criterion_4},
        {"end-to-end hop SINRs", criterion_5},
        {"closed-form power vs balance quadratic", criterion_6},
        {"optimizer correctness", criterion_7},
        {"K sweep: FD vs IRS", criterion_8},
        {"Rayleigh margin vs LoS margin", criterion_9},
        {"fading-penalty limits", criterion_10},
        {"distance sweep: FD vs IRS and HD", criterion_11},
        {"sweep-k determinism", [&] { return criterion_12(cli); }},
    };

    bool all = true;
    for (int n : selected)
    {
        if (n < 1 || n > static_cast<int>(criteria.size()))
        {
            std::cerr << "unknown criterion " << n << '\n';
            return 2;
        }
        const auto &[name, run] = criteria[static_cast<std::size_t>(n - 1)];
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try
        {
            outcome = run();
        }
        catch (const std::exception &e)
        {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (outcome.pass ? "PASS" : "FAIL") << " criterion " << n << " (" << name << "): " << outcome.detail
                  << fmt(" [%.2f s]", seconds) << std::endl;
        all = all && outcome.pass;
    }
    return all ? 0 : 1;
}
