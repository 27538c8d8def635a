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

#include "fdrelay/channel_models.hpp"

#include <boost/random/normal_distribution.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

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

// Splits the reduced phase into a level index and the fractional offset in [-0.5, 0.5).
struct LevelSplit
{
    std::size_t index;
    double offset; // in units of the level step
};

LevelSplit split_phase(double phi, const PhaseShifterSpec &spec)
{
    require(std::isfinite(phi), "quantize_phase: phase must be finite");
    spec.validate();

    double r = std::fmod(phi, two_pi);
    if (r < 0.0)
        r += two_pi;
    if (r >= two_pi)
        r = 0.0;

    const auto levels = spec.levels();
    const double x = r / spec.step();
    double lower = std::floor(x);
    double offset = x - lower; // exact
    if (offset >= 0.5)
    {
        lower += 1.0;
        offset -= 1.0;
    }
    auto index = static_cast<std::size_t>(lower) % levels;
    return {index, offset};
}
} // namespace

Generator make_generator(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
{
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(stream), hi(stream), lo(index), hi(index)};
    return Generator(seq);
}

void SystemGeometry::validate() const
{
    require(std::isfinite(wavelength_m) && wavelength_m > 0.0, "wavelength_m must be > 0");
    require(std::isfinite(d_S) && d_S > 0.0, "d_S must be > 0");
    require(std::isfinite(d_D) && d_D > 0.0, "d_D must be > 0");
    require(std::isfinite(element_area_m2) && element_area_m2 > 0.0, "element_area_m2 must be > 0");
    const double quarter = wavelength_m / 4.0;
    // Relative slack so that A = (lambda/4)^2 computed in floating point is accepted.
    require(element_area_m2 <= quarter * quarter * (1.0 + 1e-12),
            "element_area_m2 must be <= (wavelength_m/4)^2");
    require(std::isfinite(alpha_S) && std::abs(alpha_S) < std::numbers::pi / 2.0,
            "alpha_S must satisfy |alpha_S| < pi/2");
    require(std::isfinite(alpha_D) && std::abs(alpha_D) < std::numbers::pi / 2.0,
            "alpha_D must satisfy |alpha_D| < pi/2");
}

void LinkBudget::validate() const
{
    require(std::isfinite(omega_S) && omega_S > 0.0 && omega_S < 1.0, "omega_S must lie in (0, 1)");
    require(std::isfinite(omega_D) && omega_D > 0.0 && omega_D < 1.0, "omega_D must lie in (0, 1)");
    require(std::isfinite(N0) && N0 > 0.0, "N0 must be > 0");
    require(std::isfinite(P_T) && P_T > 0.0, "P_T must be > 0");
    require(std::isfinite(eta) && eta >= 0.0 && eta <= 1.0, "eta must lie in [0, 1]");
}

std::size_t PhaseShifterSpec::levels() const
{
    return std::size_t{1} << b;
}

double PhaseShifterSpec::step() const
{
    return two_pi / static_cast<double>(levels());
}

void PhaseShifterSpec::validate() const
{
    require(b >= 1, "phase shifter resolution b must be >= 1");
    require(b <= 52, "phase shifter resolution b must be <= 52");
}

double quantization_factor(const PhaseShifterSpec &spec)
{
    spec.validate();
    const double levels = static_cast<double>(spec.levels());
    const double x = std::numbers::pi / levels;
    const double sinc = std::sin(x) / x;
    return sinc * sinc;
}

double quantize_phase(double phi, const PhaseShifterSpec &spec)
{
    return static_cast<double>(split_phase(phi, spec).index) * spec.step();
}

std::size_t quantize_phase_index(double phi, const PhaseShifterSpec &spec)
{
    return split_phase(phi, spec).index;
}

double quantization_residual(double phi, const PhaseShifterSpec &spec)
{
    return split_phase(phi, spec).offset * spec.step();
}

std::vector<cdouble> conjugate_level_phasors(const PhaseShifterSpec &spec)
{
    spec.validate();
    std::vector<cdouble> table(spec.levels());
    for (std::size_t l = 0; l < table.size(); ++l)
        table[l] = std::polar(1.0, -static_cast<double>(l) * spec.step());
    return table;
}

double far_field_gain(double area_m2, double alpha_rad, double d_m)
{
    require(std::isfinite(area_m2) && area_m2 > 0.0, "far_field_gain: area must be > 0");
    require(std::isfinite(d_m) && d_m > 0.0, "far_field_gain: distance must be > 0");
    require(std::isfinite(alpha_rad) && std::abs(alpha_rad) < std::numbers::pi / 2.0,
            "far_field_gain: |alpha| must be < pi/2");
    return area_m2 * std::cos(alpha_rad) / (4.0 * std::numbers::pi * d_m * d_m);
}

FarFieldReport far_field_check(double K, const SystemGeometry &geometry)
{
    require(std::isfinite(K) && K >= 1.0, "far_field_check: K must be >= 1");
    geometry.validate();

    const double aperture = std::sqrt(K * geometry.element_area_m2);
    FarFieldReport report;
    report.source_ratio = aperture / (3.0 * geometry.d_S);
    report.destination_ratio = aperture / (3.0 * geometry.d_D);
    // Boundary inclusive, with slack for A = (lambda/4)^2 not being exact in binary.
    constexpr double limit = 1.0 + 1e-12;
    report.ok = report.source_ratio <= limit && report.destination_ratio <= limit;
    return report;
}

LinkBudget link_budget_from_geometry(const SystemGeometry &geometry, double P_T, double N0, double eta)
{
    geometry.validate();
    LinkBudget budget;
    budget.omega_S = far_field_gain(geometry.element_area_m2, geometry.alpha_S, geometry.d_S);
    budget.omega_D = far_field_gain(geometry.element_area_m2, geometry.alpha_D, geometry.d_D);
    budget.P_T = P_T;
    budget.N0 = N0;
    budget.eta = eta;
    budget.validate();
    return budget;
}

double draw_uniform_phase(Generator &gen)
{
    return static_cast<double>(gen() >> 11) * 0x1.0p-53 * two_pi;
}

cdouble draw_complex_gaussian(double variance, Generator &gen)
{
    boost::random::normal_distribution<double> normal;
    const double scale = std::sqrt(variance / 2.0);
    const double re = normal(gen);
    const double im = normal(gen);
    return {scale * re, scale * im};
}

void fill_los_channel(std::span<cdouble> out, double omega, Generator &gen)
{
    const double amplitude = std::sqrt(omega);
    for (auto &h : out)
        h = std::polar(amplitude, draw_uniform_phase(gen));
}

void fill_rayleigh_channel(std::span<cdouble> out, double omega, Generator &gen)
{
    boost::random::normal_distribution<double> normal;
    const double scale = std::sqrt(omega / 2.0);
    for (auto &h : out)
    {
        const double re = normal(gen);
        const double im = normal(gen);
        h = {scale * re, scale * im};
    }
}

ChannelVector sample_los_channel(std::size_t M, double omega, std::uint64_t seed)
{
    require(M >= 1, "sample_los_channel: M must be >= 1");
    require(std::isfinite(omega) && omega >= 0.0, "sample_los_channel: omega must be >= 0");
    ChannelVector channel{std::vector<cdouble>(M), omega};
    auto gen = make_generator(seed);
    fill_los_channel(channel.entries, omega, gen);
    return channel;
}

ChannelVector sample_rayleigh_channel(std::size_t M, double omega, std::uint64_t seed)
{
    require(M >= 1, "sample_rayleigh_channel: M must be >= 1");
    require(std::isfinite(omega) && omega >= 0.0, "sample_rayleigh_channel: omega must be >= 0");
    ChannelVector channel{std::vector<cdouble>(M), omega};
    auto gen = make_generator(seed);
    fill_rayleigh_channel(channel.entries, omega, gen);
    return channel;
}

double si_variance(std::size_t M, double eta)
{
    require(M >= 1, "si_variance: M must be >= 1");
    require(std::isfinite(eta) && eta >= 0.0 && eta <= 1.0, "si_variance: eta must lie in [0, 1]");
    return eta / static_cast<double>(M);
}

SelfInterferenceMatrix sample_si_matrix(std::size_t M, std::size_t N, double eta, std::uint64_t seed)
{
    require(N >= 1, "sample_si_matrix: N must be >= 1");
    SelfInterferenceMatrix G;
    G.rows = M;
    G.cols = N;
    G.variance = si_variance(M, eta);
    G.entries.resize(M * N);
    auto gen = make_generator(seed);
    // Same draw as a Rayleigh vector with the per-entry variance.
    fill_rayleigh_channel(G.entries, G.variance, gen);
    return G;
}

} // namespace fdrelay
