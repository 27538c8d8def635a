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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace fdrelay
{

using cdouble = std::complex<double>;

/// Pseudo-random engine used by every sampler. Samplers never share engine state:
/// each call either receives its own engine or derives one from a caller-supplied seed.
using Generator = std::mt19937_64;

/// Engine for an independent substream identified by (seed, stream, index).
Generator make_generator(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t index = 0);

// Geometry of the source -> array -> destination layout. Angles are measured from the
// array boresight, in radians.
struct SystemGeometry
{
    double wavelength_m = 0.01;
    double element_area_m2 = 6.25e-6;
    double d_S = 25.0;
    double d_D = 10.0;
    double alpha_S = 0.5235987755982988;  // pi/6
    double alpha_D = -0.5235987755982988; // -pi/6

    /// Throws std::invalid_argument naming the violated field.
    void validate() const;
};

// Far-field per-element power gains, noise floor, total power and passive isolation.
struct LinkBudget
{
    double omega_S = 0.0;
    double omega_D = 0.0;
    double N0 = 1e-12;
    double P_T = 1.0;
    double eta = 1e-6;

    void validate() const;
};

/// b-bit analog phase shifter; the phase set is {0, 2pi/2^b, ..., (2^b-1) 2pi/2^b}.
struct PhaseShifterSpec
{
    int b = 2;

    std::size_t levels() const; // 2^b
    double step() const;        // 2pi / 2^b
    void validate() const;
};

struct ChannelVector
{
    std::vector<cdouble> entries;
    double nominal_gain = 0.0;
};

/// M x N matrix, row-major (entry (m, n) at m * cols + n).
struct SelfInterferenceMatrix
{
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cdouble> entries;
    double variance = 0.0;

    cdouble operator()(std::size_t m, std::size_t n) const { return entries[m * cols + n]; }
};

struct FarFieldReport
{
    bool ok = true;
    double source_ratio = 0.0;      // sqrt(K A) / (3 d_S)
    double destination_ratio = 0.0; // sqrt(K A) / (3 d_D)
};

// ---- phase quantization --------------------------------------------------

/// Coherent-combining efficiency ((2^b / pi) sin(pi / 2^b))^2 of b-bit phase shifters.
double quantization_factor(const PhaseShifterSpec &spec);

/// Nearest element of the phase set (wrap-aware). Result lies in [0, 2pi).
double quantize_phase(double phi, const PhaseShifterSpec &spec);

/// Index in {0, ..., 2^b - 1} of the level returned by quantize_phase.
std::size_t quantize_phase_index(double phi, const PhaseShifterSpec &spec);

/// Wrapped residual phi - quantize_phase(phi), always in [-pi/2^b, pi/2^b).
double quantization_residual(double phi, const PhaseShifterSpec &spec);

/// Unit phasors exp(-j * level) for every level, indexed like quantize_phase_index.
std::vector<cdouble> conjugate_level_phasors(const PhaseShifterSpec &spec);

// ---- link budget ---------------------------------------------------------

/// Far-field per-element power gain A cos(alpha) / (4 pi d^2).
double far_field_gain(double area_m2, double alpha_rad, double d_m);

/// Checks sqrt(K A) <= 3 d for both links (boundary inclusive).
FarFieldReport far_field_check(double K, const SystemGeometry &geometry);

/// Budget with omega_S, omega_D derived from the geometry via far_field_gain.
LinkBudget link_budget_from_geometry(const SystemGeometry &geometry, double P_T, double N0, double eta);

// ---- random channels -----------------------------------------------------

/// Uniform phase on [0, 2pi) with 53-bit resolution.
double draw_uniform_phase(Generator &gen);

/// Draws a circularly-symmetric complex Gaussian with total variance `variance`.
cdouble draw_complex_gaussian(double variance, Generator &gen);

/// Equal-gain line-of-sight entries sqrt(omega) exp(j phi), phi ~ U[0, 2pi).
void fill_los_channel(std::span<cdouble> out, double omega, Generator &gen);

/// Rayleigh entries ~ CN(0, omega).
void fill_rayleigh_channel(std::span<cdouble> out, double omega, Generator &gen);

ChannelVector sample_los_channel(std::size_t M, double omega, std::uint64_t seed);
ChannelVector sample_rayleigh_channel(std::size_t M, double omega, std::uint64_t seed);

/// Worst-case self-interference matrix with i.i.d. CN(0, eta / M) entries.
SelfInterferenceMatrix sample_si_matrix(std::size_t M, std::size_t N, double eta, std::uint64_t seed);

/// Per-entry self-interference variance eta / M.
double si_variance(std::size_t M, double eta);

} // namespace fdrelay
