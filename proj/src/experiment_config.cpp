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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace fdrelay
{

namespace
{

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string &text)
{
    std::vector<std::string> items;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ','))
    {
        auto t = trim(item);
        if (!t.empty())
            items.push_back(t);
    }
    return items;
}

double parse_number(const std::string &key, const std::string &text)
{
    double value = 0.0;
    const auto *begin = text.data();
    const auto *end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value))
        throw ConfigError(key, "expected a finite number, got '" + text + "'");
    return value;
}

std::size_t parse_count(const std::string &key, const std::string &text)
{
    const double value = parse_number(key, text);
    if (value < 0.0 || value != std::floor(value) || value > 9.0e15)
        throw ConfigError(key, "expected a non-negative integer, got '" + text + "'");
    return static_cast<std::size_t>(value);
}

std::vector<double> parse_number_list(const std::string &key, const std::string &text)
{
    std::vector<double> values;
    for (const auto &item : split_list(text))
        values.push_back(parse_number(key, item));
    if (values.empty())
        throw ConfigError(key, "expected a non-empty comma-separated list");
    return values;
}

SystemId parse_system(const std::string &key, const std::string &text)
{
    if (text == "fd_relay")
        return SystemId::fd_relay;
    if (text == "irs")
        return SystemId::irs;
    if (text == "hd_relay")
        return SystemId::hd_relay;
    throw ConfigError(key, "unknown system '" + text + "' (expected fd_relay, irs or hd_relay)");
}

void require(bool condition, const std::string &key, const std::string &constraint)
{
    if (!condition)
        throw ConfigError(key, constraint);
}

bool strictly_increasing(const std::vector<double> &v)
{
    return std::adjacent_find(v.begin(), v.end(), [](double a, double b) { return !(a < b); }) == v.end();
}

// Reads one angle given either in radians or in degrees, never both.
double read_angle(const Settings &settings, const std::string &stem, double fallback)
{
    const auto rad = settings.find(stem + "_rad");
    const auto deg = settings.find(stem + "_deg");
    if (rad != settings.end() && deg != settings.end())
        throw ConfigError(stem + "_deg", "conflicts with " + stem + "_rad; give the angle once");
    if (rad != settings.end())
        return parse_number(rad->first, rad->second);
    if (deg != settings.end())
        return parse_number(deg->first, deg->second) * std::numbers::pi / 180.0;
    return fallback;
}

} // namespace

std::string_view to_string(SystemId system)
{
    switch (system)
    {
    case SystemId::fd_relay:
        return "fd_relay";
    case SystemId::irs:
        return "irs";
    default:
        return "hd_relay";
    }
}

std::string_view to_string(AllocationChoice choice)
{
    return choice == AllocationChoice::exact ? "exact" : "proposition1";
}

std::string_view to_string(SweepVariable variable)
{
    return variable == SweepVariable::K ? "K" : "d_D";
}

LinkBudget ExperimentConfig::budget(double eta) const
{
    return link_budget_from_geometry(geometry, P_T, N0, eta);
}

const std::vector<std::string> &config_keys()
{
    static const std::vector<std::string> keys{
        "wavelength_m",     "element_area_m2",     "d_S_m",           "d_D_m",
        "alpha_S_rad",      "alpha_S_deg",         "alpha_D_rad",     "alpha_D_deg",
        "P_T_w",            "N0_w",                "b_bits",          "eta_list",
        "fading",           "allocation",          "sweep.k_min",     "sweep.k_max",
        "sweep.k_per_decade", "sweep.k_values",    "sweep.d_D_min_m", "sweep.d_D_max_m",
        "sweep.d_D_points", "sweep.d_D_values",    "sweep.distance_k_values", "sweep.systems",
        "point.K",          "mc.trials",           "mc.seed",         "mc.batch",
        "mc.threads",
    };
    return keys;
}

Settings parse_settings(std::string_view text)
{
    const auto &keys = config_keys();
    const std::set<std::string> known(keys.begin(), keys.end());

    Settings settings;
    std::istringstream stream{std::string(text)};
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(stream, line))
    {
        ++line_number;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const auto content = trim(line);
        if (content.empty())
            continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_number), "expected 'key = value'");
        auto key = trim(std::string_view(content).substr(0, eq));
        auto value = trim(std::string_view(content).substr(eq + 1));
        if (!known.contains(key))
            throw ConfigError(key, "unknown key");
        if (settings.contains(key))
            throw ConfigError(key, "given more than once");
        settings.emplace(std::move(key), std::move(value));
    }
    return settings;
}

ExperimentConfig config_from_settings(const Settings &settings)
{
    const auto &keys = config_keys();
    for (const auto &[key, value] : settings)
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw ConfigError(key, "unknown key");

    ExperimentConfig config;
    auto get = [&](const std::string &key) -> const std::string * {
        const auto it = settings.find(key);
        return it == settings.end() ? nullptr : &it->second;
    };
    auto number = [&](const std::string &key, double &target) {
        if (const auto *v = get(key))
            target = parse_number(key, *v);
    };
    auto count = [&](const std::string &key, std::size_t &target) {
        if (const auto *v = get(key))
            target = parse_count(key, *v);
    };

    auto &geo = config.geometry;
    number("wavelength_m", geo.wavelength_m);
    require(geo.wavelength_m > 0.0, "wavelength_m", "must be > 0");
    geo.element_area_m2 = (geo.wavelength_m / 4.0) * (geo.wavelength_m / 4.0);
    number("element_area_m2", geo.element_area_m2);
    number("d_S_m", geo.d_S);
    number("d_D_m", geo.d_D);
    geo.alpha_S = read_angle(settings, "alpha_S", geo.alpha_S);
    geo.alpha_D = read_angle(settings, "alpha_D", geo.alpha_D);

    require(geo.element_area_m2 > 0.0, "element_area_m2", "must be > 0");
    require(geo.element_area_m2 <= (geo.wavelength_m / 4.0) * (geo.wavelength_m / 4.0) * (1.0 + 1e-12),
            "element_area_m2", "must be <= (wavelength_m/4)^2");
    require(geo.d_S > 0.0, "d_S_m", "must be > 0");
    require(geo.d_D > 0.0, "d_D_m", "must be > 0");
    require(std::abs(geo.alpha_S) < std::numbers::pi / 2.0, settings.contains("alpha_S_deg") ? "alpha_S_deg" : "alpha_S_rad",
            "must satisfy |alpha_S| < 90 degrees");
    require(std::abs(geo.alpha_D) < std::numbers::pi / 2.0, settings.contains("alpha_D_deg") ? "alpha_D_deg" : "alpha_D_rad",
            "must satisfy |alpha_D| < 90 degrees");

    number("P_T_w", config.P_T);
    require(config.P_T > 0.0, "P_T_w", "must be > 0");
    number("N0_w", config.N0);
    require(config.N0 > 0.0, "N0_w", "must be > 0");

    if (const auto *v = get("b_bits"))
    {
        const auto b = parse_count("b_bits", *v);
        require(b >= 1 && b <= 52, "b_bits", "must be an integer in [1, 52]");
        config.phase.b = static_cast<int>(b);
    }

    if (const auto *v = get("eta_list"))
        config.eta_values = parse_number_list("eta_list", *v);
    for (double eta : config.eta_values)
        require(eta >= 0.0 && eta <= 1.0, "eta_list", "every eta must lie in [0, 1]");

    if (const auto *v = get("fading"))
    {
        try
        {
            config.fading = parse_fading(*v);
        }
        catch (const std::invalid_argument &)
        {
            throw ConfigError("fading", "must be 'los' or 'rayleigh', got '" + *v + "'");
        }
    }
    if (const auto *v = get("allocation"))
    {
        if (*v == "exact")
            config.allocation = AllocationChoice::exact;
        else if (*v == "proposition1")
            config.allocation = AllocationChoice::proposition1;
        else
            throw ConfigError("allocation", "must be 'exact' or 'proposition1', got '" + *v + "'");
    }

    number("sweep.k_min", config.k_min);
    number("sweep.k_max", config.k_max);
    number("sweep.k_per_decade", config.k_per_decade);
    require(config.k_min >= 2.0, "sweep.k_min", "must be >= 2");
    require(config.k_max >= config.k_min, "sweep.k_max", "must be >= sweep.k_min");
    require(config.k_per_decade > 0.0, "sweep.k_per_decade", "must be > 0");
    if (const auto *v = get("sweep.k_values"))
    {
        config.k_values = parse_number_list("sweep.k_values", *v);
        for (double k : config.k_values)
            require(k >= 2.0 && k == std::floor(k), "sweep.k_values", "every K must be an integer >= 2");
        require(strictly_increasing(config.k_values), "sweep.k_values", "must be strictly increasing");
    }

    number("sweep.d_D_min_m", config.d_D_min);
    number("sweep.d_D_max_m", config.d_D_max);
    count("sweep.d_D_points", config.d_D_points);
    require(config.d_D_min > 0.0, "sweep.d_D_min_m", "must be > 0");
    require(config.d_D_max >= config.d_D_min, "sweep.d_D_max_m", "must be >= sweep.d_D_min_m");
    require(config.d_D_points >= 1, "sweep.d_D_points", "must be >= 1");
    require(config.d_D_points > 1 || config.d_D_max == config.d_D_min, "sweep.d_D_points",
            "must be >= 2 when sweep.d_D_max_m > sweep.d_D_min_m");
    if (const auto *v = get("sweep.d_D_values"))
    {
        config.d_D_values = parse_number_list("sweep.d_D_values", *v);
        for (double d : config.d_D_values)
            require(d > 0.0, "sweep.d_D_values", "every distance must be > 0");
        require(strictly_increasing(config.d_D_values), "sweep.d_D_values", "must be strictly increasing");
    }
    if (const auto *v = get("sweep.distance_k_values"))
    {
        config.distance_k_values.clear();
        for (double k : parse_number_list("sweep.distance_k_values", *v))
        {
            require(k >= 2.0 && k == std::floor(k), "sweep.distance_k_values", "every K must be an integer >= 2");
            config.distance_k_values.push_back(static_cast<std::size_t>(k));
        }
    }
    if (const auto *v = get("sweep.systems"))
    {
        config.systems.clear();
        for (const auto &item : split_list(*v))
            config.systems.push_back(parse_system("sweep.systems", item));
        require(!config.systems.empty(), "sweep.systems", "must name at least one system");
    }

    count("point.K", config.operating_K);
    require(config.operating_K >= 3, "point.K", "must be >= 3");

    count("mc.trials", config.mc.trials);
    require(config.mc.trials >= McConfig::minimum_trials, "mc.trials",
            "must be >= " + std::to_string(McConfig::minimum_trials));
    if (const auto *v = get("mc.seed"))
        config.mc.seed = parse_count("mc.seed", *v);
    count("mc.batch", config.mc.batch);
    require(config.mc.batch >= 1, "mc.batch", "must be >= 1");
    if (const auto *v = get("mc.threads"))
        config.mc.threads = static_cast<unsigned>(parse_count("mc.threads", *v));

    if (config.allocation == AllocationChoice::proposition1)
        for (double eta : config.eta_values)
            require(eta > 0.0, "eta_list", "every eta must be > 0 with allocation = proposition1");

    // Derived gains must be valid (e.g. extreme geometries can push Omega outside (0, 1)).
    try
    {
        (void)config.budget(config.eta_values.front());
    }
    catch (const std::invalid_argument &e)
    {
        throw ConfigError("geometry", e.what());
    }
    return config;
}

ExperimentConfig load_config(const std::filesystem::path &path, const Settings &overrides)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config file '" + path.string() + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    auto settings = parse_settings(buffer.str());
    for (const auto &[key, value] : overrides)
    {
        // A flag in one unit replaces a file value given in the other unit.
        for (const std::string stem : {"alpha_S", "alpha_D"})
        {
            if (key == stem + "_rad")
                settings.erase(stem + "_deg");
            if (key == stem + "_deg")
                settings.erase(stem + "_rad");
        }
        settings[key] = value;
    }
    return config_from_settings(settings);
}

std::vector<double> log_k_grid(double lo, double hi, double per_decade)
{
    if (!(lo >= 1.0 && hi >= lo && per_decade > 0.0))
        throw std::invalid_argument("log_k_grid: need 1 <= lo <= hi and per_decade > 0");
    const double decades = std::log10(hi / lo);
    const auto steps = static_cast<std::size_t>(std::llround(decades * per_decade));
    std::vector<double> grid;
    grid.reserve(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i)
    {
        const double k = std::round(lo * std::pow(10.0, static_cast<double>(i) / per_decade));
        if (grid.empty() || k > grid.back())
            grid.push_back(std::min(k, std::round(hi)));
    }
    return grid;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points)
{
    if (points == 0)
        throw std::invalid_argument("linear_grid: need at least one point");
    if (points == 1)
        return {lo};
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i)
        grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    grid.back() = hi;
    return grid;
}

SweepSpec make_k_sweep(const ExperimentConfig &config)
{
    SweepSpec spec;
    spec.variable = SweepVariable::K;
    spec.points = config.k_values.empty() ? log_k_grid(config.k_min, config.k_max, config.k_per_decade)
                                          : config.k_values;
    spec.systems = config.systems;
    spec.fading = config.fading;
    spec.eta_values = config.eta_values;
    spec.allocation = config.allocation;
    spec.validate();
    return spec;
}

SweepSpec make_distance_sweep(const ExperimentConfig &config)
{
    SweepSpec spec;
    spec.variable = SweepVariable::d_D;
    spec.points = config.d_D_values.empty() ? linear_grid(config.d_D_min, config.d_D_max, config.d_D_points)
                                            : config.d_D_values;
    spec.systems = config.systems;
    spec.fading = config.fading;
    spec.eta_values = config.eta_values;
    spec.allocation = config.allocation;
    spec.element_counts = config.distance_k_values;
    spec.validate();
    return spec;
}

void SweepSpec::validate() const
{
    if (points.empty())
        throw std::invalid_argument("sweep: no points");
    if (!strictly_increasing(points))
        throw std::invalid_argument("sweep: points must be strictly increasing");
    if (systems.empty())
        throw std::invalid_argument("sweep: no systems selected");
    if (eta_values.empty())
        throw std::invalid_argument("sweep: no eta values");
    for (double eta : eta_values)
    {
        if (!(eta >= 0.0 && eta <= 1.0))
            throw std::invalid_argument("sweep: eta must lie in [0, 1]");
        if (allocation == AllocationChoice::proposition1 && eta <= 0.0)
            throw std::invalid_argument("sweep: closed-form allocation needs eta > 0");
    }
    if (variable == SweepVariable::K)
    {
        for (double k : points)
            if (!(k >= 2.0 && k == std::floor(k)))
                throw std::invalid_argument("sweep: K points must be integers >= 2");
    }
    else
    {
        if (element_counts.empty())
            throw std::invalid_argument("sweep: distance sweeps need at least one element count");
        for (double d : points)
            if (!(d > 0.0))
                throw std::invalid_argument("sweep: distances must be > 0");
    }
}

} // namespace fdrelay
