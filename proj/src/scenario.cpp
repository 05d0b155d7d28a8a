// SPDX-License-Identifier: Apache-2.0
//
// nlbeam: line-spectrum simulator for beamformed transmitter distortion
// Copyright (C) 2026 The nlbeam Authors
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

#include "nlbeam/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace nlbeam::scenario
{
    using json = nlohmann::json;

    ConfigError::ConfigError(std::string field, const std::string &message)
        : Error("config field '" + field + "': " + message), field_(std::move(field))
    {
    }

    ConfigSyntaxError::ConfigSyntaxError(int line, int column, const std::string &message)
        : Error("config syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                message),
          line_(line), column_(column)
    {
    }

    namespace
    {
        std::string join(const std::string &path, const std::string &key)
        {
            return path.empty() ? key : path + "." + key;
        }

        void reject_unknown(const json &obj, const std::string &path, std::initializer_list<std::string_view> known)
        {
            for (const auto &[key, value] : obj.items())
                if (std::find(known.begin(), known.end(), key) == known.end())
                    throw ConfigError(join(path, key), "unknown field");
        }

        const json &require_object(const json &parent, const std::string &path, const std::string &key)
        {
            const std::string field = join(path, key);
            if (!parent.contains(key))
                throw ConfigError(field, "missing required section");
            const json &v = parent.at(key);
            if (!v.is_object())
                throw ConfigError(field, "must be an object");
            return v;
        }

        double read_number(const json &obj, const std::string &path, const std::string &key,
                           std::optional<double> fallback = std::nullopt)
        {
            const std::string field = join(path, key);
            if (!obj.contains(key))
            {
                if (fallback)
                    return *fallback;
                throw ConfigError(field, "missing required number");
            }
            const json &v = obj.at(key);
            if (!v.is_number())
                throw ConfigError(field, "must be a number");
            const double x = v.get<double>();
            if (!std::isfinite(x))
                throw ConfigError(field, "must be finite");
            return x;
        }

        long long read_integer(const json &obj, const std::string &path, const std::string &key,
                               std::optional<long long> fallback = std::nullopt)
        {
            const std::string field = join(path, key);
            if (!obj.contains(key))
            {
                if (fallback)
                    return *fallback;
                throw ConfigError(field, "missing required integer");
            }
            const json &v = obj.at(key);
            if (!v.is_number_integer())
                throw ConfigError(field, "must be an integer");
            if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT32_MAX))
                throw ConfigError(field, "is too large");
            const long long x = v.get<long long>();
            if (x < INT32_MIN || x > INT32_MAX)
                throw ConfigError(field, "is out of range");
            return x;
        }

        IndexInterval read_interval(const json &obj, const std::string &path, const std::string &key)
        {
            const std::string field = join(path, key);
            if (!obj.contains(key))
                throw ConfigError(field, "missing required [lo, hi] interval");
            const json &v = obj.at(key);
            if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer())
                throw ConfigError(field, "must be an array [lo, hi] of two integers");
            const long long lo = v[0].get<long long>();
            const long long hi = v[1].get<long long>();
            if (lo < 1 || hi < lo || hi > INT32_MAX)
                throw ConfigError(field, "requires 1 <= lo <= hi");
            return {static_cast<int>(lo), static_cast<int>(hi)};
        }

        json number(double x)
        {
            if (std::isnan(x))
                return "nan";
            if (std::isinf(x))
                return x < 0 ? "-inf" : "inf";
            return x;
        }

        json interval_json(const IndexInterval &iv) { return json::array({iv.lo, iv.hi}); }

        std::pair<int, int> line_column(std::string_view text, std::size_t byte)
        {
            int line = 1;
            int column = 1;
            const std::size_t end = std::min(text.size(), byte > 0 ? byte - 1 : 0);
            for (std::size_t i = 0; i < end; ++i)
            {
                if (text[i] == '\n')
                {
                    ++line;
                    column = 1;
                }
                else
                    ++column;
            }
            return {line, column};
        }

        json metrics_json(const MetricsReport &r)
        {
            json j;
            j["location"] = r.location.label();
            if (r.location.kind == MetricsLocation::Kind::port)
            {
                j["kind"] = "port";
                j["port"] = r.location.port + 1;
            }
            else
            {
                j["kind"] = "direction";
                j["tau_rx_seconds"] = number(r.location.tau);
            }
            j["evm"] = r.evm ? number(*r.evm) : json("undefined");
            j["aclr_lower_db"] = r.aclr ? number(r.aclr->lower_db) : json("undefined");
            j["aclr_upper_db"] = r.aclr ? number(r.aclr->upper_db) : json("undefined");
            json gains = json::object();
            for (const auto &[k, g] : r.array_gain_by_line)
                gains[std::to_string(k)] = number(g);
            j["array_gain_by_line"] = gains;
            return j;
        }

        json delay_json(const DistortionDelay &d, const ArrayGeometry &geometry)
        {
            json eq = json::array();
            for (double t : d.visible_equivalents(geometry))
                eq.push_back(number(t));
            return {{"index", d.index},
                    {"raw_seconds", number(d.raw)},
                    {"reduced_seconds", number(d.reduced)},
                    {"modulus_seconds", number(d.modulus)},
                    {"visible_equivalents_seconds", eq}};
        }

        json pattern_summary(const Pattern &p, const std::string &file)
        {
            json peaks = json::array();
            for (double t : p.peak_taus)
                peaks.push_back(number(t));
            return {{"freq_index", p.freq_index},
                    {"file", file},
                    {"points", p.sweep.size()},
                    {"reference_power", number(p.reference_power)},
                    {"peak_tau_seconds", number(p.peak_tau)},
                    {"peak_power", number(p.peak_power)},
                    {"peak_gain", number(p.peak_gain)},
                    {"mean_power", number(p.mean_power)},
                    {"contrast", number(p.contrast)},
                    {"peak_taus_seconds", peaks},
                    {"multiple_peaks", p.multiple_peaks}};
        }

        // Picks the representative of a coherent-combining delay that a far-field
        // receiver can actually occupy: the unwrapped value if visible, else the
        // reduced one.
        std::optional<double> observable_delay(const DistortionDelay &d, const ArrayGeometry &geometry)
        {
            if (geometry.visible(d.raw))
                return d.raw;
            if (geometry.visible(d.reduced))
                return d.reduced;
            return std::nullopt;
        }
    }

    ScenarioConfig parse_config(std::string_view text)
    {
        json doc;
        try
        {
            doc = json::parse(text.begin(), text.end());
        }
        catch (const json::parse_error &e)
        {
            const auto [line, column] = line_column(text, e.byte);
            throw ConfigSyntaxError(line, column, e.what());
        }
        if (!doc.is_object())
            throw ConfigError("(root)", "config must be a JSON object");

        reject_unknown(doc, "",
                       {"grid", "tones", "geometry", "nonlinearity", "band", "sweep", "baseline", "output"});

        ScenarioConfig cfg;

        const json &grid = require_object(doc, "", "grid");
        reject_unknown(grid, "grid", {"base_rate", "max_index", "prune_threshold"});
        cfg.base_rate = read_number(grid, "grid", "base_rate");
        cfg.max_index = static_cast<int>(read_integer(grid, "grid", "max_index"));
        cfg.prune_threshold = read_number(grid, "grid", "prune_threshold", default_prune_threshold);

        if (!doc.contains("tones") || !doc.at("tones").is_array())
            throw ConfigError("tones", "must be an array of tone objects");
        const json &tones = doc.at("tones");
        for (std::size_t i = 0; i < tones.size(); ++i)
        {
            const std::string path = "tones[" + std::to_string(i) + "]";
            if (!tones[i].is_object())
                throw ConfigError(path, "must be an object");
            reject_unknown(tones[i], path, {"index", "amplitude", "phase", "target_delay"});
            ToneConfig t;
            t.index = static_cast<int>(read_integer(tones[i], path, "index"));
            t.amplitude = read_number(tones[i], path, "amplitude", 1.0);
            t.phase = read_number(tones[i], path, "phase", 0.0);
            t.target_delay = read_number(tones[i], path, "target_delay");
            cfg.tones.push_back(t);
        }

        const json &geometry = require_object(doc, "", "geometry");
        reject_unknown(geometry, "geometry", {"num_antennas", "element_delay"});
        cfg.num_antennas = static_cast<int>(read_integer(geometry, "geometry", "num_antennas"));
        cfg.element_delay = read_number(geometry, "geometry", "element_delay");

        const json &nl = require_object(doc, "", "nonlinearity");
        reject_unknown(nl, "nonlinearity", {"coefficients"});
        if (!nl.contains("coefficients") || !nl.at("coefficients").is_array())
            throw ConfigError("nonlinearity.coefficients", "must be an array of numbers [a1, a2, ...]");
        for (std::size_t i = 0; i < nl.at("coefficients").size(); ++i)
        {
            const json &a = nl.at("coefficients")[i];
            if (!a.is_number() || !std::isfinite(a.get<double>()))
                throw ConfigError("nonlinearity.coefficients[" + std::to_string(i) + "]", "must be a finite number");
            cfg.coefficients.push_back(a.get<double>());
        }

        const json &band = require_object(doc, "", "band");
        reject_unknown(band, "band", {"in_band", "adjacent_lower", "adjacent_upper", "keep_window"});
        cfg.in_band = read_interval(band, "band", "in_band");
        cfg.adjacent_lower = read_interval(band, "band", "adjacent_lower");
        cfg.adjacent_upper = read_interval(band, "band", "adjacent_upper");
        cfg.keep_window = read_interval(band, "band", "keep_window");

        if (doc.contains("sweep"))
        {
            const json &sweep = require_object(doc, "", "sweep");
            reject_unknown(sweep, "sweep", {"points"});
            cfg.sweep_points = static_cast<int>(read_integer(sweep, "sweep", "points", default_sweep_points));
        }

        if (doc.contains("baseline"))
        {
            const json &b = require_object(doc, "", "baseline");
            reject_unknown(b, "baseline", {"trials", "seed"});
            BaselineConfig bc;
            bc.trials = static_cast<int>(read_integer(b, "baseline", "trials", bc.trials));
            if (b.contains("seed"))
            {
                const json &s = b.at("seed");
                if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<long long>() < 0))
                    throw ConfigError("baseline.seed", "must be a non-negative 64-bit integer");
                bc.seed = s.get<std::uint64_t>();
            }
            cfg.baseline = bc;
        }

        if (doc.contains("output"))
        {
            const json &out = require_object(doc, "", "output");
            reject_unknown(out, "output", {"directory"});
            if (out.contains("directory"))
            {
                if (!out.at("directory").is_string() || out.at("directory").get<std::string>().empty())
                    throw ConfigError("output.directory", "must be a non-empty string");
                cfg.output_directory = out.at("directory").get<std::string>();
            }
        }

        validate(cfg);
        return cfg;
    }

    void validate(const ScenarioConfig &cfg)
    {
        if (!(cfg.base_rate > 0.0) || !std::isfinite(cfg.base_rate))
            throw ConfigError("grid.base_rate", "must be a positive angular frequency in rad/s");
        if (cfg.max_index < 1)
            throw ConfigError("grid.max_index", "must be at least 1");
        if (!(cfg.prune_threshold > 0.0) || cfg.prune_threshold > 1e-9)
            throw ConfigError("grid.prune_threshold", "must lie in (0, 1e-9]");

        if (cfg.num_antennas < 1)
            throw ConfigError("geometry.num_antennas", "must be at least 1");
        if (!(cfg.element_delay > 0.0) || !std::isfinite(cfg.element_delay))
            throw ConfigError("geometry.element_delay", "must be a positive delay in seconds");

        if (cfg.coefficients.empty() || cfg.coefficients.size() > static_cast<std::size_t>(max_polynomial_degree))
            throw ConfigError("nonlinearity.coefficients",
                              "must hold between 1 and " + std::to_string(max_polynomial_degree) + " coefficients");
        if (std::all_of(cfg.coefficients.begin(), cfg.coefficients.end(), [](double a) { return a == 0.0; }))
            throw ConfigError("nonlinearity.coefficients", "at least one coefficient must be nonzero");

        try
        {
            BandDefinition(cfg.in_band, cfg.adjacent_lower, cfg.adjacent_upper, cfg.keep_window);
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError("band", e.what());
        }

        if (cfg.sweep_points < 16)
            throw ConfigError("sweep.points", "must be at least 16");

        if (cfg.tones.empty())
            throw ConfigError("tones", "at least one tone is required");
        int highest = 0;
        std::set<int> seen;
        for (std::size_t i = 0; i < cfg.tones.size(); ++i)
        {
            const std::string path = "tones[" + std::to_string(i) + "]";
            const auto &t = cfg.tones[i];
            if (t.index < 1 || t.index > cfg.max_index)
                throw ConfigError(path + ".index", "must lie in [1, grid.max_index]");
            if (!seen.insert(t.index).second)
                throw ConfigError(path + ".index", "duplicates another tone");
            if (!cfg.in_band.contains(t.index))
                throw ConfigError(path + ".index", "must lie inside band.in_band");
            if (!(t.amplitude >= 0.0) || !std::isfinite(t.amplitude))
                throw ConfigError(path + ".amplitude", "must be finite and non-negative");
            if (!std::isfinite(t.phase))
                throw ConfigError(path + ".phase", "must be finite");
            if (!std::isfinite(t.target_delay) || std::abs(t.target_delay) > cfg.element_delay)
                throw ConfigError(path + ".target_delay", "must lie in [-geometry.element_delay, geometry.element_delay]");
            highest = std::max(highest, t.index);
        }

        int degree = 0;
        for (std::size_t p = 0; p < cfg.coefficients.size(); ++p)
            if (cfg.coefficients[p] != 0.0)
                degree = static_cast<int>(p) + 1;
        const int needed = std::max(3, degree) * highest;
        if (cfg.max_index < needed)
            throw ConfigError("grid.max_index", "must be at least " + std::to_string(needed) +
                                                    " to hold every harmonic of the highest tone");

        if (cfg.tones.size() == 2)
        {
            const int k1 = std::min(cfg.tones[0].index, cfg.tones[1].index);
            const int k2 = std::max(cfg.tones[0].index, cfg.tones[1].index);
            if (k2 == 2 * k1)
                throw ConfigError("tones", "degenerate frequency plan: k2 = 2*k1 puts an intermodulation product at DC");
        }

        if (cfg.baseline && cfg.baseline->trials < 1)
            throw ConfigError("baseline.trials", "must be at least 1");
    }

    json config_to_json(const ScenarioConfig &cfg)
    {
        json tones = json::array();
        for (const auto &t : cfg.tones)
            tones.push_back(
                {{"index", t.index}, {"amplitude", t.amplitude}, {"phase", t.phase}, {"target_delay", t.target_delay}});
        json j = {
            {"grid", {{"base_rate", cfg.base_rate}, {"max_index", cfg.max_index}, {"prune_threshold", cfg.prune_threshold}}},
            {"tones", tones},
            {"geometry", {{"num_antennas", cfg.num_antennas}, {"element_delay", cfg.element_delay}}},
            {"nonlinearity", {{"coefficients", cfg.coefficients}}},
            {"band",
             {{"in_band", interval_json(cfg.in_band)},
              {"adjacent_lower", interval_json(cfg.adjacent_lower)},
              {"adjacent_upper", interval_json(cfg.adjacent_upper)},
              {"keep_window", interval_json(cfg.keep_window)}}},
            {"sweep", {{"points", cfg.sweep_points}}},
            {"output", {{"directory", cfg.output_directory}}},
        };
        if (cfg.baseline)
            j["baseline"] = {{"trials", cfg.baseline->trials}, {"seed", cfg.baseline->seed}};
        return j;
    }

    std::string config_hash(const ScenarioConfig &cfg)
    {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : config_to_json(cfg).dump())
        {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

    Setup build_setup(const ScenarioConfig &cfg)
    {
        validate(cfg);
        const FrequencyGrid grid(cfg.base_rate, cfg.max_index, cfg.prune_threshold);
        const ArrayGeometry geometry(cfg.num_antennas, cfg.element_delay);
        std::vector<SteeredTone> tones;
        for (const auto &t : cfg.tones)
            tones.push_back({t.index, t.amplitude, t.phase, {t.target_delay}});
        std::sort(tones.begin(), tones.end(), [](const auto &a, const auto &b) { return a.index < b.index; });
        return {grid, geometry, PolynomialNonlinearity(cfg.coefficients),
                BandDefinition(cfg.in_band, cfg.adjacent_lower, cfg.adjacent_upper, cfg.keep_window),
                steer_tones(grid, geometry, std::move(tones))};
    }

    ReportBundle run_scenario(const ScenarioConfig &cfg, const RunOptions &options)
    {
        const Setup setup = build_setup(cfg);
        ReportBundle bundle;
        bundle.config = cfg;
        bundle.config_hash = config_hash(cfg);
        bundle.grating_lobe_free = setup.geometry.grating_lobe_free(setup.grid.angular_frequency(cfg.in_band.hi));

        try
        {
            const ArraySignal signal = transmit(setup.assignment, setup.nonlinearity, setup.band);
            const auto &tones = setup.assignment.tones();
            const bool two_tone = tones.size() == 2;
            const int k1 = tones.front().index;
            const int k2 = tones.back().index;

            if (two_tone && setup.geometry.num_antennas() >= 2)
                bundle.distortion_delays = distortion_delays(k1, k2, setup.assignment);

            // Intermodulation lines that exist in the transmitted signal and do not
            // coincide with a fundamental.
            std::vector<std::pair<std::string, int>> im3_lines;
            if (two_tone)
            {
                for (const auto &[role, index] : {std::pair<std::string, int>{"im3_upper", 2 * k2 - k1},
                                                  std::pair<std::string, int>{"im3_lower", std::abs(k2 - 2 * k1)}})
                    if (signal.has_line(index) && !setup.assignment.find_tone(index))
                        im3_lines.emplace_back(role, index);
            }

            if (options.metrics)
            {
                std::vector<DelaySteer> directions;
                auto add_direction = [&](double tau)
                {
                    for (const auto &d : directions)
                        if (std::abs(d.tau - tau) <= 1e-12 * setup.geometry.element_delay())
                            return;
                    directions.push_back({tau});
                };
                for (const auto &t : tones)
                    add_direction(t.target.tau);
                if (bundle.distortion_delays)
                    for (const auto *d : {&bundle.distortion_delays->upper, &bundle.distortion_delays->lower})
                        if (auto tau = observable_delay(*d, setup.geometry))
                            add_direction(*tau);

                for (auto &r : port_vs_ota_report(signal, setup.assignment, setup.band, directions))
                {
                    if (r.location.kind == MetricsLocation::Kind::port)
                        bundle.port_reports.push_back(std::move(r));
                    else
                        bundle.direction_reports.push_back(std::move(r));
                }
            }

            if (options.patterns || options.baseline)
            {
                for (const auto &t : tones)
                    if (signal.has_line(t.index))
                        bundle.patterns.push_back(
                            {"fundamental", pattern_sweep(signal, t.index, cfg.sweep_points, options.threads)});
                for (const auto &[role, index] : im3_lines)
                    bundle.patterns.push_back({role, pattern_sweep(signal, index, cfg.sweep_points, options.threads)});
            }

            if (options.baseline && cfg.baseline)
            {
                const ArraySignal desired = steered_inputs(setup.assignment);
                if (two_tone && im3_lines.empty())
                {
                    // Linear hardware: nothing to compare, report the marker.
                    for (int index : {2 * k2 - k1, std::abs(k2 - 2 * k1)})
                        if (index > 0 && !setup.assignment.find_tone(index))
                        {
                            ContrastEntry entry;
                            entry.report.freq_index = index;
                            bundle.model_contrast.push_back(entry);
                        }
                }
                for (const auto &[role, index] : im3_lines)
                {
                    NoiseModelConfig noise;
                    noise.distortion_line_indices = {index};
                    noise.per_antenna_line_power = signal.antenna(0).line_power(index);
                    noise.trials = cfg.baseline->trials;
                    noise.seed = cfg.baseline->seed;

                    ContrastEntry entry;
                    entry.baseline_pattern = mean_pattern(noise, desired, index, cfg.sweep_points, options.threads);
                    const auto behavioral = std::find_if(bundle.patterns.begin(), bundle.patterns.end(),
                                                         [index = index](const PatternEntry &p)
                                                         { return p.pattern.freq_index == index; });
                    entry.report = model_contrast_report(behavioral->pattern, entry.baseline_pattern);
                    entry.behavioral_port_power = signal.antenna(0).line_power(index);
                    entry.baseline_port_power =
                        independent_noise_transmit(desired, noise, 0).antenna(0).line_power(index);
                    bundle.model_contrast.push_back(std::move(entry));
                }
            }
        }
        catch (const ConfigError &)
        {
            throw;
        }
        catch (const Error &e)
        {
            throw Error("scenario run failed: " + std::string(e.what()));
        }
        catch (const std::invalid_argument &e)
        {
            throw Error("scenario run failed: " + std::string(e.what()));
        }

        if (!options.patterns)
        {
            // Patterns were only needed for the comparison.
            bundle.patterns.clear();
        }
        return bundle;
    }

    json bundle_to_json(const ReportBundle &bundle)
    {
        json j;
        j["provenance"] = {{"tool", tool_name},
                           {"version", tool_version},
                           {"config_hash", bundle.config_hash},
                           {"seed", bundle.config.baseline ? json(bundle.config.baseline->seed) : json(nullptr)},
                           {"prune_threshold", bundle.config.prune_threshold}};
        j["config"] = config_to_json(bundle.config);
        j["grating_lobe_free"] = bundle.grating_lobe_free;

        json ports = json::array();
        for (const auto &r : bundle.port_reports)
            ports.push_back(metrics_json(r));
        j["port_reports"] = ports;

        json dirs = json::array();
        for (const auto &r : bundle.direction_reports)
            dirs.push_back(metrics_json(r));
        j["direction_reports"] = dirs;

        const ArrayGeometry geometry(bundle.config.num_antennas, bundle.config.element_delay);
        if (bundle.distortion_delays)
            j["distortion_delays"] = {{"upper", delay_json(bundle.distortion_delays->upper, geometry)},
                                      {"lower", delay_json(bundle.distortion_delays->lower, geometry)}};
        else
            j["distortion_delays"] = nullptr;

        json patterns = json::array();
        for (const auto &p : bundle.patterns)
        {
            json s = pattern_summary(p.pattern, "pattern_" + std::to_string(p.pattern.freq_index) + ".csv");
            s["role"] = p.role;
            patterns.push_back(s);
        }
        j["patterns"] = patterns;

        json contrast = json::array();
        for (const auto &c : bundle.model_contrast)
        {
            const auto &r = c.report;
            json e = {{"freq_index", r.freq_index}, {"has_distortion", r.has_distortion}};
            if (!r.has_distortion)
            {
                e["marker"] = "no distortion lines";
                contrast.push_back(e);
                continue;
            }
            e["behavioral_peak_tau_seconds"] = number(r.behavioral_peak_tau);
            e["baseline_peak_tau_seconds"] = number(r.baseline_peak_tau);
            e["behavioral_contrast"] = number(r.behavioral_contrast);
            e["baseline_contrast"] = number(r.baseline_contrast);
            e["peak_ratio"] = number(r.peak_ratio);
            e["behavioral_gain_variance"] = number(r.behavioral_gain_variance);
            e["baseline_gain_variance"] = number(r.baseline_gain_variance);
            e["behavioral_directive"] = r.behavioral_directive;
            e["baseline_directive"] = r.baseline_directive;
            e["behavioral_port_power"] = number(c.behavioral_port_power);
            e["baseline_port_power"] = number(c.baseline_port_power);
            e["baseline_pattern"] =
                pattern_summary(c.baseline_pattern, "baseline_pattern_" + std::to_string(r.freq_index) + ".csv");
            contrast.push_back(e);
        }
        j["model_contrast"] = contrast;
        return j;
    }
}
