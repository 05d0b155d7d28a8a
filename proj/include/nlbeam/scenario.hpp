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

#ifndef NLBEAM_SCENARIO_HPP
#define NLBEAM_SCENARIO_HPP

#include "nlbeam/array.hpp"
#include "nlbeam/baseline.hpp"
#include "nlbeam/error.hpp"
#include "nlbeam/metrics.hpp"
#include "nlbeam/nonlinearity.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nlbeam::scenario
{
    inline constexpr std::string_view tool_name = "nlbeam";
    inline constexpr std::string_view tool_version = "1.0.0";

    // Semantic problem with a config; field() is the dotted JSON path.
    class ConfigError : public Error
    {
    public:
        ConfigError(std::string field, const std::string &message);
        const std::string &field() const { return field_; }

    private:
        std::string field_;
    };

    // Malformed JSON; line and column are 1-based.
    class ConfigSyntaxError : public Error
    {
    public:
        ConfigSyntaxError(int line, int column, const std::string &message);
        int line() const { return line_; }
        int column() const { return column_; }

    private:
        int line_;
        int column_;
    };

    struct ToneConfig
    {
        int index = 0;
        double amplitude = 1.0;
        double phase = 0.0;
        double target_delay = 0.0; // seconds
        bool operator==(const ToneConfig &) const = default;
    };

    struct BaselineConfig
    {
        int trials = 10000;
        std::uint64_t seed = 0;
        bool operator==(const BaselineConfig &) const = default;
    };

    struct ScenarioConfig
    {
        double base_rate = 0.0; // rad/s
        int max_index = 0;
        double prune_threshold = default_prune_threshold;
        std::vector<ToneConfig> tones;
        int num_antennas = 0;
        double element_delay = 0.0; // seconds
        std::vector<double> coefficients;
        IndexInterval in_band;
        IndexInterval adjacent_lower;
        IndexInterval adjacent_upper;
        IndexInterval keep_window;
        int sweep_points = default_sweep_points;
        std::optional<BaselineConfig> baseline;
        std::string output_directory = "out";

        bool operator==(const ScenarioConfig &) const = default;
    };

    // Parses and validates. Throws ConfigSyntaxError or ConfigError.
    ScenarioConfig parse_config(std::string_view text);

    // Throws ConfigError naming the first offending field.
    void validate(const ScenarioConfig &cfg);

    nlohmann::json config_to_json(const ScenarioConfig &cfg);

    // FNV-1a 64 of the compact config echo, as 16 hex digits.
    std::string config_hash(const ScenarioConfig &cfg);

    // Domain objects described by a validated config.
    struct Setup
    {
        FrequencyGrid grid;
        ArrayGeometry geometry;
        PolynomialNonlinearity nonlinearity;
        BandDefinition band;
        SteeringAssignment assignment;
    };

    Setup build_setup(const ScenarioConfig &cfg);

    struct PatternEntry
    {
        std::string role; // fundamental, im3_upper, im3_lower
        Pattern pattern;
    };

    struct ContrastEntry
    {
        ModelContrastReport report;
        Pattern baseline_pattern;
        double behavioral_port_power = 0.0; // line power at antenna 1
        double baseline_port_power = 0.0;
    };

    struct ReportBundle
    {
        ScenarioConfig config;
        std::string config_hash;
        std::vector<MetricsReport> port_reports;
        std::vector<MetricsReport> direction_reports;
        std::optional<DistortionDelays> distortion_delays;
        std::vector<PatternEntry> patterns;
        std::vector<ContrastEntry> model_contrast;
        bool grating_lobe_free = true;
    };

    struct RunOptions
    {
        bool metrics = true;
        bool patterns = true;
        bool baseline = true; // only when the config has a baseline section
        unsigned threads = 1;
    };

    // Runs the scenario end to end: transmit, port metrics, distortion directions,
    // pattern sweeps, over-the-air metrics, and the optional noise-model comparison.
    // Module errors are rethrown as nlbeam::Error with scenario context prepended.
    ReportBundle run_scenario(const ScenarioConfig &cfg, const RunOptions &options = {});

    nlohmann::json bundle_to_json(const ReportBundle &bundle);

    // Text of pattern_<index>.csv: header plus one row per sweep point.
    std::string pattern_csv(const Pattern &p);

    // Writes pattern CSVs and, if write_report, report.json into out_dir. The report
    // is written to a temporary file and renamed, so a failed run leaves no
    // partial report.json. Throws std::runtime_error on I/O failure.
    void emit(const ReportBundle &bundle, const std::filesystem::path &out_dir, bool write_report = true);
}

#endif
