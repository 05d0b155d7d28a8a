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

#include "nlbeam/nonlinearity.hpp"
#include "nlbeam/scenario.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace
{
    using namespace nlbeam;
    using namespace nlbeam::scenario;

    struct CommonFlags
    {
        std::string config_path;
        std::string out_dir;
        std::optional<std::uint64_t> seed;
        std::optional<int> points;
        unsigned threads = 1;
    };

    void add_common(CLI::App *cmd, CommonFlags &flags)
    {
        cmd->add_option("--config", flags.config_path, "Scenario config (JSON)")->required();
        cmd->add_option("--out", flags.out_dir, "Output directory (overrides output.directory)");
        cmd->add_option("--seed", flags.seed, "Baseline seed (overrides baseline.seed)");
        cmd->add_option("--points", flags.points, "Sweep points (overrides sweep.points)");
        cmd->add_option("--threads", flags.threads, "Worker threads for sweeps and trials")->check(CLI::PositiveNumber);
    }

    ScenarioConfig load(const CommonFlags &flags, bool need_baseline)
    {
        std::ifstream in(flags.config_path, std::ios::binary);
        if (!in)
            throw std::runtime_error("cannot read config " + flags.config_path);
        std::stringstream text;
        text << in.rdbuf();

        ScenarioConfig cfg = parse_config(text.str());
        if (!flags.out_dir.empty())
            cfg.output_directory = flags.out_dir;
        if (flags.points)
            cfg.sweep_points = *flags.points;
        if (need_baseline && !cfg.baseline)
            cfg.baseline = BaselineConfig{};
        if (flags.seed && cfg.baseline)
            cfg.baseline->seed = *flags.seed;
        validate(cfg);
        return cfg;
    }

    void print_summary(const ReportBundle &bundle)
    {
        for (const auto &r : bundle.port_reports)
            if (r.aclr)
                std::printf("%-26s evm=%.6g aclr_lower=%.4f dB aclr_upper=%.4f dB\n", r.location.label().c_str(),
                            r.evm.value_or(0.0), r.aclr->lower_db, r.aclr->upper_db);
        for (const auto &r : bundle.direction_reports)
            if (r.aclr)
                std::printf("%-26s evm=%.6g aclr_lower=%.4f dB aclr_upper=%.4f dB\n", r.location.label().c_str(),
                            r.evm.value_or(0.0), r.aclr->lower_db, r.aclr->upper_db);
        if (bundle.distortion_delays)
            std::printf("distortion delays: line %d at %.12g s, line %d at %.12g s\n",
                        bundle.distortion_delays->upper.index, bundle.distortion_delays->upper.raw,
                        bundle.distortion_delays->lower.index, bundle.distortion_delays->lower.raw);
        for (const auto &p : bundle.patterns)
            std::printf("pattern %-12s line %3d peak_tau=%.9g s peak_gain=%.9g contrast=%.6g%s\n", p.role.c_str(),
                        p.pattern.freq_index, p.pattern.peak_tau, p.pattern.peak_gain, p.pattern.contrast,
                        p.pattern.multiple_peaks ? " (multiple lobes)" : "");
        for (const auto &c : bundle.model_contrast)
        {
            if (!c.report.has_distortion)
            {
                std::printf("compare line %d: no distortion lines\n", c.report.freq_index);
                continue;
            }
            std::printf("compare line %d: behavioral contrast %.6g (%s), independent-noise contrast %.6g (%s)\n",
                        c.report.freq_index, c.report.behavioral_contrast,
                        c.report.behavioral_directive ? "directive" : "flat", c.report.baseline_contrast,
                        c.report.baseline_directive ? "directive" : "flat");
        }
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Line-spectrum simulator for beamformed non-linear transmitter distortion"};
    app.require_subcommand(1);

    CommonFlags run_flags, sweep_flags, compare_flags;
    auto *run = app.add_subcommand("run", "Run a scenario and write report.json plus pattern CSVs");
    add_common(run, run_flags);
    auto *sweep = app.add_subcommand("sweep", "Write pattern CSVs only");
    add_common(sweep, sweep_flags);
    auto *compare = app.add_subcommand("compare", "Compare the behavioral model with independent distortion noise");
    add_common(compare, compare_flags);

    int k1 = 9, k2 = 11;
    double phi1 = 0.0, phi2 = 0.0, alpha = 0.1;
    auto *expand = app.add_subcommand("expand", "Print the closed-form two-tone third-order expansion");
    expand->add_option("--k1", k1, "Lower tone index")->capture_default_str();
    expand->add_option("--k2", k2, "Upper tone index")->capture_default_str();
    expand->add_option("--phi1", phi1, "Lower tone phase (rad)")->capture_default_str();
    expand->add_option("--phi2", phi2, "Upper tone phase (rad)")->capture_default_str();
    expand->add_option("--alpha", alpha, "Cubic coefficient")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*expand)
        {
            std::printf("kind,index,amplitude,phase\n");
            for (const auto &t : two_tone_third_order_terms(k1, k2, phi1, phi2, alpha))
                std::printf("%s,%d,%.12g,%.12g\n", std::string(to_string(t.kind)).c_str(), t.index, t.amplitude,
                            t.phase);
            return 0;
        }

        if (*run)
        {
            const ScenarioConfig cfg = load(run_flags, false);
            const ReportBundle bundle = run_scenario(cfg, {true, true, true, run_flags.threads});
            emit(bundle, cfg.output_directory);
            print_summary(bundle);
        }
        else if (*sweep)
        {
            const ScenarioConfig cfg = load(sweep_flags, false);
            const ReportBundle bundle = run_scenario(cfg, {false, true, false, sweep_flags.threads});
            emit(bundle, cfg.output_directory, false);
            print_summary(bundle);
        }
        else if (*compare)
        {
            const ScenarioConfig cfg = load(compare_flags, true);
            const ReportBundle bundle = run_scenario(cfg, {false, true, true, compare_flags.threads});
            emit(bundle, cfg.output_directory);
            print_summary(bundle);
        }
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "nlbeam: %s\n", e.what());
        return 1;
    }
    return 0;
}
