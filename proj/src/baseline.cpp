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

#include "nlbeam/baseline.hpp"

#include "nlbeam/error.hpp"
#include "nlbeam/philox.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nlbeam
{
    double noise_phase(std::uint64_t seed, int trial, int antenna, int line)
    {
        const Philox4x32::Counter ctr{static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(antenna),
                                      static_cast<std::uint32_t>(line), 0u};
        return 2.0 * std::numbers::pi * Philox4x32::to_unit(Philox4x32::generate(ctr, Philox4x32::key_from_seed(seed)));
    }

    ArraySignal independent_noise_transmit(const ArraySignal &desired, const NoiseModelConfig &cfg, int trial)
    {
        if (trial < 0 || trial >= cfg.trials)
            throw std::invalid_argument("independent_noise_transmit: trial " + std::to_string(trial) +
                                        " outside [0, trials)");
        if (!(cfg.per_antenna_line_power >= 0.0))
            throw std::invalid_argument("independent_noise_transmit: per_antenna_line_power must be >= 0");

        const double amplitude = std::sqrt(2.0 * cfg.per_antenna_line_power);
        std::vector<LineSpectrum> out;
        out.reserve(desired.per_antenna().size());
        for (int m = 0; m < desired.num_antennas(); ++m)
        {
            LineSpectrum s = desired.antenna(m);
            for (int k : cfg.distortion_line_indices)
            {
                if (desired.has_line(k))
                    throw std::invalid_argument("independent_noise_transmit: line " + std::to_string(k) +
                                                " is part of the desired signal");
                if (amplitude > 0.0)
                    s = add(s, tone(s.grid(), amplitude, k, noise_phase(cfg.seed, trial, m, k)));
            }
            out.push_back(std::move(s));
        }
        return ArraySignal(desired.geometry(), std::move(out));
    }

    Pattern mean_pattern(const NoiseModelConfig &cfg, const ArraySignal &desired, int freq_index, int num_points,
                         unsigned threads)
    {
        if (cfg.trials < 1)
            throw std::invalid_argument("mean_pattern: trials must be positive");
        if (std::find(cfg.distortion_line_indices.begin(), cfg.distortion_line_indices.end(), freq_index) ==
            cfg.distortion_line_indices.end())
            throw std::invalid_argument("mean_pattern: line " + std::to_string(freq_index) +
                                        " is not a configured distortion line");

        const DelaySweep sweep(desired.grid(), desired.geometry(), freq_index, num_points);
        const std::size_t points = sweep.taus().size();

        constexpr int block = 64;
        const auto blocks = static_cast<std::size_t>((cfg.trials + block - 1) / block);
        std::vector<std::vector<double>> partial(blocks, std::vector<double>(points, 0.0));

        detail::for_each_block(blocks, threads,
                               [&](std::size_t b)
                               {
                                   auto &acc = partial[b];
                                   const int first = static_cast<int>(b) * block;
                                   const int last = std::min(cfg.trials, first + block);
                                   for (int trial = first; trial < last; ++trial)
                                   {
                                       const auto coeffs =
                                           independent_noise_transmit(desired, cfg, trial).line(freq_index);
                                       for (std::size_t j = 0; j < points; ++j)
                                           acc[j] += sweep.power(coeffs, j);
                                   }
                               });

        std::vector<double> powers(points, 0.0);
        for (const auto &acc : partial)
            for (std::size_t j = 0; j < points; ++j)
                powers[j] += acc[j];
        for (double &p : powers)
            p /= cfg.trials;

        const double reference = desired.num_antennas() * cfg.per_antenna_line_power;
        return summarize_pattern(freq_index, desired.geometry(), sweep.taus(), powers, reference);
    }

    double gain_variance(const Pattern &p)
    {
        if (p.sweep.size() < 2 || !(p.reference_power > 0.0))
            return 0.0;
        double mean = 0.0;
        for (const auto &pt : p.sweep)
            mean += pt.power / p.reference_power;
        mean /= static_cast<double>(p.sweep.size());
        double var = 0.0;
        for (const auto &pt : p.sweep)
        {
            const double d = pt.power / p.reference_power - mean;
            var += d * d;
        }
        return var / static_cast<double>(p.sweep.size() - 1);
    }

    ModelContrastReport model_contrast_report(const Pattern &behavioral, const Pattern &baseline)
    {
        if (behavioral.freq_index != baseline.freq_index)
            throw IncompatibleError("model_contrast_report: patterns describe different lines");

        ModelContrastReport r;
        r.freq_index = behavioral.freq_index;
        if (behavioral.empty() || baseline.empty() || !(behavioral.peak_power > 0.0) || !(baseline.peak_power > 0.0))
            return r;

        if (behavioral.sweep.size() != baseline.sweep.size())
            throw IncompatibleError("model_contrast_report: sweeps have different lengths");
        for (std::size_t j = 0; j < behavioral.sweep.size(); ++j)
            if (behavioral.sweep[j].tau != baseline.sweep[j].tau)
                throw IncompatibleError("model_contrast_report: sweeps use different delay grids");

        r.has_distortion = true;
        r.behavioral_peak_tau = behavioral.peak_tau;
        r.baseline_peak_tau = baseline.peak_tau;
        r.behavioral_contrast = behavioral.contrast;
        r.baseline_contrast = baseline.contrast;
        r.peak_ratio = behavioral.peak_power / baseline.peak_power;
        r.behavioral_gain_variance = gain_variance(behavioral);
        r.baseline_gain_variance = gain_variance(baseline);
        r.behavioral_directive = behavioral.contrast > directive_contrast;
        r.baseline_directive = baseline.contrast > directive_contrast;
        return r;
    }
}
