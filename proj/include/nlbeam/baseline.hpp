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

#ifndef NLBEAM_BASELINE_HPP
#define NLBEAM_BASELINE_HPP

#include "nlbeam/array.hpp"

#include <cstdint>
#include <vector>

namespace nlbeam
{
    // Distortion modelled as additive noise lines drawn independently per antenna.
    struct NoiseModelConfig
    {
        std::vector<int> distortion_line_indices;
        double per_antenna_line_power = 0.0;
        int trials = 1;
        std::uint64_t seed = 0;
    };

    // Uniform phase on [0, 2*pi) keyed by (seed, trial, antenna, line).
    double noise_phase(std::uint64_t seed, int trial, int antenna, int line);

    // Adds to every antenna, at every configured index, a tone of amplitude
    // sqrt(2 * per_antenna_line_power) with an independent uniform phase.
    // Throws std::invalid_argument if trial is out of range or a distortion index is
    // already occupied by the desired signal.
    ArraySignal independent_noise_transmit(const ArraySignal &desired, const NoiseModelConfig &cfg, int trial);

    // Pattern of one noise line averaged over all trials. Trials are split into fixed
    // blocks summed in order, so any thread count yields bit-identical output.
    Pattern mean_pattern(const NoiseModelConfig &cfg, const ArraySignal &desired, int freq_index,
                         int num_points = default_sweep_points, unsigned threads = 1);

    inline constexpr double directive_contrast = 1.5;

    struct ModelContrastReport
    {
        bool has_distortion = false; // false: neither pattern carries the line
        int freq_index = 0;
        double behavioral_peak_tau = 0.0;
        double baseline_peak_tau = 0.0;
        double behavioral_contrast = 0.0;
        double baseline_contrast = 0.0;
        double peak_ratio = 0.0; // behavioral peak power / baseline peak power
        double behavioral_gain_variance = 0.0;
        double baseline_gain_variance = 0.0;
        bool behavioral_directive = false;
        bool baseline_directive = false;
    };

    // Sample variance over the sweep of power / reference_power.
    double gain_variance(const Pattern &p);

    // Throws IncompatibleError unless both patterns share frequency and sweep grid.
    ModelContrastReport model_contrast_report(const Pattern &behavioral, const Pattern &baseline);
}

#endif
