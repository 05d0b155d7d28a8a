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

#ifndef NLBEAM_TESTS_TEST_UTIL_HPP
#define NLBEAM_TESTS_TEST_UTIL_HPP

#include "nlbeam/spectra.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace test_util
{
    inline constexpr double pi = std::numbers::pi;
    inline constexpr double two_pi = 2.0 * std::numbers::pi;

    // Random real spectrum with up to max_lines tones on [1, highest].
    inline nlbeam::LineSpectrum random_spectrum(std::mt19937_64 &rng, const nlbeam::FrequencyGrid &grid, int highest,
                                                int max_lines = 6)
    {
        std::uniform_int_distribution<int> count(1, max_lines);
        std::uniform_int_distribution<int> index(1, highest);
        std::uniform_real_distribution<double> amplitude(0.1, 2.0);
        std::uniform_real_distribution<double> phase(-pi, pi);
        nlbeam::LineSpectrum s(grid);
        for (int i = count(rng); i > 0; --i)
            s = s + nlbeam::tone(grid, amplitude(rng), index(rng), phase(rng));
        return s;
    }

    // Largest per-line relative error of b against a, counting lines missing on either side.
    inline double max_relative_line_error(const nlbeam::LineSpectrum &a, const nlbeam::LineSpectrum &b)
    {
        double worst = 0.0;
        for (const auto &[k, c] : a.lines())
            worst = std::max(worst, std::abs(b.coefficient(k) - c) / std::abs(c));
        for (const auto &[k, c] : b.lines())
            if (!a.lines().contains(k))
                worst = std::max(worst, 1.0);
        return worst;
    }
}

#endif
