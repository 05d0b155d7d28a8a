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

#include "catch_amalgamated.hpp"

#include "nlbeam/error.hpp"
#include "nlbeam/spectra.hpp"
#include "test_util.hpp"

#include <cmath>
#include <complex>
#include <random>

using namespace nlbeam;
using test_util::pi;
using test_util::two_pi;

namespace
{
    const FrequencyGrid grid(two_pi, 40);
}

TEST_CASE("tone - cosine phasor decomposition")
{
    const auto s = tone(grid, 1.0, 9, 0.0);
    REQUIRE(s.size() == 2);
    CHECK(std::abs(s.coefficient(9) - Phasor(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(s.coefficient(-9) - Phasor(0.5, 0.0)) < 1e-15);
    CHECK(s.amplitude(9) == Catch::Approx(1.0));
    CHECK(s.line_power(9) == Catch::Approx(0.5));
}

TEST_CASE("tone - phase rotation")
{
    const auto s = tone(grid, 1.0, 11, pi / 2);
    CHECK(std::abs(s.coefficient(11) - std::polar(0.5, pi / 2)) < 1e-15);
    CHECK(std::abs(s.coefficient(-11) - std::polar(0.5, -pi / 2)) < 1e-15);
    CHECK(s.phase(11) == Catch::Approx(pi / 2));
}

TEST_CASE("tone - zero amplitude is pruned away")
{
    CHECK(tone(grid, 0.0, 9, 0.3).empty());
}

TEST_CASE("tone - argument checks")
{
    CHECK_THROWS_AS(tone(grid, 1.0, 41, 0.0), RangeError);
    CHECK_THROWS_AS(tone(grid, 1.0, 0, 0.0), RangeError);
    CHECK_THROWS_AS(tone(grid, -1.0, 9, 0.0), std::invalid_argument);
}

TEST_CASE("add - two-tone, identity, cancellation")
{
    const auto two = tone(grid, 1.0, 9, 0.0) + tone(grid, 1.0, 11, 0.0);
    CHECK(two.nonnegative_indices() == std::vector<int>{9, 11});
    CHECK(two.amplitude(9) == Catch::Approx(1.0));
    CHECK(two.amplitude(11) == Catch::Approx(1.0));

    const LineSpectrum empty(grid);
    CHECK((two + empty).lines() == two.lines());

    CHECK((tone(grid, 1.0, 9, 0.0) + tone(grid, 1.0, 9, pi)).empty());
}

TEST_CASE("add - grid mismatch")
{
    const FrequencyGrid other(two_pi, 41);
    CHECK_THROWS_AS(tone(grid, 1.0, 9, 0.0) + tone(other, 1.0, 9, 0.0), IncompatibleError);
    CHECK_THROWS_AS(multiply(tone(grid, 1.0, 9, 0.0), tone(other, 1.0, 9, 0.0)), IncompatibleError);
}

TEST_CASE("multiply - product-to-sum identity")
{
    // cos(a) cos(b) = cos(a-b)/2 + cos(a+b)/2
    const auto p = multiply(tone(grid, 1.0, 3, 0.4), tone(grid, 1.0, 5, -0.1));
    CHECK(p.nonnegative_indices() == std::vector<int>{2, 8});
    CHECK(p.amplitude(2) == Catch::Approx(0.5));
    CHECK(p.phase(2) == Catch::Approx(-0.5));
    CHECK(p.amplitude(8) == Catch::Approx(0.5));
    CHECK(p.phase(8) == Catch::Approx(0.3));

    // cos^2 has a DC term of 1/2.
    const auto sq = multiply(tone(grid, 1.0, 4, 0.2), tone(grid, 1.0, 4, 0.2));
    CHECK(sq.coefficient(0).real() == Catch::Approx(0.5));
    CHECK(sq.amplitude(8) == Catch::Approx(0.5));

    const FrequencyGrid small(two_pi, 10);
    CHECK_THROWS_AS(multiply(tone(small, 1.0, 6, 0.0), tone(small, 1.0, 6, 0.0)), RangeError);
}

TEST_CASE("sample_waveform - direct evaluation")
{
    const FrequencyGrid g(two_pi, 3);
    const auto w = sample_waveform(tone(g, 1.0, 1, 0.0), 1, 8);
    REQUIRE(w.samples.size() == 8);
    CHECK(w.sample_rate == Catch::Approx(8.0));
    for (int n = 0; n < 8; ++n)
        CHECK(w.samples[n] == Catch::Approx(std::cos(two_pi * n / 8)).margin(1e-15));

    const auto zero = sample_waveform(LineSpectrum(g), 2, 8);
    for (double x : zero.samples)
        CHECK(x == 0.0);
}

TEST_CASE("sample_waveform - two-tone bound and Nyquist check")
{
    const auto two = tone(grid, 1.0, 9, 0.0) + tone(grid, 1.0, 11, 0.0);
    const auto w = sample_waveform(two, 3, 97);
    for (double x : w.samples)
        CHECK(std::abs(x) <= 2.0 + 1e-12);
    CHECK_THROWS_AS(sample_waveform(two, 1, 80), AliasingError);
    CHECK_NOTHROW(sample_waveform(two, 1, 81));
}

TEST_CASE("sample_waveform - time offset delays the waveform")
{
    // Sampling at t - d equals sampling the spectrum with every tone retarded by k*w*d.
    const auto s = tone(grid, 1.0, 5, 0.2) + tone(grid, 0.5, 7, -1.0);
    const double d = 0.013;
    const auto shifted = sample_waveform(s, 1, 128, -d);
    const auto direct = sample_waveform(
        tone(grid, 1.0, 5, 0.2 - 5 * two_pi * d) + tone(grid, 0.5, 7, -1.0 - 7 * two_pi * d), 1, 128);
    for (std::size_t n = 0; n < direct.samples.size(); ++n)
        CHECK(shifted.samples[n] == Catch::Approx(direct.samples[n]).margin(1e-13));
}

TEST_CASE("estimate_lines - round trips and error paths")
{
    const auto s = tone(grid, 1.0, 9, 0.3);
    const auto est = estimate_lines(sample_waveform(s, 2, 101), grid);
    REQUIRE(est.nonnegative_indices() == std::vector<int>{9});
    CHECK(std::abs(est.amplitude(9) - 1.0) < 1e-9);
    CHECK(std::abs(est.phase(9) - 0.3) < 1e-9);

    CHECK(estimate_lines(sample_waveform(LineSpectrum(grid), 1, 101), grid).empty());

    auto w = sample_waveform(s, 2, 101);
    w.samples.pop_back();
    CHECK_THROWS_AS(estimate_lines(w, grid), LeakageError);

    auto off_rate = sample_waveform(s, 2, 101);
    off_rate.sample_rate *= 1.001;
    CHECK_THROWS_AS(estimate_lines(off_rate, grid), LeakageError);

    const FrequencyGrid small(two_pi, 5);
    CHECK_THROWS_AS(estimate_lines(sample_waveform(tone(small, 1.0, 2, 0.0), 1, 11), grid), AliasingError);
}

TEST_CASE("property - conjugate symmetry, commutativity, associativity")
{
    std::mt19937_64 rng(20260101);
    for (int trial = 0; trial < 200; ++trial)
    {
        const auto a = test_util::random_spectrum(rng, grid, 20);
        const auto b = test_util::random_spectrum(rng, grid, 20);
        const auto c = test_util::random_spectrum(rng, grid, 20);

        CHECK(a.is_conjugate_symmetric());
        CHECK((a + b).is_conjugate_symmetric());
        CHECK(multiply(a, b).is_conjugate_symmetric());
        CHECK((a - b).is_conjugate_symmetric());
        CHECK(a.rotated(std::polar(1.3, 0.7)).is_conjugate_symmetric());

        const auto ab = a + b;
        const auto ba = b + a;
        for (const auto &[k, v] : ab.lines())
            CHECK(std::abs(ba.coefficient(k) - v) <= grid.prune_threshold());

        const auto left = (a + b) + c;
        const auto right = a + (b + c);
        for (int k = -grid.max_index(); k <= grid.max_index(); ++k)
            CHECK(std::abs(left.coefficient(k) - right.coefficient(k)) <= 2 * grid.prune_threshold());
    }
}

TEST_CASE("property - sample/DFT round trip within 1e-9 per line")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> periods(1, 3);
    std::uniform_int_distribution<int> extra(1, 40);
    for (int trial = 0; trial < 100; ++trial)
    {
        const auto s = test_util::random_spectrum(rng, grid, 40, 8);
        const auto est = estimate_lines(sample_waveform(s, periods(rng), 2 * grid.max_index() + extra(rng)), grid);
        CHECK(test_util::max_relative_line_error(s, est) < 1e-9);
    }
}
