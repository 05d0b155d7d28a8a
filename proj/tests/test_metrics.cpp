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
#include "nlbeam/metrics.hpp"
#include "test_util.hpp"

#include <cmath>
#include <random>

using namespace nlbeam;
using test_util::pi;
using test_util::two_pi;

namespace
{
    const FrequencyGrid grid(two_pi, 40);
    const BandDefinition band = BandDefinition::contiguous({8, 12}, 4);

    SteeringAssignment two_tone_assignment(int antennas, double element_delay, double tau1, double tau2,
                                           double phi1 = 0.0, double phi2 = 0.0)
    {
        return steer_tones(grid, ArrayGeometry(antennas, element_delay),
                           {{9, 1.0, phi1, {tau1}}, {11, 1.0, phi2, {tau2}}});
    }

    const std::vector<ReferenceTone> unit_refs{{9, 1.0, 0.0}, {11, 1.0, 0.0}};
}

TEST_CASE("array_gain - coherent, null and four-element examples")
{
    const ArrayGeometry two(2, 0.05);
    const double tau = 0.01;
    const double w = grid.angular_frequency(9);
    CHECK(array_gain(ArraySignal(two, {tone(grid, 1.0, 9, 0.0), tone(grid, 1.0, 9, w * tau)}), 9, {tau}) ==
          Catch::Approx(2.0));
    CHECK(array_gain(ArraySignal(two, {tone(grid, 1.0, 9, 0.0), tone(grid, 1.0, 9, w * tau + pi)}), 9, {tau}) ==
          Catch::Approx(0.0).margin(1e-15));

    const ArrayGeometry four(4, 0.05);
    std::vector<LineSpectrum> ports;
    for (int m = 0; m < 4; ++m)
        ports.push_back(tone(grid, 0.3, 13, m * grid.angular_frequency(13) * -0.02));
    CHECK(array_gain(ArraySignal(four, ports), 13, {-0.02}) == Catch::Approx(4.0));

    CHECK_THROWS_AS(array_gain(ArraySignal(four, ports), 12, {0.0}), UndefinedError);
}

TEST_CASE("aclr - worked example and linear hardware")
{
    const auto x = add(tone(grid, 1.0, 9, 0.0), tone(grid, 1.0, 11, 0.0));
    const auto y = apply_polynomial(x, PolynomialNonlinearity::third_order(0.01));
    const auto r = aclr(y, band);
    CHECK(std::abs(r.upper_db - -45.70234102239244) < 1e-9);
    CHECK(std::abs(r.lower_db - -45.70234102239244) < 1e-9);

    const auto lin = aclr(apply_polynomial(x, PolynomialNonlinearity::third_order(0.0)), band);
    CHECK(lin.upper_db == no_leakage_db);
    CHECK(lin.lower_db == no_leakage_db);

    CHECK_THROWS_AS(aclr(tone(grid, 1.0, 14, 0.0), band), UndefinedError);
}

TEST_CASE("aclr - single-user receiver matches the port")
{
    const auto a = two_tone_assignment(2, 0.05, 0.01, 0.01);
    const auto s = transmit(a, PolynomialNonlinearity::third_order(0.1), band);
    const auto port = aclr(s.antenna(0), band);
    const auto rx = aclr(far_field_receive(s, {0.01}), band);
    CHECK(rx.upper_db == Catch::Approx(port.upper_db).epsilon(1e-12));
    CHECK(rx.lower_db == Catch::Approx(port.lower_db).epsilon(1e-12));
}

TEST_CASE("evm - examples")
{
    const auto x = add(tone(grid, 1.0, 9, 0.0), tone(grid, 1.0, 11, 0.0));
    CHECK(evm(x, unit_refs, band) == Catch::Approx(0.0).margin(1e-15));

    // Intermodulation outside the band does not count.
    const auto y = apply_polynomial(x, PolynomialNonlinearity::third_order(0.1));
    CHECK(evm(y, unit_refs, band) == Catch::Approx(0.0).margin(1e-15));

    // A spur inside a wider band does.
    const BandDefinition wide({7, 13}, {3, 6}, {14, 17}, {3, 17});
    CHECK(evm(y, unit_refs, wide) == Catch::Approx(std::sqrt(2 * 0.075 * 0.075 / (2 * 1.225 * 1.225))).epsilon(1e-12));
    CHECK(evm(y, unit_refs, wide) == Catch::Approx(0.06122448979591836).epsilon(1e-12));
}

TEST_CASE("evm - error paths")
{
    const auto x = add(tone(grid, 1.0, 9, 0.0), tone(grid, 1.0, 11, 0.0));
    CHECK_THROWS_AS(evm(x, {{14, 1.0, 0.0}}, band), std::invalid_argument);
    CHECK_THROWS_AS(evm(x, {{9, 0.0, 0.0}}, band), UndefinedError);
    CHECK_THROWS_AS(evm(tone(grid, 1.0, 14, 0.0), unit_refs, band), UndefinedError);
}

TEST_CASE("reference_tones - in-band lines only")
{
    const auto y = apply_polynomial(add(tone(grid, 1.0, 9, 0.2), tone(grid, 0.5, 11, -0.1)),
                                    PolynomialNonlinearity::third_order(0.1));
    const auto refs = reference_tones(y, band);
    REQUIRE(refs.size() == 2);
    CHECK(refs[0].index == 9);
    CHECK(refs[1].index == 11);
    CHECK(refs[1].phase == Catch::Approx(y.phase(11)));
}

TEST_CASE("port_vs_ota_report - layout and single-user values")
{
    const auto a = two_tone_assignment(3, 0.05, 0.01, 0.01);
    const auto s = transmit(a, PolynomialNonlinearity::third_order(0.1), band);
    const auto reports = port_vs_ota_report(s, a, band, {{0.01}, {-0.03}});
    REQUIRE(reports.size() == 5);
    for (int m = 0; m < 3; ++m)
    {
        CHECK(reports[m].location.kind == MetricsLocation::Kind::port);
        CHECK(reports[m].location.port == m);
        CHECK(reports[m].array_gain_by_line.empty());
        REQUIRE(reports[m].evm);
        CHECK(*reports[m].evm == Catch::Approx(0.0).margin(1e-12));
    }
    const auto &target = reports[3];
    CHECK(target.location.kind == MetricsLocation::Kind::direction);
    CHECK(target.location.tau == 0.01);
    CHECK(target.array_gain_by_line.at(13) == Catch::Approx(3.0));
    CHECK(target.array_gain_by_line.at(9) == Catch::Approx(3.0));
    REQUIRE(target.aclr);
    CHECK(target.aclr->upper_db == Catch::Approx(reports[0].aclr->upper_db).epsilon(1e-12));
    CHECK(reports[0].location.label() != target.location.label());
}

TEST_CASE("port_vs_ota_report - multi-user receivers see less leakage")
{
    // The two-user scenario used throughout: wide spacing, users at 0.2 s and 0.3 s.
    const auto a = two_tone_assignment(2, 0.5, 0.2, 0.3);
    const auto s = transmit(a, PolynomialNonlinearity::third_order(0.1), band);
    const auto reports = port_vs_ota_report(s, a, band, {{0.2}, {0.3}});
    const auto port = *reports[0].aclr;
    for (std::size_t i = 2; i < 4; ++i)
    {
        REQUIRE(reports[i].aclr);
        CHECK(reports[i].aclr->upper_db < port.upper_db);
        CHECK(reports[i].aclr->lower_db < port.lower_db);
    }
}

TEST_CASE("port_vs_ota_report - receiver leakage can exceed the port when the other tone nulls")
{
    // User 2 sits half a period of line 11 away, so the user-1 receiver loses tone 11
    // while the intermodulation does not cancel with it. Improvement is not universal.
    const double t1 = 0.0;
    const double t2 = 1.0 / 22.0;
    const auto a = two_tone_assignment(2, 0.5, t1, t2);
    const auto s = transmit(a, PolynomialNonlinearity::third_order(0.1), band);
    const auto port = aclr(s.antenna(0), band);
    const auto rx = aclr(far_field_receive(s, {t1}), band);
    CHECK(std::max(rx.upper_db, rx.lower_db) > std::max(port.upper_db, port.lower_db));
}

TEST_CASE("property - common phase rotation leaves metrics unchanged")
{
    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> phase(-pi, pi);
    std::uniform_real_distribution<double> tau(-0.05, 0.05);
    for (int trial = 0; trial < 30; ++trial)
    {
        const auto a = two_tone_assignment(3, 0.05, tau(rng), tau(rng), phase(rng), phase(rng));
        const auto s = transmit(a, PolynomialNonlinearity({1.0, 0.05, -0.2}), band);
        const Phasor g = std::polar(1.0, phase(rng));
        std::vector<LineSpectrum> rotated;
        for (const auto &p : s.per_antenna())
            rotated.push_back(p.rotated(g));
        const ArraySignal r(s.geometry(), rotated);
        const double t = tau(rng);
        for (int k : {7, 9, 11, 13})
            CHECK(array_gain(r, k, {t}) == Catch::Approx(array_gain(s, k, {t})).epsilon(1e-10).margin(1e-14));
        const auto refs = reference_tones(far_field_receive(transmit(a, PolynomialNonlinearity({1.0}), band), {t}), band);
        if (refs.empty())
            continue;
        CHECK(evm(far_field_receive(r, {t}), refs, band) ==
              Catch::Approx(evm(far_field_receive(s, {t}), refs, band)).epsilon(1e-9).margin(1e-14));
        const auto a0 = aclr(far_field_receive(s, {t}), band);
        const auto a1 = aclr(far_field_receive(r, {t}), band);
        CHECK(a1.upper_db == Catch::Approx(a0.upper_db).epsilon(1e-10));
    }
}

TEST_CASE("property - array gain averages to one over a full period")
{
    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> phase(-pi, pi);
    std::uniform_real_distribution<double> mag(0.1, 2.0);
    const ArrayGeometry g(5, 0.5);
    for (int k : {7, 9, 13})
    {
        std::vector<LineSpectrum> ports;
        for (int m = 0; m < 5; ++m)
            ports.push_back(tone(grid, mag(rng), k, phase(rng)));
        const ArraySignal s(g, ports);
        const int n = 64;
        const double period = grid.period() / k;
        double sum = 0.0;
        for (int j = 0; j < n; ++j)
            sum += array_gain(s, k, {-period / 2 + period * j / n});
        CHECK(sum / n == Catch::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("property - evm ignores a common complex gain on the observation")
{
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> phase(-pi, pi);
    const auto y = apply_polynomial(add(tone(grid, 1.0, 9, 0.3), tone(grid, 0.8, 10, -1.0)),
                                    PolynomialNonlinearity::third_order(0.2));
    const std::vector<ReferenceTone> refs{{9, 1.0, 0.3}, {10, 0.8, -1.0}};
    const double base = evm(y, refs, band);
    CHECK(base > 0.0);
    for (int trial = 0; trial < 20; ++trial)
        CHECK(evm(y.rotated(std::polar(2.5, phase(rng))), refs, band) == Catch::Approx(base).epsilon(1e-12));
}

TEST_CASE("to_db")
{
    CHECK(to_db(100.0) == Catch::Approx(20.0));
    CHECK(to_db(0.0) == no_leakage_db);
}
