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

#include "nlbeam/array.hpp"

#include "nlbeam/error.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nlbeam
{
    namespace
    {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        constexpr double visibility_slack = 1e-12;
        constexpr double peak_tolerance = 1e-2;

        double golden_section_max(const std::function<double(double)> &f, double a, double b)
        {
            const double r = (std::sqrt(5.0) - 1.0) / 2.0;
            double c = b - r * (b - a);
            double d = a + r * (b - a);
            double fc = f(c);
            double fd = f(d);
            for (int iter = 0; iter < 200 && (b - a) > 1e-15 * std::max(1.0, std::abs(a) + std::abs(b)); ++iter)
            {
                if (fc >= fd)
                {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - r * (b - a);
                    fc = f(c);
                }
                else
                {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + r * (b - a);
                    fd = f(d);
                }
            }
            return fc >= fd ? c : d;
        }
    }

    ArrayGeometry::ArrayGeometry(int num_antennas, double element_delay)
        : num_antennas_(num_antennas), element_delay_(element_delay)
    {
        if (num_antennas < 1)
            throw std::invalid_argument("ArrayGeometry: num_antennas must be at least 1");
        if (!(element_delay > 0.0) || !std::isfinite(element_delay))
            throw std::invalid_argument("ArrayGeometry: element_delay must be positive and finite");
    }

    bool ArrayGeometry::grating_lobe_free(double angular_frequency) const
    {
        return element_delay_ * std::abs(angular_frequency) <= std::numbers::pi * (1.0 + visibility_slack);
    }

    bool ArrayGeometry::visible(double tau) const
    {
        return std::abs(tau) <= element_delay_ * (1.0 + visibility_slack);
    }

    double ArrayGeometry::angle(double tau) const
    {
        return std::asin(std::clamp(tau / element_delay_, -1.0, 1.0));
    }

    SteeringAssignment::SteeringAssignment(FrequencyGrid grid, ArrayGeometry geometry, std::vector<SteeredTone> tones)
        : grid_(grid), geometry_(geometry), tones_(std::move(tones))
    {
        for (std::size_t i = 0; i < tones_.size(); ++i)
        {
            const auto &t = tones_[i];
            if (t.index < 1 || t.index > grid_.max_index())
                throw RangeError("steer_tones: tone index " + std::to_string(t.index) + " is off the grid");
            if (!(t.amplitude >= 0.0) || !std::isfinite(t.amplitude) || !std::isfinite(t.base_phase))
                throw std::invalid_argument("steer_tones: tone amplitude and phase must be finite, amplitude >= 0");
            if (!std::isfinite(t.target.tau) || !geometry_.visible(t.target.tau))
                throw RangeError("steer_tones: target delay " + std::to_string(t.target.tau) +
                                 " s lies outside [-element_delay, element_delay]");
            for (std::size_t j = 0; j < i; ++j)
                if (tones_[j].index == t.index)
                    throw std::invalid_argument("steer_tones: duplicate tone index " + std::to_string(t.index));
        }

        const std::size_t width = tones_.size();
        phases_.resize(static_cast<std::size_t>(geometry_.num_antennas()) * width);
        for (int m = 0; m < geometry_.num_antennas(); ++m)
            for (std::size_t i = 0; i < width; ++i)
            {
                const auto &t = tones_[i];
                phases_[static_cast<std::size_t>(m) * width + i] =
                    t.base_phase + m * grid_.angular_frequency(t.index) * t.target.tau;
            }
    }

    double SteeringAssignment::phase(int antenna, std::size_t tone) const
    {
        if (antenna < 0 || antenna >= num_antennas() || tone >= tones_.size())
            throw std::out_of_range("SteeringAssignment::phase");
        return phases_[static_cast<std::size_t>(antenna) * tones_.size() + tone];
    }

    double SteeringAssignment::wrapped_phase(int antenna, std::size_t tone) const
    {
        const double p = std::fmod(phase(antenna, tone), two_pi);
        return p < 0.0 ? p + two_pi : p;
    }

    double SteeringAssignment::lead(int antenna, std::size_t tone) const
    {
        const double p = std::fmod(phase(antenna, tone) - phase(0, tone), two_pi);
        return p < 0.0 ? p + two_pi : p;
    }

    std::optional<std::size_t> SteeringAssignment::find_tone(int index) const
    {
        for (std::size_t i = 0; i < tones_.size(); ++i)
            if (tones_[i].index == index)
                return i;
        return std::nullopt;
    }

    SteeringAssignment steer_tones(const FrequencyGrid &grid, const ArrayGeometry &geometry,
                                   std::vector<SteeredTone> tones)
    {
        return SteeringAssignment(grid, geometry, std::move(tones));
    }

    ArraySignal::ArraySignal(ArrayGeometry geometry, std::vector<LineSpectrum> per_antenna)
        : geometry_(geometry), per_antenna_(std::move(per_antenna))
    {
        if (per_antenna_.size() != static_cast<std::size_t>(geometry_.num_antennas()))
            throw IncompatibleError("ArraySignal: expected " + std::to_string(geometry_.num_antennas()) +
                                    " antenna spectra, got " + std::to_string(per_antenna_.size()));
        for (const auto &s : per_antenna_)
            if (s.grid() != per_antenna_.front().grid())
                throw IncompatibleError("ArraySignal: antenna spectra use different grids");
    }

    std::vector<Phasor> ArraySignal::line(int index) const
    {
        std::vector<Phasor> out;
        out.reserve(per_antenna_.size());
        for (const auto &s : per_antenna_)
            out.push_back(s.coefficient(index));
        return out;
    }

    bool ArraySignal::has_line(int index) const
    {
        return std::any_of(per_antenna_.begin(), per_antenna_.end(),
                           [index](const LineSpectrum &s) { return s.lines().contains(index); });
    }

    std::vector<int> ArraySignal::positive_indices() const
    {
        std::vector<int> out;
        for (const auto &s : per_antenna_)
            for (int k : s.nonnegative_indices())
                if (k > 0)
                    out.push_back(k);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    ArraySignal steered_inputs(const SteeringAssignment &assignment)
    {
        std::vector<LineSpectrum> spectra;
        spectra.reserve(static_cast<std::size_t>(assignment.num_antennas()));
        for (int m = 0; m < assignment.num_antennas(); ++m)
        {
            LineSpectrum x(assignment.grid());
            for (std::size_t i = 0; i < assignment.tones().size(); ++i)
                x = add(x, tone(assignment.grid(), assignment.tones()[i].amplitude, assignment.tones()[i].index,
                                assignment.wrapped_phase(m, i)));
            spectra.push_back(std::move(x));
        }
        return ArraySignal(assignment.geometry(), std::move(spectra));
    }

    ArraySignal transmit(const SteeringAssignment &assignment, const PolynomialNonlinearity &f,
                         const BandDefinition &band)
    {
        const ArraySignal inputs = steered_inputs(assignment);
        std::vector<LineSpectrum> outputs;
        outputs.reserve(inputs.per_antenna().size());
        for (const auto &x : inputs.per_antenna())
            outputs.push_back(band_filter(apply_polynomial(x, f), band));
        return ArraySignal(assignment.geometry(), std::move(outputs));
    }

    LineSpectrum far_field_receive(const ArraySignal &signal, DelaySteer direction)
    {
        if (!std::isfinite(direction.tau) || !signal.geometry().visible(direction.tau))
            throw RangeError("far_field_receive: delay " + std::to_string(direction.tau) +
                             " s outside [-element_delay, element_delay]");

        const FrequencyGrid &grid = signal.grid();
        LineSpectrum::LineMap half;
        for (int m = 0; m < signal.num_antennas(); ++m)
        {
            const auto &lines = signal.antenna(m).lines();
            for (auto it = lines.lower_bound(0); it != lines.end(); ++it)
            {
                const double shift = -m * grid.angular_frequency(it->first) * direction.tau;
                half[it->first] += it->second * std::polar(1.0, shift);
            }
        }
        return LineSpectrum::from_nonnegative(grid, half);
    }

    double reduce_delay(double tau, double modulus)
    {
        if (!(modulus > 0.0))
            throw std::invalid_argument("reduce_delay: modulus must be positive");
        return tau - modulus * std::round(tau / modulus);
    }

    std::vector<double> DistortionDelay::visible_equivalents(const ArrayGeometry &geometry) const
    {
        std::vector<double> out;
        const double reach = geometry.element_delay() * (1.0 + visibility_slack);
        const auto first = static_cast<long long>(std::ceil((-reach - raw) / modulus));
        const auto last = static_cast<long long>(std::floor((reach - raw) / modulus));
        for (long long n = first; n <= last; ++n)
            out.push_back(raw + static_cast<double>(n) * modulus);
        return out;
    }

    DistortionDelays distortion_delays(int k1, int k2, const SteeringAssignment &assignment)
    {
        if (assignment.num_antennas() < 2)
            throw std::invalid_argument("distortion_delays: at least two antennas required");
        if (k1 < 1 || k2 <= k1)
            throw std::invalid_argument("distortion_delays: require 1 <= k1 < k2");
        const auto low = assignment.find_tone(k1);
        const auto high = assignment.find_tone(k2);
        if (assignment.tones().size() != 2 || !low || !high)
            throw std::invalid_argument("distortion_delays: assignment must steer exactly tones " +
                                        std::to_string(k1) + " and " + std::to_string(k2));
        if (k2 == 2 * k1)
            throw DegenerateError("distortion_delays: k2 = 2*k1 puts the lower intermodulation product at DC");

        const double w = assignment.grid().base_rate();
        const double p1a = assignment.phase(0, *low);
        const double p2a = assignment.phase(0, *high);
        const double p1b = assignment.phase(1, *low);
        const double p2b = assignment.phase(1, *high);

        auto make = [w](int signed_index, double phase_lead)
        {
            DistortionDelay d;
            d.index = std::abs(signed_index);
            d.raw = phase_lead / (signed_index * w);
            d.modulus = two_pi / (d.index * w);
            d.reduced = reduce_delay(d.raw, d.modulus);
            return d;
        };

        return {make(2 * k2 - k1, (2.0 * p2b - p1b) - (2.0 * p2a - p1a)),
                make(k2 - 2 * k1, (p2b - 2.0 * p1b) - (p2a - 2.0 * p1a))};
    }

    DelaySweep::DelaySweep(const FrequencyGrid &grid, const ArrayGeometry &geometry, int freq_index, int num_points)
        : angular_frequency_(grid.angular_frequency(freq_index)), num_antennas_(geometry.num_antennas()),
          freq_index_(freq_index)
    {
        if (num_points < 16)
            throw std::invalid_argument("pattern sweep needs at least 16 points");
        if (freq_index < 1 || freq_index > grid.max_index())
            throw RangeError("pattern sweep: frequency index " + std::to_string(freq_index) + " is off the grid");

        const double delta = geometry.element_delay();
        taus_.resize(static_cast<std::size_t>(num_points));
        for (int j = 0; j < num_points; ++j)
            taus_[static_cast<std::size_t>(j)] = -delta + 2.0 * delta * j / (num_points - 1);
        taus_.back() = delta;

        table_.resize(taus_.size() * static_cast<std::size_t>(num_antennas_));
        for (std::size_t j = 0; j < taus_.size(); ++j)
            for (int m = 0; m < num_antennas_; ++m)
                table_[j * static_cast<std::size_t>(num_antennas_) + static_cast<std::size_t>(m)] =
                    std::polar(1.0, -m * angular_frequency_ * taus_[j]);
    }

    double DelaySweep::step() const { return taus_[1] - taus_[0]; }

    double DelaySweep::power(std::span<const Phasor> per_antenna, std::size_t j) const
    {
        const Phasor *row = &table_[j * static_cast<std::size_t>(num_antennas_)];
        Phasor acc{};
        for (int m = 0; m < num_antennas_; ++m)
            acc += per_antenna[static_cast<std::size_t>(m)] * row[m];
        return 2.0 * std::norm(acc);
    }

    double DelaySweep::power_at(std::span<const Phasor> per_antenna, double tau) const
    {
        Phasor acc{};
        for (int m = 0; m < num_antennas_; ++m)
            acc += per_antenna[static_cast<std::size_t>(m)] * std::polar(1.0, -m * angular_frequency_ * tau);
        return 2.0 * std::norm(acc);
    }

    double Pattern::step() const { return sweep.size() > 1 ? sweep[1].tau - sweep[0].tau : 0.0; }

    Pattern summarize_pattern(int freq_index, const ArrayGeometry &geometry, const std::vector<double> &taus,
                              const std::vector<double> &powers, double reference_power,
                              const std::function<double(double)> *evaluate)
    {
        if (taus.size() != powers.size() || taus.size() < 2)
            throw std::invalid_argument("summarize_pattern: mismatched or too short sweep");

        Pattern p;
        p.freq_index = freq_index;
        p.reference_power = reference_power;
        p.sweep.reserve(taus.size());
        double total = 0.0;
        for (std::size_t j = 0; j < taus.size(); ++j)
        {
            p.sweep.push_back({taus[j], powers[j], geometry.angle(taus[j])});
            total += powers[j];
        }
        p.mean_power = total / static_cast<double>(powers.size());

        const auto [lo_it, hi_it] = std::minmax_element(powers.begin(), powers.end());
        const double grid_max = *hi_it;
        const std::size_t n = powers.size();

        struct Lobe
        {
            double tau;
            double power;
        };
        std::vector<Lobe> lobes;
        if (grid_max - *lo_it <= 1e-12 * grid_max)
        {
            const auto j = static_cast<std::size_t>(hi_it - powers.begin());
            lobes.push_back({taus[j], powers[j]});
        }
        else
        {
            for (std::size_t j = 0; j < n; ++j)
            {
                const bool left_ok = j == 0 || powers[j] >= powers[j - 1];
                const bool right_ok = j + 1 == n || powers[j] >= powers[j + 1];
                if (!left_ok || !right_ok || powers[j] < (1.0 - peak_tolerance) * grid_max)
                    continue;
                Lobe lobe{taus[j], powers[j]};
                if (evaluate)
                {
                    const double a = taus[j == 0 ? 0 : j - 1];
                    const double b = taus[j + 1 == n ? j : j + 1];
                    const double t = golden_section_max(*evaluate, a, b);
                    const double v = (*evaluate)(t);
                    if (v > lobe.power)
                        lobe = {t, v};
                }
                if (!lobes.empty() && std::abs(lobes.back().tau - lobe.tau) < 0.5 * (taus[1] - taus[0]))
                {
                    if (lobe.power > lobes.back().power)
                        lobes.back() = lobe;
                    continue;
                }
                lobes.push_back(lobe);
            }
        }

        const auto best = std::max_element(lobes.begin(), lobes.end(),
                                           [](const Lobe &x, const Lobe &y) { return x.power < y.power; });
        p.peak_tau = best->tau;
        p.peak_power = best->power;
        for (const auto &lobe : lobes)
            if (lobe.power >= (1.0 - peak_tolerance) * p.peak_power)
                p.peak_taus.push_back(lobe.tau);
        p.multiple_peaks = p.peak_taus.size() > 1;
        p.peak_gain = reference_power > 0.0 ? p.peak_power / reference_power : 0.0;
        p.contrast = p.mean_power > 0.0 ? p.peak_power / p.mean_power : 0.0;
        return p;
    }

    Pattern pattern_sweep(const ArraySignal &signal, int freq_index, int num_points, unsigned threads)
    {
        if (freq_index < 1 || !signal.has_line(freq_index))
            throw EmptyPatternError("pattern_sweep: no antenna carries line " + std::to_string(freq_index));

        const DelaySweep sweep(signal.grid(), signal.geometry(), freq_index, num_points);
        const std::vector<Phasor> coeffs = signal.line(freq_index);

        std::vector<double> powers(sweep.taus().size());
        constexpr std::size_t block = 64;
        const std::size_t blocks = (powers.size() + block - 1) / block;
        detail::for_each_block(blocks, threads,
                               [&](std::size_t b)
                               {
                                   const std::size_t end = std::min(powers.size(), (b + 1) * block);
                                   for (std::size_t j = b * block; j < end; ++j)
                                       powers[j] = sweep.power(coeffs, j);
                               });

        double reference = 0.0;
        for (const auto &c : coeffs)
            reference += 2.0 * std::norm(c);

        const std::function<double(double)> evaluate = [&](double tau)
        {
            return sweep.power_at(coeffs, std::clamp(tau, sweep.taus().front(), sweep.taus().back()));
        };
        return summarize_pattern(freq_index, signal.geometry(), sweep.taus(), powers, reference, &evaluate);
    }
}
