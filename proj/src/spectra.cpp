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

#include "nlbeam/spectra.hpp"

#include "nlbeam/error.hpp"

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

        void require_same_grid(const LineSpectrum &a, const LineSpectrum &b, const char *op)
        {
            if (a.grid() != b.grid())
                throw IncompatibleError(std::string(op) + ": operands are on different frequency grids");
        }

        // Nonnegative half of a spectrum.
        LineSpectrum::LineMap half_of(const LineSpectrum &s)
        {
            const auto &lines = s.lines();
            return {lines.lower_bound(0), lines.end()};
        }

        // exp(i*2*pi*j/P) for j = 0..P-1, computed once per call so index arithmetic stays exact.
        std::vector<Phasor> unit_circle_table(int points)
        {
            std::vector<Phasor> table(static_cast<std::size_t>(points));
            for (int j = 0; j < points; ++j)
                table[static_cast<std::size_t>(j)] = std::polar(1.0, two_pi * j / points);
            return table;
        }
    }

    FrequencyGrid::FrequencyGrid(double base_rate, int max_index, double prune_threshold)
        : base_rate_(base_rate), max_index_(max_index), prune_threshold_(prune_threshold)
    {
        if (!(base_rate > 0.0) || !std::isfinite(base_rate))
            throw std::invalid_argument("FrequencyGrid: base_rate must be a positive finite angular frequency");
        if (max_index < 1)
            throw std::invalid_argument("FrequencyGrid: max_index must be at least 1");
        if (!(prune_threshold > 0.0) || !std::isfinite(prune_threshold))
            throw std::invalid_argument("FrequencyGrid: prune_threshold must be positive");
    }

    double FrequencyGrid::period() const { return two_pi / base_rate_; }

    LineSpectrum::LineSpectrum(FrequencyGrid grid) : grid_(grid) {}

    LineSpectrum LineSpectrum::from_nonnegative(FrequencyGrid grid, const LineMap &half)
    {
        LineSpectrum out(grid);
        const double floor = grid.prune_threshold();
        for (const auto &[k, c] : half)
        {
            if (k < 0)
                throw std::invalid_argument("LineSpectrum::from_nonnegative: negative index " + std::to_string(k));
            if (std::abs(c) < floor)
                continue;
            if (k > grid.max_index())
                throw RangeError("frequency index " + std::to_string(k) + " exceeds grid max_index " +
                                 std::to_string(grid.max_index()));
            if (k == 0)
            {
                if (std::abs(c.real()) >= floor)
                    out.lines_.emplace(0, Phasor(c.real(), 0.0));
                continue;
            }
            out.lines_.emplace(k, c);
            out.lines_.emplace(-k, std::conj(c));
        }
        return out;
    }

    Phasor LineSpectrum::coefficient(int index) const
    {
        auto it = lines_.find(index);
        return it == lines_.end() ? Phasor{} : it->second;
    }

    double LineSpectrum::amplitude(int index) const
    {
        const int k = std::abs(index);
        return k == 0 ? std::abs(coefficient(0)) : 2.0 * std::abs(coefficient(k));
    }

    double LineSpectrum::phase(int index) const { return std::arg(coefficient(index)); }

    double LineSpectrum::line_power(int index) const
    {
        const int k = std::abs(index);
        return k == 0 ? std::norm(coefficient(0)) : 2.0 * std::norm(coefficient(k));
    }

    double LineSpectrum::total_power() const
    {
        double p = 0.0;
        for (const auto &[k, c] : lines_)
            p += std::norm(c);
        return p;
    }

    std::vector<int> LineSpectrum::nonnegative_indices() const
    {
        std::vector<int> out;
        for (auto it = lines_.lower_bound(0); it != lines_.end(); ++it)
            out.push_back(it->first);
        return out;
    }

    int LineSpectrum::max_abs_index() const { return lines_.empty() ? 0 : lines_.rbegin()->first; }

    bool LineSpectrum::is_conjugate_symmetric(double tolerance) const
    {
        for (const auto &[k, c] : lines_)
        {
            auto mirror = lines_.find(-k);
            if (mirror == lines_.end())
                return false;
            if (std::abs(mirror->second - std::conj(c)) > tolerance)
                return false;
        }
        return true;
    }

    LineSpectrum LineSpectrum::scaled(double factor) const
    {
        LineMap half = half_of(*this);
        for (auto &[k, c] : half)
            c *= factor;
        return from_nonnegative(grid_, half);
    }

    LineSpectrum LineSpectrum::rotated(Phasor g) const
    {
        LineMap half = half_of(*this);
        for (auto &[k, c] : half)
            c = k == 0 ? c * std::abs(g) : c * g;
        return from_nonnegative(grid_, half);
    }

    LineSpectrum tone(const FrequencyGrid &grid, double amplitude, int index, double phase)
    {
        if (!(amplitude >= 0.0) || !std::isfinite(amplitude))
            throw std::invalid_argument("tone: amplitude must be finite and non-negative");
        if (index < 1 || index > grid.max_index())
            throw RangeError("tone: frequency index " + std::to_string(index) + " outside [1, " +
                             std::to_string(grid.max_index()) + "]");
        return LineSpectrum::from_nonnegative(grid, {{index, std::polar(0.5 * amplitude, phase)}});
    }

    LineSpectrum add(const LineSpectrum &a, const LineSpectrum &b)
    {
        require_same_grid(a, b, "add");
        LineSpectrum::LineMap half = half_of(a);
        for (auto it = b.lines().lower_bound(0); it != b.lines().end(); ++it)
            half[it->first] += it->second;
        return LineSpectrum::from_nonnegative(a.grid(), half);
    }

    LineSpectrum subtract(const LineSpectrum &a, const LineSpectrum &b)
    {
        require_same_grid(a, b, "subtract");
        LineSpectrum::LineMap half = half_of(a);
        for (auto it = b.lines().lower_bound(0); it != b.lines().end(); ++it)
            half[it->first] -= it->second;
        return LineSpectrum::from_nonnegative(a.grid(), half);
    }

    LineSpectrum multiply(const LineSpectrum &a, const LineSpectrum &b)
    {
        require_same_grid(a, b, "multiply");
        const int reach = a.max_abs_index() + b.max_abs_index();
        if (reach > a.grid().max_index())
            throw RangeError("multiply: product reaches index " + std::to_string(reach) + " beyond grid max_index " +
                             std::to_string(a.grid().max_index()));

        // Only k >= 0 outputs are accumulated; the negative half follows by symmetry.
        LineSpectrum::LineMap half;
        for (const auto &[ka, ca] : a.lines())
            for (const auto &[kb, cb] : b.lines())
                if (ka + kb >= 0)
                    half[ka + kb] += ca * cb;
        return LineSpectrum::from_nonnegative(a.grid(), half);
    }

    SampledWaveform sample_waveform(const LineSpectrum &s, int periods, int samples_per_period, double time_offset)
    {
        const FrequencyGrid &grid = s.grid();
        if (periods < 1)
            throw std::invalid_argument("sample_waveform: periods must be positive");
        if (samples_per_period <= 2 * grid.max_index())
            throw AliasingError("sample_waveform: " + std::to_string(samples_per_period) +
                                " samples per period cannot represent index " + std::to_string(grid.max_index()));

        const auto table = unit_circle_table(samples_per_period);
        const std::size_t count = static_cast<std::size_t>(periods) * static_cast<std::size_t>(samples_per_period);

        struct Term
        {
            long long index;
            Phasor weight;
        };
        std::vector<Term> terms;
        terms.reserve(s.size());
        for (const auto &[k, c] : s.lines())
        {
            const long long wrapped = ((k % samples_per_period) + samples_per_period) % samples_per_period;
            terms.push_back({wrapped, c * std::polar(1.0, grid.angular_frequency(k) * time_offset)});
        }

        SampledWaveform out;
        out.sample_rate = samples_per_period / grid.period();
        out.samples.resize(count);

        double peak = 0.0;
        double residue = 0.0;
        for (std::size_t n = 0; n < count; ++n)
        {
            const long long phase_step = static_cast<long long>(n % static_cast<std::size_t>(samples_per_period));
            Phasor acc{};
            for (const auto &term : terms)
                acc += term.weight * table[static_cast<std::size_t>((term.index * phase_step) % samples_per_period)];
            out.samples[n] = acc.real();
            peak = std::max(peak, std::abs(acc.real()));
            residue = std::max(residue, std::abs(acc.imag()));
        }
        if (residue > 1e-12 * peak && residue > 1e-300)
            throw std::logic_error("sample_waveform: spectrum is not conjugate symmetric");
        return out;
    }

    LineSpectrum estimate_lines(const SampledWaveform &w, const FrequencyGrid &grid)
    {
        if (w.samples.empty() || !(w.sample_rate > 0.0))
            throw LeakageError("estimate_lines: empty waveform");

        const double exact_per_period = w.sample_rate * grid.period();
        const double rounded = std::round(exact_per_period);
        if (rounded < 1.0 || std::abs(exact_per_period - rounded) > 1e-9 * rounded)
            throw LeakageError("estimate_lines: sample rate is not an integer multiple of the grid rate");
        const int per_period = static_cast<int>(rounded);
        if (w.samples.size() % static_cast<std::size_t>(per_period) != 0)
            throw LeakageError("estimate_lines: record of " + std::to_string(w.samples.size()) +
                               " samples is not a whole number of grid periods");
        if (per_period <= 2 * grid.max_index())
            throw AliasingError("estimate_lines: sample rate cannot resolve max_index");

        const auto table = unit_circle_table(per_period);
        const std::size_t count = w.samples.size();

        double peak = 0.0;
        for (double x : w.samples)
            peak = std::max(peak, std::abs(x));
        const double floor = std::max(grid.prune_threshold(), 1e-12 * peak);

        LineSpectrum::LineMap half;
        for (int k = 0; k <= grid.max_index(); ++k)
        {
            Phasor acc{};
            for (std::size_t n = 0; n < count; ++n)
            {
                const long long step = static_cast<long long>(n % static_cast<std::size_t>(per_period));
                acc += w.samples[n] * std::conj(table[static_cast<std::size_t>((k * step) % per_period)]);
            }
            acc /= static_cast<double>(count);
            if (std::abs(acc) >= floor)
                half.emplace(k, acc);
        }
        return LineSpectrum::from_nonnegative(grid, half);
    }
}
