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

#ifndef NLBEAM_SPECTRA_HPP
#define NLBEAM_SPECTRA_HPP

#include <complex>
#include <cstddef>
#include <map>
#include <vector>

namespace nlbeam
{
    using Phasor = std::complex<double>;

    inline constexpr double default_prune_threshold = 1e-14;

    // Integer frequency grid: every line sits at k * base_rate (rad/s), |k| <= max_index.
    class FrequencyGrid
    {
    public:
        FrequencyGrid(double base_rate, int max_index, double prune_threshold = default_prune_threshold);

        double base_rate() const { return base_rate_; }
        int max_index() const { return max_index_; }
        double prune_threshold() const { return prune_threshold_; }

        double angular_frequency(int index) const { return base_rate_ * index; }

        // Duration of one fundamental grid period, 2*pi / base_rate.
        double period() const;

        bool operator==(const FrequencyGrid &) const = default;

    private:
        double base_rate_;
        int max_index_;
        double prune_threshold_;
    };

    // Exact spectrum of a real multi-tone signal. A tone c*cos(k*w*t + phi) is stored
    // as (c/2)*exp(i*phi) at +k and its conjugate at -k. Coefficients with magnitude
    // below the grid's prune threshold are never stored.
    class LineSpectrum
    {
    public:
        using LineMap = std::map<int, Phasor>;

        explicit LineSpectrum(FrequencyGrid grid);

        // Builds a spectrum from its k >= 0 half. Negative lines are mirrored as
        // conjugates and the DC coefficient is forced real. Throws RangeError for
        // indices beyond the grid and std::invalid_argument for negative keys.
        static LineSpectrum from_nonnegative(FrequencyGrid grid, const LineMap &half);

        const FrequencyGrid &grid() const { return grid_; }
        const LineMap &lines() const { return lines_; }

        bool empty() const { return lines_.empty(); }
        std::size_t size() const { return lines_.size(); }

        Phasor coefficient(int index) const;

        // Amplitude of the real tone at |index| (2|c_k|; |c_0| for DC).
        double amplitude(int index) const;
        double phase(int index) const;

        // Mean power contributed by line |index| (A^2/2 for a tone, c_0^2 at DC).
        double line_power(int index) const;
        double total_power() const;

        // Sorted indices k >= 0 carrying a line.
        std::vector<int> nonnegative_indices() const;
        int max_abs_index() const;

        bool is_conjugate_symmetric(double tolerance = 0.0) const;

        LineSpectrum scaled(double factor) const;

        // Multiplies positive lines by g and negative lines by conj(g): a gain |g|
        // and phase advance arg(g) applied to every tone.
        LineSpectrum rotated(Phasor g) const;

    private:
        FrequencyGrid grid_;
        LineMap lines_;
    };

    LineSpectrum tone(const FrequencyGrid &grid, double amplitude, int index, double phase);

    LineSpectrum add(const LineSpectrum &a, const LineSpectrum &b);
    LineSpectrum subtract(const LineSpectrum &a, const LineSpectrum &b);

    // Spectrum of the pointwise product a(t) * b(t), i.e. the convolution of the
    // two line sets. Throws RangeError if a product line falls off the grid.
    LineSpectrum multiply(const LineSpectrum &a, const LineSpectrum &b);

    inline LineSpectrum operator+(const LineSpectrum &a, const LineSpectrum &b) { return add(a, b); }
    inline LineSpectrum operator-(const LineSpectrum &a, const LineSpectrum &b) { return subtract(a, b); }

    // --- time-domain verification path ---

    struct SampledWaveform
    {
        std::vector<double> samples;
        double sample_rate = 0.0; // samples per second
    };

    // Evaluates the real signal at t_n = n / sample_rate + time_offset over an integer
    // number of grid periods. time_offset shifts the observation instants, so
    // time_offset = -d yields the waveform delayed by d seconds.
    // Throws AliasingError unless samples_per_period > 2 * max_index.
    SampledWaveform sample_waveform(const LineSpectrum &s, int periods, int samples_per_period,
                                    double time_offset = 0.0);

    // Discrete Fourier analysis of a coherently sampled waveform, one phasor per grid
    // index. Bins below 1e-12 of the peak sample magnitude are treated as roundoff
    // and dropped along with the regular prune threshold.
    // Throws LeakageError if the record is not an integer number of grid periods
    // and AliasingError if the sample rate cannot resolve max_index.
    LineSpectrum estimate_lines(const SampledWaveform &w, const FrequencyGrid &grid);
}

#endif
