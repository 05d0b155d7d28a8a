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

#ifndef NLBEAM_ARRAY_HPP
#define NLBEAM_ARRAY_HPP

#include "nlbeam/nonlinearity.hpp"
#include "nlbeam/spectra.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace nlbeam
{
    // Far-field direction expressed as the propagation-delay difference between
    // adjacent elements (seconds). The angle from broadside is asin(tau / element_delay).
    struct DelaySteer
    {
        double tau = 0.0;
    };

    // Uniform linear array of identical elements.
    class ArrayGeometry
    {
    public:
        ArrayGeometry(int num_antennas, double element_delay);

        int num_antennas() const { return num_antennas_; }

        // Propagation delay across one element spacing, d / c.
        double element_delay() const { return element_delay_; }

        // True when element_delay * angular_frequency <= pi, i.e. every delay in
        // [-element_delay, element_delay] maps to a distinct phase at that frequency.
        bool grating_lobe_free(double angular_frequency) const;

        // True if |tau| <= element_delay (up to rounding).
        bool visible(double tau) const;

        // asin(tau / element_delay), clamped.
        double angle(double tau) const;

        bool operator==(const ArrayGeometry &) const = default;

    private:
        int num_antennas_;
        double element_delay_;
    };

    struct SteeredTone
    {
        int index = 0;
        double amplitude = 1.0;
        double base_phase = 0.0; // phase on the first antenna
        DelaySteer target;
    };

    // Per-antenna, per-tone phases realizing a set of direction targets. Antenna m
    // (0-based) carries phase base_phase + m * k * base_rate * tau_k for tone k. Phases
    // are kept unwrapped so the delays they encode can be recovered exactly;
    // wrapped_phase() gives the value modulo 2*pi.
    class SteeringAssignment
    {
    public:
        SteeringAssignment(FrequencyGrid grid, ArrayGeometry geometry, std::vector<SteeredTone> tones);

        const FrequencyGrid &grid() const { return grid_; }
        const ArrayGeometry &geometry() const { return geometry_; }
        const std::vector<SteeredTone> &tones() const { return tones_; }
        int num_antennas() const { return geometry_.num_antennas(); }

        double phase(int antenna, std::size_t tone) const;
        double wrapped_phase(int antenna, std::size_t tone) const;

        // Phase lead of antenna over antenna 0 for a tone, wrapped to [0, 2*pi).
        double lead(int antenna, std::size_t tone) const;

        std::optional<std::size_t> find_tone(int index) const;

    private:
        FrequencyGrid grid_;
        ArrayGeometry geometry_;
        std::vector<SteeredTone> tones_;
        std::vector<double> phases_; // row-major [antenna][tone]
    };

    SteeringAssignment steer_tones(const FrequencyGrid &grid, const ArrayGeometry &geometry,
                                   std::vector<SteeredTone> tones);

    // One line spectrum per antenna on a shared grid.
    class ArraySignal
    {
    public:
        ArraySignal(ArrayGeometry geometry, std::vector<LineSpectrum> per_antenna);

        const ArrayGeometry &geometry() const { return geometry_; }
        const FrequencyGrid &grid() const { return per_antenna_.front().grid(); }
        const std::vector<LineSpectrum> &per_antenna() const { return per_antenna_; }
        const LineSpectrum &antenna(int m) const { return per_antenna_.at(static_cast<std::size_t>(m)); }
        int num_antennas() const { return geometry_.num_antennas(); }

        // Coefficient of line index on every antenna.
        std::vector<Phasor> line(int index) const;

        bool has_line(int index) const;

        // Sorted positive indices present on at least one antenna.
        std::vector<int> positive_indices() const;

    private:
        ArrayGeometry geometry_;
        std::vector<LineSpectrum> per_antenna_;
    };

    // Undistorted per-antenna multi-tone inputs x_m(t).
    ArraySignal steered_inputs(const SteeringAssignment &assignment);

    // x_m -> f(x_m) -> band_filter for every antenna, same f everywhere.
    ArraySignal transmit(const SteeringAssignment &assignment, const PolynomialNonlinearity &f,
                         const BandDefinition &band);

    // Spectrum seen by a far-field receiver in direction tau: antenna m contributes
    // its signal delayed by m * tau, with unit path gain.
    // Throws RangeError if |tau| > element_delay.
    LineSpectrum far_field_receive(const ArraySignal &signal, DelaySteer direction);

    // Reduces tau into [-modulus/2, modulus/2].
    double reduce_delay(double tau, double modulus);

    struct DistortionDelay
    {
        int index = 0;        // positive line index of the product
        double raw = 0.0;     // delay from the unwrapped phase progression
        double reduced = 0.0; // raw reduced into [-modulus/2, modulus/2]
        double modulus = 0.0; // 2*pi / (index * base_rate)

        // raw + n * modulus for every integer n that lands in [-element_delay, element_delay].
        std::vector<double> visible_equivalents(const ArrayGeometry &geometry) const;
    };

    struct DistortionDelays
    {
        DistortionDelay upper; // line 2*k2 - k1
        DistortionDelay lower; // line |k2 - 2*k1|
    };

    // Directions into which the two intermodulation products of a two-tone
    // assignment add coherently.
    // Throws std::invalid_argument unless the array has >= 2 elements and the
    // assignment steers exactly tones k1 < k2; DegenerateError if k2 == 2*k1.
    DistortionDelays distortion_delays(int k1, int k2, const SteeringAssignment &assignment);

    // Precomputed steering phasors exp(-i*m*k*w*tau_j) over a uniform delay grid
    // on [-element_delay, element_delay].
    class DelaySweep
    {
    public:
        DelaySweep(const FrequencyGrid &grid, const ArrayGeometry &geometry, int freq_index, int num_points);

        const std::vector<double> &taus() const { return taus_; }
        int freq_index() const { return freq_index_; }
        double step() const;

        // Received line power 2|sum_m c_m exp(-i m w tau)|^2 at sweep point j.
        double power(std::span<const Phasor> per_antenna, std::size_t j) const;

        // Same quantity at an arbitrary delay.
        double power_at(std::span<const Phasor> per_antenna, double tau) const;

    private:
        double angular_frequency_;
        int num_antennas_;
        int freq_index_;
        std::vector<double> taus_;
        std::vector<Phasor> table_; // [point][antenna]
    };

    struct PatternPoint
    {
        double tau = 0.0;
        double power = 0.0;
        double angle = 0.0; // radians from broadside
    };

    struct Pattern
    {
        int freq_index = 0;
        std::vector<PatternPoint> sweep;
        double reference_power = 0.0; // sum of the per-antenna line powers
        double peak_tau = 0.0;
        double peak_power = 0.0;
        double peak_gain = 0.0;       // peak_power / reference_power
        double mean_power = 0.0;
        double contrast = 0.0;        // peak_power / mean_power
        std::vector<double> peak_taus; // every lobe within 1% of the peak
        bool multiple_peaks = false;

        double step() const;
        bool empty() const { return sweep.empty(); }
    };

    inline constexpr int default_sweep_points = 1024;

    // Received power of one line at num_points delays spread uniformly over
    // [-element_delay, element_delay]. Peaks are refined between sweep points, so
    // peak_tau and peak_gain are not limited to the sweep resolution.
    // Sweep points are independent; threads > 1 gives results identical to threads = 1.
    // Throws EmptyPatternError if no antenna carries the line.
    Pattern pattern_sweep(const ArraySignal &signal, int freq_index, int num_points = default_sweep_points,
                          unsigned threads = 1);

    // Builds the summary fields of a pattern from sampled powers. When evaluate is
    // given, peaks are refined by golden-section search between neighbouring points.
    Pattern summarize_pattern(int freq_index, const ArrayGeometry &geometry, const std::vector<double> &taus,
                              const std::vector<double> &powers, double reference_power,
                              const std::function<double(double)> *evaluate = nullptr);
}

#endif
