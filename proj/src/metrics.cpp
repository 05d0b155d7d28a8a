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

#include "nlbeam/metrics.hpp"

#include "nlbeam/error.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace nlbeam
{
    namespace
    {
        double band_power(const LineSpectrum &s, const IndexInterval &interval)
        {
            double p = 0.0;
            for (auto it = s.lines().lower_bound(interval.lo); it != s.lines().end() && it->first <= interval.hi; ++it)
                p += s.line_power(it->first);
            return p;
        }

        template <class Fn>
        std::optional<std::invoke_result_t<Fn>> defined_or_empty(Fn &&fn)
        {
            try
            {
                return fn();
            }
            catch (const UndefinedError &)
            {
                return std::nullopt;
            }
        }
    }

    double to_db(double linear) { return linear > 0.0 ? 10.0 * std::log10(linear) : no_leakage_db; }

    double array_gain(const ArraySignal &signal, int freq_index, DelaySteer direction)
    {
        if (!signal.has_line(freq_index))
            throw UndefinedError("array_gain: no antenna carries line " + std::to_string(freq_index));
        const double w = signal.grid().angular_frequency(freq_index);
        Phasor sum{};
        double per_antenna = 0.0;
        const auto coeffs = signal.line(freq_index);
        for (std::size_t m = 0; m < coeffs.size(); ++m)
        {
            sum += coeffs[m] * std::polar(1.0, -static_cast<double>(m) * w * direction.tau);
            per_antenna += std::norm(coeffs[m]);
        }
        return std::norm(sum) / per_antenna;
    }

    AclrPair aclr(const LineSpectrum &spectrum, const BandDefinition &band)
    {
        const double in_band = band_power(spectrum, band.in_band());
        if (!(in_band > 0.0))
            throw UndefinedError("aclr: no in-band power");
        return {to_db(band_power(spectrum, band.adjacent_lower()) / in_band),
                to_db(band_power(spectrum, band.adjacent_upper()) / in_band)};
    }

    std::vector<ReferenceTone> reference_tones(const LineSpectrum &undistorted, const BandDefinition &band)
    {
        std::vector<ReferenceTone> out;
        for (int k : undistorted.nonnegative_indices())
            if (band.in_band().contains(k))
                out.push_back({k, undistorted.amplitude(k), undistorted.phase(k)});
        return out;
    }

    double evm(const LineSpectrum &observed, const std::vector<ReferenceTone> &reference, const BandDefinition &band)
    {
        std::map<int, Phasor> ref;
        double ref_power = 0.0;
        for (const auto &t : reference)
        {
            if (!band.in_band().contains(t.index))
                throw std::invalid_argument("evm: reference tone " + std::to_string(t.index) + " is outside in_band");
            const Phasor c = std::polar(0.5 * t.amplitude, t.phase);
            ref[t.index] += c;
        }
        Phasor cross{};
        for (const auto &[k, c] : ref)
        {
            ref_power += std::norm(c);
            cross += observed.coefficient(k) * std::conj(c);
        }
        if (!(ref_power > 0.0))
            throw UndefinedError("evm: reference carries no power");

        const Phasor g = cross / ref_power;
        const double scaled_ref_power = std::norm(g) * ref_power;
        if (!(scaled_ref_power > 0.0))
            throw UndefinedError("evm: observed spectrum has no component along the reference");

        std::set<int> indices;
        for (const auto &[k, c] : ref)
            indices.insert(k);
        const IndexInterval in = band.in_band();
        for (auto it = observed.lines().lower_bound(in.lo); it != observed.lines().end() && it->first <= in.hi; ++it)
            indices.insert(it->first);

        double error = 0.0;
        for (int k : indices)
        {
            const auto r = ref.find(k);
            const Phasor expected = r == ref.end() ? Phasor{} : g * r->second;
            error += std::norm(observed.coefficient(k) - expected);
        }
        return std::sqrt(error / scaled_ref_power);
    }

    std::string MetricsLocation::label() const
    {
        if (kind == Kind::port)
            return "port " + std::to_string(port + 1);
        char buf[64];
        std::snprintf(buf, sizeof buf, "direction %.12g", tau);
        return buf;
    }

    std::vector<MetricsReport> port_vs_ota_report(const ArraySignal &signal, const SteeringAssignment &assignment,
                                                  const BandDefinition &band,
                                                  const std::vector<DelaySteer> &directions)
    {
        if (signal.geometry() != assignment.geometry() || signal.grid() != assignment.grid())
            throw IncompatibleError("port_vs_ota_report: signal and assignment describe different arrays");

        const ArraySignal linear = steered_inputs(assignment);
        std::vector<MetricsReport> out;

        for (int m = 0; m < signal.num_antennas(); ++m)
        {
            MetricsReport r;
            r.location = {MetricsLocation::Kind::port, m, 0.0};
            const auto reference = reference_tones(linear.antenna(m), band);
            r.evm = defined_or_empty([&] { return evm(signal.antenna(m), reference, band); });
            r.aclr = defined_or_empty([&] { return aclr(signal.antenna(m), band); });
            out.push_back(std::move(r));
        }

        const std::vector<int> lines = signal.positive_indices();
        for (const auto &d : directions)
        {
            MetricsReport r;
            r.location = {MetricsLocation::Kind::direction, 0, d.tau};
            const LineSpectrum received = far_field_receive(signal, d);
            const auto reference = reference_tones(far_field_receive(linear, d), band);
            r.evm = defined_or_empty([&] { return evm(received, reference, band); });
            r.aclr = defined_or_empty([&] { return aclr(received, band); });
            for (int k : lines)
                r.array_gain_by_line[k] = array_gain(signal, k, d);
            out.push_back(std::move(r));
        }
        return out;
    }
}
