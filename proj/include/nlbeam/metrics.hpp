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

#ifndef NLBEAM_METRICS_HPP
#define NLBEAM_METRICS_HPP

#include "nlbeam/array.hpp"
#include "nlbeam/nonlinearity.hpp"
#include "nlbeam/spectra.hpp"

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nlbeam
{
    // Marker for an adjacent channel with no power at all (linear hardware).
    inline constexpr double no_leakage_db = -std::numeric_limits<double>::infinity();

    struct AclrPair
    {
        double lower_db = no_leakage_db;
        double upper_db = no_leakage_db;
    };

    // |sum_m c_m exp(-i m w tau)|^2 / sum_m |c_m|^2 for one line; lies in [0, M].
    // Throws UndefinedError if no antenna carries the line.
    double array_gain(const ArraySignal &signal, int freq_index, DelaySteer direction);

    // Adjacent-channel power over total in-band power, per side, in dB. A side with
    // no lines reports no_leakage_db. Throws UndefinedError for zero in-band power.
    AclrPair aclr(const LineSpectrum &spectrum, const BandDefinition &band);

    struct ReferenceTone
    {
        int index = 0;
        double amplitude = 0.0;
        double phase = 0.0;
    };

    // In-band error vector magnitude after fitting one complex gain g to the
    // reference lines by least squares:
    //   sqrt( sum_in_band |observed - g*reference|^2 / sum |g*reference|^2 )
    // In-band lines absent from the reference count entirely as error.
    // Throws std::invalid_argument for reference tones outside the band and
    // UndefinedError if the reference (or its fitted image) carries no power.
    double evm(const LineSpectrum &observed, const std::vector<ReferenceTone> &reference, const BandDefinition &band);

    // Reference tones taken from the in-band lines of an undistorted spectrum.
    std::vector<ReferenceTone> reference_tones(const LineSpectrum &undistorted, const BandDefinition &band);

    struct MetricsLocation
    {
        enum class Kind
        {
            port,
            direction
        };

        Kind kind = Kind::port;
        int port = 0;     // 0-based antenna, for Kind::port
        double tau = 0.0; // seconds, for Kind::direction

        std::string label() const;
    };

    struct MetricsReport
    {
        MetricsLocation location;
        std::optional<double> evm;   // empty when the reference vanishes at this location
        std::optional<AclrPair> aclr; // empty when nothing in-band reaches this location
        std::map<int, double> array_gain_by_line; // direction reports only
    };

    // Metrics at every antenna port, then at each far-field direction. The EVM
    // reference at a location is what a linear transmitter with the same steering
    // would deliver there.
    std::vector<MetricsReport> port_vs_ota_report(const ArraySignal &signal, const SteeringAssignment &assignment,
                                                  const BandDefinition &band,
                                                  const std::vector<DelaySteer> &directions);

    double to_db(double linear);
}

#endif
