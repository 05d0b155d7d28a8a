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

#ifndef NLBEAM_NONLINEARITY_HPP
#define NLBEAM_NONLINEARITY_HPP

#include "nlbeam/spectra.hpp"

#include <string_view>
#include <vector>

namespace nlbeam
{
    inline constexpr int max_polynomial_degree = 9;

    // Memoryless polynomial f(x) = a1*x + a2*x^2 + ... + aP*x^P.
    class PolynomialNonlinearity
    {
    public:
        // coefficients[0] multiplies x, coefficients[1] multiplies x^2, and so on.
        explicit PolynomialNonlinearity(std::vector<double> coefficients);

        // f(x) = x + alpha*x^3
        static PolynomialNonlinearity third_order(double alpha);

        const std::vector<double> &coefficients() const { return coefficients_; }

        // Highest power with a nonzero coefficient.
        int degree() const;

        double coefficient(int power) const;

    private:
        std::vector<double> coefficients_;
    };

    struct IndexInterval
    {
        int lo = 0;
        int hi = 0;

        bool contains(int k) const { return k >= lo && k <= hi; }
        int width() const { return hi - lo + 1; }
        bool operator==(const IndexInterval &) const = default;
    };

    // Allocated band, its two adjacent channels and the window the transmit chain
    // passes. All intervals refer to positive frequency indices.
    class BandDefinition
    {
    public:
        BandDefinition(IndexInterval in_band, IndexInterval adjacent_lower, IndexInterval adjacent_upper,
                       IndexInterval keep_window);

        // Adjacent channels of adjacent_width lines directly below and above in_band;
        // the keep window spans exactly the three channels.
        static BandDefinition contiguous(IndexInterval in_band, int adjacent_width);

        const IndexInterval &in_band() const { return in_band_; }
        const IndexInterval &adjacent_lower() const { return adjacent_lower_; }
        const IndexInterval &adjacent_upper() const { return adjacent_upper_; }
        const IndexInterval &keep_window() const { return keep_window_; }

        bool operator==(const BandDefinition &) const = default;

    private:
        IndexInterval in_band_;
        IndexInterval adjacent_lower_;
        IndexInterval adjacent_upper_;
        IndexInterval keep_window_;
    };

    // Exact spectrum of f(x(t)). Powers of x are built by repeated convolution.
    // Throws RangeError if degree * max index of x exceeds the grid.
    LineSpectrum apply_polynomial(const LineSpectrum &x, const PolynomialNonlinearity &f);

    // Brick-wall transmit response: keeps lines whose |index| lies in the keep window.
    LineSpectrum band_filter(const LineSpectrum &x, const BandDefinition &band);

    enum class TermKind
    {
        fundamental_low,  // k1
        fundamental_high, // k2
        sum_upper,        // 2*k2 + k1
        im3_upper,        // 2*k2 - k1
        sum_lower,        // k2 + 2*k1
        im3_lower,        // |k2 - 2*k1|
        harmonic_low,     // 3*k1
        harmonic_high,    // 3*k2
    };

    std::string_view to_string(TermKind kind);

    // One real cosine term amplitude * cos(index * w * t + phase). The amplitude
    // carries the sign of alpha and may be negative.
    struct ToneTerm
    {
        TermKind kind;
        int index;
        double amplitude;
        double phase;
    };

    // Closed-form output of x + alpha*x^3 for a unit two-tone input at indices
    // k1 < k2 with phases phi1, phi2. Always returns the eight terms in TermKind
    // order. The k2 - 2*k1 product is folded to a positive index with negated
    // phase when 2*k1 > k2.
    std::vector<ToneTerm> two_tone_third_order_terms(int k1, int k2, double phi1, double phi2, double alpha);

    // Sums the terms into a spectrum on grid. Index-0 terms contribute
    // amplitude * cos(phase) at DC.
    LineSpectrum terms_to_spectrum(const FrequencyGrid &grid, const std::vector<ToneTerm> &terms);

    enum class BandPlacement
    {
        in_band,
        adjacent_lower,
        adjacent_upper,
        outside
    };

    std::string_view to_string(BandPlacement placement);

    struct NearBandTerm
    {
        ToneTerm term;
        BandPlacement placement; // in-band terms degrade EVM, adjacent ones ACLR
    };

    // The two intermodulation terms at 2*k2 - k1 and |k2 - 2*k1| out of an expansion
    // from two_tone_third_order_terms, tagged with where they land relative to band.
    // Terms with zero amplitude are dropped, so alpha = 0 yields an empty list.
    std::vector<NearBandTerm> distortion_terms_near_band(const std::vector<ToneTerm> &expansion,
                                                         const BandDefinition &band);

    BandPlacement place(int index, const BandDefinition &band);
}

#endif
