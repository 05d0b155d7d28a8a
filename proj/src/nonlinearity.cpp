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

#include "nlbeam/nonlinearity.hpp"

#include "nlbeam/error.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nlbeam
{
    PolynomialNonlinearity::PolynomialNonlinearity(std::vector<double> coefficients)
        : coefficients_(std::move(coefficients))
    {
        if (coefficients_.empty() || coefficients_.size() > static_cast<std::size_t>(max_polynomial_degree))
            throw std::invalid_argument("PolynomialNonlinearity: between 1 and " +
                                        std::to_string(max_polynomial_degree) + " coefficients required");
        bool any = false;
        for (double a : coefficients_)
        {
            if (!std::isfinite(a))
                throw std::invalid_argument("PolynomialNonlinearity: coefficients must be finite");
            any = any || a != 0.0;
        }
        if (!any)
            throw std::invalid_argument("PolynomialNonlinearity: at least one coefficient must be nonzero");
    }

    PolynomialNonlinearity PolynomialNonlinearity::third_order(double alpha)
    {
        return PolynomialNonlinearity({1.0, 0.0, alpha});
    }

    int PolynomialNonlinearity::degree() const
    {
        for (std::size_t p = coefficients_.size(); p > 0; --p)
            if (coefficients_[p - 1] != 0.0)
                return static_cast<int>(p);
        return 0;
    }

    double PolynomialNonlinearity::coefficient(int power) const
    {
        if (power < 1 || power > static_cast<int>(coefficients_.size()))
            return 0.0;
        return coefficients_[static_cast<std::size_t>(power - 1)];
    }

    BandDefinition::BandDefinition(IndexInterval in_band, IndexInterval adjacent_lower, IndexInterval adjacent_upper,
                                   IndexInterval keep_window)
        : in_band_(in_band), adjacent_lower_(adjacent_lower), adjacent_upper_(adjacent_upper), keep_window_(keep_window)
    {
        for (const IndexInterval *iv : {&in_band_, &adjacent_lower_, &adjacent_upper_, &keep_window_})
            if (iv->lo < 1 || iv->hi < iv->lo)
                throw std::invalid_argument("BandDefinition: intervals must satisfy 1 <= lo <= hi");
        if (!(adjacent_lower_.hi < in_band_.lo && in_band_.hi < adjacent_upper_.lo))
            throw std::invalid_argument("BandDefinition: require adjacent_lower < in_band < adjacent_upper");
        if (adjacent_lower_.width() != adjacent_upper_.width())
            throw std::invalid_argument("BandDefinition: adjacent channels must have equal width");
        if (keep_window_.lo > adjacent_lower_.lo || keep_window_.hi < adjacent_upper_.hi)
            throw std::invalid_argument("BandDefinition: keep_window must cover both adjacent channels");
    }

    BandDefinition BandDefinition::contiguous(IndexInterval in_band, int adjacent_width)
    {
        const IndexInterval lower{in_band.lo - adjacent_width, in_band.lo - 1};
        const IndexInterval upper{in_band.hi + 1, in_band.hi + adjacent_width};
        return BandDefinition(in_band, lower, upper, {lower.lo, upper.hi});
    }

    LineSpectrum apply_polynomial(const LineSpectrum &x, const PolynomialNonlinearity &f)
    {
        const int degree = f.degree();
        const int reach = degree * x.max_abs_index();
        if (reach > x.grid().max_index())
            throw RangeError("apply_polynomial: degree-" + std::to_string(degree) + " products reach index " +
                             std::to_string(reach) + " beyond grid max_index " +
                             std::to_string(x.grid().max_index()));

        LineSpectrum out = x.scaled(f.coefficient(1));
        LineSpectrum power = x;
        for (int p = 2; p <= degree; ++p)
        {
            power = multiply(power, x);
            if (const double a = f.coefficient(p); a != 0.0)
                out = add(out, power.scaled(a));
        }
        return out;
    }

    LineSpectrum band_filter(const LineSpectrum &x, const BandDefinition &band)
    {
        LineSpectrum::LineMap half;
        for (const auto &[k, c] : x.lines())
            if (k >= 0 && band.keep_window().contains(k))
                half.emplace(k, c);
        return LineSpectrum::from_nonnegative(x.grid(), half);
    }

    std::string_view to_string(TermKind kind)
    {
        switch (kind)
        {
        case TermKind::fundamental_low: return "fundamental_low";
        case TermKind::fundamental_high: return "fundamental_high";
        case TermKind::sum_upper: return "sum_upper";
        case TermKind::im3_upper: return "im3_upper";
        case TermKind::sum_lower: return "sum_lower";
        case TermKind::im3_lower: return "im3_lower";
        case TermKind::harmonic_low: return "harmonic_low";
        case TermKind::harmonic_high: return "harmonic_high";
        }
        return "unknown";
    }

    std::string_view to_string(BandPlacement placement)
    {
        switch (placement)
        {
        case BandPlacement::in_band: return "in_band";
        case BandPlacement::adjacent_lower: return "adjacent_lower";
        case BandPlacement::adjacent_upper: return "adjacent_upper";
        case BandPlacement::outside: return "outside";
        }
        return "unknown";
    }

    std::vector<ToneTerm> two_tone_third_order_terms(int k1, int k2, double phi1, double phi2, double alpha)
    {
        if (k1 < 1 || k2 <= k1)
            throw std::invalid_argument("two_tone_third_order_terms: require 1 <= k1 < k2");

        const double fundamental = 1.0 + 9.0 * alpha / 4.0;
        const double cross = 3.0 * alpha / 4.0;
        const double harmonic = alpha / 4.0;

        int low_index = k2 - 2 * k1;
        double low_phase = phi2 - 2.0 * phi1;
        if (low_index < 0)
        {
            low_index = -low_index;
            low_phase = -low_phase;
        }

        return {
            {TermKind::fundamental_low, k1, fundamental, phi1},
            {TermKind::fundamental_high, k2, fundamental, phi2},
            {TermKind::sum_upper, 2 * k2 + k1, cross, 2.0 * phi2 + phi1},
            {TermKind::im3_upper, 2 * k2 - k1, cross, 2.0 * phi2 - phi1},
            {TermKind::sum_lower, k2 + 2 * k1, cross, phi2 + 2.0 * phi1},
            {TermKind::im3_lower, low_index, cross, low_phase},
            {TermKind::harmonic_low, 3 * k1, harmonic, 3.0 * phi1},
            {TermKind::harmonic_high, 3 * k2, harmonic, 3.0 * phi2},
        };
    }

    LineSpectrum terms_to_spectrum(const FrequencyGrid &grid, const std::vector<ToneTerm> &terms)
    {
        LineSpectrum::LineMap half;
        for (const auto &t : terms)
        {
            if (t.index < 0)
                throw std::invalid_argument("terms_to_spectrum: negative term index");
            if (t.index > grid.max_index())
                throw RangeError("terms_to_spectrum: index " + std::to_string(t.index) + " beyond grid");
            if (t.index == 0)
                half[0] += t.amplitude * std::cos(t.phase);
            else
                half[t.index] += std::polar(0.5 * t.amplitude, t.phase);
        }
        return LineSpectrum::from_nonnegative(grid, half);
    }

    BandPlacement place(int index, const BandDefinition &band)
    {
        const int k = std::abs(index);
        if (band.in_band().contains(k))
            return BandPlacement::in_band;
        if (band.adjacent_lower().contains(k))
            return BandPlacement::adjacent_lower;
        if (band.adjacent_upper().contains(k))
            return BandPlacement::adjacent_upper;
        return BandPlacement::outside;
    }

    std::vector<NearBandTerm> distortion_terms_near_band(const std::vector<ToneTerm> &expansion,
                                                         const BandDefinition &band)
    {
        std::vector<NearBandTerm> out;
        for (const auto &t : expansion)
        {
            if (t.kind != TermKind::im3_upper && t.kind != TermKind::im3_lower)
                continue;
            if (t.amplitude == 0.0)
                continue;
            out.push_back({t, place(t.index, band)});
        }
        return out;
    }
}
