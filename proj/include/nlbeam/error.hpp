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

#ifndef NLBEAM_ERROR_HPP
#define NLBEAM_ERROR_HPP

#include <stdexcept>
#include <string>

namespace nlbeam
{
    // Base for every error raised by the library. Precondition violations on plain
    // arguments (negative amplitude, bad ordering) use std::invalid_argument instead.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Frequency index or delay outside the representable range.
    class RangeError : public Error
    {
    public:
        using Error::Error;
    };

    // Operands built on different grids, sweeps or geometries.
    class IncompatibleError : public Error
    {
    public:
        using Error::Error;
    };

    // Sampling rate too low for the highest grid line.
    class AliasingError : public Error
    {
    public:
        using Error::Error;
    };

    // Waveform length is not an integer number of fundamental grid periods.
    class LeakageError : public Error
    {
    public:
        using Error::Error;
    };

    // Frequency plan with 2*k1 == k2; the lower IM3 product sits at DC.
    class DegenerateError : public Error
    {
    public:
        using Error::Error;
    };

    // Ratio with a zero denominator (no in-band power, no reference, absent line).
    class UndefinedError : public Error
    {
    public:
        using Error::Error;
    };

    // Requested frequency line is not present in any antenna spectrum.
    class EmptyPatternError : public Error
    {
    public:
        using Error::Error;
    };
}

#endif
