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

#ifndef NLBEAM_PHILOX_HPP
#define NLBEAM_PHILOX_HPP

#include <array>
#include <cstdint>

namespace nlbeam
{
    // Philox4x32-10 counter-based generator (Salmon et al., SC'11). Output is a pure
    // function of (counter, key), so any stream position is reachable without
    // shared state.
    class Philox4x32
    {
    public:
        using Counter = std::array<std::uint32_t, 4>;
        using Key = std::array<std::uint32_t, 2>;

        static constexpr Counter generate(Counter ctr, Key key)
        {
            for (int round = 0; round < 10; ++round)
            {
                if (round > 0)
                {
                    key[0] += 0x9E3779B9u;
                    key[1] += 0xBB67AE85u;
                }
                const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
                const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
                const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
                const auto lo0 = static_cast<std::uint32_t>(p0);
                const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
                const auto lo1 = static_cast<std::uint32_t>(p1);
                ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            }
            return ctr;
        }

        static constexpr Key key_from_seed(std::uint64_t seed)
        {
            return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
        }

        // Uniform double in [0, 1) from the first 53 bits of a block.
        static constexpr double to_unit(const Counter &block)
        {
            const std::uint64_t bits = (std::uint64_t{block[0]} << 32) | block[1];
            return static_cast<double>(bits >> 11) * 0x1.0p-53;
        }
    };
}

#endif
