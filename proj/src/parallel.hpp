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

#ifndef NLBEAM_PARALLEL_HPP
#define NLBEAM_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nlbeam::detail
{
    // Runs body(block) for block = 0..blocks-1 on up to `threads` workers. Blocks are
    // handed out dynamically; callers must write results into per-block slots and
    // combine them in block order so the outcome does not depend on scheduling.
    template <class Body>
    void for_each_block(std::size_t blocks, unsigned threads, Body &&body)
    {
        threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(blocks, 1))));
        if (threads == 1)
        {
            for (std::size_t b = 0; b < blocks; ++b)
                body(b);
            return;
        }

        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&]
        {
            for (std::size_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1))
            {
                try
                {
                    body(b);
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        };

        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
        pool.clear();

        if (failure)
            std::rethrow_exception(failure);
    }
}

#endif
