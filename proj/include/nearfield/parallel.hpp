// SPDX-License-Identifier: Apache-2.0
//
// nearfield: radiative near-field channel models for planar antenna arrays
// Copyright (C) 2026 The nearfield authors
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

#ifndef NEARFIELD_PARALLEL_HPP
#define NEARFIELD_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace nearfield
{
    // Number of workers to use when the caller passes threads <= 0: the
    // NEARFIELD_THREADS environment variable if set, else hardware concurrency.
    int default_thread_count();

    // Calls body(i) for i in [0, count) on up to `threads` workers. Each index is
    // visited exactly once; callers write results to slot i and reduce in index
    // order afterwards, so results do not depend on the thread count.
    // The first exception thrown by any body is rethrown on the calling thread.
    template <typename Body>
    void parallel_for(std::size_t count, int threads, const Body &body)
    {
        if (threads <= 0)
            threads = default_thread_count();
        const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), count);
        if (workers <= 1)
        {
            for (std::size_t i = 0; i < count; ++i)
                body(i);
            return;
        }

        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        const std::size_t chunk = (count + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w)
        {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(count, begin + chunk);
            pool.emplace_back([&, begin, end] {
                try
                {
                    for (std::size_t i = begin; i < end; ++i)
                        body(i);
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            });
        }
        for (auto &t : pool)
            t.join();
        if (failure)
            std::rethrow_exception(failure);
    }

} // namespace nearfield

#endif
