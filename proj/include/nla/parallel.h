// Copyright 2026 The NLA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace nla {

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. Each index is
/// visited exactly once; the first exception thrown is rethrown after all
/// workers join.
template <class Fn>
void parallel_for(size_t count, int jobs, Fn &&fn) {
    size_t workers = std::clamp<size_t>(jobs < 1 ? 1 : static_cast<size_t>(jobs), 1, std::max<size_t>(count, 1));
    if (workers == 1) {
        for (size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (size_t i = next++; i < count; i = next++) {
                    fn(i);
                }
            } catch (...) {
                errors[w] = std::current_exception();
                next = count;
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

}  // namespace nla
