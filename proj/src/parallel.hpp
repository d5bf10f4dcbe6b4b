// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

namespace probbounds::detail {

// OpenMP loop over [0, n). Exceptions cannot cross the parallel region, so the
// first one is stashed and rethrown after the loop.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    std::exception_ptr error;
    std::mutex guard;
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < count; ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
            const std::lock_guard<std::mutex> lock(guard);
            if (!error) {
                error = std::current_exception();
            }
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace probbounds::detail
