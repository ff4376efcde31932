#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <vector>

#include <omp.h>

namespace wib {

// Serial is the reference path; Parallel must produce identical results.
enum class Execution { Serial, Parallel };

// Number of OpenMP threads to use for a requested worker count (0 = all).
inline int resolve_workers(int workers) noexcept { return workers > 0 ? workers : omp_get_max_threads(); }

/*
 * Calls body(i) for i in [0, n). Each index must write only to its own
 * output slot, which keeps the parallel path bit-identical to the serial
 * one. The first exception (lowest index) is rethrown after the loop.
 */
template <class Body>
void for_each_index(std::size_t n, Execution exec, int workers, Body&& body) {
    if (exec == Execution::Serial) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_workers(workers))
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace wib
