#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace ccb {

/// Execution policy for the data-parallel kernels. `serial` is the reference
/// path; both produce bit-identical results because every index is computed
/// independently and written to its own slot.
enum class Exec { serial, parallel };

/// Number of threads the parallel kernels will use (1 without OpenMP).
int max_threads() noexcept;

/// Calls body(i) for i in [0, n). Under Exec::parallel the iterations are
/// distributed over OpenMP threads. If any iteration throws, the exception
/// of the lowest failing index is rethrown after the loop, so error
/// reporting does not depend on thread scheduling.
template <typename Body>
void for_each_index(std::size_t n, Exec exec, Body&& body) {
    std::vector<std::exception_ptr> failures(n);
    const long long count = static_cast<long long>(n);
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic, 4) if (exec == Exec::parallel)
#endif
    for (long long i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            failures[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    (void)exec;
    for (const auto& failure : failures) {
        if (failure) {
            std::rethrow_exception(failure);
        }
    }
}

}  // namespace ccb
