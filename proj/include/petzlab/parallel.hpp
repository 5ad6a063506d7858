#pragma once

#include <cstddef>
#include <exception>

#ifdef PETZLAB_HAVE_OPENMP
#include <omp.h>
#endif

namespace petzlab {

enum class Exec { serial, parallel };

// Index loop over independent work items. Bodies write only to their own
// index's output slots, so the two policies produce identical bytes; a
// throwing body is caught and rethrown after the loop drains.
template <typename F>
void parallel_for(Exec exec, std::ptrdiff_t n, F&& body) {
#ifdef PETZLAB_HAVE_OPENMP
    if (exec == Exec::parallel) {
        std::exception_ptr first_error = nullptr;
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            try {
                body(i);
            } catch (...) {
#pragma omp critical(petzlab_parallel_for_error)
                if (!first_error) first_error = std::current_exception();
            }
        }
        if (first_error) std::rethrow_exception(first_error);
        return;
    }
#else
    (void)exec;
#endif
    for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
}

}  // namespace petzlab
