#pragma once

#include <exception>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gsp {

/// Execution policy for the data-parallel kernels. Every kernel has identical
/// semantics under both policies; `serial` is the reference path the tests
/// compare against and the benchmark baseline.
enum class ExecPolicy { serial, parallel };

namespace par {

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Runs f(0..n-1). Under ExecPolicy::parallel the iterations run on the OpenMP
/// thread pool; bodies must write only to index-disjoint locations so that the
/// result is bit-identical to the serial path. Exceptions are captured and
/// rethrown after the region.
template <class F>
void for_each_index(int n, ExecPolicy policy, F&& f) {
    if (policy == ExecPolicy::parallel) {
        std::exception_ptr err;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (int i = 0; i < n; ++i) {
            try {
                f(i);
            } catch (...) {
#ifdef _OPENMP
#pragma omp critical(gsp_par_err)
#endif
                {
                    if (!err) err = std::current_exception();
                }
            }
        }
        if (err) std::rethrow_exception(err);
    } else {
        for (int i = 0; i < n; ++i) f(i);
    }
}

} // namespace par
} // namespace gsp
