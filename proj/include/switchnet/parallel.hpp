#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace switchnet {

/// Environment variable consulted when a thread count is not given explicitly.
inline constexpr const char* kThreadsEnvVar = "SWITCHNET_THREADS";

/// Resolve a requested worker count to a concrete positive number.
///
/// `requested > 0` is taken verbatim.  `requested <= 0` falls back to the
/// SWITCHNET_THREADS environment variable and finally to the hardware
/// default reported by the OpenMP runtime (1 when OpenMP is unavailable).
[[nodiscard]] inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv(kThreadsEnvVar)) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v <= 0)
            throw std::invalid_argument(std::string(kThreadsEnvVar) +
                                        " must be a positive integer, got '" + env + "'");
        return static_cast<int>(v);
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Run `fn(i)` for i in [0, count) on up to `threads` workers.
///
/// Each index is processed independently; callers that accumulate results
/// must write into pre-sized per-index slots and reduce serially afterwards
/// so that output bytes do not depend on the schedule.
template <typename Fn>
void parallel_for(long count, int threads, Fn&& fn) {
    const int t = resolve_threads(threads);
    if (t <= 1 || count < 2) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(t)
    for (long i = 0; i < count; ++i) fn(i);
#else
    for (long i = 0; i < count; ++i) fn(i);
#endif
}

}  // namespace switchnet
