#ifndef WITNESSKIT_PARALLEL_HPP
#define WITNESSKIT_PARALLEL_HPP

// Execution policy shared by the sampling kernels. Every parallel kernel has a
// serial twin selected by Execution::serial; both must give bitwise-identical
// results because each work item draws from its own derived seed and writes
// into its own slot.

#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace witnesskit {

enum class Execution { serial, parallel };

/// splitmix64 finalizer over (base, index). Used to give work item i its own stream.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index)
{
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Runs body(i) for i in [0, count). The first exception thrown by any item is
/// rethrown after the loop.
template <class Body>
void for_each_index(Execution exec, std::size_t count, Body&& body)
{
    if (exec == Execution::serial) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < n; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
}

/// Caps the OpenMP team size; 0 leaves the runtime default.
inline void set_thread_limit(int threads)
{
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

inline int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace witnesskit

#endif
