#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rbm {

inline int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

/// threads <= 0 keeps the runtime default (all available cores).
inline void set_thread_count(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

/// Runs fn(trial) for every trial in [0, trials), in parallel when OpenMP is
/// available. fn must write only to trial-indexed storage. The first exception
/// thrown by any trial is rethrown after the loop.
template <class Fn>
void for_each_trial(std::size_t trials, Fn&& fn) {
  std::exception_ptr failure;
  const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t t = 0; t < count; ++t) {
    try {
      fn(static_cast<std::size_t>(t));
    } catch (...) {
#pragma omp critical(rbm_trial_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace rbm
