#ifndef NPRSIM_PARALLEL_HPP
#define NPRSIM_PARALLEL_HPP

#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace nprsim {

/// Runs fn(0..count-1) across at most `workers` threads. Tasks must write to
/// disjoint slots; aggregation happens after the join, in index order, so the
/// result never depends on the worker count.
inline void parallel_for(long long count, int workers,
                         const std::function<void(long long)>& fn) {
  if (count <= 0) return;
  if (workers < 1) workers = 1;
  const int nthreads =
      static_cast<int>(std::min<long long>(workers, count));
  if (nthreads == 1) {
    for (long long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long long> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto body = [&] {
    for (;;) {
      const long long i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nthreads));
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace nprsim

#endif
