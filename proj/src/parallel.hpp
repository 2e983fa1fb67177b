#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace abc::detail {

inline unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Sums body(i) over i in [0, tasks). Task i goes to worker i % workers; the
// partial sums are combined by addition, so the result does not depend on
// the worker count.
template <class Body>
std::uint64_t parallel_sum(std::uint64_t tasks, unsigned workers, Body body) {
  workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, workers), std::max<std::uint64_t>(tasks, 1)));
  if (workers == 1) {
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i < tasks; ++i) total += body(i);
    return total;
  }
  std::vector<std::uint64_t> partial(workers, 0);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::uint64_t i = w; i < tasks; i += workers) partial[w] += body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::uint64_t total = 0;
  for (auto v : partial) total += v;
  return total;
}

// Runs body(i) for i in [0, tasks) with the same interleaved partition. The
// body must only write to slots owned by index i.
template <class Body>
void parallel_for(std::uint64_t tasks, unsigned workers, Body body) {
  parallel_sum(tasks, workers, [&](std::uint64_t i) -> std::uint64_t {
    body(i);
    return 0;
  });
}

}  // namespace abc::detail
