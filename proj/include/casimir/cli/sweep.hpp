#pragma once

// Parameter grids for batch runs, and an order-preserving parallel map.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace casimir::cli {

enum class Spacing { Linear, Log };

struct SweepSpec {
  std::string parameter;
  double start = 0.0;
  double stop = 0.0;
  int points = 2;
  Spacing spacing = Spacing::Linear;
};

/// Names accepted as sweep parameters.
inline constexpr std::string_view kSweepParameters[] = {"z_over_a", "phi_tilde", "p", "phi", "a_over_r0", "l"};

/// Parses "name:start:stop:points[:lin|log]". Throws DomainError.
SweepSpec parse_sweep(std::string_view text);

void validate(const SweepSpec& spec);

/// Grid points in order; the endpoints are exactly start and stop.
std::vector<double> grid(const SweepSpec& spec);

/// Evaluates f(0) .. f(n-1) on up to `jobs` threads and returns the results
/// in index order. If any call throws, the exception of the lowest failing
/// index is rethrown after all workers finish.
template <class F>
auto parallel_map(std::size_t n, int jobs, F f) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<R> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(jobs, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

} // namespace casimir::cli
