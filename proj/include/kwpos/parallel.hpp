#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace kwpos {

// Applies fn to every element on up to `jobs` threads. Results come back in
// input order. If any call throws, the exception of the lowest failing index
// is rethrown, so failures are reported the same way for any pool size.
template <typename T, typename Fn>
auto parallel_map(const std::vector<T>& inputs, Fn&& fn, std::size_t jobs = 1)
    -> std::vector<std::invoke_result_t<Fn&, const T&>> {
  using R = std::invoke_result_t<Fn&, const T&>;
  const std::size_t n = inputs.size();
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);

  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t i = cursor++; i < n; i = cursor++) {
      try {
        slots[i].emplace(fn(inputs[i]));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n, 1));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace kwpos
