#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace dyadic {

// Selects the kernel variant.  `serial` is the reference; `parallel` spreads
// independent terms over OpenMP threads and then reduces them in the same
// order as `serial`, so both produce bit-identical results.
enum class Exec { serial, parallel };

// Evaluates fn(i) for i in [0, count) into a vector, in parallel when asked.
// If any call throws, the exception from the lowest index is rethrown.
template <class Fn>
auto map_indices(std::size_t count, Exec exec, Fn&& fn) -> std::vector<decltype(fn(std::size_t{}))> {
  std::vector<decltype(fn(std::size_t{}))> out(count);
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(count);
  const auto n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 16)
  for (long long i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      out[idx] = fn(idx);
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace dyadic
