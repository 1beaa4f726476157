#include "ramsey/numerics.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>
#include <vector>

namespace ramsey {

GoldenResult golden_minimize(const std::function<Real(Real)>& f, Real a, Real b,
                             Real rel_tol, Real abs_floor, int max_iterations) {
  if (!(a < b)) throw std::invalid_argument("golden_minimize: need a < b");
  constexpr Real inv_phi = 0.6180339887498949;  // (sqrt 5 - 1)/2
  Real x1 = b - inv_phi * (b - a);
  Real x2 = a + inv_phi * (b - a);
  Real f1 = f(x1), f2 = f(x2);
  int iterations = 0;
  while (iterations < max_iterations) {
    const Real mid = 0.5 * (a + b);
    if (b - a < rel_tol * std::abs(mid) + abs_floor) break;
    ++iterations;
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  GoldenResult result;
  result.iterations = iterations;
  if (f1 < f2) {
    result.x = x1;
    result.value = f1;
  } else {
    result.x = x2;
    result.value = f2;
  }
  return result;
}

std::vector<Real> linspace(Real lo, Real hi, int n) {
  if (n < 1) throw std::invalid_argument("linspace: need at least one point");
  std::vector<Real> values(static_cast<std::size_t>(n));
  if (n == 1) {
    values[0] = lo;
    return values;
  }
  for (int i = 0; i < n; ++i)
    values[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return values;
}

std::vector<Real> geomspace(Real lo, Real hi, int n) {
  if (lo <= 0.0 || hi <= 0.0)
    throw std::invalid_argument("geomspace: endpoints must be positive");
  if (n < 1) throw std::invalid_argument("geomspace: need at least one point");
  std::vector<Real> values(static_cast<std::size_t>(n));
  if (n == 1) {
    values[0] = lo;
    return values;
  }
  const Real log_lo = std::log(lo), log_hi = std::log(hi);
  for (int i = 0; i < n; ++i)
    values[static_cast<std::size_t>(i)] = std::exp(log_lo + (log_hi - log_lo) * i / (n - 1));
  return values;
}

void parallel_for(std::size_t n, int n_threads, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  const std::size_t workers =
      std::min<std::size_t>(std::max(n_threads, 1), n);
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace ramsey
