#pragma once

#include <functional>
#include <vector>

#include "ramsey/types.hpp"

namespace ramsey {

struct GoldenResult {
  Real x = 0.0;
  Real value = 0.0;
  int iterations = 0;
};

// Golden-section minimisation of a unimodal function on [a, b]; stops when the
// bracket width falls below rel_tol * |x| + abs_floor.
GoldenResult golden_minimize(const std::function<Real(Real)>& f, Real a, Real b,
                             Real rel_tol = 1e-10, Real abs_floor = 1e-300,
                             int max_iterations = 200);

std::vector<Real> linspace(Real lo, Real hi, int n);
std::vector<Real> geomspace(Real lo, Real hi, int n);

// Runs fn(i) for i in [0, n) on the given number of threads; exceptions are
// rethrown on the calling thread (first index wins).
void parallel_for(std::size_t n, int n_threads, const std::function<void(std::size_t)>& fn);

}  // namespace ramsey
