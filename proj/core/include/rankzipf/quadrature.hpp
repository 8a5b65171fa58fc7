#pragma once

#include <atomic>
#include <cstdint>
#include <functional>

namespace rankzipf {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // absolute error estimate
  std::uint64_t evaluations = 0;
};

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  std::uint64_t max_evaluations = 10'000'000;
  int max_intervals = 2000;
};

// Globally adaptive Gauss-Kronrod (7/15) on [a, b]. The evaluation counter is
// shared so nested integrations can enforce one budget; exceeding it throws
// BudgetExceeded carrying the current estimate.
QuadratureResult integrate_gk15(const std::function<double(double)>& f, double a, double b,
                                const QuadratureOptions& options,
                                std::atomic<std::uint64_t>* evaluations = nullptr);

}  // namespace rankzipf
