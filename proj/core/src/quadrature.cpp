#include "rankzipf/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "rankzipf/errors.hpp"

namespace rankzipf {

namespace {

// Kronrod abscissae on [0,1] (symmetric half); odd indices are Gauss nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * sum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
  }
  return Panel{a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate_gk15(const std::function<double(double)>& f, double a, double b,
                                const QuadratureOptions& options,
                                std::atomic<std::uint64_t>* evaluations) {
  std::atomic<std::uint64_t> local{0};
  std::atomic<std::uint64_t>& counter = evaluations ? *evaluations : local;
  const std::uint64_t start = counter.load();

  QuadratureResult result;
  if (!(b > a)) return result;

  std::priority_queue<Panel> panels;
  double value = 0.0;
  double error = 0.0;
  auto charge = [&] {
    if (counter.fetch_add(15) + 15 > options.max_evaluations) {
      throw BudgetExceeded("quadrature exceeded " + std::to_string(options.max_evaluations) +
                               " integrand evaluations",
                           value);
    }
  };

  charge();
  Panel first = gk15(f, a, b);
  value = first.value;
  error = first.error;
  panels.push(first);

  int intervals = 1;
  while (error > std::max(options.abs_tol, options.rel_tol * std::abs(value)) &&
         intervals < options.max_intervals) {
    Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    charge();
    charge();
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++intervals;
  }

  // Re-sum to shed accumulated cancellation in the running totals.
  value = 0.0;
  error = 0.0;
  while (!panels.empty()) {
    value += panels.top().value;
    error += panels.top().error;
    panels.pop();
  }
  result.value = value;
  result.error = error;
  result.evaluations = counter.load() - start;
  return result;
}

}  // namespace rankzipf
