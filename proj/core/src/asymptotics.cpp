#include "rankzipf/asymptotics.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "rankzipf/errors.hpp"
#include "rankzipf/parallel.hpp"
#include "rankzipf/quadrature.hpp"
#include "rankzipf/special.hpp"

namespace rankzipf {

double log_multinomial_continuous(std::span<const double> x) {
  double total = 0.0;
  std::size_t positive = 0;
  for (double xi : x) {
    if (!(xi >= 0.0) || !std::isfinite(xi)) throw DomainError("coordinates must be finite and >= 0");
    total += xi;
    if (xi > 0.0) ++positive;
  }
  if (positive <= 1) return 0.0;
  double result = log_gamma(total + 1.0);
  for (double xi : x) result -= log_gamma(xi + 1.0);
  return result;
}

double stirling_approx(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  double total = 0.0;
  for (double xi : x) {
    if (!(xi > 0.0) || !std::isfinite(xi)) throw DomainError("stirling_approx requires x_i > 0");
    total += xi;
  }
  double entropy_q = 0.0;
  double sum_log = 0.0;
  for (double xi : x) {
    const double q = xi / total;
    entropy_q -= q * std::log(q);
    sum_log += std::log(xi);
  }
  return -0.5 * (n - 1.0) * std::log(2.0 * std::numbers::pi) + total * entropy_q +
         0.5 * std::log(total) - 0.5 * sum_log;
}

double determinant_lu(DenseMatrix m) {
  const std::size_t n = m.size();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(m(i, j)));
  const double threshold = static_cast<double>(n) * std::numeric_limits<double>::epsilon() * scale;

  double det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
    if (!(std::abs(m(pivot, col)) > threshold)) {
      throw SingularMatrix("matrix is numerically singular at column " + std::to_string(col + 1));
    }
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = m(r, col) / m(col, col);
      for (std::size_t j = col; j < n; ++j) m(r, j) -= factor * m(col, j);
    }
  }
  return det;
}

DenseMatrix lemma1_matrix(std::span<const double> k) {
  DenseMatrix b(k.size());
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j = 0; j < k.size(); ++j) b(i, j) = i == j ? 1.0 + k[i] : 1.0;
  return b;
}

namespace {

// prod_{l not in skip} k_l * (1 + sum_{l not in skip} 1/k_l), written without
// division as prod + sum of (n-1)-fold products.
double lemma1_closed_form(std::span<const double> k, std::size_t skip_a, std::size_t skip_b) {
  double prod = 1.0;
  double sum_of_partials = 0.0;
  for (std::size_t l = 0; l < k.size(); ++l) {
    if (l == skip_a || l == skip_b) continue;
    double partial = 1.0;
    for (std::size_t m = 0; m < k.size(); ++m) {
      if (m != l && m != skip_a && m != skip_b) partial *= k[m];
    }
    sum_of_partials += partial;
    prod *= k[l];
  }
  return prod + sum_of_partials;
}

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

}  // namespace

Lemma1Determinant lemma1_determinant(std::span<const double> k) {
  if (k.size() < 2) throw DomainError("lemma1_determinant requires n >= 2");
  for (double ki : k) {
    if (ki == 0.0 || !std::isfinite(ki)) throw DomainError("lemma1_determinant requires nonzero k_i");
  }
  Lemma1Determinant out;
  out.k.assign(k.begin(), k.end());
  out.det = lemma1_closed_form(k, kNone, kNone);
  return out;
}

double Lemma1Determinant::cofactor(std::size_t i, std::size_t j) const {
  if (i >= k.size() || j >= k.size()) throw std::out_of_range("cofactor index");
  if (i == j) return lemma1_closed_form(k, i, kNone);
  double prod = 1.0;
  for (std::size_t l = 0; l < k.size(); ++l) {
    if (l != i && l != j) prod *= k[l];
  }
  return -prod;
}

namespace {

void check_spec(const DeterminantSpec& spec) {
  if (spec.p.size() < 2) throw DomainError("determinant spec requires n >= 2");
  if (spec.a.size() != spec.p.size()) throw LengthMismatch(spec.a.size(), spec.p.size());
  for (double pi : spec.p) {
    if (pi == 0.0 || !std::isfinite(pi)) throw DomainError("determinant spec requires nonzero p_i");
  }
}

}  // namespace

DenseMatrix lemma2_matrix(const DeterminantSpec& spec) {
  check_spec(spec);
  const std::size_t n = spec.p.size();
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double b1 = i == j ? 1.0 - 1.0 / spec.p[i] : 1.0;
      m(i, j) = spec.s * spec.a[i] * spec.a[j] - b1;
    }
  }
  return m;
}

double lemma2_determinant(const DeterminantSpec& spec) {
  check_spec(spec);
  const std::size_t n = spec.p.size();
  double sum_ap = 0.0;
  double sum_a2p = 0.0;
  double sum_p = 0.0;
  double prod_p = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum_ap += spec.a[i] * spec.p[i];
    sum_a2p += spec.a[i] * spec.a[i] * spec.p[i];
    sum_p += spec.p[i];
    prod_p *= spec.p[i];
  }
  // det(B1) with k_i = -1/p_i: prod(-1/p_i) (1 - sum p_i); det(-B1) = (-1)^n det(B1).
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double det_b1 = sign / prod_p * (1.0 - sum_p);
  const double det_minus_b1 = sign * det_b1;
  return spec.s * (sum_ap * sum_ap - (sum_p - 1.0) * sum_a2p) / prod_p + det_minus_b1;
}

namespace {

DeterminantSpec gaussian_spec(std::span<const double> p, double s) {
  entropy(p);  // validates
  DeterminantSpec spec;
  spec.p.assign(p.begin(), p.end());
  for (double pi : p) {
    if (!(pi < 1.0)) throw InvalidDistribution("gaussian constant requires p_i in (0,1)");
    spec.a.push_back(-std::log(pi));
  }
  spec.s = s;
  return spec;
}

double product(std::span<const double> p) {
  return std::accumulate(p.begin(), p.end(), 1.0, std::multiplies<>());
}

}  // namespace

double gaussian_constant(std::span<const double> p) {
  for (double pi : p) {
    if (!(pi > 0.0)) throw InvalidDistribution("gaussian constant requires p_i in (0,1)");
  }
  // s det(B2/s - B1) at s = 1.
  const double det = lemma2_determinant(gaussian_spec(p, 1.0));
  return 1.0 / std::sqrt(product(p) * det);
}

GaussianExtrapolation gaussian_constant_numeric(std::span<const double> p,
                                                std::span<const double> sigma_grid) {
  if (sigma_grid.empty()) throw std::invalid_argument("empty sigma grid");
  for (std::size_t i = 0; i < sigma_grid.size(); ++i) {
    if (!(sigma_grid[i] > 0.0)) throw std::invalid_argument("sigma must be positive");
    if (i > 0 && !(sigma_grid[i] < sigma_grid[i - 1])) {
      throw std::invalid_argument("sigma grid must be strictly decreasing");
    }
  }
  for (double pi : p) {
    if (!(pi > 0.0)) throw InvalidDistribution("gaussian constant requires p_i in (0,1)");
  }

  GaussianExtrapolation out;
  const double prod_p = product(p);
  for (double sigma : sigma_grid) {
    // sigma^-2 B2 + B, with B = -B1.
    DenseMatrix m = lemma2_matrix(gaussian_spec(p, 1.0 / (sigma * sigma)));
    const double det = determinant_lu(m);
    if (!(det > 0.0)) throw SingularMatrix("non-positive determinant at sigma = " + std::to_string(sigma));
    out.sigmas.push_back(sigma);
    out.values.push_back(1.0 / (sigma * std::sqrt(prod_p * det)));
  }

  // Neville's scheme evaluated at sigma = 0.
  std::vector<double> t = out.values;
  const std::size_t n = t.size();
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      const double hi = out.sigmas[i];
      const double hj = out.sigmas[i + level];
      t[i] = (hi * t[i + 1] - hj * t[i]) / (hi - hj);
    }
  }
  out.extrapolate = t[0];
  return out;
}

IntegralResult integral_f(const Alphabet& alphabet, double z, const IntegralOptions& options) {
  if (alphabet.has_stop()) throw std::invalid_argument("integral_f needs a stop-free alphabet");
  const std::size_t n = alphabet.size();
  if (n < 2 || n > 3) throw std::invalid_argument("integral_f supports n in {2, 3}");
  if (z > kIntegralMaxZ) throw std::invalid_argument("integral_f supports z <= 40");

  IntegralResult result;
  result.z = z;
  if (z < 0.0) return result;

  const WeightVector w = letter_weights(alphabet);
  double h = 0.0;
  for (std::size_t i = 0; i < n; ++i) h += w.a[i] * alphabet.letters()[i];
  const double scale = 1.0 / h;  // expected size of f(z) / e^z

  std::atomic<std::uint64_t> evaluations{0};
  QuadratureOptions inner_opts;
  inner_opts.rel_tol = 1e-2 * options.rel_tol;
  inner_opts.max_evaluations = options.max_evaluations;

  using Point = std::array<double, 3>;
  // Integral over coordinates d..n-1 of exp(ln M(x) - z), given x_0..x_{d-1}
  // and remaining budget z - sum_{i<d} a_i x_i.
  std::function<double(std::size_t, Point, double)> slice = [&](std::size_t d, Point x,
                                                                double remaining) -> double {
    const double upper = std::max(remaining, 0.0) / w.a[d];
    QuadratureOptions opts = inner_opts;
    opts.abs_tol = 1e-3 * options.rel_tol * scale / std::max(1.0, upper);
    if (d + 1 == n) {
      auto integrand = [&](double t) {
        Point y = x;
        y[d] = t;
        return std::exp(log_multinomial_continuous(std::span<const double>(y.data(), n)) - z);
      };
      return integrate_gk15(integrand, 0.0, upper, opts, &evaluations).value;
    }
    auto integrand = [&](double t) {
      Point y = x;
      y[d] = t;
      return slice(d + 1, y, remaining - w.a[d] * t);
    };
    return integrate_gk15(integrand, 0.0, upper, opts, &evaluations).value;
  };

  // Fixed outer panels so the result does not depend on the thread count.
  constexpr std::size_t kPanels = 8;
  const double outer_upper = z / w.a[0];
  std::array<QuadratureResult, kPanels> panels{};
  QuadratureOptions outer_opts;
  outer_opts.rel_tol = 0.1 * options.rel_tol;
  outer_opts.abs_tol = 0.1 * options.rel_tol * scale / kPanels;
  outer_opts.max_evaluations = options.max_evaluations;

  try {
    parallel_for(kPanels, [&](std::size_t i) {
      const double lo = outer_upper * static_cast<double>(i) / kPanels;
      const double hi = outer_upper * static_cast<double>(i + 1) / kPanels;
      auto integrand = [&](double t) {
        Point x{};
        x[0] = t;
        return slice(1, x, z - w.a[0] * t);
      };
      panels[i] = integrate_gk15(integrand, lo, hi, outer_opts, &evaluations);
    });
  } catch (const BudgetExceeded& e) {
    double partial = 0.0;
    for (const auto& panel : panels) partial += panel.value;
    throw BudgetExceeded(e.what(), partial);
  }

  double ratio = 0.0;
  double error = 0.0;
  for (const auto& panel : panels) {
    ratio += panel.value;
    error += panel.error;
  }
  result.ratio = ratio;
  result.value = ratio * std::exp(z);
  result.rel_error = ratio > 0.0 ? error / ratio : 0.0;
  result.evaluations = evaluations.load();
  return result;
}

}  // namespace rankzipf
