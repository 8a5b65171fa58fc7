#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rankzipf/model.hpp"

namespace rankzipf {

namespace {

__extension__ typedef __int128 i128;

RatioEvidence expand_ratio(double a_ref, double a_i, std::size_t index,
                           std::int64_t max_denominator, double tol) {
  RatioEvidence ev;
  ev.index = index;
  const long double scale = std::max(a_ref, a_i);
  long double y = static_cast<long double>(a_i) / a_ref;

  // Convergent recurrences h_j = c_j h_{j-1} + h_{j-2}, same for k.
  i128 h1 = 1, h2 = 0;
  i128 k1 = 0, k2 = 1;
  for (int depth = 1;; ++depth) {
    if (!std::isfinite(static_cast<double>(y)) || y > 1e18L) break;
    long double c = std::floor(y);
    i128 term = static_cast<i128>(c);
    i128 h = term * h1 + h2;
    i128 k = term * k1 + k2;
    if (k > max_denominator) break;

    ev.depth = depth;
    ev.last_denominator = static_cast<std::int64_t>(k);
    long double relation = static_cast<long double>(k) * a_i - static_cast<long double>(h) * a_ref;
    ev.residual = static_cast<double>(std::fabs(relation) / scale);
    if (h >= 1 && ev.residual <= tol) {
      ev.rational = true;
      ev.numerator = static_cast<std::int64_t>(h);
      ev.denominator = static_cast<std::int64_t>(k);
      return ev;
    }

    long double frac = y - c;
    if (frac <= 0.0L) break;
    y = 1.0L / frac;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
  }
  return ev;
}

}  // namespace

LatticeReport detect_lattice(const WeightVector& weights, std::int64_t max_denominator, double tol) {
  LatticeReport report;
  report.max_denominator = max_denominator;
  report.tol = tol;
  const auto& a = weights.a;
  const std::size_t n = a.size();

  bool all_rational = true;
  for (std::size_t i = 1; i < n; ++i) {
    RatioEvidence ev = expand_ratio(a[0], a[i], i, max_denominator, tol);
    if (!ev.rational && all_rational) {
      all_rational = false;
      report.witness = std::make_pair(std::size_t{0}, i);
      report.witness_depth = ev.depth;
    }
    report.ratios.push_back(ev);
  }
  if (!all_rational) return report;

  // a_i/a_0 = h_i/k_i, so with L = lcm(k_i): m_0 = L, m_i = h_i L / k_i.
  i128 lcm = 1;
  for (const auto& ev : report.ratios) {
    i128 g = std::gcd(static_cast<std::int64_t>(lcm), ev.denominator);
    lcm = lcm / g * ev.denominator;
    if (lcm > std::numeric_limits<std::int64_t>::max() / 2) {
      report.witness = std::make_pair(std::size_t{0}, ev.index);
      report.witness_depth = ev.depth;
      return report;
    }
  }
  std::vector<i128> m(n);
  m[0] = lcm;
  for (const auto& ev : report.ratios) m[ev.index] = ev.numerator * (lcm / ev.denominator);

  std::int64_t g = 0;
  for (i128 mi : m) {
    if (mi > std::numeric_limits<std::int64_t>::max()) {
      report.witness = std::make_pair(std::size_t{0}, std::size_t{0});
      return report;
    }
    g = std::gcd(g, static_cast<std::int64_t>(mi));
  }
  std::vector<std::int64_t> reduced(n);
  for (std::size_t i = 0; i < n; ++i) reduced[i] = static_cast<std::int64_t>(m[i] / g);

  const double v = a[0] / static_cast<double>(reduced[0]);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(a[i] - static_cast<double>(reduced[i]) * v) >= 1e-9 * a[i]) {
      report.witness = std::make_pair(std::size_t{0}, i);
      return report;
    }
  }
  report.is_lattice = true;
  report.v = v;
  report.m = std::move(reduced);
  return report;
}

}  // namespace rankzipf
