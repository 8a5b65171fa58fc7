#include "rankzipf/suites.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rankzipf/asymptotics.hpp"
#include "rankzipf/errors.hpp"
#include "rankzipf/pascal_simplex.hpp"

namespace rankzipf {

namespace {

double rel_diff(double x, double y) {
  const double scale = std::max({std::abs(x), std::abs(y), 1e-300});
  return std::abs(x - y) / scale;
}

std::vector<double> dirichlet(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& x : p) {
    x = -std::log1p(-u(rng)) + 1e-5;
    total += x;
  }
  for (auto& x : p) x /= total;
  return p;
}

DenseMatrix drop_row_col(const DenseMatrix& m, std::size_t r, std::size_t c) {
  const std::size_t n = m.size();
  DenseMatrix out(n - 1);
  for (std::size_t i = 0, oi = 0; i < n; ++i) {
    if (i == r) continue;
    for (std::size_t j = 0, oj = 0; j < n; ++j) {
      if (j == c) continue;
      out(oi, oj++) = m(i, j);
    }
    ++oi;
  }
  return out;
}

}  // namespace

std::vector<double> random_distribution(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  return dirichlet(rng, n);
}

DeterminantSuiteReport determinant_suite(std::uint64_t seed, std::size_t instances,
                                         std::size_t max_n) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dim(2, std::max<std::size_t>(2, max_n));
  std::uniform_real_distribution<double> mag(0.2, 3.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  DeterminantSuiteReport rep;
  rep.instances = instances;
  for (std::size_t t = 0; t < instances; ++t) {
    const std::size_t n = dim(rng);

    std::vector<double> k(n);
    for (auto& x : k) x = (coin(rng) < 0.2 ? -1.0 : 1.0) * mag(rng);
    const auto l1 = lemma1_determinant(k);
    const DenseMatrix m1 = lemma1_matrix(k);
    const double e1 = rel_diff(l1.det, determinant_lu(m1));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const std::size_t i = pick(rng), j = pick(rng);
    const double sign = (i + j) % 2 == 0 ? 1.0 : -1.0;
    const double ec = rel_diff(l1.cofactor(i, j), sign * determinant_lu(drop_row_col(m1, i, j)));

    DeterminantSpec spec;
    spec.p.resize(n);
    spec.a.resize(n);
    for (auto& x : spec.p) x = std::uniform_real_distribution<double>(0.05, 1.0)(rng);
    for (auto& x : spec.a) x = std::uniform_real_distribution<double>(-2.0, 3.0)(rng);
    spec.s = std::uniform_real_distribution<double>(-2.0, 4.0)(rng);
    const double e2 = rel_diff(lemma2_determinant(spec), determinant_lu(lemma2_matrix(spec)));

    // det(s B2 - B1) is affine in s: compare s with the line through 0 and 1.
    auto det_at = [&](double s) {
      DeterminantSpec sp = spec;
      sp.s = s;
      return determinant_lu(lemma2_matrix(sp));
    };
    const double d0 = det_at(0.0), d1 = det_at(1.0), ds = det_at(spec.s);
    const double line = d0 + spec.s * (d1 - d0);
    const double scale = std::max({std::abs(d0), std::abs(d1), std::abs(ds), 1.0});
    const double el = std::abs(ds - line) / scale;

    const auto p = dirichlet(rng, n);
    const double ec2 = std::abs(gaussian_constant(p) * entropy(p) - 1.0);

    rep.max_rel_ones_diagonal = std::max(rep.max_rel_ones_diagonal, e1);
    rep.max_rel_cofactor = std::max(rep.max_rel_cofactor, ec);
    rep.max_rel_rank_one = std::max(rep.max_rel_rank_one, e2);
    rep.max_linearity = std::max(rep.max_linearity, el);
    rep.max_gaussian_entropy_gap = std::max(rep.max_gaussian_entropy_gap, ec2);
    if (e1 >= kDeterminantRelTol || ec >= kDeterminantRelTol || e2 >= kDeterminantRelTol ||
        el >= 1e-10 || ec2 >= kGaussianEntropyTol) {
      ++rep.failures;
    }
  }
  return rep;
}

KlSuiteReport kl_bound_suite(std::uint64_t seed, std::size_t pairs, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> dim(2, 10);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  KlSuiteReport rep;
  rep.pairs = pairs;
  rep.min_slack = INFINITY;
  for (std::size_t t = 0; t < pairs; ++t) {
    const std::size_t d = n == 0 ? dim(rng) : n;
    const auto p = dirichlet(rng, d);
    auto q = dirichlet(rng, d);
    // Some pairs close together, where the bound is tight.
    if (coin(rng) < 0.25) {
      const double mix = coin(rng) * 0.1;
      for (std::size_t i = 0; i < d; ++i) q[i] = (1.0 - mix) * p[i] + mix * q[i];
    }
    double l1 = 0.0;
    for (std::size_t i = 0; i < d; ++i) l1 += std::abs(p[i] - q[i]);
    const double kl = kl_divergence(q, p);
    const double bound = 0.25 * l1 * l1;
    rep.min_slack = std::min(rep.min_slack, kl - bound);
    if (kl < bound) ++rep.violations;
    const double identity = cross_entropy(q, p) - entropy(q);
    rep.max_identity_gap = std::max(rep.max_identity_gap, std::abs(kl - identity));
  }
  return rep;
}

std::vector<double> functional_equation_samples(const WeightVector& weights, std::size_t count,
                                                std::uint64_t seed) {
  constexpr std::uint64_t kClassCap = 20'000;
  constexpr double kZCap = 30.0;
  const double step = weights.max() / 4.0;
  double z_hi = std::min(kZCap, weights.max());
  for (double z = z_hi + step; z <= kZCap; z += step) {
    std::uint64_t visited = 0;
    try {
      visited = ClassTable::collect(weights, z, kClassCap).size();
    } catch (const BudgetExceeded&) {
      break;
    }
    if (visited > kClassCap) break;
    z_hi = z;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, z_hi);
  std::vector<double> z(count);
  for (auto& x : z) x = u(rng);
  return z;
}

}  // namespace rankzipf
