#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "rankzipf/asymptotics.hpp"
#include "rankzipf/errors.hpp"
#include "rankzipf/pascal_simplex.hpp"
#include "rankzipf/special.hpp"
#include "rankzipf/suites.hpp"

using namespace rankzipf;

namespace {

double eigen_det(const DenseMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd e(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) e(i, j) = m(i, j);
  return e.fullPivLu().determinant();
}

double rel(double x, double y) { return std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1e-300}); }

}  // namespace

TEST(LogGamma, SmallIntegersExact) {
  double log_fact = 0.0;
  for (int k = 1; k <= 30; ++k) {
    log_fact += std::log(static_cast<double>(k));
    EXPECT_NEAR(log_gamma(k + 1.0), log_fact, 1e-15 * (1 + log_fact)) << k;
  }
  EXPECT_EQ(log_gamma(1.0), 0.0);
  EXPECT_EQ(log_gamma(2.0), 0.0);
  EXPECT_THROW(log_gamma(0.0), DomainError);
  EXPECT_THROW(log_gamma(-1.5), DomainError);
}

TEST(LogGammaProperty, AgreesWithStdLgamma) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> le(-6.0, 6.0);
  for (int t = 0; t < 5000; ++t) {
    const double x = std::pow(10.0, le(rng));
    const double ref = std::lgamma(x);
    ASSERT_NEAR(log_gamma(x), ref, 1e-13 * std::max(1.0, std::abs(ref))) << x;
  }
  EXPECT_NEAR(log_gamma(0.5), 0.5 * std::log(std::acos(-1.0)), 1e-15);
}

TEST(LogMultinomialContinuous, Examples) {
  EXPECT_EQ(log_multinomial_continuous(std::vector<double>{7.3, 0.0, 0.0}), 0.0);
  EXPECT_EQ(log_multinomial_continuous(std::vector<double>{0.0, 0.0}), 0.0);
  EXPECT_NEAR(log_multinomial_continuous(std::vector<double>{2.0, 1.0}), std::log(3.0), 1e-14);
  EXPECT_NEAR(log_multinomial_continuous(std::vector<double>{10.0, 10.0}), 12.126791314602454, 1e-12);
}

TEST(LogMultinomialProperty, IntegerConsistency) {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<std::size_t> dim(2, 5);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = dim(rng);
    std::uniform_int_distribution<std::uint32_t> part(0, static_cast<std::uint32_t>(500 / n));
    Composition k(n);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = k[i] = part(rng);
    const double exact = log_of(multinomial(k));
    ASSERT_NEAR(log_multinomial_continuous(x), exact, 1e-10 * (1 + std::abs(exact)));
  }
}

TEST(LogMultinomialProperty, CoordinateMonotone) {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> u(0.1, 50.0);
  for (int t = 0; t < 500; ++t) {
    std::vector<double> x{u(rng), u(rng), u(rng)};
    const std::size_t i = t % 3;
    const double base = log_multinomial_continuous(x);
    x[i] += 1e-3 * (1 + x[i]);
    ASSERT_GT(log_multinomial_continuous(x), base);
  }
}

TEST(Stirling, Examples) {
  EXPECT_NEAR(stirling_approx(std::vector<double>{10.0, 10.0}), 12.139286121777183, 1e-12);
  const double s100 = stirling_approx(std::vector<double>{100.0, 100.0});
  EXPECT_NEAR(s100, 135.75448607607, 1e-9);
  EXPECT_LT(std::abs(s100 - log_multinomial_continuous(std::vector<double>{100.0, 100.0})), 2e-3);
  EXPECT_THROW(stirling_approx(std::vector<double>{1.0, 0.0}), DomainError);
  // Symmetric point: x H(q) = x ln n.
  const double t = 20.0, n = 4.0;
  const double expected = -1.5 * std::log(2 * std::acos(-1.0)) + 4 * t * std::log(n) + 0.5 * std::log(4 * t) -
                          2.0 * std::log(t);
  EXPECT_NEAR(stirling_approx(std::vector<double>(4, t)), expected, 1e-10);
}

TEST(StirlingProperty, GapBound) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(1.0, 200.0);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + t % 4;
    std::vector<double> x(n);
    double total = 0.0, bound = 0.0;
    for (auto& xi : x) {
      xi = u(rng);
      total += xi;
      bound += 1.0 / (12.0 * xi);
    }
    bound += 1.0 / (12.0 * total) + 1e-9;
    ASSERT_LE(std::abs(stirling_approx(x) - log_multinomial_continuous(x)), bound);
  }
}

TEST(OnesDiagonalDeterminant, Examples) {
  const auto d2 = lemma1_determinant(std::vector<double>{1.0, 1.0});
  EXPECT_NEAR(d2.det, 3.0, 1e-15);
  EXPECT_NEAR(d2.cofactor(0, 1), -1.0, 1e-15);
  const auto d3 = lemma1_determinant(std::vector<double>{1.0, 2.0, 3.0});
  EXPECT_NEAR(d3.det, 17.0, 1e-13);
  EXPECT_NEAR(eigen_det(lemma1_matrix(std::vector<double>{1.0, 2.0, 3.0})), 17.0, 1e-12);
  EXPECT_THROW(lemma1_determinant(std::vector<double>{1.0, 0.0}), DomainError);
}

TEST(RankOneDeterminant, Examples) {
  const double l2 = std::log(2.0);
  DeterminantSpec spec{{0.5, 0.5}, {l2, l2}, 1.0};
  EXPECT_NEAR(lemma2_determinant(spec), 1.9218120556728057, 1e-14);
  spec.s = 0.0;
  EXPECT_NEAR(lemma2_determinant(spec), 0.0, 1e-15);
  EXPECT_THROW(lemma2_determinant(DeterminantSpec{{0.5, 0.0}, {1.0, 1.0}, 1.0}), DomainError);
}

TEST(DeterminantProperty, ClosedFormsAgainstEigen) {
  std::mt19937_64 rng(59);
  std::uniform_int_distribution<std::size_t> dim(2, 8);
  std::uniform_real_distribution<double> mag(0.2, 3.0);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = dim(rng);
    std::vector<double> k(n);
    for (auto& x : k) x = (coin(rng) < 0.2 ? -1.0 : 1.0) * mag(rng);
    ASSERT_LT(rel(lemma1_determinant(k).det, eigen_det(lemma1_matrix(k))), 1e-9);

    DeterminantSpec spec;
    spec.p.resize(n);
    spec.a.resize(n);
    for (auto& x : spec.p) x = 0.05 + 0.95 * coin(rng);
    for (auto& x : spec.a) x = -2.0 + 5.0 * coin(rng);
    spec.s = -2.0 + 6.0 * coin(rng);
    ASSERT_LT(rel(lemma2_determinant(spec), eigen_det(lemma2_matrix(spec))), 1e-9) << "trial " << t;
  }
}

TEST(DeterminantProperty, SharedSuite) {
  const auto rep = determinant_suite(61, 1000, 8);
  EXPECT_EQ(rep.failures, 0u);
  EXPECT_LT(rep.max_rel_ones_diagonal, 1e-9);
  EXPECT_LT(rep.max_rel_cofactor, 1e-9);
  EXPECT_LT(rep.max_rel_rank_one, 1e-9);
  EXPECT_LT(rep.max_linearity, 1e-10);
  EXPECT_LT(rep.max_gaussian_entropy_gap, 1e-12);
}

TEST(DeterminantLu, Singular) {
  DenseMatrix m(2);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(1, 0) = 2;
  m(1, 1) = 4;
  EXPECT_THROW(determinant_lu(m), SingularMatrix);
}

TEST(GaussianConstant, Examples) {
  EXPECT_NEAR(gaussian_constant(std::vector<double>{0.5, 0.5}), 1.4426950408889634, 1e-12);
  EXPECT_NEAR(gaussian_constant(std::vector<double>(5, 0.2)), 1.0 / std::log(5.0), 1e-12);
  EXPECT_NEAR(gaussian_constant(std::vector<double>{0.5, 0.3, 0.2}), 0.97120096415051734, 1e-12);
  EXPECT_THROW(gaussian_constant(std::vector<double>{1.0, 0.0}), InvalidDistribution);
}

TEST(GaussianConstantNumeric, Examples) {
  const std::vector<double> grid{0.1, 0.05, 0.025};
  EXPECT_NEAR(gaussian_constant_numeric(std::vector<double>{0.5, 0.5}, grid).extrapolate, 1.4426950408889634,
              1e-6);
  const auto tri = gaussian_constant_numeric(std::vector<double>{0.5, 0.3, 0.2}, grid);
  EXPECT_NEAR(tri.extrapolate, 0.97120096415051734, 1e-6);
  EXPECT_EQ(tri.values.size(), 3u);
  EXPECT_THROW(gaussian_constant_numeric(std::vector<double>{0.5, 0.5}, std::vector<double>{0.1, 0.2}),
               std::invalid_argument);
}

TEST(GaussianConstantNumeric, LargeSigma) {
  // B is singular with null vector p, so the value does not depend on sigma
  // until B2 / sigma^2 drops below rounding.
  const std::vector<double> p{0.5, 0.3, 0.2};
  EXPECT_NEAR(gaussian_constant_numeric(p, std::vector<double>{1e3}).values[0], 0.97120096415051734, 1e-6);
  EXPECT_THROW(gaussian_constant_numeric(p, std::vector<double>{1e9}), SingularMatrix);
}

TEST(IntegralF, Examples) {
  const auto pair = build_alphabet(std::vector<double>{0.5, 0.5});
  EXPECT_EQ(integral_f(pair, -1.0).value, 0.0);
  // Independent double integrals (mpmath, 20 digits).
  EXPECT_NEAR(integral_f(pair, 5.0).ratio, 1.3991241858009689, 1e-9);
  EXPECT_NEAR(integral_f(pair, 10.0).ratio, 1.4422247893328964, 1e-9);
  const auto tri = build_alphabet(std::vector<double>{0.5, 0.3, 0.2});
  EXPECT_NEAR(integral_f(tri, 5.0).ratio, 0.664560148456, 1e-9);
  const auto r20 = integral_f(pair, 20.0);
  EXPECT_NEAR(r20.ratio, 1.4426950408889634, 0.1 * 1.4426950408889634);
  EXPECT_LT(r20.rel_error, 1e-6);
}

TEST(IntegralF, Guards) {
  const auto pair = build_alphabet(std::vector<double>{0.5, 0.5});
  EXPECT_THROW(integral_f(pair, 41.0), std::invalid_argument);
  EXPECT_THROW(integral_f(build_alphabet(std::vector<double>{0.45, 0.45}, 0.1), 5.0), std::invalid_argument);
  EXPECT_THROW(integral_f(build_alphabet(std::vector<double>(4, 0.25)), 5.0), std::invalid_argument);
  IntegralOptions tight;
  tight.max_evaluations = 100;
  EXPECT_THROW(integral_f(build_alphabet(std::vector<double>{0.5, 0.3, 0.2}), 30.0, tight), BudgetExceeded);
}

TEST(IntegralFProperty, IncreasingInZ) {
  const auto tri = build_alphabet(std::vector<double>{0.5, 0.3, 0.2});
  double last = 0.0;
  for (double z = 0.5; z <= 20.0; z += 0.5) {
    const double v = integral_f(tri, z).value;
    ASSERT_GT(v, last) << z;
    last = v;
  }
}
