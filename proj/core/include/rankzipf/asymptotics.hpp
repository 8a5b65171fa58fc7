#pragma once

// Continuous side of the rank-frequency problem: the Gamma-function
// continuation of the multinomial coefficient, its Stirling form, the
// determinant identities behind the Gaussian limit, and the integral
// f(z) = int_{<a,x> <= z} M(x) dx.

#include <cstdint>
#include <span>
#include <vector>

#include "rankzipf/model.hpp"

namespace rankzipf {

// ln Gamma(sum x + 1) - sum ln Gamma(x_i + 1), x_i >= 0.
double log_multinomial_continuous(std::span<const double> x);

// ln M~(x) = -((n-1)/2) ln(2 pi) + x H(q) + ln(x)/2 - sum ln(x_i)/2 with
// x = sum x_i and q = x / x. Throws DomainError if some x_i <= 0.
double stirling_approx(std::span<const double> x);

// Row-major square matrix; just enough for the determinant identities.
class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}
  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

// Gaussian elimination with partial pivoting. Throws SingularMatrix when a
// pivot falls below n * eps * max|entry|.
double determinant_lu(DenseMatrix m);

// All off-diagonal entries 1, diagonal 1 + k_i.
DenseMatrix lemma1_matrix(std::span<const double> k);

struct Lemma1Determinant {
  std::vector<double> k;
  double det = 0.0;  // prod k_i (1 + sum 1/k_j)

  // Signed cofactor (algebraic complement) of entry (i, j), 0-based.
  // Off-diagonal: -prod_{l not in {i,j}} k_l (empty product = 1).
  double cofactor(std::size_t i, std::size_t j) const;
};

// Throws DomainError on zero k_i or n < 2.
Lemma1Determinant lemma1_determinant(std::span<const double> k);

struct DeterminantSpec {
  std::vector<double> p;  // B1 diagonal is 1 - 1/p_i
  std::vector<double> a;  // B2 = a^T a
  double s = 1.0;
};

// The explicit matrix s B2 - B1.
DenseMatrix lemma2_matrix(const DeterminantSpec& spec);

// Closed form of det(s B2 - B1):
//   s ((sum a_i p_i)^2 - (sum p_j - 1) sum a_i^2 p_i) / prod p_l + det(-B1).
// Throws DomainError on zero p_i, n < 2 or mismatched lengths.
double lemma2_determinant(const DeterminantSpec& spec);

// Value of the delta-constrained Gaussian integral, 1/H(p), computed through
// sqrt(s det(B2/s - B1)) = H(p) / sqrt(prod p). Throws InvalidDistribution.
double gaussian_constant(std::span<const double> p);

struct GaussianExtrapolation {
  std::vector<double> sigmas;
  std::vector<double> values;  // 1 / (sigma sqrt(prod p det(B2/sigma^2 + B)))
  double extrapolate = 0.0;    // polynomial (Neville) extrapolation to sigma = 0
};

// Numeric route to the same constant: explicit matrix, LU determinant, then
// Richardson-style extrapolation over a decreasing sigma grid.
GaussianExtrapolation gaussian_constant_numeric(std::span<const double> p,
                                                std::span<const double> sigma_grid);

struct IntegralOptions {
  double rel_tol = 1e-6;
  std::uint64_t max_evaluations = 10'000'000;
};

struct IntegralResult {
  double z = 0.0;
  double value = 0.0;  // f(z)
  double ratio = 0.0;  // f(z) / e^z
  double rel_error = 0.0;
  std::uint64_t evaluations = 0;
};

inline constexpr double kIntegralMaxZ = 40.0;

// f(z) by nested adaptive Gauss-Kronrod over simplex slices. Requires a
// stop-free alphabet with n in {2, 3} and z <= 40; throws BudgetExceeded
// (with the partial ratio) when the evaluation budget runs out.
IntegralResult integral_f(const Alphabet& alphabet, double z, const IntegralOptions& options = {});

}  // namespace rankzipf
