#pragma once

// Seeded property suites shared by the `verify` subcommand and the tests.

#include <cstdint>
#include <vector>

#include "rankzipf/model.hpp"

namespace rankzipf {

// Random point of the open simplex (Dirichlet(1)), entries bounded below by 1e-6.
std::vector<double> random_distribution(std::uint64_t seed, std::size_t n);

struct DeterminantSuiteReport {
  std::size_t instances = 0;
  double max_rel_ones_diagonal = 0.0;    // closed form vs LU, determinant
  double max_rel_cofactor = 0.0;  // closed form vs LU on the minor
  double max_rel_rank_one = 0.0;
  double max_linearity = 0.0;     // det(s B2 - B1) off the line through s = 0, 1
  double max_gaussian_entropy_gap = 0.0;    // |gaussian_constant(p) H(p) - 1|
  std::size_t failures = 0;
  bool pass() const noexcept { return failures == 0; }
};

inline constexpr double kDeterminantRelTol = 1e-9;
inline constexpr double kGaussianEntropyTol = 1e-12;

DeterminantSuiteReport determinant_suite(std::uint64_t seed, std::size_t instances = 1000,
                                         std::size_t max_n = 8);

struct KlSuiteReport {
  std::size_t pairs = 0;
  std::size_t violations = 0;       // D(q|p) < (sum |p_i - q_i|)^2 / 4
  double min_slack = 0.0;           // min of D - bound
  double max_identity_gap = 0.0;    // |D - (H(q;p) - H(q))|
  bool pass() const noexcept { return violations == 0 && max_identity_gap < 1e-12; }
};

// n = 0 draws the dimension uniformly from [2, 10] per pair.
KlSuiteReport kl_bound_suite(std::uint64_t seed, std::size_t pairs = 10'000, std::size_t n = 0);

// `count` seeded z values in [0, z_hi], where z_hi <= 30 keeps each Q~ call
// under about 2e4 classes.
std::vector<double> functional_equation_samples(const WeightVector& weights, std::size_t count,
                                                std::uint64_t seed);

}  // namespace rankzipf
