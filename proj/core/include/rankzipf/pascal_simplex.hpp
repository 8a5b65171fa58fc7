#pragma once

// Sums of multinomial coefficients over the lattice simplex <a,k> <= z
// (the Pascal pyramid cut by a hyperplane).

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rankzipf/bigint.hpp"
#include "rankzipf/errors.hpp"
#include "rankzipf/model.hpp"

namespace rankzipf {

using Composition = std::vector<std::uint32_t>;

// Two class weights are equal iff |a - b| < kWeightTolerance * (1 + max(|a|,|b|)).
inline constexpr double kWeightTolerance = 1e-12;

bool weights_equal(double a, double b);
// True when weight w lies in the closed half-line (-inf, z], ties included.
bool weight_within(double w, double z);

// <a,k> recomputed from scratch with compensated summation.
double class_weight(const WeightVector& weights, std::span<const std::uint32_t> k);

// (k_1 + ... + k_n)! / (k_1! ... k_n!), exact.
BigInt multinomial(std::span<const std::uint32_t> k);

// Depth-first visit of every k with <a,k> <= z (boundary included) in
// lexicographic order of (k_1, ..., k_n). Returns the number of classes visited.
using ClassVisitor = std::function<void(std::span<const std::uint32_t> k, double weight,
                                        const BigInt& count)>;
std::uint64_t for_each_class(const WeightVector& weights, double z, const ClassVisitor& visit);

// Q~(z) = sum of M(k) over <a,k> <= z; 0 for z < 0.
BigInt q_tilde(const WeightVector& weights, double z);
BigInt q_tilde(const Alphabet& alphabet, double z);

// Every class up to z_max, sorted by weight, with cumulative counts so that
// Q~(z) for many z <= z_max costs one binary search each.
class ClassTable {
 public:
  static ClassTable collect(const WeightVector& weights, double z_max,
                            std::uint64_t max_classes = 50'000'000);

  BigInt count_at(double z) const;
  double z_max() const noexcept { return z_max_; }
  std::size_t size() const noexcept { return weights_.size(); }
  const std::vector<double>& sorted_weights() const noexcept { return weights_; }
  // Smallest |w - z| over tabulated weights (infinity when empty).
  double distance_to_nearest(double z) const;

 private:
  double z_max_ = 0.0;
  std::vector<double> weights_;
  std::vector<BigInt> cumulative_;
};

// Volume of the simplex <a,x> <= z: z^n / (n! prod a_i). Estimates the class count.
double simplex_volume(const WeightVector& weights, double z);

}  // namespace rankzipf
