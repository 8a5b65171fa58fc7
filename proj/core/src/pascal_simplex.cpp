#include "rankzipf/pascal_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "rankzipf/errors.hpp"

namespace rankzipf {

double log_of(const BigInt& x) {
  if (sgn(x) <= 0) throw DomainError("log of non-positive integer");
  long exponent = 0;
  double mantissa = mpz_get_d_2exp(&exponent, x.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::log(2.0);
}

BigInt parse_bigint(const std::string& text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw std::invalid_argument("not a non-negative integer: '" + text + "'");
  }
  return BigInt(text, 10);
}

bool weights_equal(double a, double b) {
  return std::abs(a - b) < kWeightTolerance * (1.0 + std::max(std::abs(a), std::abs(b)));
}

bool weight_within(double w, double z) { return w <= z + kWeightTolerance * (1.0 + std::abs(z)); }

double class_weight(const WeightVector& weights, std::span<const std::uint32_t> k) {
  double sum = 0.0;
  double c = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    double x = static_cast<double>(k[i]) * weights.a[i];
    double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      c += (sum - t) + x;
    } else {
      c += (x - t) + sum;
    }
    sum = t;
  }
  return sum + c;
}

BigInt multinomial(std::span<const std::uint32_t> k) {
  BigInt result = 1;
  unsigned long total = 0;
  for (std::uint32_t ki : k) {
    for (unsigned long j = 1; j <= ki; ++j) {
      ++total;
      mpz_mul_ui(result.get_mpz_t(), result.get_mpz_t(), total);
      mpz_divexact_ui(result.get_mpz_t(), result.get_mpz_t(), j);
    }
  }
  return result;
}

namespace {

class SimplexWalker {
 public:
  SimplexWalker(const WeightVector& weights, double z, const ClassVisitor& visit)
      : w_(weights),
        z_(z),
        prune_(z + 1e-9 * (1.0 + std::abs(z))),
        visit_(visit),
        k_(weights.size(), 0),
        counts_(weights.size()) {}

  std::uint64_t run() {
    if (z_ < 0.0) return 0;
    BigInt one = 1;
    descend(0, 0.0, 0, one);
    return visited_;
  }

 private:
  // counts_[d] holds prod_{j<=d} C(S_j, k_j) for the current prefix.
  void descend(std::size_t d, double partial, unsigned long prefix_total, const BigInt& parent) {
    const std::size_t n = k_.size();
    BigInt& c = counts_[d];
    c = parent;
    for (std::uint32_t m = 0;; ++m) {
      k_[d] = m;
      if (d + 1 == n) {
        double weight = class_weight(w_, k_);
        if (!weight_within(weight, z_)) break;
        ++visited_;
        visit_(k_, weight, c);
      } else {
        double here = partial + static_cast<double>(m) * w_.a[d];
        if (here > prune_) break;
        descend(d + 1, here, prefix_total + m, c);
      }
      mpz_mul_ui(c.get_mpz_t(), c.get_mpz_t(), prefix_total + m + 1);
      mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), m + 1);
    }
    k_[d] = 0;
  }

  const WeightVector& w_;
  double z_;
  double prune_;
  const ClassVisitor& visit_;
  Composition k_;
  std::vector<BigInt> counts_;
  std::uint64_t visited_ = 0;
};

}  // namespace

std::uint64_t for_each_class(const WeightVector& weights, double z, const ClassVisitor& visit) {
  return SimplexWalker(weights, z, visit).run();
}

BigInt q_tilde(const WeightVector& weights, double z) {
  BigInt total = 0;
  for_each_class(weights, z, [&](std::span<const std::uint32_t>, double, const BigInt& count) {
    total += count;
  });
  return total;
}

BigInt q_tilde(const Alphabet& alphabet, double z) { return q_tilde(letter_weights(alphabet), z); }

double simplex_volume(const WeightVector& weights, double z) {
  if (z <= 0.0) return 0.0;
  double log_vol = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    log_vol += std::log(z) - std::log(weights.a[i]) - std::log(static_cast<double>(i + 1));
  }
  return std::exp(log_vol);
}

ClassTable ClassTable::collect(const WeightVector& weights, double z_max, std::uint64_t max_classes) {
  ClassTable table;
  table.z_max_ = z_max;
  std::vector<std::pair<double, BigInt>> entries;
  for_each_class(weights, z_max, [&](std::span<const std::uint32_t>, double w, const BigInt& count) {
    if (entries.size() >= max_classes) {
      throw BudgetExceeded("class table exceeds " + std::to_string(max_classes) + " classes",
                           std::numeric_limits<double>::quiet_NaN());
    }
    entries.emplace_back(w, count);
  });
  std::sort(entries.begin(), entries.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  table.weights_.reserve(entries.size());
  table.cumulative_.reserve(entries.size());
  BigInt running = 0;
  for (auto& [w, count] : entries) {
    running += count;
    table.weights_.push_back(w);
    table.cumulative_.push_back(running);
  }
  return table;
}

BigInt ClassTable::count_at(double z) const {
  if (z < 0.0) return 0;
  if (z > z_max_ && !weights_equal(z, z_max_)) {
    throw std::out_of_range("ClassTable queried beyond its z_max");
  }
  const double threshold = z + kWeightTolerance * (1.0 + std::abs(z));
  auto it = std::upper_bound(weights_.begin(), weights_.end(), threshold);
  if (it == weights_.begin()) return 0;
  return cumulative_[static_cast<std::size_t>(it - weights_.begin()) - 1];
}

double ClassTable::distance_to_nearest(double z) const {
  double best = std::numeric_limits<double>::infinity();
  auto it = std::lower_bound(weights_.begin(), weights_.end(), z);
  if (it != weights_.end()) best = std::min(best, *it - z);
  if (it != weights_.begin()) best = std::min(best, z - *std::prev(it));
  return best;
}

}  // namespace rankzipf
