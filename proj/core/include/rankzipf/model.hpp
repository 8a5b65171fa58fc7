#pragma once

// The memoryless word source: letter probabilities, the power exponent
// gamma solving sum p_i^gamma = 1, entropy functionals, lattice detection
// and the predicted limit constants.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace rankzipf {

// Tolerance on |sum(p) - 1| used for every normalization check.
inline constexpr double kSumTolerance = 1e-12;

class Alphabet {
 public:
  const std::vector<double>& letters() const noexcept { return letters_; }
  std::optional<double> stop() const noexcept { return stop_; }
  bool has_stop() const noexcept { return stop_.has_value(); }
  // p0, or 1 when the model has no stop symbol.
  double stop_probability() const noexcept { return stop_.value_or(1.0); }
  std::size_t size() const noexcept { return letters_.size(); }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  Alphabet(std::vector<double> letters, std::optional<double> stop)
      : letters_(std::move(letters)), stop_(stop) {}
  friend Alphabet build_alphabet(std::span<const double>, std::optional<double>);

  std::vector<double> letters_;
  std::optional<double> stop_;
};

// Validates and builds an alphabet. Inputs are never renormalized.
// Throws TooFewLetters, NonPositiveProbability or SumNotOne.
Alphabet build_alphabet(std::span<const double> probs, std::optional<double> stop = std::nullopt);

// a_i = -ln p_i, in nats. All entries strictly positive.
struct WeightVector {
  std::vector<double> a;

  std::size_t size() const noexcept { return a.size(); }
  double min() const;
  double max() const;
};

WeightVector letter_weights(const Alphabet& alphabet);
// Throws ValidationError unless every a_i is finite and > 0.
WeightVector make_weights(std::vector<double> a);

struct GammaSolution {
  double gamma = 1.0;
  double residual = 0.0;  // |sum p_i^gamma - 1|
  std::vector<double> tilted;
};

// Sum of p_i^g over the letters (stop excluded).
double power_sum(const Alphabet& alphabet, double g);

GammaSolution solve_gamma(const Alphabet& alphabet);

// -sum p_i ln p_i in nats, with 0 ln 0 = 0. Throws InvalidDistribution.
double entropy(std::span<const double> dist);
// -sum q_i ln p_i. Throws LengthMismatch / InvalidDistribution.
double cross_entropy(std::span<const double> q, std::span<const double> p);
// D(q|p) = H(q;p) - H(q), evaluated as sum q_i ln(q_i/p_i).
double kl_divergence(std::span<const double> q, std::span<const double> p);

// Per-ratio continued-fraction evidence for a_i / a_1.
struct RatioEvidence {
  std::size_t index = 0;       // i (0-based); the reference letter is 0
  bool rational = false;
  std::int64_t numerator = 0;  // h in a_i/a_1 ~ h/k (valid when rational)
  std::int64_t denominator = 0;
  int depth = 0;               // continued-fraction terms examined
  std::int64_t last_denominator = 0;  // largest convergent denominator examined
  double residual = 0.0;       // |k a_i - h a_1| / max(a_i, a_1), last convergent examined
};

struct LatticeReport {
  bool is_lattice = false;
  std::optional<double> v;
  std::optional<std::vector<std::int64_t>> m;
  // First pair (0, i) whose ratio found no rational match (0-based).
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  int witness_depth = 0;
  std::int64_t max_denominator = 0;
  double tol = 0.0;
  std::vector<RatioEvidence> ratios;
};

inline constexpr std::int64_t kDefaultMaxDenominator = 1'000'000;
inline constexpr double kDefaultLatticeTol = 1e-9;

// Heuristic test for a_i = m_i v with natural m_i. A ratio a_i/a_1 counts as
// rational when some continued-fraction convergent h/k (h >= 1) with
// k <= max_denominator satisfies |k a_i - h a_1| <= tol * max(a_i, a_1).
// Finite expansions cannot prove irrationality; the report carries the bound.
LatticeReport detect_lattice(const WeightVector& weights,
                             std::int64_t max_denominator = kDefaultMaxDenominator,
                             double tol = kDefaultLatticeTol);

struct PredictedLimits {
  double entropy_tilted = 0.0;  // H(p^gamma), nats
  double q_limit = 0.0;         // lim Q~(z)/e^z of the normalized model
  double rank_limit = 0.0;      // lim p(r) r^(1/gamma)
};

PredictedLimits predicted_limits(const Alphabet& alphabet, const GammaSolution& gamma);

}  // namespace rankzipf
