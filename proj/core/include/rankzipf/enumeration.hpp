#pragma once

// Exact rank <-> probability machinery for the word list sorted by
// non-increasing probability. Words sharing a letter multiset k form one
// composition class occupying a consecutive block of ranks.

#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <vector>

#include "rankzipf/bigint.hpp"
#include "rankzipf/model.hpp"
#include "rankzipf/pascal_simplex.hpp"

namespace rankzipf {

struct CompositionClass {
  Composition k;
  double weight = 0.0;  // <a,k>, nats
  BigInt count;         // M(k)
  BigInt first_rank;    // 1-based, inclusive
  BigInt last_rank;
};

// A word as 0-based letter indices.
using Word = std::vector<std::size_t>;

// Streams composition classes by non-decreasing weight. Ties (|dw| within
// kWeightTolerance) are broken by k in descending lexicographic order, so the
// class richest in letter 1 comes first. Single owner; not thread-safe.
class Enumerator {
 public:
  explicit Enumerator(WeightVector weights);

  CompositionClass next();

  const BigInt& emitted_rank_total() const noexcept { return emitted_; }
  double last_weight() const noexcept { return last_weight_; }
  std::size_t frontier_size() const noexcept { return frontier_.size(); }
  const WeightVector& weights() const noexcept { return weights_; }

 private:
  struct Node {
    double weight;
    Composition k;
    std::uint64_t total;  // sum of k
    BigInt count;
  };
  struct Later {
    bool operator()(const Node& x, const Node& y) const;
  };

  WeightVector weights_;
  std::priority_queue<Node, std::vector<Node>, Later> frontier_;
  BigInt emitted_ = 0;
  double last_weight_ = 0.0;
};

// Forward-only rank lookup over one Enumerator; seek() targets must not decrease.
class RankCursor {
 public:
  explicit RankCursor(WeightVector weights);

  const CompositionClass& seek(const BigInt& rank);
  const CompositionClass& current() const;

 private:
  Enumerator enumerator_;
  std::optional<CompositionClass> current_;
};

struct RankAnswer {
  BigInt rank;
  double probability = 0.0;      // in the original model (p0 included)
  double log_probability = 0.0;  // nats
  CompositionClass cls;
  std::optional<Word> word;
};

// p(r). With a stop symbol the answer is p0 * prod p_i^{k_i}; ranks coincide
// with those of the tilted model because x -> x^gamma is monotone.
RankAnswer rank_to_probability(const Alphabet& alphabet, const BigInt& rank, bool with_word = false);

// Q(q): rank of the last word with probability >= q. Throws DomainError unless 0 < q <= 1.
BigInt probability_to_rank(const Alphabet& alphabet, double q);

// Index-th (0-based) arrangement of the multiset k in lexicographic letter order.
Word unrank_in_class(std::span<const std::uint32_t> k, const BigInt& index);

// Deterministic representative of rank r.
Word word_at_rank(const Alphabet& alphabet, const BigInt& rank);

struct NormalizedModel {
  Alphabet alphabet;        // stop-free, letters p_i^gamma
  double gamma = 1.0;
  double stop_probability = 1.0;

  // p0 * q^(1/gamma)
  double to_original(double normalized_probability) const;
};

NormalizedModel normalize_model(const Alphabet& alphabet, const GammaSolution& gamma);

struct FunctionalEquationRow {
  double z = 0.0;
  BigInt lhs;  // Q~(z)
  BigInt rhs;  // sum Q~(z - a_i) + chi(z)
  bool boundary = false;  // z within the guard band of an attainable weight; not checked
  bool pass = true;
};

struct FunctionalEquationReport {
  std::vector<FunctionalEquationRow> rows;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::size_t failures = 0;
  bool pass() const noexcept { return failures == 0; }
};

inline constexpr double kBoundaryGuard = 1e-9;

FunctionalEquationReport verify_functional_equation(const Alphabet& alphabet,
                                                    std::span<const double> z_samples);

}  // namespace rankzipf
