#include "rankzipf/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rankzipf/errors.hpp"
#include "rankzipf/parallel.hpp"

namespace rankzipf {

bool Enumerator::Later::operator()(const Node& x, const Node& y) const {
  // True when x is emitted after y.
  if (weights_equal(x.weight, y.weight)) return x.k < y.k;
  return x.weight > y.weight;
}

Enumerator::Enumerator(WeightVector weights) : weights_(std::move(weights)) {
  frontier_.push(Node{0.0, Composition(weights_.size(), 0), 0, BigInt(1)});
}

CompositionClass Enumerator::next() {
  Node node = frontier_.top();
  frontier_.pop();

  // Children k + e_i for i <= first nonzero index of k; the zero vector
  // spawns all n. Each k > 0 then has the unique parent k - e_{first nonzero}.
  const std::size_t n = node.k.size();
  std::size_t first_nonzero = n - 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (node.k[i] != 0) {
      first_nonzero = i;
      break;
    }
  }
  for (std::size_t i = 0; i <= first_nonzero; ++i) {
    Node child{0.0, node.k, node.total + 1, node.count};
    ++child.k[i];
    child.weight = class_weight(weights_, child.k);
    // M(k + e_i) = M(k) (|k| + 1) / (k_i + 1)
    mpz_mul_ui(child.count.get_mpz_t(), child.count.get_mpz_t(), child.total);
    mpz_divexact_ui(child.count.get_mpz_t(), child.count.get_mpz_t(), child.k[i]);
    frontier_.push(std::move(child));
  }

  CompositionClass cls;
  cls.first_rank = emitted_ + 1;
  emitted_ += node.count;
  cls.last_rank = emitted_;
  cls.k = std::move(node.k);
  cls.weight = node.weight;
  cls.count = std::move(node.count);
  last_weight_ = cls.weight;
  return cls;
}

RankCursor::RankCursor(WeightVector weights) : enumerator_(std::move(weights)) {}

const CompositionClass& RankCursor::seek(const BigInt& rank) {
  if (rank < 1) throw DomainError("rank must be >= 1");
  if (current_ && rank < current_->first_rank) {
    throw std::invalid_argument("RankCursor::seek moves forward only");
  }
  while (!current_ || current_->last_rank < rank) current_ = enumerator_.next();
  return *current_;
}

const CompositionClass& RankCursor::current() const {
  if (!current_) throw std::logic_error("RankCursor has not been positioned");
  return *current_;
}

RankAnswer rank_to_probability(const Alphabet& alphabet, const BigInt& rank, bool with_word) {
  RankCursor cursor(letter_weights(alphabet));
  RankAnswer answer;
  answer.rank = rank;
  answer.cls = cursor.seek(rank);
  answer.log_probability = std::log(alphabet.stop_probability()) - answer.cls.weight;
  answer.probability = std::exp(answer.log_probability);
  if (with_word) answer.word = unrank_in_class(answer.cls.k, rank - answer.cls.first_rank);
  return answer;
}

BigInt probability_to_rank(const Alphabet& alphabet, double q) {
  if (!(q > 0.0) || !(q <= 1.0)) throw DomainError("probability must lie in (0, 1]");
  const double z = std::log(alphabet.stop_probability()) - std::log(q);
  return q_tilde(letter_weights(alphabet), z);
}

Word unrank_in_class(std::span<const std::uint32_t> k, const BigInt& index) {
  Composition remaining(k.begin(), k.end());
  BigInt total_count = multinomial(remaining);
  if (index < 0 || index >= total_count) throw std::out_of_range("index outside class block");

  unsigned long length = 0;
  for (auto ki : remaining) length += ki;

  Word word;
  word.reserve(length);
  BigInt t = index;
  BigInt block;
  for (; length > 0; --length) {
    for (std::size_t letter = 0; letter < remaining.size(); ++letter) {
      if (remaining[letter] == 0) continue;
      // Words starting with `letter`: M(k - e_letter) = M(k) k_letter / |k|.
      mpz_mul_ui(block.get_mpz_t(), total_count.get_mpz_t(), remaining[letter]);
      mpz_divexact_ui(block.get_mpz_t(), block.get_mpz_t(), length);
      if (t < block) {
        word.push_back(letter);
        --remaining[letter];
        total_count = block;
        break;
      }
      t -= block;
    }
  }
  return word;
}

Word word_at_rank(const Alphabet& alphabet, const BigInt& rank) {
  return *rank_to_probability(alphabet, rank, /*with_word=*/true).word;
}

double NormalizedModel::to_original(double normalized_probability) const {
  return stop_probability * std::pow(normalized_probability, 1.0 / gamma);
}

NormalizedModel normalize_model(const Alphabet& alphabet, const GammaSolution& gamma) {
  if (!alphabet.has_stop()) return NormalizedModel{alphabet, 1.0, 1.0};
  return NormalizedModel{build_alphabet(gamma.tilted), gamma.gamma, alphabet.stop_probability()};
}

FunctionalEquationReport verify_functional_equation(const Alphabet& alphabet,
                                                    std::span<const double> z_samples) {
  const WeightVector weights = letter_weights(alphabet);
  FunctionalEquationReport report;
  report.rows.resize(z_samples.size());

  parallel_for(z_samples.size(), [&](std::size_t idx) {
    FunctionalEquationRow& row = report.rows[idx];
    const double z = z_samples[idx];
    row.z = z;
    if (z >= -kBoundaryGuard) {
      // A shifted term z - a_i sits on a weight w exactly when w + a_i sits on z,
      // so guarding z against attainable weights covers every term.
      ClassTable near = ClassTable::collect(weights, std::max(z, 0.0) + 2 * kBoundaryGuard);
      row.boundary = near.distance_to_nearest(z) < kBoundaryGuard;
    }
    row.lhs = q_tilde(weights, z);
    row.rhs = z >= 0.0 ? 1 : 0;
    for (double a : weights.a) row.rhs += q_tilde(weights, z - a);
    row.pass = row.boundary || row.lhs == row.rhs;
  });

  for (const auto& row : report.rows) {
    if (row.boundary) {
      ++report.skipped;
    } else {
      ++report.checked;
      if (!row.pass) ++report.failures;
    }
  }
  return report;
}

}  // namespace rankzipf
