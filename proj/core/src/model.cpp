#include "rankzipf/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "rankzipf/errors.hpp"

namespace rankzipf {

NonPositiveProbability::NonPositiveProbability(std::size_t index, double value)
    : ValidationError("probability #" + std::to_string(index + 1) + " is not in (0,1): " +
                      std::to_string(value)),
      index_(index),
      value_(value) {}

SumNotOne::SumNotOne(double deviation)
    : ValidationError("probabilities do not sum to 1 (1 - sum = " + std::to_string(deviation) + ")"),
      deviation_(deviation) {}

TooFewLetters::TooFewLetters(std::size_t n)
    : ValidationError("need at least 2 letters, got " + std::to_string(n)) {}

LengthMismatch::LengthMismatch(std::size_t lhs, std::size_t rhs)
    : ValidationError("length mismatch: " + std::to_string(lhs) + " vs " + std::to_string(rhs)) {}

BudgetExceeded::BudgetExceeded(const std::string& what, double partial)
    : std::runtime_error(what), partial_(partial) {}

namespace {

bool in_open_unit(double x) { return std::isfinite(x) && x > 0.0 && x < 1.0; }

// Neumaier-compensated sum.
double stable_sum(std::span<const double> xs) {
  double sum = 0.0;
  double c = 0.0;
  for (double x : xs) {
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

void check_distribution(std::span<const double> dist, bool allow_zero) {
  if (dist.empty()) throw InvalidDistribution("empty distribution");
  for (std::size_t i = 0; i < dist.size(); ++i) {
    double x = dist[i];
    bool ok = std::isfinite(x) && x <= 1.0 && (allow_zero ? x >= 0.0 : x > 0.0);
    if (!ok) {
      throw InvalidDistribution("entry #" + std::to_string(i + 1) + " out of range: " +
                                std::to_string(x));
    }
  }
  double deviation = 1.0 - stable_sum(dist);
  if (std::abs(deviation) > kSumTolerance) {
    throw InvalidDistribution("distribution does not sum to 1 (1 - sum = " +
                              std::to_string(deviation) + ")");
  }
}

}  // namespace

Alphabet build_alphabet(std::span<const double> probs, std::optional<double> stop) {
  if (probs.size() < 2) throw TooFewLetters(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!in_open_unit(probs[i])) throw NonPositiveProbability(i, probs[i]);
  }
  if (stop && !in_open_unit(*stop)) throw NonPositiveProbability(probs.size(), *stop);

  std::vector<double> all(probs.begin(), probs.end());
  if (stop) all.push_back(*stop);
  double deviation = 1.0 - stable_sum(all);
  if (std::abs(deviation) > kSumTolerance) throw SumNotOne(deviation);

  return Alphabet(std::vector<double>(probs.begin(), probs.end()), stop);
}

double WeightVector::min() const { return *std::min_element(a.begin(), a.end()); }
double WeightVector::max() const { return *std::max_element(a.begin(), a.end()); }

WeightVector letter_weights(const Alphabet& alphabet) {
  WeightVector w;
  w.a.reserve(alphabet.size());
  for (double p : alphabet.letters()) w.a.push_back(-std::log(p));
  return w;
}

WeightVector make_weights(std::vector<double> a) {
  if (a.empty()) throw ValidationError("empty weight vector");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i]) || a[i] <= 0.0) {
      throw ValidationError("weight #" + std::to_string(i + 1) + " must be positive and finite");
    }
  }
  return WeightVector{std::move(a)};
}

double power_sum(const Alphabet& alphabet, double g) {
  std::vector<double> terms;
  terms.reserve(alphabet.size());
  for (double p : alphabet.letters()) terms.push_back(std::exp(g * std::log(p)));
  return stable_sum(terms);
}

GammaSolution solve_gamma(const Alphabet& alphabet) {
  GammaSolution sol;
  if (!alphabet.has_stop()) {
    sol.gamma = 1.0;
    sol.residual = std::abs(stable_sum(alphabet.letters()) - 1.0);
    sol.tilted = alphabet.letters();
    return sol;
  }

  // f(g) = sum p_i^g - 1 decreases strictly from n - 1 at g = 0 to -p0 at g = 1.
  auto f = [&](double g) { return power_sum(alphabet, g) - 1.0; };
  auto df = [&](double g) {
    double d = 0.0;
    for (double p : alphabet.letters()) d += std::exp(g * std::log(p)) * std::log(p);
    return d;
  };

  double lo = 0.0;
  double hi = 1.0;
  for (int step = 0; step < 200 && hi - lo > 1e-9; ++step) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  double g = 0.5 * (lo + hi);
  for (int iter = 0; iter < 10; ++iter) {
    const double fg = f(g);
    if (fg == 0.0) break;
    if (fg > 0.0) {
      lo = g;
    } else {
      hi = g;
    }
    double next = g - fg / df(g);
    if (!(next >= lo && next <= hi)) next = 0.5 * (lo + hi);
    const bool converged = std::abs(next - g) <= 4 * std::numeric_limits<double>::epsilon() * g;
    g = next;
    if (converged) break;
  }

  sol.gamma = g;
  sol.residual = std::abs(f(g));
  sol.tilted.reserve(alphabet.size());
  for (double p : alphabet.letters()) sol.tilted.push_back(std::exp(g * std::log(p)));
  return sol;
}

double entropy(std::span<const double> dist) {
  check_distribution(dist, /*allow_zero=*/true);
  double h = 0.0;
  for (double p : dist) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

double cross_entropy(std::span<const double> q, std::span<const double> p) {
  if (q.size() != p.size()) throw LengthMismatch(q.size(), p.size());
  check_distribution(q, /*allow_zero=*/true);
  check_distribution(p, /*allow_zero=*/false);
  double h = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] > 0.0) h -= q[i] * std::log(p[i]);
  }
  return h;
}

double kl_divergence(std::span<const double> q, std::span<const double> p) {
  if (q.size() != p.size()) throw LengthMismatch(q.size(), p.size());
  check_distribution(q, /*allow_zero=*/true);
  check_distribution(p, /*allow_zero=*/false);
  double d = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] > 0.0) d += q[i] * std::log(q[i] / p[i]);
  }
  return std::max(d, 0.0);
}

PredictedLimits predicted_limits(const Alphabet& alphabet, const GammaSolution& gamma) {
  const auto& letters = alphabet.letters();
  if (gamma.tilted.size() != letters.size()) {
    throw LengthMismatch(gamma.tilted.size(), letters.size());
  }
  PredictedLimits out;
  double s = 0.0;
  for (std::size_t i = 0; i < letters.size(); ++i) s += gamma.tilted[i] * std::log(letters[i]);
  out.entropy_tilted = -gamma.gamma * s;
  out.q_limit = 1.0 / out.entropy_tilted;
  out.rank_limit = alphabet.stop_probability() * std::pow(out.entropy_tilted, -1.0 / gamma.gamma);
  return out;
}

}  // namespace rankzipf
