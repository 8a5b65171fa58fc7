#include "rankzipf/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rankzipf/enumeration.hpp"
#include "rankzipf/errors.hpp"
#include "rankzipf/pascal_simplex.hpp"

namespace rankzipf {

WindowStats window_stats(const std::vector<ConvergenceRow>& rows, double lo, double hi) {
  WindowStats stats;
  stats.lo = lo;
  stats.hi = hi;
  std::vector<double> ratios;
  for (const auto& row : rows) {
    if (row.abscissa < lo || row.abscissa > hi) continue;
    ratios.push_back(row.ratio);
    stats.max_deviation = std::max(stats.max_deviation, std::abs(row.ratio - 1.0));
  }
  stats.count = ratios.size();
  if (!ratios.empty()) {
    std::sort(ratios.begin(), ratios.end());
    const std::size_t mid = ratios.size() / 2;
    stats.median_ratio =
        ratios.size() % 2 == 1 ? ratios[mid] : 0.5 * (ratios[mid - 1] + ratios[mid]);
  }
  return stats;
}

namespace {

void finish(ConvergenceReport& report, double early_lo, double early_hi, double late_lo,
            double late_hi) {
  report.early = window_stats(report.rows, early_lo, early_hi);
  report.late = window_stats(report.rows, late_lo, late_hi);
  report.min_ratio = std::numeric_limits<double>::infinity();
  report.max_ratio = 0.0;
  for (const auto& row : report.rows) {
    report.min_ratio = std::min(report.min_ratio, row.ratio);
    report.max_ratio = std::max(report.max_ratio, row.ratio);
  }
}

double letter_entropy(const Alphabet& alphabet) {
  double h = 0.0;
  for (double p : alphabet.letters()) h -= p * std::log(p);
  return h;
}

void require_stop_free(const Alphabet& alphabet, const char* what) {
  if (alphabet.has_stop()) {
    throw std::invalid_argument(std::string(what) + " needs a stop-free alphabet; normalize first");
  }
}

}  // namespace

FirstPeriodBracket first_period_bracket(const WeightVector& weights) {
  const double top = weights.max();
  const double shift = 1.0 / static_cast<double>(weights.size() - 1);
  ClassTable table = ClassTable::collect(weights, top);

  // Distinct jump points of Q~ on [0, top].
  std::vector<double> jumps;
  for (double w : table.sorted_weights()) {
    if (jumps.empty() || !weights_equal(jumps.back(), w)) jumps.push_back(w);
  }

  FirstPeriodBracket b;
  b.c1 = std::numeric_limits<double>::infinity();
  b.c2 = 0.0;
  for (std::size_t j = 0; j < jumps.size(); ++j) {
    const double level = table.count_at(jumps[j]).get_d() + shift;
    const double right = j + 1 < jumps.size() ? jumps[j + 1] : top;
    b.c2 = std::max(b.c2, level * std::exp(-jumps[j]));
    b.c1 = std::min(b.c1, level * std::exp(-right));
  }
  return b;
}

ConvergenceReport converge_qtilde(const Alphabet& alphabet, double z_max, double step,
                                  std::uint64_t class_budget) {
  require_stop_free(alphabet, "converge_qtilde");
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  if (!(z_max > 0.0) || z_max > kQtildeMaxZ) throw std::invalid_argument("z_max must lie in (0, 200]");

  const WeightVector weights = letter_weights(alphabet);
  const double volume = simplex_volume(weights, z_max);
  if (volume > static_cast<double>(class_budget)) {
    throw BudgetExceeded("about " + std::to_string(static_cast<long long>(volume)) +
                             " lattice classes needed; budget is " + std::to_string(class_budget),
                         std::numeric_limits<double>::quiet_NaN());
  }
  const ClassTable table = ClassTable::collect(weights, z_max, class_budget);

  ConvergenceReport report;
  report.kind = "qtilde";
  const double h = letter_entropy(alphabet);
  report.predicted = 1.0 / h;
  report.lattice_flag = detect_lattice(weights).is_lattice;

  const FirstPeriodBracket bracket = first_period_bracket(weights);
  report.bracket_c1 = bracket.c1;
  report.bracket_c2 = bracket.c2;
  const double shift = 1.0 / static_cast<double>(weights.size() - 1);

  const auto points = static_cast<std::uint64_t>(std::floor(z_max / step + 1e-9));
  for (std::uint64_t j = 0; j <= points; ++j) {
    const double z = static_cast<double>(j) * step;
    const BigInt count = table.count_at(z);
    ConvergenceRow row;
    row.abscissa = z;
    row.empirical = std::exp(log_of(count) - z);
    row.predicted = report.predicted;
    row.ratio = row.empirical * h;
    report.rows.push_back(row);

    const double bracketed = row.empirical + shift * std::exp(-z);
    if (bracketed < bracket.c1 * (1.0 - 1e-12) || bracketed > bracket.c2 * (1.0 + 1e-12)) {
      report.bracket_holds = false;
    }
  }
  finish(report, z_max / 4, z_max / 2, 3 * z_max / 4, z_max);
  return report;
}

ConvergenceReport converge_rank(const Alphabet& alphabet, const BigInt& r_max, std::size_t samples) {
  if (r_max < 1 || r_max > kMaxStreamRank) throw std::invalid_argument("r_max must lie in [1, 1e9]");
  if (samples == 1) throw std::invalid_argument("need at least 2 samples");

  const GammaSolution gamma = solve_gamma(alphabet);
  const PredictedLimits limits = predicted_limits(alphabet, gamma);
  const WeightVector weights = letter_weights(alphabet);
  const auto top = static_cast<std::uint64_t>(r_max.get_ui());

  std::vector<std::uint64_t> ranks;
  if (samples == 0) {
    for (std::uint64_t r = 1; r <= top; r *= 2) ranks.push_back(r);
  } else {
    const double log_top = std::log(static_cast<double>(top));
    for (std::size_t j = 0; j < samples; ++j) {
      const double r = std::exp(log_top * static_cast<double>(j) / static_cast<double>(samples - 1));
      ranks.push_back(std::clamp<std::uint64_t>(std::llround(r), 1, top));
    }
  }
  if (ranks.back() != top) ranks.push_back(top);
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());

  ConvergenceReport report;
  report.kind = "rank";
  report.predicted = limits.entropy_tilted;
  report.lattice_flag = detect_lattice(weights).is_lattice;

  RankCursor cursor(weights);
  for (std::uint64_t r : ranks) {
    const CompositionClass& cls = cursor.seek(BigInt(static_cast<unsigned long>(r)));
    ConvergenceRow row;
    row.abscissa = static_cast<double>(r);
    row.abscissa_text = std::to_string(r);
    // (p(r)/p0)^(-gamma) / r with p(r)/p0 = e^{-weight}.
    row.empirical = std::exp(gamma.gamma * cls.weight - std::log(static_cast<double>(r)));
    row.predicted = report.predicted;
    row.ratio = row.empirical / row.predicted;
    report.rows.push_back(row);
  }
  const double t = static_cast<double>(top);
  finish(report, std::pow(t, 0.25), std::pow(t, 0.5), std::pow(t, 0.75), t);
  return report;
}

namespace {

struct OracleWord {
  double probability;
  std::uint64_t packed_k;  // 16 bits per letter when n <= 4
};

struct TieBlock {
  std::uint64_t first_rank = 0;
  std::uint64_t size = 0;
  double probability = 0.0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> classes;  // (packed k, count), sorted
};

bool same_probability(double x, double y) {
  const double big = std::max(x, y);
  return std::abs(x - y) <= kWeightTolerance * (1.0 + std::abs(std::log(big))) * big;
}

std::uint64_t pack(std::span<const std::uint32_t> k) {
  std::uint64_t key = 0;
  for (std::uint32_t ki : k) key = (key << 16) | ki;
  return key;
}

}  // namespace

OracleResult brute_force_oracle(const Alphabet& alphabet, unsigned max_len, std::uint64_t max_ranks) {
  const WeightVector weights = letter_weights(alphabet);
  const std::size_t n = weights.size();
  const bool track_k = n <= 4 && max_len < 65536;
  const double p0 = alphabet.stop_probability();
  const auto& p = alphabet.letters();

  OracleResult result;
  result.cutoff_weight = weights.min() * max_len - weights.max();
  if (result.cutoff_weight < 0.0) return result;
  const double prune = result.cutoff_weight + 1e-9;

  // Every word (not class) with weight <= cutoff, by explicit extension.
  std::vector<OracleWord> words;
  std::vector<std::uint32_t> counts(n, 0);
  auto extend = [&](auto&& self, unsigned length, double weight, double probability) -> void {
    if (words.size() >= kOracleWordBudget) {
      throw std::invalid_argument("brute-force oracle exceeds its word budget");
    }
    words.push_back({probability, track_k ? pack(counts) : 0});
    if (length == max_len) return;
    for (std::size_t letter = 0; letter < n; ++letter) {
      const double next = weight + weights.a[letter];
      if (next > prune) continue;
      ++counts[letter];
      self(self, length + 1, next, probability * p[letter]);
      --counts[letter];
    }
  };
  extend(extend, 0, 0.0, p0);

  std::stable_sort(words.begin(), words.end(),
                   [](const OracleWord& x, const OracleWord& y) { return x.probability > y.probability; });

  std::vector<TieBlock> oracle_blocks;
  for (std::size_t i = 0; i < words.size();) {
    TieBlock block;
    block.first_rank = i + 1;
    block.probability = words[i].probability;
    std::vector<std::uint64_t> keys;
    std::size_t j = i;
    while (j < words.size() && same_probability(words[j].probability, block.probability)) {
      keys.push_back(words[j].packed_k);
      ++j;
    }
    block.size = j - i;
    std::sort(keys.begin(), keys.end());
    for (std::size_t a = 0; a < keys.size();) {
      std::size_t b = a;
      while (b < keys.size() && keys[b] == keys[a]) ++b;
      block.classes.emplace_back(keys[a], b - a);
      a = b;
    }
    oracle_blocks.push_back(std::move(block));
    i = j;
  }

  auto mismatch = [&](std::uint64_t rank, std::string detail) {
    result.mismatches.push_back({rank, std::move(detail)});
  };

  Enumerator stream(weights);
  CompositionClass pending = stream.next();
  std::uint64_t rank = 1;
  for (const TieBlock& expected : oracle_blocks) {
    if (result.compared_ranks >= max_ranks) break;
    if (!weight_within(pending.weight, result.cutoff_weight)) break;

    TieBlock actual;
    actual.first_rank = rank;
    actual.probability = p0 * std::exp(-pending.weight);
    const double block_weight = pending.weight;
    while (weights_equal(pending.weight, block_weight)) {
      actual.size += pending.count.get_ui();
      actual.classes.emplace_back(track_k ? pack(pending.k) : 0, pending.count.get_ui());
      pending = stream.next();
    }
    std::sort(actual.classes.begin(), actual.classes.end());

    if (expected.first_rank != actual.first_rank || expected.size != actual.size) {
      mismatch(rank, "tie block size " + std::to_string(actual.size) + " vs brute force " +
                         std::to_string(expected.size));
      break;
    }
    if (std::abs(actual.probability - expected.probability) > 1e-12 * expected.probability) {
      mismatch(rank, "probability differs beyond 1e-12 relative");
    }
    if (track_k && actual.classes != expected.classes) {
      mismatch(rank, "letter multisets differ within tie block");
    }
    rank += actual.size;
    result.compared_ranks += actual.size;
  }
  return result;
}

OscillationReport lattice_oscillation(const Alphabet& alphabet, std::uint64_t periods) {
  require_stop_free(alphabet, "lattice_oscillation");
  if (periods < 1) throw std::invalid_argument("periods must be >= 1");
  const WeightVector weights = letter_weights(alphabet);
  const LatticeReport lattice = detect_lattice(weights);
  if (!lattice.is_lattice) throw NotLattice("weights are not integer multiples of a common step");

  OscillationReport report;
  report.v = *lattice.v;
  report.m = *lattice.m;
  report.expected_gap = std::exp(report.v / 2);
  const double v = report.v;
  const double z_top = (static_cast<double>(periods) + 1.0) * v;
  if (z_top > kQtildeMaxZ * 2) throw std::invalid_argument("too many periods for exact counting");
  const ClassTable table = ClassTable::collect(weights, z_top, kDefaultClassBudget);

  report.min_gap = std::numeric_limits<double>::infinity();
  report.liminf_estimate = std::numeric_limits<double>::infinity();
  for (std::uint64_t m = 1; m <= periods; ++m) {
    const double on = static_cast<double>(m) * v;
    const double mid = (static_cast<double>(m) + 0.5) * v;
    const double log_on = log_of(table.count_at(on));
    OscillationRow row;
    row.period = m;
    row.on_grid_ratio = std::exp(log_on - on);
    row.midpoint_ratio = std::exp(log_of(table.count_at(mid)) - mid);
    row.gap = row.on_grid_ratio / row.midpoint_ratio;
    report.min_gap = std::min(report.min_gap, row.gap);
    if (2 * m >= periods) {
      report.limsup_estimate = std::max(report.limsup_estimate, row.on_grid_ratio);
      report.liminf_estimate = std::min(report.liminf_estimate, std::exp(log_on - on - v));
    }
    report.rows.push_back(row);
  }
  report.pass = report.min_gap >= report.expected_gap * (1.0 - 1e-9);
  return report;
}

}  // namespace rankzipf
