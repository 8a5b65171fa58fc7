#pragma once

// Desk-scale checks of the exact power law: convergence of Q~(z)/e^z and of
// p(r) r^(1/gamma) to their predicted constants, equivalence with a brute-force
// word list, and the persistent oscillation of the lattice case.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rankzipf/bigint.hpp"
#include "rankzipf/model.hpp"

namespace rankzipf {

struct ConvergenceRow {
  double abscissa = 0.0;      // z, or rank r
  std::string abscissa_text;  // exact decimal rank for rank reports, empty otherwise
  double empirical = 0.0;
  double predicted = 0.0;
  double ratio = 0.0;  // empirical / predicted
};

struct WindowStats {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
  double max_deviation = 0.0;  // max |ratio - 1|
  double median_ratio = 0.0;
};

// Rows with lo <= abscissa <= hi.
WindowStats window_stats(const std::vector<ConvergenceRow>& rows, double lo, double hi);

struct ConvergenceReport {
  std::string kind;  // "qtilde" or "rank"
  std::vector<ConvergenceRow> rows;
  WindowStats early;
  WindowStats late;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  bool lattice_flag = false;
  double predicted = 0.0;

  // Q_n(z) = Q~(z) + 1/(n-1) lies in [c1 e^z, c2 e^z] on [0, max a_i]; the
  // recurrence carries the bracket to every z. Set for "qtilde" reports.
  std::optional<double> bracket_c1;
  std::optional<double> bracket_c2;
  bool bracket_holds = true;
};

inline constexpr double kQtildeMaxZ = 200.0;
inline constexpr std::uint64_t kDefaultClassBudget = 20'000'000;

// Rows (z, Q~(z)/e^z, 1/H, Q~(z) H / e^z) for z = 0, step, 2 step, ... <= z_max.
// Stop-free alphabets only. Early window [z_max/4, z_max/2], late [3 z_max/4, z_max].
ConvergenceReport converge_qtilde(const Alphabet& alphabet, double z_max, double step,
                                  std::uint64_t class_budget = kDefaultClassBudget);

// Exact bracket constants on the first period [0, max a_i], from the jump
// points of the step function Q~.
struct FirstPeriodBracket {
  double c1 = 0.0;
  double c2 = 0.0;
};
FirstPeriodBracket first_period_bracket(const WeightVector& weights);

inline constexpr std::uint64_t kMaxStreamRank = 1'000'000'000;

// Rows at `samples` geometrically spaced ranks in [1, r_max]:
// empirical = (p(r)/p0)^(-gamma) / r, predicted = H(p^gamma). samples = 0 picks
// factor-2 spacing. Windows: r in [r_max^(1/4), r_max^(1/2)] and [r_max^(3/4), r_max].
ConvergenceReport converge_rank(const Alphabet& alphabet, const BigInt& r_max,
                                std::size_t samples = 0);

struct OracleMismatch {
  std::uint64_t rank = 0;
  std::string detail;
};

struct OracleResult {
  std::uint64_t compared_ranks = 0;
  double cutoff_weight = 0.0;
  std::vector<OracleMismatch> mismatches;
  bool pass() const noexcept { return mismatches.empty(); }
};

inline constexpr std::uint64_t kOracleWordBudget = 10'000'000;

// Lists every word of length <= max_len whose weight is within the complete
// prefix (weight <= min a * max_len - max a), sorts by product probability,
// groups ties, and compares tie blocks and probabilities against the class
// stream. Throws std::invalid_argument when the word budget would be exceeded.
OracleResult brute_force_oracle(const Alphabet& alphabet, unsigned max_len,
                                std::uint64_t max_ranks = UINT64_MAX);

struct OscillationRow {
  std::uint64_t period = 0;
  double on_grid_ratio = 0.0;   // Q~(m v) / e^(m v)
  double midpoint_ratio = 0.0;  // Q~((m + 1/2) v) / e^((m + 1/2) v)
  double gap = 0.0;             // on_grid / midpoint
};

struct OscillationReport {
  double v = 0.0;
  std::vector<std::int64_t> m;
  std::vector<OscillationRow> rows;
  double limsup_estimate = 0.0;  // max on-grid ratio over the second half of periods
  double liminf_estimate = 0.0;  // min of Q~(m v) / e^((m+1) v) over the same range
  double min_gap = 0.0;
  double expected_gap = 0.0;  // e^(v/2)
  bool pass = false;          // min_gap >= expected_gap (relative slack 1e-9)
};

// Throws NotLattice unless detect_lattice reports a lattice.
OscillationReport lattice_oscillation(const Alphabet& alphabet, std::uint64_t periods);

}  // namespace rankzipf
