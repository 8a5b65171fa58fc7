// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "rankzipf/asymptotics.hpp"
#include "rankzipf/enumeration.hpp"
#include "rankzipf/experiments.hpp"
#include "rankzipf/pascal_simplex.hpp"
#include "rankzipf/suites.hpp"

using namespace rankzipf;

namespace {

// Pinned tolerances.
constexpr double kGammaTol = 1e-12;
constexpr double kGammaSeconds = 1e-3;
constexpr std::size_t kOracleAlphabets = 10;
constexpr std::uint64_t kOracleRanks = 10'000;
constexpr double kOracleSeconds = 60.0;
constexpr std::size_t kFeAlphabets = 5;
constexpr std::size_t kFeSamples = 100;
constexpr std::size_t kDetInstances = 1000;
constexpr std::size_t kDetMaxN = 8;
constexpr double kIntegralZ = 20.0;
constexpr double kIntegralTol = 0.10;
constexpr double kIntegralSeconds = 300.0;
constexpr double kQtildeMedianTol = 0.05;
constexpr double kQtildeSeconds = 600.0;
constexpr double kRankMedianTol = 0.10;
constexpr std::uint64_t kRankMax = 10'000'000;
constexpr double kLatticeGap = 1.3;
constexpr std::uint64_t kLatticeFrom = 50, kLatticeTo = 200;
constexpr std::size_t kKlPairs = 10'000;
constexpr double kGoldenRel = 1e-9;  // drift allowed against the frozen calibration run

constexpr std::uint64_t kSeed = 20'240'501;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;
nlohmann::ordered_json observed;

void report(const char* id, bool pass, const std::string& detail) {
  std::printf("%s  %-22s %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

nlohmann::json load_calibration() {
  std::ifstream in(RANKZIPF_GOLDEN_DIR "/calibration.json");
  if (!in) return nlohmann::json::object();
  return nlohmann::json::parse(in);
}

// Compares against the frozen calibration value when present.
bool golden_ok(const nlohmann::json& cal, const std::string& key, double value, std::string& note) {
  observed[key] = value;
  const double observed = value;
  if (!cal.contains(key)) {
    note += fmt(" [%s not frozen]", key.c_str());
    return true;
  }
  const double frozen = cal.at(key).get<double>();
  const bool ok = std::abs(observed - frozen) <= kGoldenRel * std::max(1.0, std::abs(frozen));
  if (!ok) note += fmt(" [%s drifted: %.17g vs %.17g]", key.c_str(), observed, frozen);
  return ok;
}

void gamma_monkey() {
  const auto monkey = build_alphabet(std::vector<double>(26, 1.0 / 27.0), 1.0 / 27.0);
  double best = INFINITY;
  GammaSolution g;
  for (int i = 0; i < 5; ++i) {
    const auto t0 = Clock::now();
    g = solve_gamma(monkey);
    best = std::min(best, seconds_since(t0));
  }
  const double err = std::abs(g.gamma - std::log(26.0) / std::log(27.0));
  report("gamma_monkey", err < kGammaTol && best < kGammaSeconds,
         fmt("gamma=%.17g |err|=%.2e (tol %.0e), %.3f ms (limit 1 ms)", g.gamma, err, kGammaTol, best * 1e3));
}

void oracle_equivalence() {
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<std::size_t> dim(2, 4);
  const auto t0 = Clock::now();
  std::size_t passed = 0;
  std::uint64_t min_compared = UINT64_MAX;
  std::string note;
  for (std::size_t t = 0; t < kOracleAlphabets; ++t) {
    const auto alphabet = build_alphabet(random_distribution(rng(), dim(rng)));
    const auto w = letter_weights(alphabet);
    // Smallest cutoff whose complete prefix holds twice the ranks compared.
    double need = 0.0;
    while (q_tilde(w, need) < 2 * kOracleRanks) need += 0.25;
    const auto len = static_cast<unsigned>(std::ceil((need + w.max()) / w.min()));
    try {
      const auto res = brute_force_oracle(alphabet, len, kOracleRanks);
      min_compared = std::min(min_compared, res.compared_ranks);
      if (res.pass() && res.compared_ranks >= kOracleRanks) ++passed;
      if (!res.pass()) note += fmt(" [alphabet %zu: %s]", t, res.mismatches.front().detail.c_str());
    } catch (const std::exception& e) {
      note += fmt(" [alphabet %zu: %s]", t, e.what());
    }
  }
  const double secs = seconds_since(t0);
  report("oracle_equivalence", passed == kOracleAlphabets && secs < kOracleSeconds,
         fmt("%zu/%zu alphabets match, >= %llu ranks each, %.2f s (limit 60 s)", passed, kOracleAlphabets,
             static_cast<unsigned long long>(min_compared), secs) +
             note);
}

void functional_equation() {
  std::vector<Alphabet> alphabets{
      build_alphabet(std::vector<double>{0.5, 0.3, 0.2}),
      build_alphabet(std::vector<double>{0.6, 0.4}),
      build_alphabet(std::vector<double>{0.5, 0.25, 0.25}),
      build_alphabet(std::vector<double>{0.55, 0.35}, 0.1),
      build_alphabet(random_distribution(kSeed, 4)),
  };
  std::size_t checked = 0, failed = 0, complete = 0;
  for (std::size_t i = 0; i < kFeAlphabets; ++i) {
    const auto w = letter_weights(alphabets[i]);
    std::size_t ok_rows = 0;
    // Redraw until 100 samples lie off the boundary band.
    for (std::uint64_t round = 0; ok_rows < kFeSamples && round < 10; ++round) {
      const auto z = functional_equation_samples(w, kFeSamples - ok_rows, kSeed + 97 * i + round);
      const auto rep = verify_functional_equation(alphabets[i], z);
      ok_rows += rep.checked;
      failed += rep.failures;
    }
    checked += ok_rows;
    if (ok_rows >= kFeSamples) ++complete;
  }
  report("functional_equation", failed == 0 && complete == kFeAlphabets,
         fmt("%zu alphabets, %zu exact checks, %zu failures", kFeAlphabets, checked, failed));
}

void determinant_identities() {
  const auto rep = determinant_suite(kSeed, kDetInstances, kDetMaxN);
  report("determinant_identities", rep.pass(),
         fmt("%zu instances n<=%zu: ones+diag %.1e, cofactor %.1e, rank-one %.1e (tol 1e-9); G*H-1 %.1e (tol 1e-12)",
             rep.instances, kDetMaxN, rep.max_rel_ones_diagonal, rep.max_rel_cofactor, rep.max_rel_rank_one,
             rep.max_gaussian_entropy_gap));
}

void integral_limit(const nlohmann::json& cal) {
  const auto pair = build_alphabet(std::vector<double>{0.5, 0.5});
  const auto t0 = Clock::now();
  const auto r = integral_f(pair, kIntegralZ);
  const double secs = seconds_since(t0);
  const double target = 1.0 / std::log(2.0);
  const double dev = std::abs(r.ratio / target - 1.0);
  std::string note;
  const bool golden = golden_ok(cal, "integral_pair_z20_ratio", r.ratio, note);
  report("integral_limit", dev < kIntegralTol && secs < kIntegralSeconds && golden,
         fmt("f(20)/e^20=%.12f vs 1/ln2=%.12f, |rel|=%.2e (tol 10%%), est err %.1e, %.3f s", r.ratio, target,
             dev, r.rel_error, secs) +
             note);
}

void qtilde_trend(const nlohmann::json& cal) {
  const auto tri = build_alphabet(std::vector<double>{0.5, 0.3, 0.2});
  const auto t0 = Clock::now();
  const auto rep = converge_qtilde(tri, 150.0, 0.5);
  const double secs = seconds_since(t0);
  const auto early = window_stats(rep.rows, 20.0, 40.0);
  const auto late = window_stats(rep.rows, 110.0, 150.0);
  std::string note;
  bool golden = golden_ok(cal, "qtilde_early_max_deviation", early.max_deviation, note);
  golden = golden_ok(cal, "qtilde_late_max_deviation", late.max_deviation, note) && golden;
  golden = golden_ok(cal, "qtilde_late_median", late.median_ratio, note) && golden;
  const bool pass = late.max_deviation < early.max_deviation &&
                    std::abs(late.median_ratio - 1.0) < kQtildeMedianTol && secs < kQtildeSeconds && golden;
  report("qtilde_trend", pass,
         fmt("dev [20,40]=%.4f > [110,150]=%.4f; late median %.6f (tol 5%%); %.2f s", early.max_deviation,
             late.max_deviation, late.median_ratio, secs) +
             note);
}

void rank_trend(const nlohmann::json& cal) {
  const auto a = build_alphabet(std::vector<double>{0.55, 0.35}, 0.1);
  const auto g = solve_gamma(a);
  const auto lim = predicted_limits(a, g);
  const auto rep = converge_rank(a, BigInt(static_cast<unsigned long>(kRankMax)));
  // Re-express rows as p(r) r^(1/gamma) / (p0 H^(-1/gamma)) = ratio^(-1/gamma).
  std::vector<ConvergenceRow> rows;
  for (const auto& row : rep.rows) {
    ConvergenceRow r = row;
    r.predicted = lim.rank_limit;
    r.ratio = std::pow(row.ratio, -1.0 / g.gamma);
    r.empirical = r.ratio * lim.rank_limit;
    rows.push_back(r);
  }
  const double top = static_cast<double>(kRankMax);
  const auto early = window_stats(rows, std::pow(top, 0.25), std::pow(top, 0.5));
  const auto late = window_stats(rows, std::pow(top, 0.75), top);
  std::string note;
  bool golden = golden_ok(cal, "rank_early_max_deviation", early.max_deviation, note);
  golden = golden_ok(cal, "rank_late_max_deviation", late.max_deviation, note) && golden;
  golden = golden_ok(cal, "rank_late_median", late.median_ratio, note) && golden;
  const bool pass =
      late.max_deviation < early.max_deviation && std::abs(late.median_ratio - 1.0) < kRankMedianTol && golden;
  report("rank_trend", pass,
         fmt("p(r) r^(1/g) vs %.6f: dev early=%.4f > late=%.4f; late median %.6f (tol 10%%)", lim.rank_limit,
             early.max_deviation, late.max_deviation, late.median_ratio) +
             note);
}

void lattice_gap() {
  const auto rep = lattice_oscillation(build_alphabet(std::vector<double>{0.5, 0.25, 0.25}), kLatticeTo);
  double min_gap = INFINITY;
  for (const auto& row : rep.rows) {
    if (row.period >= kLatticeFrom && row.period <= kLatticeTo) min_gap = std::min(min_gap, row.gap);
  }
  report("lattice_gap", min_gap >= kLatticeGap,
         fmt("min on-grid/midpoint ratio over m in [50,200] = %.6f (needs >= 1.3), on-grid -> %.6f", min_gap,
             rep.rows.back().on_grid_ratio));
}

void kl_bound() {
  const auto rep = kl_bound_suite(kSeed, kKlPairs);
  report("kl_bound", rep.violations == 0,
         fmt("%zu pairs, %zu violations, min slack %.2e", rep.pairs, rep.violations, rep.min_slack));
}

}  // namespace

int main(int argc, char** argv) {
  // --write-calibration PATH records the observed values of the trend criteria.
  const std::string write_to = argc == 3 && std::string(argv[1]) == "--write-calibration" ? argv[2] : "";
  const auto cal = load_calibration();
  const std::vector<std::function<void()>> criteria{
      gamma_monkey,
      oracle_equivalence,
      functional_equation,
      determinant_identities,
      [&] { integral_limit(cal); },
      [&] { qtilde_trend(cal); },
      [&] { rank_trend(cal); },
      lattice_gap,
      kl_bound,
  };
  for (const auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      report("exception", false, e.what());
    }
  }
  if (!write_to.empty()) {
    nlohmann::ordered_json doc;
    doc["note"] = "observed values of the trend criteria; acceptance fails on drift beyond 1e-9 relative";
    doc["tolerances"] = {{"integral_limit", kIntegralTol},
                         {"qtilde_late_median", kQtildeMedianTol},
                         {"rank_late_median", kRankMedianTol}};
    for (const auto& [k, v] : observed.items()) doc[k] = v;
    std::ofstream(write_to) << doc.dump(2) << "\n";
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
