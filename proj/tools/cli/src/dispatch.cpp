#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "rankzipf/asymptotics.hpp"
#include "rankzipf/enumeration.hpp"
#include "rankzipf/experiments.hpp"
#include "rankzipf/parallel.hpp"
#include "rankzipf/report_io.hpp"
#include "rankzipf/suites.hpp"
#include "rankzipf_cli/cli.hpp"

namespace rankzipf::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kSchema = "rankzipf-report/1";
constexpr std::uint64_t kVerifySeed = 20'240'501;

json model_json(const ModelSpec& model) {
  json j;
  j["names"] = model.names;
  j["letters"] = model.letters;
  j["stop"] = model.stop ? json(*model.stop) : json(nullptr);
  return j;
}

json class_json(const CompositionClass& c) {
  return json{{"k", c.k},
              {"weight", c.weight},
              {"count", to_string(c.count)},
              {"first_rank", to_string(c.first_rank)},
              {"last_rank", to_string(c.last_rank)}};
}

json lattice_json(const LatticeReport& l) {
  json j;
  j["is_lattice"] = l.is_lattice;
  j["v"] = l.v ? json(*l.v) : json(nullptr);
  j["m"] = l.m ? json(*l.m) : json(nullptr);
  j["witness"] = l.witness ? json::array({l.witness->first + 1, l.witness->second + 1}) : json(nullptr);
  j["witness_depth"] = l.witness_depth;
  j["max_denominator"] = l.max_denominator;
  j["tol"] = l.tol;
  return j;
}

json window_json(const WindowStats& w) {
  return json{{"lo", w.lo},
              {"hi", w.hi},
              {"count", w.count},
              {"max_deviation", w.max_deviation},
              {"median_ratio", w.median_ratio}};
}

json report_json(const ConvergenceReport& r) {
  json j;
  j["kind"] = r.kind;
  j["predicted"] = r.predicted;
  j["lattice"] = r.lattice_flag;
  j["early"] = window_json(r.early);
  j["late"] = window_json(r.late);
  j["min_ratio"] = r.min_ratio;
  j["max_ratio"] = r.max_ratio;
  if (r.bracket_c1 && r.bracket_c2) {
    j["bracket"] = json{{"c1", *r.bracket_c1}, {"c2", *r.bracket_c2}, {"holds", r.bracket_holds}};
  } else {
    j["bracket"] = nullptr;
  }
  json rows = json::array();
  for (const auto& row : r.rows) {
    json jr{{"abscissa", row.abscissa}};
    if (!row.abscissa_text.empty()) jr["rank"] = row.abscissa_text;
    jr["empirical"] = row.empirical;
    jr["predicted"] = row.predicted;
    jr["ratio"] = row.ratio;
    rows.push_back(std::move(jr));
  }
  j["rows"] = std::move(rows);
  return j;
}

std::string render_word(const Word& w, const std::vector<std::string>& names) {
  const bool single = std::all_of(names.begin(), names.end(), [](const auto& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0 && !single) out += ' ';
    out += names.at(w[i]);
  }
  return out;
}

std::string join_ints(const auto& xs) {
  std::string out;
  for (const auto& x : xs) {
    if (!out.empty()) out += ' ';
    out += std::to_string(x);
  }
  return out;
}

class Emitter {
 public:
  Emitter(const RunConfig& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}

  void text(const std::string& body) {
    if (cfg_.out) {
      std::ofstream f(*cfg_.out, std::ios::binary);
      if (!f) throw ParseError(0, "cannot write '" + *cfg_.out + "'");
      f << body;
    } else {
      out_ << body;
    }
  }

  void envelope(json result) {
    json j;
    j["schema"] = kSchema;
    j["command"] = cfg_.command;
    j["model"] = model_json(cfg_.model);
    j["result"] = std::move(result);
    text(j.dump(2) + "\n");
  }

  bool json_mode() const { return cfg_.format == OutputFormat::json; }

 private:
  const RunConfig& cfg_;
  std::ostream& out_;
};

struct Lines {
  std::ostringstream os;
  Lines& operator()(const std::string& key, const std::string& value) {
    os << key << ": " << value << '\n';
    return *this;
  }
  Lines& operator()(const std::string& key, double value) { return (*this)(key, format_double(value)); }
  std::string str() const { return os.str(); }
};

std::string bool_text(bool b) { return b ? "true" : "false"; }

BigInt parse_rank(const std::string& text) {
  BigInt r;
  try {
    r = parse_bigint(text);
  } catch (const std::exception&) {
    throw ParseError(0, "malformed rank '" + text + "'");
  }
  if (r < 1) throw ValidationError("rank must be >= 1");
  return r;
}

double parse_real(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(0, std::string("malformed ") + what + " '" + text + "'");
}

Alphabet stop_free(const Alphabet& alphabet) {
  if (!alphabet.has_stop()) return alphabet;
  return normalize_model(alphabet, solve_gamma(alphabet)).alphabet;
}

int cmd_gamma(const RunConfig& cfg, const Alphabet& alphabet, Emitter& emit) {
  const auto g = solve_gamma(alphabet);
  const auto lim = predicted_limits(alphabet, g);
  const auto lat = detect_lattice(letter_weights(alphabet), cfg.max_denominator, cfg.tol);
  if (emit.json_mode()) {
    emit.envelope(json{{"gamma", g.gamma},
                       {"residual", g.residual},
                       {"tilted", g.tilted},
                       {"limits",
                        {{"entropy_tilted", lim.entropy_tilted},
                         {"q_limit", lim.q_limit},
                         {"rank_limit", lim.rank_limit}}},
                       {"lattice", lattice_json(lat)}});
    return 0;
  }
  Lines l;
  l("gamma", g.gamma)("residual", g.residual)("entropy_tilted", lim.entropy_tilted);
  l("q_limit", lim.q_limit)("rank_limit", lim.rank_limit)("lattice", bool_text(lat.is_lattice));
  if (lat.is_lattice) {
    l("lattice_v", *lat.v)("lattice_m", join_ints(*lat.m));
  } else if (lat.witness) {
    l("witness", std::to_string(lat.witness->first + 1) + " " + std::to_string(lat.witness->second + 1));
    l("witness_depth", std::to_string(lat.witness_depth));
  }
  l("max_denominator", std::to_string(lat.max_denominator))("tol", lat.tol);
  emit.text(l.str());
  return 0;
}

int cmd_rank(const RunConfig& cfg, const Alphabet& alphabet, Emitter& emit, bool word_only) {
  const BigInt r = parse_rank(cfg.argument);
  const auto ans = rank_to_probability(alphabet, r, true);
  const std::string word = render_word(*ans.word, cfg.model.names);
  std::vector<std::size_t> letters;
  for (auto i : *ans.word) letters.push_back(i + 1);
  if (emit.json_mode()) {
    json j;
    j["rank"] = to_string(ans.rank);
    if (!word_only) {
      j["probability"] = ans.probability;
      j["log_probability"] = ans.log_probability;
      j["class"] = class_json(ans.cls);
    }
    j["word"] = word;
    j["letters"] = letters;
    emit.envelope(std::move(j));
    return 0;
  }
  Lines l;
  l("rank", to_string(ans.rank));
  if (!word_only) {
    l("probability", ans.probability)("log_probability", ans.log_probability);
    l("class_k", join_ints(ans.cls.k))("class_weight", ans.cls.weight);
    l("class_count", to_string(ans.cls.count));
    l("class_ranks", to_string(ans.cls.first_rank) + " " + to_string(ans.cls.last_rank));
  }
  l("word", "\"" + word + "\"");
  emit.text(l.str());
  return 0;
}

int cmd_prob(const RunConfig& cfg, const Alphabet& alphabet, Emitter& emit) {
  const double q = parse_probability(cfg.argument);
  const BigInt r = probability_to_rank(alphabet, q);
  if (emit.json_mode()) {
    emit.envelope(json{{"q", q}, {"rank", to_string(r)}});
  } else {
    emit.text(Lines{}("q", q)("rank", to_string(r)).str());
  }
  return 0;
}

int cmd_qtilde(const RunConfig& cfg, const Alphabet& alphabet, Emitter& emit) {
  const double z = parse_real(cfg.argument, "z");
  const BigInt c = q_tilde(alphabet, z);
  if (emit.json_mode()) {
    emit.envelope(json{{"z", z}, {"count", to_string(c)}});
  } else {
    emit.text(Lines{}("z", z)("count", to_string(c)).str());
  }
  return 0;
}

int cmd_verify(const RunConfig&, const Alphabet& alphabet, Emitter& emit) {
  const auto samples = functional_equation_samples(letter_weights(alphabet), 100, kVerifySeed);
  const auto fe = verify_functional_equation(alphabet, samples);
  const auto det = determinant_suite(kVerifySeed, 1000, 8);
  const auto g = solve_gamma(alphabet);
  const double gaussian_gap = std::abs(gaussian_constant(g.tilted) * entropy(g.tilted) - 1.0);
  const auto kl = kl_bound_suite(kVerifySeed, 10'000);
  const bool pass = fe.pass() && det.pass() && gaussian_gap < kGaussianEntropyTol && kl.pass();
  if (emit.json_mode()) {
    emit.envelope(json{
        {"functional_equation",
         {{"checked", fe.checked}, {"skipped", fe.skipped}, {"failures", fe.failures}, {"pass", fe.pass()}}},
        {"determinants",
         {{"instances", det.instances},
          {"max_rel_ones_diagonal", det.max_rel_ones_diagonal},
          {"max_rel_cofactor", det.max_rel_cofactor},
          {"max_rel_rank_one", det.max_rel_rank_one},
          {"max_linearity", det.max_linearity},
          {"max_gaussian_entropy_gap", det.max_gaussian_entropy_gap},
          {"failures", det.failures},
          {"pass", det.pass()}}},
        {"gaussian_entropy_gap", gaussian_gap},
        {"kl",
         {{"pairs", kl.pairs},
          {"violations", kl.violations},
          {"min_slack", kl.min_slack},
          {"max_identity_gap", kl.max_identity_gap},
          {"pass", kl.pass()}}},
        {"pass", pass}});
  } else {
    Lines l;
    l("functional_equation", std::to_string(fe.checked) + " checked, " + std::to_string(fe.skipped) +
                                 " skipped, " + std::to_string(fe.failures) + " failures");
    l("determinants", std::to_string(det.instances) + " instances, " + std::to_string(det.failures) +
                          " failures");
    l("max_rel_ones_diagonal", det.max_rel_ones_diagonal)("max_rel_rank_one", det.max_rel_rank_one);
    l("gaussian_entropy_gap", gaussian_gap);
    l("kl", std::to_string(kl.pairs) + " pairs, " + std::to_string(kl.violations) + " violations");
    l("pass", bool_text(pass));
    emit.text(l.str());
  }
  return pass ? 0 : 1;
}

int emit_report(const RunConfig& cfg, const ConvergenceReport& rep, Emitter& emit, json extra) {
  switch (cfg.format) {
    case OutputFormat::json: {
      json j = std::move(extra);
      j["report"] = report_json(rep);
      emit.envelope(std::move(j));
      break;
    }
    case OutputFormat::svg:
      emit.text(to_svg(rep, cfg.command == "converge-q" ? "Q~(z) H / e^z" : "p(r) r^(1/gamma) / limit"));
      break;
    case OutputFormat::csv:
      emit.text(to_csv(rep));
      break;
  }
  return 0;
}

int cmd_converge_q(const RunConfig& cfg, const Alphabet& alphabet, Emitter& emit) {
  const auto rep = converge_qtilde(stop_free(alphabet), cfg.z_max, cfg.step);
  return emit_report(cfg, rep, emit, json{{"z_max", cfg.z_max}, {"step", cfg.step}});
}

int cmd_converge_rank(const RunConfig& cfg, const Alphabet& alphabet, Emitter& emit) {
  const BigInt r_max = parse_rank(cfg.r_max);
  const auto rep = converge_rank(alphabet, r_max, cfg.samples);
  return emit_report(cfg, rep, emit, json{{"r_max", to_string(r_max)}, {"samples", cfg.samples}});
}

int cmd_oscillate(const RunConfig& cfg, const Alphabet& alphabet, Emitter& emit) {
  const auto rep = lattice_oscillation(stop_free(alphabet), cfg.periods);
  if (emit.json_mode()) {
    json rows = json::array();
    for (const auto& r : rep.rows) {
      rows.push_back(json{{"period", r.period},
                          {"on_grid_ratio", r.on_grid_ratio},
                          {"midpoint_ratio", r.midpoint_ratio},
                          {"gap", r.gap}});
    }
    emit.envelope(json{{"v", rep.v},
                       {"m", rep.m},
                       {"limsup_estimate", rep.limsup_estimate},
                       {"liminf_estimate", rep.liminf_estimate},
                       {"min_gap", rep.min_gap},
                       {"expected_gap", rep.expected_gap},
                       {"pass", rep.pass},
                       {"rows", std::move(rows)}});
  } else {
    std::string csv = "period,on_grid_ratio,midpoint_ratio,gap\r\n";
    for (const auto& r : rep.rows) {
      csv += std::to_string(r.period) + "," + format_double(r.on_grid_ratio) + "," +
             format_double(r.midpoint_ratio) + "," + format_double(r.gap) + "\r\n";
    }
    emit.text(csv);
  }
  return rep.pass ? 0 : 1;
}

int cmd_oracle(const RunConfig& cfg, const Alphabet& alphabet, Emitter& emit) {
  const auto res = brute_force_oracle(alphabet, cfg.max_len, cfg.max_ranks);
  if (emit.json_mode()) {
    json mism = json::array();
    for (const auto& m : res.mismatches) mism.push_back(json{{"rank", m.rank}, {"detail", m.detail}});
    emit.envelope(json{{"max_len", cfg.max_len},
                       {"compared_ranks", res.compared_ranks},
                       {"cutoff_weight", res.cutoff_weight},
                       {"mismatches", std::move(mism)},
                       {"pass", res.pass()}});
  } else {
    Lines l;
    l("compared_ranks", std::to_string(res.compared_ranks))("cutoff_weight", res.cutoff_weight);
    l("mismatches", std::to_string(res.mismatches.size()));
    for (const auto& m : res.mismatches) l("mismatch", std::to_string(m.rank) + " " + m.detail);
    l("pass", bool_text(res.pass()));
    emit.text(l.str());
  }
  return res.pass() ? 0 : 1;
}

}  // namespace

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  if (cfg.threads) set_max_threads(*cfg.threads);
  const Alphabet alphabet = build_alphabet(cfg.model.letters, cfg.model.stop);
  Emitter emit(cfg, out);
  const std::string& c = cfg.command;
  if (c == "gamma") return cmd_gamma(cfg, alphabet, emit);
  if (c == "rank") return cmd_rank(cfg, alphabet, emit, false);
  if (c == "word") return cmd_rank(cfg, alphabet, emit, true);
  if (c == "prob") return cmd_prob(cfg, alphabet, emit);
  if (c == "qtilde") return cmd_qtilde(cfg, alphabet, emit);
  if (c == "verify") return cmd_verify(cfg, alphabet, emit);
  if (c == "converge-q") return cmd_converge_q(cfg, alphabet, emit);
  if (c == "converge-rank") return cmd_converge_rank(cfg, alphabet, emit);
  if (c == "oscillate") return cmd_oscillate(cfg, alphabet, emit);
  if (c == "oracle") return cmd_oracle(cfg, alphabet, emit);
  throw ParseError(0, "unknown command '" + c + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    auto cfg = parse_config(args, out);
    if (!cfg) return 0;
    return dispatch(*cfg, out, err);
  } catch (const BudgetExceeded& e) {
    err << "error: budget exceeded: " << e.what();
    if (!std::isnan(e.partial())) err << " (partial estimate " << format_double(e.partial()) << ")";
    err << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace rankzipf::cli
