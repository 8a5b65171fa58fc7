#include <algorithm>
#include <charconv>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "rankzipf_cli/cli.hpp"

namespace rankzipf::cli {

ParseError::ParseError(std::size_t line, const std::string& message)
    : ValidationError(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
      line_(line) {}

namespace {

const std::regex kDecimal(R"(^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$)");
const std::regex kRational(R"(^(\d+)/(\d+)$)");

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_probability_at(const std::string& raw, std::size_t line) {
  const std::string text = trim(raw);
  std::smatch m;
  if (std::regex_match(text, m, kRational)) {
    std::uint64_t num = 0, den = 0;
    const std::string ns = m[1], ds = m[2];
    if (std::from_chars(ns.data(), ns.data() + ns.size(), num).ec != std::errc{} ||
        std::from_chars(ds.data(), ds.data() + ds.size(), den).ec != std::errc{}) {
      throw ParseError(line, "rational out of range: '" + text + "'");
    }
    if (den == 0) throw ParseError(line, "zero denominator: '" + text + "'");
    return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den));
  }
  if (!std::regex_match(text, kDecimal)) {
    throw ParseError(line, "malformed probability '" + text + "'");
  }
  const char* first = text.data();
  if (*first == '+') ++first;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(line, "malformed probability '" + text + "'");
  }
  return value;
}

std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::to_string(i));
  return names;
}

}  // namespace

double parse_probability(const std::string& text) { return parse_probability_at(text, 0); }

ModelSpec parse_model_text(const std::string& text) {
  ModelSpec spec;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream fields(raw);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 2) throw ParseError(line_no, "expected 'name probability'");
    if (!seen.insert(tok[0]).second) throw ParseError(line_no, "duplicate symbol '" + tok[0] + "'");
    const double p = parse_probability_at(tok[1], line_no);
    if (tok[0] == "stop") {
      spec.stop = p;
    } else {
      spec.names.push_back(tok[0]);
      spec.letters.push_back(p);
    }
  }
  if (spec.letters.empty()) throw ParseError(line_no, "model has no letters");
  return spec;
}

ModelSpec read_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_text(buf.str());
}

std::optional<RunConfig> parse_config(const std::vector<std::string>& args, std::ostream& out) {
  RunConfig cfg;
  CLI::App app{"Exact rank-frequency statistics of the memoryless word source", "rankzipf"};
  app.set_version_flag("--version", "rankzipf 0.1.0");
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string letters, model_path, stop, format = "csv";
  std::size_t threads = 0;
  auto* letters_opt = app.add_option("--letters", letters, "comma-separated letter probabilities");
  auto* model_opt = app.add_option("--model", model_path, "model file ('name probability' lines)");
  letters_opt->excludes(model_opt);
  app.add_option("--stop", stop, "stop probability (with --letters)")->needs(letters_opt);
  app.add_flag("--json", cfg.json, "emit a rankzipf-report/1 JSON document");
  app.add_option("--format", format, "csv, json or svg (convergence reports)")
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  app.add_option("--out", cfg.out, "write the report to a file");
  app.add_option("--threads", threads, "thread cap (overrides RANKZIPF_THREADS)")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-denominator", cfg.max_denominator, "lattice detection bound")
      ->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 40));
  app.add_option("--tol", cfg.tol, "lattice detection tolerance")->check(CLI::PositiveNumber);

  auto* gamma = app.add_subcommand("gamma", "exponent, predicted limits and lattice verdict");
  auto* rank = app.add_subcommand("rank", "probability of rank R");
  rank->add_option("R", cfg.argument)->required();
  auto* prob = app.add_subcommand("prob", "rank of the last word with probability >= Q");
  prob->add_option("Q", cfg.argument)->required();
  auto* word = app.add_subcommand("word", "representative word of rank R");
  word->add_option("R", cfg.argument)->required();
  auto* qtilde = app.add_subcommand("qtilde", "number of words with -ln p <= Z");
  qtilde->add_option("Z", cfg.argument)->required();
  auto* verify = app.add_subcommand("verify", "functional equation and identity suites");
  auto* cq = app.add_subcommand("converge-q", "Q~(z) H / e^z on a grid");
  cq->add_option("--zmax", cfg.z_max)->check(CLI::PositiveNumber);
  cq->add_option("--step", cfg.step)->check(CLI::PositiveNumber);
  auto* cr = app.add_subcommand("converge-rank", "p(r) r^(1/gamma) at geometric ranks");
  cr->add_option("--rmax", cfg.r_max);
  cr->add_option("--samples", cfg.samples);
  auto* osc = app.add_subcommand("oscillate", "on-grid vs midpoint ratios in the lattice case");
  osc->add_option("--periods", cfg.periods)->check(CLI::PositiveNumber);
  auto* oracle = app.add_subcommand("oracle", "compare the stream with a brute-force word list");
  oracle->add_option("--max-len", cfg.max_len)->check(CLI::Range(1u, 64u));
  oracle->add_option("--max-ranks", cfg.max_ranks)->check(CLI::PositiveNumber);
  (void)gamma;
  (void)verify;

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    std::ostringstream err;
    app.exit(e, out, err);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ParseError(0, e.what());
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (letters.empty() == model_path.empty()) {
    throw ParseError(0, "exactly one of --letters or --model is required");
  }
  if (!model_path.empty()) {
    cfg.model = read_model_file(model_path);
  } else {
    std::stringstream ss(letters);
    for (std::string item; std::getline(ss, item, ',');) {
      cfg.model.letters.push_back(parse_probability(item));
    }
    cfg.model.names = default_names(cfg.model.letters.size());
    if (!stop.empty()) cfg.model.stop = parse_probability(stop);
  }
  if (format == "json") cfg.format = OutputFormat::json;
  if (format == "svg") {
    if (cfg.command != "converge-q" && cfg.command != "converge-rank") {
      throw ParseError(0, "--format svg is only available for converge-q and converge-rank");
    }
    cfg.format = OutputFormat::svg;
  }
  if (cfg.json) cfg.format = OutputFormat::json;
  if (threads > 0) cfg.threads = threads;
  return cfg;
}

}  // namespace rankzipf::cli
