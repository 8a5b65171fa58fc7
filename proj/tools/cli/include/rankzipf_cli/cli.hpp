#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rankzipf/errors.hpp"

namespace rankzipf::cli {

class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct ModelSpec {
  std::vector<std::string> names;
  std::vector<double> letters;
  std::optional<double> stop;
};

// Decimal literal ("0.25", "1e-3") or exact rational "num/den".
double parse_probability(const std::string& text);

// One "name probability" line per letter, optional "stop probability",
// '#' starts a comment. Line numbers in ParseError are 1-based.
ModelSpec parse_model_text(const std::string& text);
ModelSpec read_model_file(const std::string& path);

enum class OutputFormat { csv, json, svg };

struct RunConfig {
  ModelSpec model;
  std::string command;
  std::string argument;  // R, Q or Z for rank / word / prob / qtilde

  double z_max = 150.0;
  double step = 0.5;
  std::string r_max = "10000000";
  std::size_t samples = 0;
  std::uint64_t periods = 200;
  unsigned max_len = 10;
  std::uint64_t max_ranks = 10'000;
  std::int64_t max_denominator = 1'000'000;
  double tol = 1e-9;

  bool json = false;
  OutputFormat format = OutputFormat::csv;
  std::optional<std::string> out;
  std::optional<std::size_t> threads;
};

// Throws ParseError or ValidationError. Returns nullopt when help or version
// text was printed to `out`.
std::optional<RunConfig> parse_config(const std::vector<std::string>& args, std::ostream& out);

// Exit codes: 0 ok, 1 validation failure, 2 budget exceeded.
int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

// parse_config + dispatch with errors mapped to exit codes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rankzipf::cli
