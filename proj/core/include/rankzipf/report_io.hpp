#pragma once

#include <string>

#include "rankzipf/experiments.hpp"

namespace rankzipf {

// RFC-4180 style CSV: header "abscissa,empirical,predicted,ratio" then one
// line per row. Ranks are written as exact integers.
std::string to_csv(const ConvergenceReport& report);

// Static SVG 1.1 plot of ratio against log10(abscissa) with a rule at ratio 1.
std::string to_svg(const ConvergenceReport& report, const std::string& title);

// Shortest round-trip decimal for a double ("%.17g"-equivalent, deterministic).
std::string format_double(double x);

}  // namespace rankzipf
