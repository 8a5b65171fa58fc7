#pragma once

namespace rankzipf {

// ln Gamma(x) for x > 0. Lanczos (g = 607/128, 15 terms) with exact
// log-factorials at small integers; relative error below 1e-13.
double log_gamma(double x);

}  // namespace rankzipf
