#include "rankzipf/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "rankzipf/errors.hpp"

namespace rankzipf {

namespace {

constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5,
};

// ln((n-1)!) for n = 1..32, summed in long double.
const std::array<double, 33>& log_factorials() {
  static const std::array<double, 33> table = [] {
    std::array<double, 33> t{};
    long double acc = 0.0L;
    t[0] = 0.0;
    t[1] = 0.0;
    for (int n = 2; n < 33; ++n) {
      acc += std::log(static_cast<long double>(n - 1));
      t[n] = static_cast<double>(acc);
    }
    return t;
  }();
  return table;
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma requires x > 0");
  if (x < 33.0 && x == std::floor(x)) return log_factorials()[static_cast<int>(x)];

  if (x < 0.5) {
    // Gamma(x) = Gamma(x + 1) / x
    return log_gamma(x + 1.0) - std::log(x);
  }
  double sum = 0.0;
  for (int i = 14; i > 0; --i) sum += kLanczos[i] / (x + i);
  sum += kLanczos[0];
  const double tmp = x + kLanczosG + 0.5;
  const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
  return (x + 0.5) * std::log(tmp) - tmp + half_log_2pi + std::log(sum / x);
}

}  // namespace rankzipf
