#include "sphere/gegenbauer.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sphere {

namespace {

void check_args(int n, int d, double t) {
  if (n < 2) throw std::domain_error("gegenbauer: dimension n must be >= 2");
  if (d < 0) throw std::domain_error("gegenbauer: degree d must be >= 0");
  if (!(std::abs(t) <= 1.0))
    throw std::domain_error("gegenbauer: argument t must lie in [-1, 1]");
}

// C(a, b) with overflow checking, exact. Multiplies stepwise as
// C(a-b+i, i) = C(a-b+i-1, i-1) * (a-b+i) / i; each intermediate is itself
// a binomial coefficient so the division is exact.
std::int64_t binomial_checked(std::int64_t a, std::int64_t b) {
  if (b < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  __int128 r = 1;
  const __int128 lim = std::numeric_limits<std::int64_t>::max();
  for (std::int64_t i = 1; i <= b; ++i) {
    r = r * (a - b + i) / i;
    if (r > lim) throw std::overflow_error("dim_harmonic: value exceeds int64 range");
  }
  return static_cast<std::int64_t>(r);
}

// Chebyshev T_d via the explicit alternating sum, the n = 2 specialization
// where the general Gamma-ratio formula degenerates. Coefficients
// (d/2) (d-l-1)!/(l! (d-2l)!) are exact rationals; the sum cancels heavily,
// so everything is carried in extended precision.
double chebyshev_explicit(int d, double t) {
  if (d == 0) return 1.0;
  long double sum = 0.0L;
  for (int l = 0; 2 * l <= d; ++l) {
    long double coeff;
    if (d - 2 * l == 0) {
      coeff = 1.0L;
    } else {
      coeff = 0.5L * d / (d - 2 * l);
      for (int i = 1; i <= l; ++i) coeff *= static_cast<long double>(d - l - i) / i;
    }
    long double power = std::pow(2.0L * t, d - 2 * l);
    long double term = coeff * power;
    if (!std::isfinite(static_cast<double>(term)))
      throw std::overflow_error("gegenbauer_eval_explicit: term overflow");
    sum += (l % 2 == 0) ? term : -term;
  }
  return static_cast<double>(sum);
}

}  // namespace

double gegenbauer_eval(int n, int d, double t) {
  check_args(n, d, t);
  if (d == 0) return 1.0;
  if (d == 1) return t;
  double pm2 = 1.0;
  double pm1 = t;
  for (int k = 2; k <= d; ++k) {
    double p = ((2.0 * k + n - 4.0) * t * pm1 - (k - 1.0) * pm2) / (k + n - 3.0);
    pm2 = pm1;
    pm1 = p;
  }
  return pm1;
}

void gegenbauer_eval_all(int n, double t, std::span<double> out) {
  if (out.empty()) return;
  check_args(n, static_cast<int>(out.size()) - 1, t);
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = t;
  for (std::size_t k = 2; k < out.size(); ++k)
    out[k] = ((2.0 * k + n - 4.0) * t * out[k - 1] - (k - 1.0) * out[k - 2]) /
             (k + n - 3.0);
}

std::vector<double> gegenbauer_eval_all(int n, int d_max, double t) {
  if (d_max < 0) throw std::domain_error("gegenbauer: degree d must be >= 0");
  std::vector<double> out(static_cast<std::size_t>(d_max) + 1);
  gegenbauer_eval_all(n, t, out);
  return out;
}

double gegenbauer_eval_explicit(int n, int d, double t) {
  if (n < 2) throw std::domain_error("gegenbauer: dimension n must be >= 2");
  if (d < 0) throw std::domain_error("gegenbauer: degree d must be >= 0");
  if (d > 30)
    throw std::domain_error("gegenbauer_eval_explicit: degree limited to d <= 30");
  if (!std::isfinite(t))
    throw std::domain_error("gegenbauer_eval_explicit: t must be finite");
  if (n == 2) return chebyshev_explicit(d, t);
  if (d == 0) return 1.0;

  // P_{n,d}(t) = C(n+d-3, d)^{-1} * sum_l (-1)^l
  //   Gamma(d-l+(n-2)/2) / (Gamma((n-2)/2) l! (d-2l)!) (2t)^{d-2l}
  // Gamma ratios reduce to rational products over at most d factors, which
  // avoids the precision loss of exponentiated lgamma; the alternating sum
  // cancels heavily near |t| = 1, so it is carried in extended precision.
  const long double half = 0.5L * (n - 2.0L);
  long double norm = 1.0L;  // C(n+d-3, d)
  for (int i = 1; i <= d; ++i) norm *= static_cast<long double>(n - 3 + i) / i;
  long double sum = 0.0L;
  for (int l = 0; 2 * l <= d; ++l) {
    long double coeff = 1.0L / norm;
    for (int k = 0; k < d - l; ++k) coeff *= half + k;  // Gamma(d-l+half)/Gamma(half)
    for (int i = 1; i <= l; ++i) coeff /= i;
    for (int i = 1; i <= d - 2 * l; ++i) coeff /= i;
    long double power = std::pow(2.0L * t, d - 2 * l);
    long double term = coeff * power;
    if (!std::isfinite(static_cast<double>(term)))
      throw std::overflow_error("gegenbauer_eval_explicit: term overflow");
    sum += (l % 2 == 0) ? term : -term;
  }
  return static_cast<double>(sum);
}

double gegenbauer_zero(int n, int d) {
  if (n < 2) throw std::domain_error("gegenbauer: dimension n must be >= 2");
  if (d < 0) throw std::domain_error("gegenbauer: degree d must be >= 0");
  if (d % 2 == 1) return 0.0;
  double v = 1.0;
  for (int k = 2; k <= d; k += 2) v *= -(k - 1.0) / (n - 3.0 + k);
  return v;
}

std::int64_t dim_harmonic(int n, int d) {
  if (n < 2) throw std::domain_error("dim_harmonic: dimension n must be >= 2");
  if (d < 0) throw std::domain_error("dim_harmonic: degree d must be >= 0");
  if (d == 0) return 1;
  // C(n+d-1, n-1) - C(n+d-3, n-1); the difference fits whenever the first
  // term does, so checking the minuend suffices.
  return binomial_checked(n + d - 1, n - 1) - binomial_checked(n + d - 3, n - 1);
}

double dim_harmonic_real(int n, int d) {
  if (n < 2) throw std::domain_error("dim_harmonic: dimension n must be >= 2");
  if (d < 0) throw std::domain_error("dim_harmonic: degree d must be >= 0");
  if (d == 0) return 1.0;
  try {
    return static_cast<double>(dim_harmonic(n, d));
  } catch (const std::overflow_error&) {
    auto log_binom = [](double a, double b) {
      return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
    };
    double big = log_binom(n + d - 1.0, n - 1.0);
    double small = log_binom(n + d - 3.0, n - 1.0);
    // dim = e^big - e^small = e^big (1 - e^{small-big})
    return std::exp(big) * -std::expm1(small - big);
  }
}

}  // namespace sphere
