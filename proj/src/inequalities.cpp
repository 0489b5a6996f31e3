#include "sphere/inequalities.hpp"

#include "sphere/gegenbauer.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sphere {

double level_d_bound(const LevelDParams& p) {
  if (!(p.alpha > 0.0 && p.alpha <= 0.5))
    throw std::domain_error("level_d_bound: need 0 < alpha <= 1/2");
  if (p.n < 2) throw std::domain_error("level_d_bound: need n >= 2");
  if (!(p.alpha >= std::exp2(-static_cast<double>(p.n))))
    throw std::domain_error("level_d_bound: need alpha >= 2^-n");
  if (p.d < 0) throw std::domain_error("level_d_bound: need d >= 0");
  const double log_inv = std::log(1.0 / p.alpha);
  if (p.d > log_inv)
    throw std::domain_error("level_d_bound: need d <= ln(1/alpha)");
  if (p.d == 0) return p.alpha * p.alpha;
  return p.alpha * p.alpha * std::pow(p.c * log_inv / p.d, p.d);
}

LevelDReport check_level_d(const ZonalProfile& profile, int d, double c) {
  if (profile.kind != ZonalProfile::Kind::indicator)
    throw std::invalid_argument("check_level_d: profile must be an indicator");
  if (d < 0) throw std::invalid_argument("check_level_d: need d >= 0");

  LevelDReport report;
  report.d = d;

  const double raw_alpha = density(profile);
  report.flipped = raw_alpha > 0.5;
  report.alpha = report.flipped ? 1.0 - raw_alpha : raw_alpha;

  if (!(report.alpha > 0.0)) {
    report.reason = "density is 0 or 1; no sparse side to bound";
    return report;
  }
  if (report.alpha < std::exp2(-static_cast<double>(profile.n))) {
    report.reason = "alpha below 2^-n";
    return report;
  }
  if (d > std::log(1.0 / report.alpha)) {
    report.reason = "d exceeds ln(1/alpha)";
    return report;
  }

  report.applicable = true;
  report.bound = level_d_bound({report.alpha, d, profile.n, c});
  if (report.flipped && d == 0) {
    // The complement's mean component: ||(1-f)^{=0}||^2 = (1-density)^2.
    report.measured = report.alpha * report.alpha;
  } else {
    auto s = funk_hecke_spectrum(profile, d);
    report.measured = projection_inner_product(s, s, d);
  }
  report.holds = report.measured <= report.bound;
  return report;
}

double sphere_moment_bound(int n, int d, double q) {
  if (n < 2) throw std::domain_error("sphere_moment_bound: need n >= 2");
  if (d < 0) throw std::domain_error("sphere_moment_bound: need d >= 0");
  if (!(q >= 2.0)) throw std::domain_error("sphere_moment_bound: need q >= 2");
  return std::pow(q - 1.0, 0.5 * d) *
         std::exp(static_cast<double>(d) * d * q / n);
}

double norm_conversion_factor(int n, int d, double q) {
  if (n < 1) throw std::domain_error("norm_conversion_factor: need n >= 1");
  if (d < 0) throw std::domain_error("norm_conversion_factor: need d >= 0");
  if (!(q >= 1.0)) throw std::domain_error("norm_conversion_factor: need q >= 1");
  const double log_value = std::lgamma(0.5 * n) -
                           0.5 * d * q * std::log(2.0) -
                           std::lgamma(0.5 * (d * q + n));
  return std::exp(log_value / q);
}

BudgetReport budget_chain(const BudgetParams& p) {
  if (!(p.eps0 > 0.0 && p.eps0 <= 0.5))
    throw std::domain_error("budget_chain: need 0 < eps0 <= 1/2");
  if (!(p.epsilon > 0.0 && p.epsilon <= p.eps0))
    throw std::domain_error("budget_chain: need 0 < epsilon <= eps0");
  if (p.n0 < 1 || p.n0 > p.n)
    throw std::domain_error("budget_chain: need 1 <= n0 <= n");
  if (!(p.c >= 0.0)) throw std::domain_error("budget_chain: need c >= 0");

  BudgetReport report;
  report.threshold = 1.0 - 1.0 / (2.0 * p.n0);

  const double eps_uniform = 2.0 * p.epsilon;  // inductive bound on eps_k
  const double log_term = std::log(1.0 / eps_uniform);
  double bound = 1.0 - p.epsilon;
  // failing_step = -1 with exhausted set means the starting density is
  // already below the terminal-stage threshold.
  if (bound < report.threshold) report.exhausted = true;
  report.per_step.reserve(static_cast<std::size_t>(p.n - p.n0));
  for (int k = 0; p.n - k > p.n0; ++k) {
    const double dim = static_cast<double>(p.n - k);
    const double loss = p.c * eps_uniform * log_term * log_term / (dim * dim) +
                        p.c / (dim * dim * dim);
    bound -= loss;
    report.per_step.push_back({k, loss, bound});
    if (!report.exhausted && bound < report.threshold) {
      report.exhausted = true;
      report.failing_step = k;
    }
  }
  report.final_density_lower_bound = bound;
  return report;
}

}  // namespace sphere
