#include "sphere/zonal.hpp"

#include "sphere/gegenbauer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace sphere {

namespace {

constexpr double kParsevalTol = 1e-8;

void validate_dimension(int n, const char* where) {
  if (n < 2) {
    std::ostringstream msg;
    msg << where << ": dimension n must be >= 2";
    throw std::domain_error(msg.str());
  }
}

void check_same_rule(const ZonalProfile& profile, const QuadratureRule& rule,
                     const char* where) {
  if (profile.n != rule.n) {
    std::ostringstream msg;
    msg << where << ": profile dimension " << profile.n
        << " does not match rule dimension " << rule.n;
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

double ZonalProfile::operator()(double t) const {
  if (kind == Kind::callable) return fn(t);
  for (std::size_t i = 0; i + 1 < breakpoints.size(); i += 2)
    if (t >= breakpoints[i] && t <= breakpoints[i + 1]) return 1.0;
  return 0.0;
}

ZonalProfile make_indicator_profile(int n, std::vector<double> breakpoints,
                                    bool symmetric) {
  validate_dimension(n, "make_indicator_profile");
  if (breakpoints.size() % 2 != 0)
    throw std::invalid_argument(
        "make_indicator_profile: breakpoints must pair into intervals");
  if (!std::is_sorted(breakpoints.begin(), breakpoints.end()))
    throw std::invalid_argument("make_indicator_profile: breakpoints must be sorted");
  for (double b : breakpoints)
    if (!(b >= -1.0 && b <= 1.0))
      throw std::invalid_argument(
          "make_indicator_profile: breakpoints must lie in [-1, 1]");
  if (symmetric) {
    const std::size_t m = breakpoints.size();
    for (std::size_t i = 0; i < m; ++i)
      if (std::abs(breakpoints[i] + breakpoints[m - 1 - i]) > 1e-12)
        throw std::invalid_argument(
            "make_indicator_profile: symmetric flag inconsistent with breakpoints");
  }
  ZonalProfile p;
  p.n = n;
  p.kind = ZonalProfile::Kind::indicator;
  p.breakpoints = std::move(breakpoints);
  p.symmetric = symmetric;
  return p;
}

ZonalProfile make_callable_profile(int n, std::function<double(double)> fn,
                                   bool symmetric) {
  validate_dimension(n, "make_callable_profile");
  if (!fn) throw std::invalid_argument("make_callable_profile: empty callable");
  if (symmetric) {
    for (double t : {0.13, 0.41, 0.87})
      if (std::abs(fn(t) - fn(-t)) > 1e-10)
        throw std::invalid_argument(
            "make_callable_profile: symmetric flag inconsistent with callable");
  }
  ZonalProfile p;
  p.n = n;
  p.kind = ZonalProfile::Kind::callable;
  p.fn = std::move(fn);
  p.symmetric = symmetric;
  return p;
}

ZonalProfile band_profile(int n, double tau) {
  if (!(tau > 0.0 && tau <= 1.0))
    throw std::invalid_argument("band_profile: tau must be in (0, 1]");
  return make_indicator_profile(n, {-tau, tau}, true);
}

ZonalProfile double_cap_profile(int n, double tau) {
  if (!(tau > 0.0 && tau < 1.0))
    throw std::invalid_argument("double_cap_profile: tau must be in (0, 1)");
  return make_indicator_profile(n, {-1.0, -tau, tau, 1.0}, true);
}

ZonalProfile cap_profile(int n, double threshold) {
  if (!(threshold >= -1.0 && threshold < 1.0))
    throw std::invalid_argument("cap_profile: threshold must be in [-1, 1)");
  return make_indicator_profile(n, {threshold, 1.0}, false);
}

ZonalProfile cap_complement_profile(int n, double eps) {
  double tau = cap_threshold_for_measure(n, eps);
  return make_indicator_profile(n, {-1.0, tau}, false);
}

ZonalProfile full_profile(int n) {
  return make_indicator_profile(n, {-1.0, 1.0}, true);
}

double cap_threshold_for_measure(int n, double eps) {
  validate_dimension(n, "cap_threshold_for_measure");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument(
        "cap_threshold_for_measure: eps must be in (0, 1)");
  double lo = -1.0, hi = 1.0;  // cap mass decreases in the threshold
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    double mid = 0.5 * (lo + hi);
    if (marginal_mass(n, mid, 1.0) > eps)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

ZonalProfile make_named_profile(const std::string& name, int n,
                                std::optional<double> param) {
  if (name == "band")
    return band_profile(n, param.value_or(1.0 / std::sqrt(static_cast<double>(n))));
  if (name == "double_cap")
    return double_cap_profile(n, param.value_or(1.0 / std::sqrt(2.0)));
  if (name == "cap") {
    if (!param) throw std::invalid_argument("make_named_profile: cap needs a threshold");
    return cap_profile(n, *param);
  }
  if (name == "cap_complement")
    return cap_complement_profile(n, param.value_or(0.05));
  if (name == "full") return full_profile(n);
  throw std::invalid_argument("make_named_profile: unknown set name '" + name + "'");
}

int default_quadrature_order(int d_max) { return std::max(64, 4 * d_max); }

double density(const ZonalProfile& profile, const QuadratureRule& rule) {
  check_same_rule(profile, rule, "density");
  if (profile.kind == ZonalProfile::Kind::indicator) {
    double mass = 0.0;
    for (std::size_t i = 0; i + 1 < profile.breakpoints.size(); i += 2)
      mass += marginal_mass(profile.n, profile.breakpoints[i],
                            profile.breakpoints[i + 1]);
    return mass;
  }
  double mass = 0.0;
  for (int i = 0; i < rule.order; ++i)
    mass += rule.weights[i] * profile.fn(rule.nodes[i]);
  return mass;
}

double density(const ZonalProfile& profile) {
  return density(profile, make_quadrature(profile.n, default_quadrature_order(0)));
}

HarmonicSpectrum funk_hecke_spectrum(const ZonalProfile& profile,
                                     const QuadratureRule& rule, int d_max) {
  check_same_rule(profile, rule, "funk_hecke_spectrum");
  if (d_max < 0)
    throw std::invalid_argument("funk_hecke_spectrum: d_max must be >= 0");

  const int n = profile.n;
  HarmonicSpectrum s;
  s.n = n;
  s.d_max = d_max;
  s.coeffs.assign(static_cast<std::size_t>(d_max) + 1, 0.0);

  std::vector<double> poly(static_cast<std::size_t>(d_max) + 1);
  if (profile.kind == ZonalProfile::Kind::indicator) {
    // Integrate exactly on each interval where g = 1; the integrand there
    // is the smooth polynomial P_{n,d} itself.
    const int hint = std::max(d_max, 8);
    for (std::size_t i = 0; i + 1 < profile.breakpoints.size(); i += 2) {
      foreach_marginal_segment_node(
          n, profile.breakpoints[i], profile.breakpoints[i + 1], hint,
          [&](double t, double w) {
            gegenbauer_eval_all(n, t, poly);
            for (int d = 0; d <= d_max; ++d) s.coeffs[d] += w * poly[d];
          });
    }
    s.norm_sq = s.coeffs[0];  // g is 0-1 valued, so ||g||^2 = int g = g_0
  } else {
    for (int i = 0; i < rule.order; ++i) {
      const double g = profile.fn(rule.nodes[i]);
      gegenbauer_eval_all(n, rule.nodes[i], poly);
      for (int d = 0; d <= d_max; ++d)
        s.coeffs[d] += rule.weights[i] * g * poly[d];
      s.norm_sq += rule.weights[i] * g * g;
    }
  }

  double partial = 0.0;
  for (int d = 0; d <= d_max; ++d)
    partial += dim_harmonic_real(n, d) * s.coeffs[d] * s.coeffs[d];
  if (partial > s.norm_sq + kParsevalTol) {
    std::ostringstream msg;
    msg << "funk_hecke_spectrum: Parseval violation: partial sum " << partial
        << " exceeds ||g||^2 = " << s.norm_sq << " by "
        << partial - s.norm_sq
        << "; quadrature resolution is insufficient for this profile";
    throw std::runtime_error(msg.str());
  }
  s.tail_norm_sq = std::max(0.0, s.norm_sq - partial);
  return s;
}

HarmonicSpectrum funk_hecke_spectrum(const ZonalProfile& profile, int d_max) {
  return funk_hecke_spectrum(
      profile, make_quadrature(profile.n, default_quadrature_order(d_max)),
      d_max);
}

double projection_inner_product(const HarmonicSpectrum& fs,
                                const HarmonicSpectrum& hs, int d) {
  if (fs.n != hs.n)
    throw std::invalid_argument("projection_inner_product: dimension mismatch");
  if (d < 0 || d > fs.d_max || d > hs.d_max)
    throw std::invalid_argument(
        "projection_inner_product: degree outside both truncations");
  return dim_harmonic_real(fs.n, d) * fs.coeffs[d] * hs.coeffs[d];
}

double projection_profile_value(const HarmonicSpectrum& fs, int d, double t) {
  if (d < 0 || d > fs.d_max)
    throw std::invalid_argument(
        "projection_profile_value: degree outside the truncation");
  return dim_harmonic_real(fs.n, d) * fs.coeffs[d] * gegenbauer_eval(fs.n, d, t);
}

GtValue g_t_zonal(const HarmonicSpectrum& fs, const HarmonicSpectrum& hs,
                  double t) {
  if (fs.n != hs.n || fs.d_max != hs.d_max)
    throw std::invalid_argument("g_t_zonal: incompatible spectra");
  if (!(std::abs(t) <= 1.0))
    throw std::domain_error("g_t_zonal: t must lie in [-1, 1]");

  const int n = fs.n;
  GtValue out;
  auto poly = gegenbauer_eval_all(n, fs.d_max, t);
  for (int d = 0; d <= fs.d_max; ++d)
    out.value += poly[d] * dim_harmonic_real(n, d) * fs.coeffs[d] * hs.coeffs[d];

  // Cauchy-Schwarz across the discarded degrees, with the best available
  // uniform bound on the eigenvalues P_{n,d}(t) for d > d_max.
  double surrogate = 1.0;
  if (t == 0.0 && fs.d_max >= 6)
    surrogate = std::min(1.0, 15.0 / (static_cast<double>(n) * n * n));
  out.tail_bound =
      surrogate * std::sqrt(fs.tail_norm_sq * hs.tail_norm_sq);
  return out;
}

}  // namespace sphere
