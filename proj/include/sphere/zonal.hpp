#pragma once

// Axially symmetric (zonal) subsets and functions of S^{n-1}, represented by
// their scalar-product profile g(t), t = <x, axis>. Densities, harmonic
// spectra via the Funk-Hecke reduction, projection inner products, and the
// fixed-scalar-product pair operator G_t with a certified truncation tail.

#include "sphere/quadrature.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sphere {

struct ZonalProfile {
  enum class Kind { indicator, callable };

  int n = 0;
  Kind kind = Kind::indicator;
  // Indicator profiles: sorted breakpoints pairing into closed intervals
  // [b0,b1] u [b2,b3] u ... where g = 1. The endpoint convention is
  // immaterial for every integral (boundaries have measure zero) but fixed
  // so membership tests are deterministic.
  std::vector<double> breakpoints;
  std::function<double(double)> fn;  // callable profiles only
  bool symmetric = false;

  double operator()(double t) const;
};

ZonalProfile make_indicator_profile(int n, std::vector<double> breakpoints,
                                    bool symmetric);
ZonalProfile make_callable_profile(int n, std::function<double(double)> fn,
                                   bool symmetric);

// Named sets. band: {|t| <= tau}; double_cap: {|t| >= tau};
// cap: {t >= threshold}; cap_complement: complement of a cap of measure eps.
ZonalProfile band_profile(int n, double tau);
ZonalProfile double_cap_profile(int n, double tau);
ZonalProfile cap_profile(int n, double threshold);
ZonalProfile cap_complement_profile(int n, double eps);
ZonalProfile full_profile(int n);

// Threshold tau such that the cap {t >= tau} has measure eps, by bisection.
double cap_threshold_for_measure(int n, double eps);

// Registry used by the CLI and JSON loaders. Recognized names: "band"
// (param tau, default 1/sqrt(n)), "double_cap" (param tau, default
// 1/sqrt(2)), "cap" (param threshold, required), "cap_complement" (param
// eps, default 0.05), "full". Unknown name -> std::invalid_argument.
ZonalProfile make_named_profile(const std::string& name, int n,
                                std::optional<double> param = std::nullopt);

int default_quadrature_order(int d_max);

// mu{g = 1} for indicators (breakpoint-split exact integration), or
// int g p_n for callables (Gauss rule).
double density(const ZonalProfile& profile, const QuadratureRule& rule);
double density(const ZonalProfile& profile);

struct HarmonicSpectrum {
  int n = 0;
  int d_max = -1;
  std::vector<double> coeffs;   // coeffs[d] = int g(t) P_{n,d}(t) p_n(t) dt
  double tail_norm_sq = 0.0;    // ||g||^2 - sum_d dim * coeffs[d]^2, >= 0
  double norm_sq = 0.0;         // ||g||^2 under the marginal measure
};

// Funk-Hecke coefficients up to d_max. The degree-d component of the lifted
// function has squared norm dim_harmonic(n,d) * coeffs[d]^2; the remainder
// is certified by tail_norm_sq. Throws std::runtime_error if the partial
// sums exceed ||g||^2 beyond the Parseval tolerance (insufficient
// quadrature for the profile).
HarmonicSpectrum funk_hecke_spectrum(const ZonalProfile& profile,
                                     const QuadratureRule& rule, int d_max);
HarmonicSpectrum funk_hecke_spectrum(const ZonalProfile& profile, int d_max);

// <f^{=d}, h^{=d}> = dim_harmonic(n,d) * f_d * h_d for common-axis zonal
// f, h. Throws std::invalid_argument on dimension/truncation mismatch.
double projection_inner_product(const HarmonicSpectrum& fs,
                                const HarmonicSpectrum& hs, int d);

// Pointwise value of the zonal projection profile,
// dim_harmonic(n,d) * coeffs[d] * P_{n,d}(t).
double projection_profile_value(const HarmonicSpectrum& fs, int d, double t);

struct GtValue {
  double value = 0.0;
  double tail_bound = 0.0;
};

// G_t(f,h) = sum_d P_{n,d}(t) dim * f_d * h_d, truncated at d_max with a
// Cauchy-Schwarz tail bound. The generic eigenvalue surrogate is 1; at
// t = 0 with d_max >= 6 the sharper 15/n^3 decay of P_{n,d}(0) applies.
GtValue g_t_zonal(const HarmonicSpectrum& fs, const HarmonicSpectrum& hs,
                  double t);

}  // namespace sphere
