#pragma once

// Closed-form bound calculators and verifier reports: the level-d spectral
// bound for sparse indicators, moment growth bounds for low-degree
// harmonics, Gaussian-to-sphere norm conversion, and the density budget of
// the recursive slicing argument.

#include "sphere/zonal.hpp"

#include <string>
#include <vector>

namespace sphere {

struct LevelDParams {
  double alpha = 0.0;  // density, in (0, 1/2]
  int d = 0;
  int n = 2;
  double c = 100.0;  // bound constant, parametrized rather than hard-coded
};

// alpha^2 (c ln(1/alpha)/d)^d, with the d = 0 convention alpha^2.
// Preconditions, each reported by name on violation:
//   0 < alpha <= 1/2,  alpha >= 2^{-n},  0 <= d <= ln(1/alpha).
double level_d_bound(const LevelDParams& p);

struct LevelDReport {
  bool applicable = false;
  std::string reason;    // populated when not applicable
  double alpha = 0.0;    // density the bound was applied to
  bool flipped = false;  // complement was checked (original density > 1/2)
  int d = 0;
  double measured = 0.0;  // ||f^{=d}||^2
  double bound = 0.0;
  bool holds = false;
};

// Measures ||f^{=d}||^2 of an indicator profile through the spectral
// pipeline and compares it with level_d_bound. Profiles of density above
// 1/2 are checked through their complement, whose degree-d component has
// the same norm for d >= 1. Inadmissible (alpha, d) yields a
// "not applicable" report, not a failure.
LevelDReport check_level_d(const ZonalProfile& profile, int d,
                           double c = 100.0);

// (q-1)^{d/2} e^{d^2 q / n}: moment growth of degree-d sphere harmonics.
double sphere_moment_bound(int n, int d, double q);

// (Gamma(n/2) / (2^{dq/2} Gamma((dq+n)/2)))^{1/q}: factor taking the
// Gaussian L^q norm of a degree-d homogeneous function to its sphere norm.
double norm_conversion_factor(int n, int d, double q);

struct BudgetParams {
  double epsilon = 0.0;  // initial density deficit, in (0, eps0]
  int n = 0;             // starting dimension
  int n0 = 0;            // terminal dimension, 1 <= n0 <= n
  double c = 10.0;       // per-step loss constant
  double eps0 = 0.01;    // admissible range cap for epsilon
};

struct BudgetStep {
  int k = 0;           // step index; the slice is taken in dimension n - k
  double loss = 0.0;   // c*(2 eps) ln^2(1/(2 eps))/(n-k)^2 + c/(n-k)^3
  double lower_bound = 0.0;  // guaranteed density after this step
};

struct BudgetReport {
  double final_density_lower_bound = 0.0;
  std::vector<BudgetStep> per_step;
  double threshold = 0.0;  // 1 - 1/(2 n0), needed by the terminal stage
  bool exhausted = false;  // some step dropped below the threshold
  int failing_step = -1;   // first such step, -1 if none
};

// Evaluates the density chain 1 - eps_m >= (1 - eps) - sum of per-step
// losses, from dimension n down to n0, with every eps_k replaced by its
// uniform bound 2*eps. Exhaustion is reported in the result rather than
// thrown: the chain value is still valid as a lower bound, it merely fails
// to license the terminal averaging stage.
BudgetReport budget_chain(const BudgetParams& p);

}  // namespace sphere
