#pragma once

// Randomized estimators on the sphere and in Gaussian space: uniform and
// fixed-scalar-product pair sampling, G_t estimation for arbitrary
// membership oracles, noise-operator eigenvalue checks, Gaussian moment
// ratios, and the non-positivity measure of traceless quadratics.
//
// Every estimator is a pure function of (inputs, seed, samples). Samples are
// consumed in blocks whose engines are seeded by block index, so a future
// sharded implementation reproduces the sequential result bit for bit.

#include "sphere/rng.hpp"
#include "sphere/zonal.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace sphere {

struct McEstimate {
  double mean = 0.0;
  double std_err = 0.0;  // sample standard deviation / sqrt(samples)
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

// Deterministic membership predicate for a subset of S^{n-1}. Boundaries
// must have measure zero (the predicate is evaluated on exact floating
// inputs). With symmetrize set, the effective set is A u (-A).
struct MembershipOracle {
  int n = 0;
  std::function<bool(const Eigen::VectorXd&)> predicate;
  bool symmetrize = false;

  // Links back to the generating zonal profile when there is one, so
  // spectral consumers can reuse the 1-D pipeline. axis has size 0 for
  // non-zonal oracles.
  std::shared_ptr<const ZonalProfile> profile;
  Eigen::VectorXd axis;

  bool raw(const Eigen::VectorXd& x) const { return predicate(x); }
  bool contains(const Eigen::VectorXd& x) const {
    return predicate(x) || (symmetrize && predicate(-x));
  }
};

// Degree-2 harmonic x -> x^T M x with M symmetric and traceless.
struct TracelessQuadratic {
  int n = 0;
  Eigen::MatrixXd m;

  double operator()(const Eigen::VectorXd& x) const { return x.dot(m * x); }

  // Validates symmetry and zero trace to 1e-12; throws std::invalid_argument.
  static TracelessQuadratic from_matrix(Eigen::MatrixXd m);
  // Projects an arbitrary square matrix onto the symmetric traceless cone.
  static TracelessQuadratic project(const Eigen::MatrixXd& m);
  static TracelessQuadratic random_gaussian(int n, Engine& rng);
};

// Uniform point on S^{n-1} (normalized standard Gaussian); n >= 1.
Eigen::VectorXd sample_sphere(int n, Engine& rng);

// x uniform, y = t x + sqrt(1-t^2) u with u uniform on the unit sphere of
// x's orthogonal complement; <x,y> = t to 1e-10. Requires |t| <= 1, n >= 2.
std::pair<Eigen::VectorXd, Eigen::VectorXd> sample_pair(double t, int n,
                                                        Engine& rng);

// Mean/stderr of draw_one over `samples` evaluations, blocked into
// substreams derived from (seed, block index).
McEstimate run_mc(std::uint64_t seed, std::int64_t samples,
                  const std::function<double(Engine&)>& draw_one);

// Unbiased estimate of G_t(1_A, 1_B) by fixed-scalar-product pair sampling.
McEstimate mc_g_t(const MembershipOracle& f, const MembershipOracle& h,
                  double t, std::int64_t samples, std::uint64_t seed);

// Value of the axis-e1 zonal solid harmonic of degree d at any x in R^n,
// |x|^d P_{n,d}(x_1/|x|); harmonic as a polynomial, so usable in both the
// spherical and the Gaussian picture.
double zonal_harmonic_value(int n, int d, const Eigen::VectorXd& x);

struct NoiseProbe {
  double input_value = 0.0;     // f at the probe point
  double expected = 0.0;        // rho^d * input_value
  McEstimate smoothed;          // MC estimate of E_y f(rho x + sqrt(1-rho^2) y)
};
struct NoiseReport {
  int n = 0;
  int d = 0;
  double rho = 0.0;
  std::vector<NoiseProbe> probes;
  bool pass = false;  // every probe within 3 stderr (+1e-12 slack)
};

// Checks the eigenrelation of the Gaussian noise operator on degree-d
// harmonics, E_y f(rho x + sqrt(1-rho^2) y) = rho^d f(x), at `probes`
// Gaussian probe points. The default test function is the zonal solid
// harmonic of degree d.
NoiseReport noise_operator_check(int d, int n, double rho,
                                 std::int64_t samples, std::uint64_t seed,
                                 int probes = 8);
NoiseReport noise_operator_check(const TracelessQuadratic& q, double rho,
                                 std::int64_t samples, std::uint64_t seed,
                                 int probes = 8);

// ||f||_{L^q(gamma)} / ||f||_{L^2(gamma)} for f(x) = x^T M x, both moments
// estimated from the same Gaussian draws; stderr by first-order propagation.
McEstimate gaussian_moment_ratio(const TracelessQuadratic& q, double moment_q,
                                 std::int64_t samples, std::uint64_t seed);

// mu{x in S^{n-1} : x^T M x <= 0}, by direct sphere sampling and by the
// eigenvalue route Pr[sum lambda_i X_i^2 <= 0]; the two routes are
// independent estimators of the same number.
McEstimate quadratic_nonpositive_measure(const TracelessQuadratic& q,
                                         std::int64_t samples,
                                         std::uint64_t seed);
McEstimate quadratic_nonpositive_measure_eigen(const TracelessQuadratic& q,
                                               std::int64_t samples,
                                               std::uint64_t seed);

}  // namespace sphere
