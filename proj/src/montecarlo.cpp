#include "sphere/montecarlo.hpp"

#include "sphere/gegenbauer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sphere {

namespace {

constexpr std::int64_t kBlock = 1 << 16;

Eigen::VectorXd gaussian_vector(int n, Engine& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

void check_quadratic(const TracelessQuadratic& q, const char* where) {
  if (q.n < 2 || q.m.rows() != q.n || q.m.cols() != q.n)
    throw std::invalid_argument(std::string(where) + ": malformed quadratic");
  if (q.m.norm() == 0.0)
    throw std::invalid_argument(std::string(where) + ": zero quadratic");
}

}  // namespace

TracelessQuadratic TracelessQuadratic::from_matrix(Eigen::MatrixXd m) {
  if (m.rows() != m.cols() || m.rows() < 2)
    throw std::invalid_argument("TracelessQuadratic: matrix must be square, n >= 2");
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("TracelessQuadratic: matrix must be symmetric");
  if (std::abs(m.trace()) > 1e-12)
    throw std::invalid_argument("TracelessQuadratic: matrix must be traceless");
  TracelessQuadratic q;
  q.n = static_cast<int>(m.rows());
  q.m = std::move(m);
  return q;
}

TracelessQuadratic TracelessQuadratic::project(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() < 2)
    throw std::invalid_argument("TracelessQuadratic: matrix must be square, n >= 2");
  Eigen::MatrixXd s = 0.5 * (m + m.transpose());
  s.diagonal().array() -= s.trace() / static_cast<double>(m.rows());
  // Re-zero the trace explicitly; the subtraction leaves an O(eps) residue.
  s(0, 0) -= s.trace();
  TracelessQuadratic q;
  q.n = static_cast<int>(m.rows());
  q.m = std::move(s);
  return q;
}

TracelessQuadratic TracelessQuadratic::random_gaussian(int n, Engine& rng) {
  if (n < 2)
    throw std::invalid_argument("TracelessQuadratic: need n >= 2");
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) g(r, c) = normal(rng);
  return project(g);
}

Eigen::VectorXd sample_sphere(int n, Engine& rng) {
  if (n < 1) throw std::domain_error("sample_sphere: n must be >= 1");
  for (;;) {
    Eigen::VectorXd v = gaussian_vector(n, rng);
    double norm = v.norm();
    if (norm > 1e-150) return v / norm;
  }
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> sample_pair(double t, int n,
                                                        Engine& rng) {
  if (n < 2) throw std::domain_error("sample_pair: n must be >= 2");
  if (!(std::abs(t) <= 1.0))
    throw std::domain_error("sample_pair: t must lie in [-1, 1]");
  Eigen::VectorXd x = sample_sphere(n, rng);
  Eigen::VectorXd u;
  for (;;) {
    u = gaussian_vector(n, rng);
    u -= u.dot(x) * x;
    double norm = u.norm();
    if (norm > 1e-150) {
      u /= norm;
      break;
    }
  }
  double s = std::sqrt(std::max(0.0, 1.0 - t * t));
  return {x, t * x + s * u};
}

McEstimate run_mc(std::uint64_t seed, std::int64_t samples,
                  const std::function<double(Engine&)>& draw_one) {
  if (samples < 1) throw std::domain_error("run_mc: samples must be >= 1");
  double total = 0.0, total_sq = 0.0;
  std::int64_t done = 0;
  std::uint64_t block = 0;
  while (done < samples) {
    const std::int64_t count = std::min(kBlock, samples - done);
    Engine eng = make_engine(seed, block);
    double s = 0.0, s2 = 0.0;
    for (std::int64_t i = 0; i < count; ++i) {
      const double v = draw_one(eng);
      s += v;
      s2 += v * v;
    }
    total += s;
    total_sq += s2;
    done += count;
    ++block;
  }
  McEstimate est;
  est.mean = total / static_cast<double>(samples);
  est.samples = samples;
  est.seed = seed;
  if (samples > 1) {
    double var = (total_sq - samples * est.mean * est.mean) / (samples - 1.0);
    est.std_err = std::sqrt(std::max(0.0, var) / static_cast<double>(samples));
  }
  return est;
}

McEstimate mc_g_t(const MembershipOracle& f, const MembershipOracle& h,
                  double t, std::int64_t samples, std::uint64_t seed) {
  if (f.n != h.n)
    throw std::invalid_argument("mc_g_t: oracle dimensions differ");
  const int n = f.n;
  return run_mc(seed, samples, [&](Engine& eng) {
    auto [x, y] = sample_pair(t, n, eng);
    return (f.contains(x) && h.contains(y)) ? 1.0 : 0.0;
  });
}

double zonal_harmonic_value(int n, int d, const Eigen::VectorXd& x) {
  if (d == 0) return 1.0;
  const double r = x.norm();
  if (r == 0.0) return 0.0;
  const double c = std::clamp(x(0) / r, -1.0, 1.0);
  return std::pow(r, d) * gegenbauer_eval(n, d, c);
}

namespace {

NoiseReport noise_check_impl(int n, int d, double rho,
                             const std::function<double(const Eigen::VectorXd&)>& f,
                             std::int64_t samples, std::uint64_t seed,
                             int probes) {
  if (!(rho >= 0.0 && rho <= 1.0))
    throw std::domain_error("noise_operator_check: rho must lie in [0, 1]");
  if (probes < 1)
    throw std::domain_error("noise_operator_check: need at least one probe");

  NoiseReport report;
  report.n = n;
  report.d = d;
  report.rho = rho;
  report.pass = true;

  Engine probe_eng = make_engine(seed, 0x70726f6265ULL);  // probe stream
  const double s = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  for (int k = 0; k < probes; ++k) {
    Eigen::VectorXd x = gaussian_vector(n, probe_eng);
    NoiseProbe probe;
    probe.input_value = f(x);
    probe.expected = std::pow(rho, d) * probe.input_value;
    probe.smoothed =
        run_mc(mix_seed(seed, 1000003ULL + static_cast<std::uint64_t>(k)),
               samples, [&](Engine& eng) {
                 Eigen::VectorXd y = gaussian_vector(n, eng);
                 return f(rho * x + s * y);
               });
    if (std::abs(probe.smoothed.mean - probe.expected) >
        3.0 * probe.smoothed.std_err + 1e-12)
      report.pass = false;
    report.probes.push_back(std::move(probe));
  }
  return report;
}

}  // namespace

NoiseReport noise_operator_check(int d, int n, double rho,
                                 std::int64_t samples, std::uint64_t seed,
                                 int probes) {
  if (n < 2) throw std::domain_error("noise_operator_check: n must be >= 2");
  if (d < 0) throw std::domain_error("noise_operator_check: d must be >= 0");
  return noise_check_impl(
      n, d, rho, [&](const Eigen::VectorXd& x) { return zonal_harmonic_value(n, d, x); },
      samples, seed, probes);
}

NoiseReport noise_operator_check(const TracelessQuadratic& q, double rho,
                                 std::int64_t samples, std::uint64_t seed,
                                 int probes) {
  check_quadratic(q, "noise_operator_check");
  return noise_check_impl(
      q.n, 2, rho, [&](const Eigen::VectorXd& x) { return q(x); }, samples,
      seed, probes);
}

McEstimate gaussian_moment_ratio(const TracelessQuadratic& q, double moment_q,
                                 std::int64_t samples, std::uint64_t seed) {
  check_quadratic(q, "gaussian_moment_ratio");
  if (!(moment_q >= 2.0))
    throw std::domain_error("gaussian_moment_ratio: moment_q must be >= 2");

  // Both moments from the same draws; the q-th moment drives the blocks.
  double sum2 = 0.0;
  auto mq = run_mc(seed, samples, [&](Engine& eng) {
    const double y = q(gaussian_vector(q.n, eng));
    sum2 += y * y;
    return std::pow(std::abs(y), moment_q);
  });
  const double m2 = sum2 / static_cast<double>(samples);

  McEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.mean = std::pow(mq.mean, 1.0 / moment_q) / std::sqrt(m2);
  // First-order propagation, conservatively adding the two relative errors.
  // The L2 part reuses the q-th moment's relative spread as a stand-in,
  // which overstates it (|Y|^q varies more than Y^2 for q > 2).
  const double rel_q =
      mq.mean > 0.0 ? mq.std_err / (moment_q * mq.mean) : 0.0;
  est.std_err = est.mean * 2.0 * rel_q;
  return est;
}

McEstimate quadratic_nonpositive_measure(const TracelessQuadratic& q,
                                         std::int64_t samples,
                                         std::uint64_t seed) {
  check_quadratic(q, "quadratic_nonpositive_measure");
  return run_mc(seed, samples, [&](Engine& eng) {
    return q(sample_sphere(q.n, eng)) <= 0.0 ? 1.0 : 0.0;
  });
}

McEstimate quadratic_nonpositive_measure_eigen(const TracelessQuadratic& q,
                                               std::int64_t samples,
                                               std::uint64_t seed) {
  check_quadratic(q, "quadratic_nonpositive_measure");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q.m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("quadratic_nonpositive_measure: eigensolve failed");
  const Eigen::VectorXd lambda = es.eigenvalues();
  return run_mc(seed, samples, [&](Engine& eng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    double v = 0.0;
    for (int i = 0; i < q.n; ++i) {
      const double g = normal(eng);
      v += lambda(i) * g * g;
    }
    return v <= 0.0 ? 1.0 : 0.0;
  });
}

}  // namespace sphere
