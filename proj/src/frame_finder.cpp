#include "sphere/frame_finder.hpp"

#include "sphere/zonal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace sphere {

namespace {

Eigen::VectorXd gaussian_vector(int n, Engine& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

void check_config(const FinderConfig& cfg) {
  if (cfg.candidates_per_level < 1 || cfg.slice_samples < 1 ||
      cfg.terminal_trials < 1 || cfg.max_rejections < 1)
    throw std::invalid_argument("FinderConfig: counts must be positive");
  if (cfg.n0 < 2)
    throw std::invalid_argument("FinderConfig: terminal dimension must be >= 2");
}

void check_oracle_frame(const MembershipOracle& oracle,
                        const SubspaceFrame& frame, const char* where) {
  if (oracle.n < 2 || !oracle.predicate)
    throw std::invalid_argument(std::string(where) + ": malformed oracle");
  if (frame.ambient_n != oracle.n || frame.basis.rows() != oracle.n ||
      frame.basis.cols() < 1)
    throw std::invalid_argument(std::string(where) +
                                ": frame does not match oracle dimension");
}

// Uniform direction in the current subspace.
Eigen::VectorXd sample_subsphere(const Eigen::MatrixXd& basis, Engine& rng) {
  const int k = static_cast<int>(basis.cols());
  for (;;) {
    Eigen::VectorXd v = basis * gaussian_vector(k, rng);
    double norm = v.norm();
    if (norm > 1e-150) return v / norm;
  }
}

}  // namespace

SubspaceFrame make_full_frame(int n) {
  if (n < 2) throw std::invalid_argument("make_full_frame: need n >= 2");
  SubspaceFrame frame;
  frame.ambient_n = n;
  frame.basis = Eigen::MatrixXd::Identity(n, n);
  return frame;
}

double frame_residual(const SubspaceFrame& frame) {
  const int k = frame.subspace_dim();
  const int m = static_cast<int>(frame.chosen.size());
  Eigen::MatrixXd gram = frame.basis.transpose() * frame.basis;
  double worst = (gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff();
  for (int i = 0; i < m; ++i) {
    worst = std::max(worst, std::abs(frame.chosen[i].norm() - 1.0));
    for (int j = i + 1; j < m; ++j)
      worst = std::max(worst, std::abs(frame.chosen[i].dot(frame.chosen[j])));
    worst = std::max(
        worst, (frame.basis.transpose() * frame.chosen[i]).cwiseAbs().maxCoeff());
  }
  return worst;
}

SubspaceFrame descend_frame(const SubspaceFrame& frame,
                            const Eigen::VectorXd& x) {
  const int n = frame.ambient_n;
  const int k = frame.subspace_dim();
  if (k < 2)
    throw std::invalid_argument("descend_frame: subspace must have dimension >= 2");
  if (x.size() != n || std::abs(x.norm() - 1.0) > 1e-9 ||
      (x - frame.basis * (frame.basis.transpose() * x)).norm() > 1e-9)
    throw std::domain_error("descend_frame: x must be a unit vector of the subspace");

  // One Householder reflection in coefficient space maps x onto the first
  // basis column; the remaining columns span the complement. A thin QR pass
  // kills accumulated drift, with column signs pinned to diag(R) so the
  // result is a deterministic function of the inputs.
  Eigen::VectorXd c = frame.basis.transpose() * x;
  Eigen::VectorXd v = c;
  v(0) += (c(0) >= 0.0 ? 1.0 : -1.0) * c.norm();
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(k, k) -
                      (2.0 / v.squaredNorm()) * (v * v.transpose());
  Eigen::MatrixXd reduced = frame.basis * h.rightCols(k - 1);

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(reduced);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k - 1);
  for (int j = 0; j < k - 1; ++j)
    if (qr.matrixQR()(j, j) < 0.0) q.col(j) = -q.col(j);

  SubspaceFrame next;
  next.ambient_n = n;
  next.basis = std::move(q);
  next.chosen = frame.chosen;
  next.chosen.push_back(x);
  return next;
}

McEstimate slice_density(const MembershipOracle& oracle,
                         const Eigen::VectorXd& x, const SubspaceFrame& frame,
                         std::int64_t samples, std::uint64_t seed) {
  check_oracle_frame(oracle, frame, "slice_density");
  if (frame.subspace_dim() < 2)
    throw std::invalid_argument("slice_density: subspace must have dimension >= 2");
  if (samples < 1) throw std::invalid_argument("slice_density: need samples >= 1");
  if (x.size() != oracle.n || std::abs(x.norm() - 1.0) > 1e-9)
    throw std::domain_error("slice_density: x must be a unit vector of the oracle dimension");
  if ((x - frame.basis * (frame.basis.transpose() * x)).norm() > 1e-9)
    throw std::domain_error("slice_density: x lies outside the working subspace");
  if (!oracle.contains(x))
    throw std::domain_error("slice_density: x is not a member of the set");

  const Eigen::MatrixXd& basis = frame.basis;
  return run_mc(seed, samples, [&](Engine& rng) {
    for (;;) {
      Eigen::VectorXd v = basis * gaussian_vector(static_cast<int>(basis.cols()), rng);
      v -= v.dot(x) * x;
      double norm = v.norm();
      if (norm > 1e-150) return oracle.contains(v / norm) ? 1.0 : 0.0;
    }
  });
}

Candidate select_next(const MembershipOracle& oracle,
                      const SubspaceFrame& frame, const FinderConfig& cfg,
                      std::uint64_t level_seed) {
  check_config(cfg);
  check_oracle_frame(oracle, frame, "select_next");
  if (frame.subspace_dim() < cfg.n0 + 1)
    throw std::invalid_argument(
        "select_next: subspace dimension must exceed the terminal dimension");

  // Optional proof-mirroring filter: keep only candidates whose degree-2
  // zonal projection is non-positive.
  HarmonicSpectrum degree2;
  if (cfg.restrict_degree2) {
    if (!oracle.profile || oracle.axis.size() != oracle.n)
      throw std::invalid_argument(
          "select_next: degree-2 filter needs a zonal profile oracle");
    degree2 = funk_hecke_spectrum(*oracle.profile, 2);
  }
  auto admissible = [&](const Eigen::VectorXd& x) {
    if (!oracle.contains(x)) return false;
    if (!cfg.restrict_degree2) return true;
    double t = std::clamp(x.dot(oracle.axis), -1.0, 1.0);
    return projection_profile_value(degree2, 2, t) <= 1e-12;
  };

  Candidate best;
  for (int i = 0; i < cfg.candidates_per_level; ++i) {
    Engine rng = make_engine(level_seed, 2 * static_cast<std::uint64_t>(i));
    Eigen::VectorXd x;
    int misses = 0;
    for (;;) {
      x = sample_subsphere(frame.basis, rng);
      if (admissible(x)) break;
      if (++misses >= cfg.max_rejections)
        throw std::runtime_error("set too sparse in subspace");
    }
    McEstimate est =
        slice_density(oracle, x, frame, cfg.slice_samples,
                      mix_seed(level_seed, 2 * static_cast<std::uint64_t>(i) + 1));
    if (best.x.size() == 0 || est.mean > best.slice.mean)
      best = Candidate{std::move(x), est};
  }
  return best;
}

TerminalResult terminal_search(const MembershipOracle& oracle,
                               const SubspaceFrame& frame,
                               const FinderConfig& cfg, std::uint64_t seed) {
  check_config(cfg);
  check_oracle_frame(oracle, frame, "terminal_search");
  const int k = frame.subspace_dim();
  if (k != cfg.n0)
    throw std::invalid_argument(
        "terminal_search: subspace dimension must equal the terminal dimension");

  TerminalResult result;
  for (int trial = 0; trial < cfg.terminal_trials; ++trial) {
    Engine rng = make_engine(seed, static_cast<std::uint64_t>(trial));
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd g(k, k);
    for (int c = 0; c < k; ++c)
      for (int r = 0; r < k; ++r) g(r, c) = normal(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(k, k);
    for (int j = 0; j < k; ++j)
      if (qr.matrixQR()(j, j) < 0.0) q.col(j) = -q.col(j);

    std::vector<Eigen::VectorXd> vectors;
    vectors.reserve(k);
    for (int j = 0; j < k; ++j) {
      Eigen::VectorXd v = frame.basis * q.col(j);
      if (!oracle.raw(v)) {
        if (!(oracle.symmetrize && oracle.raw(-v))) break;
        v = -v;
      }
      vectors.push_back(std::move(v));
    }
    if (static_cast<int>(vectors.size()) == k) {
      result.success = true;
      result.vectors = std::move(vectors);
      result.trials_used = trial + 1;
      return result;
    }
  }
  result.trials_used = cfg.terminal_trials;
  return result;
}

FrameSearchReport find_orthogonal_frame(const MembershipOracle& oracle,
                                        const FinderConfig& cfg) {
  check_config(cfg);
  if (oracle.n < 2 || !oracle.predicate)
    throw std::invalid_argument("find_orthogonal_frame: malformed oracle");
  if (oracle.n < cfg.n0)
    throw std::invalid_argument(
        "find_orthogonal_frame: terminal dimension exceeds the ambient dimension");

  MembershipOracle working = oracle;
  working.symmetrize = oracle.symmetrize || cfg.symmetrize;

  FrameSearchReport report;
  SubspaceFrame frame = make_full_frame(oracle.n);
  const int levels = oracle.n - cfg.n0;
  for (int level = 0; level < levels; ++level) {
    Candidate picked;
    try {
      picked = select_next(working, frame, cfg,
                           mix_seed(cfg.seed, 1 + static_cast<std::uint64_t>(level)));
    } catch (const std::runtime_error& e) {
      report.level_reached = level;
      report.message = e.what();
      return report;
    }
    report.levels.push_back(
        LevelReport{level, frame.subspace_dim(), picked.slice});
    frame = descend_frame(frame, picked.x);
    report.level_reached = level + 1;
  }

  TerminalResult terminal =
      terminal_search(working, frame, cfg, mix_seed(cfg.seed, 0x7465726d));
  report.terminal_trials_used = terminal.trials_used;
  if (!terminal.success) {
    report.message = "terminal search exhausted its trials";
    return report;
  }

  std::vector<Eigen::VectorXd> vectors = std::move(frame.chosen);
  for (auto& v : vectors) {
    if (oracle.raw(v)) continue;
    if (working.symmetrize && oracle.raw(-v)) {
      v = -v;
      continue;
    }
    report.message = "selected point lost membership certification";
    return report;
  }
  vectors.insert(vectors.end(), terminal.vectors.begin(),
                 terminal.vectors.end());

  FrameCheck check = verify_frame(oracle, vectors);
  if (!check.ok()) {
    report.message = "assembled frame failed independent verification";
    return report;
  }
  report.success = true;
  report.frame.vectors = std::move(vectors);
  return report;
}

FrameCheck verify_frame(const MembershipOracle& oracle,
                        const std::vector<Eigen::VectorXd>& vectors) {
  FrameCheck check;
  if (vectors.empty()) return check;
  check.members = true;
  for (const auto& v : vectors) {
    if (v.size() != oracle.n) return FrameCheck{};
    check.max_norm_err = std::max(check.max_norm_err, std::abs(v.norm() - 1.0));
    if (!oracle.raw(v)) check.members = false;
  }
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = i + 1; j < vectors.size(); ++j)
      check.max_cross =
          std::max(check.max_cross, std::abs(vectors[i].dot(vectors[j])));
  check.orthogonal = check.max_cross <= 1e-9;
  check.unit = check.max_norm_err <= 1e-12;
  return check;
}

}  // namespace sphere
