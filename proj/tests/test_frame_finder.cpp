#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sphere/frame_finder.hpp>
#include <sphere/oracles.hpp>
#include <sphere/quadrature.hpp>
#include <sphere/zonal.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <vector>

using namespace sphere;

namespace {

Eigen::VectorXd unit_axis(int n, int i) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  e(i) = 1.0;
  return e;
}

bool bitwise_equal(const std::vector<Eigen::VectorXd>& a,
                   const std::vector<Eigen::VectorXd>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].size() != b[i].size() || (a[i].array() != b[i].array()).any())
      return false;
  return true;
}

}  // namespace

TEST_CASE("frame bookkeeping stays orthonormal through descents") {
  auto frame = make_full_frame(8);
  CHECK(frame.subspace_dim() == 8);
  CHECK(frame_residual(frame) == 0.0);

  // Descend along deterministic, non-axis-aligned directions.
  for (int step = 0; step < 4; ++step) {
    int k = frame.subspace_dim();
    Eigen::VectorXd coeff(k);
    for (int i = 0; i < k; ++i) coeff(i) = std::cos(1.0 + step + i);
    Eigen::VectorXd x = frame.basis * coeff;
    x.normalize();
    frame = descend_frame(frame, x);
    CHECK(frame.subspace_dim() == 7 - step);
    CHECK(frame.chosen.size() == static_cast<std::size_t>(step + 1));
    CHECK(frame_residual(frame) <= 1e-12);
  }

  // Descending along a vector outside the subspace is rejected.
  CHECK_THROWS_AS(descend_frame(frame, unit_axis(8, 0) * 0.5), std::domain_error);
  Eigen::VectorXd outside = frame.chosen.front();
  CHECK_THROWS_AS(descend_frame(frame, outside), std::domain_error);
}

TEST_CASE("slice of the full sphere has density one exactly") {
  auto oracle = full_sphere_oracle(6);
  auto frame = make_full_frame(6);
  auto est = slice_density(oracle, unit_axis(6, 2), frame, 4000, 7);
  CHECK(est.mean == 1.0);
  CHECK(est.std_err == 0.0);
  CHECK(est.samples == 4000);
}

TEST_CASE("slice of a band through an equatorial point is a lower band") {
  // Slicing {|x1| <= tau} on S^4 by the hyperplane orthogonal to e2 leaves
  // the same profile one dimension down; the 1-D integral pipeline supplies
  // the expected density.
  double tau = 1.0 / std::sqrt(5.0);
  auto oracle = zonal_oracle(band_profile(5, tau));
  auto frame = make_full_frame(5);
  auto est = slice_density(oracle, unit_axis(5, 1), frame, 60000, 11);
  double expected = density(band_profile(4, tau));
  CHECK(std::abs(est.mean - expected) <= 3.0 * est.std_err + 1e-12);
}

TEST_CASE("slice of a cap complement through the equator loses little") {
  int n = 8;
  double eps = 0.05;
  double tau = cap_threshold_for_measure(n, eps);
  auto oracle = zonal_oracle(cap_complement_profile(n, eps));
  auto frame = make_full_frame(n);
  auto est = slice_density(oracle, unit_axis(n, 3), frame, 60000, 13);
  // The slice is the complement of the same-threshold cap one dimension
  // down, whose measure has a closed form.
  double expected = 1.0 - marginal_mass(n - 1, tau, 1.0);
  CHECK(std::abs(est.mean - expected) <= 3.0 * est.std_err + 1e-12);
  CHECK(est.mean >= 1.0 - 2.0 * eps);
}

TEST_CASE("slice density preconditions") {
  auto oracle = zonal_oracle(cap_complement_profile(5, 0.05));
  auto frame = make_full_frame(5);
  CHECK_THROWS_AS(slice_density(oracle, 0.9 * unit_axis(5, 1), frame, 100, 1),
                  std::domain_error);
  // e1 sits inside the excluded cap.
  CHECK_THROWS_AS(slice_density(oracle, unit_axis(5, 0), frame, 100, 1),
                  std::domain_error);
  // After a descent, the removed direction leaves the subspace.
  auto lower = descend_frame(frame, unit_axis(5, 1));
  CHECK_THROWS_AS(slice_density(oracle, unit_axis(5, 1), lower, 100, 1),
                  std::domain_error);
  CHECK(slice_density(oracle, unit_axis(5, 2), lower, 100, 1).samples == 100);
}

TEST_CASE("select_next on the full sphere scores one") {
  auto oracle = full_sphere_oracle(7);
  auto frame = make_full_frame(7);
  FinderConfig cfg;
  cfg.candidates_per_level = 4;
  cfg.slice_samples = 500;
  auto picked = select_next(oracle, frame, cfg, 21);
  CHECK(picked.slice.mean == 1.0);
  CHECK(std::abs(picked.x.norm() - 1.0) <= 1e-12);
}

TEST_CASE("select_next is an argmax over index-seeded candidates") {
  // Candidate substreams are indexed, so widening the candidate pool keeps
  // earlier candidates fixed and the best score is monotone in the pool.
  auto oracle = zonal_oracle(band_profile(8, 1.0 / std::sqrt(8.0)), true);
  auto frame = make_full_frame(8);
  FinderConfig cfg;
  cfg.slice_samples = 800;
  double prev = -1.0;
  for (int m : {1, 2, 4, 8}) {
    cfg.candidates_per_level = m;
    auto picked = select_next(oracle, frame, cfg, 33);
    CHECK(picked.slice.mean >= prev);
    prev = picked.slice.mean;
  }
}

TEST_CASE("select_next keeps cap-complement slices dense across seeds") {
  int n = 8;
  double eps = 0.05;
  auto oracle = zonal_oracle(cap_complement_profile(n, eps));
  auto frame = make_full_frame(n);
  FinderConfig cfg;
  cfg.candidates_per_level = 12;
  cfg.slice_samples = 1500;
  int good = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto picked = select_next(oracle, frame, cfg, seed);
    if (picked.slice.mean >= 1.0 - 2.0 * eps) ++good;
  }
  CHECK(good >= 9);
}

TEST_CASE("select_next reports a too-sparse subspace") {
  auto oracle = zonal_oracle(double_cap_profile(6, 1.0 - 1e-9));
  auto frame = make_full_frame(6);
  FinderConfig cfg;
  cfg.max_rejections = 20000;
  CHECK_THROWS_WITH_AS(select_next(oracle, frame, cfg, 5),
                       "set too sparse in subspace", std::runtime_error);
}

TEST_CASE("select_next degree-2 filter restricts candidates") {
  int n = 8;
  auto profile = cap_complement_profile(n, 0.05);
  auto oracle = zonal_oracle(profile);
  auto frame = make_full_frame(n);
  FinderConfig cfg;
  cfg.candidates_per_level = 6;
  cfg.slice_samples = 400;
  cfg.restrict_degree2 = true;
  auto picked = select_next(oracle, frame, cfg, 17);
  auto spectrum = funk_hecke_spectrum(profile, 2);
  double t = picked.x.dot(oracle.axis);
  CHECK(projection_profile_value(spectrum, 2, t) <= 1e-12);
  CHECK(oracle.raw(picked.x));

  // The filter needs the 1-D pipeline; a bare predicate oracle cannot use it.
  MembershipOracle bare;
  bare.n = n;
  bare.predicate = [](const Eigen::VectorXd&) { return true; };
  CHECK_THROWS_AS(select_next(bare, frame, cfg, 17), std::invalid_argument);
}

TEST_CASE("select_next requires room above the terminal dimension") {
  auto oracle = full_sphere_oracle(4);
  auto frame = make_full_frame(4);
  FinderConfig cfg;
  CHECK_THROWS_AS(select_next(oracle, frame, cfg, 1), std::invalid_argument);
}

TEST_CASE("terminal search accepts the full sphere immediately") {
  auto oracle = full_sphere_oracle(4);
  auto frame = make_full_frame(4);
  FinderConfig cfg;
  auto result = terminal_search(oracle, frame, cfg, 3);
  CHECK(result.success);
  CHECK(result.trials_used == 1);
  CHECK(result.vectors.size() == 4);
  auto check = verify_frame(oracle, result.vectors);
  CHECK(check.ok());
}

TEST_CASE("terminal search succeeds fast when the defect is below 1/(2 n0)") {
  // Each trial vector is individually uniform, so a union bound gives
  // per-trial success probability at least 1 - n0 * eps >= 1/2.
  auto oracle = zonal_oracle(cap_complement_profile(4, 0.05));
  auto frame = make_full_frame(4);
  FinderConfig cfg;
  cfg.terminal_trials = 30;
  auto result = terminal_search(oracle, frame, cfg, 9);
  CHECK(result.success);
  CHECK(result.trials_used <= 30);
  CHECK(verify_frame(oracle, result.vectors).ok());
}

TEST_CASE("terminal search in a band-contained subspace returns members") {
  // The subspace spanned by e3, e4, e5 sits inside {x1 = 0}, so every draw
  // is a band member; sign flips are never needed.
  auto oracle = zonal_oracle(band_profile(5, 1.0 / std::sqrt(5.0)));
  SubspaceFrame frame;
  frame.ambient_n = 5;
  frame.basis = Eigen::MatrixXd::Zero(5, 3);
  frame.basis(2, 0) = frame.basis(3, 1) = frame.basis(4, 2) = 1.0;
  FinderConfig cfg;
  cfg.n0 = 3;
  auto result = terminal_search(oracle, frame, cfg, 29);
  CHECK(result.success);
  REQUIRE(result.vectors.size() == 3);
  for (const auto& v : result.vectors) {
    CHECK(std::abs(v(0)) <= 1e-12);
    CHECK(oracle.raw(v));
  }
  CHECK(verify_frame(oracle, result.vectors).ok());

  cfg.n0 = 4;
  CHECK_THROWS_AS(terminal_search(oracle, frame, cfg, 29), std::invalid_argument);
}

TEST_CASE("terminal search exhaustion is a result, not an exception") {
  auto oracle = zonal_oracle(cap_profile(4, 0.999));
  auto frame = make_full_frame(4);
  FinderConfig cfg;
  cfg.terminal_trials = 10;
  auto result = terminal_search(oracle, frame, cfg, 1);
  CHECK_FALSE(result.success);
  CHECK(result.trials_used == 10);
  CHECK(result.vectors.empty());
}

TEST_CASE("full-sphere search returns a complete orthogonal frame") {
  auto oracle = full_sphere_oracle(10);
  FinderConfig cfg;
  cfg.seed = 41;
  cfg.slice_samples = 300;
  cfg.candidates_per_level = 4;
  auto report = find_orthogonal_frame(oracle, cfg);
  REQUIRE(report.success);
  CHECK(report.frame.vectors.size() == 10);
  CHECK(report.level_reached == 6);
  CHECK(report.levels.size() == 6);
  CHECK(report.message.empty());
  auto check = verify_frame(oracle, report.frame.vectors);
  CHECK(check.ok());
  CHECK(check.max_cross <= 1e-9);
  CHECK(check.max_norm_err <= 1e-12);
}

TEST_CASE("band search finds frames and sign-corrects into the set") {
  // At width 1/sqrt(n) every n-frame must meet the band boundary exactly
  // (the axis budget sum_i <v_i,e1>^2 = 1 is tight), a measure-zero target;
  // widening by 3/2 leaves the feasible frames positive measure.
  auto oracle = zonal_oracle(band_profile(8, 1.5 / std::sqrt(8.0)));
  FinderConfig cfg;
  cfg.slice_samples = 800;
  cfg.candidates_per_level = 12;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    cfg.seed = seed;
    auto report = find_orthogonal_frame(oracle, cfg);
    REQUIRE(report.success);
    CHECK(verify_frame(oracle, report.frame.vectors).ok());
    for (const auto& lvl : report.levels) CHECK(lvl.slice.mean > 0.0);
  }
}

TEST_CASE("cap-complement search lands every vector inside the set") {
  auto oracle = zonal_oracle(cap_complement_profile(12, 0.05));
  FinderConfig cfg;
  cfg.seed = 5;
  cfg.slice_samples = 600;
  cfg.candidates_per_level = 8;
  auto report = find_orthogonal_frame(oracle, cfg);
  REQUIRE(report.success);
  CHECK(report.frame.vectors.size() == 12);
  // raw membership, not just membership up to sign
  CHECK(verify_frame(oracle, report.frame.vectors).ok());
}

TEST_CASE("search is a pure function of oracle, config, and seed") {
  auto oracle = zonal_oracle(band_profile(7, 1.5 / std::sqrt(7.0)));
  FinderConfig cfg;
  cfg.seed = 77;
  cfg.slice_samples = 500;
  cfg.candidates_per_level = 6;
  auto first = find_orthogonal_frame(oracle, cfg);
  auto second = find_orthogonal_frame(oracle, cfg);
  REQUIRE(first.success);
  REQUIRE(second.success);
  CHECK(bitwise_equal(first.frame.vectors, second.frame.vectors));
  REQUIRE(first.levels.size() == second.levels.size());
  for (std::size_t i = 0; i < first.levels.size(); ++i)
    CHECK(first.levels[i].slice.mean == second.levels[i].slice.mean);
}

TEST_CASE("search failure carries structured diagnostics") {
  // A hair-thin double cap empties out after the sparse-subspace budget.
  auto oracle = zonal_oracle(double_cap_profile(6, 1.0 - 1e-9));
  FinderConfig cfg;
  cfg.seed = 2;
  cfg.max_rejections = 20000;
  auto report = find_orthogonal_frame(oracle, cfg);
  CHECK_FALSE(report.success);
  CHECK(report.level_reached == 0);
  CHECK(report.levels.empty());
  CHECK(report.message == "set too sparse in subspace");
  CHECK(report.frame.vectors.empty());
}

TEST_CASE("cap oracle runs out of orthogonal room") {
  // Pairwise orthogonal members of {t >= tau} can use up at most 1/tau^2
  // of the axis budget, so a 9-dimensional search must fail somewhere.
  auto oracle = zonal_oracle(cap_profile(9, cap_threshold_for_measure(9, 0.15)));
  FinderConfig cfg;
  cfg.seed = 6;
  cfg.slice_samples = 400;
  cfg.candidates_per_level = 6;
  cfg.max_rejections = 20000;
  cfg.terminal_trials = 50;
  auto report = find_orthogonal_frame(oracle, cfg);
  CHECK_FALSE(report.success);
  CHECK_FALSE(report.message.empty());
  CHECK(report.levels.size() == static_cast<std::size_t>(report.level_reached));
}

TEST_CASE("slice averages over the set reproduce the pair operator at zero") {
  // Averaging slice densities over uniform members of A and scaling by the
  // set measure equals G_0(f, f), computed independently from the spectrum.
  int n = 5;
  auto profile = band_profile(n, 1.0 / std::sqrt(5.0));
  auto oracle = zonal_oracle(profile);
  auto frame = make_full_frame(n);
  double mass = density(profile);
  auto spectrum = funk_hecke_spectrum(profile, 30);
  auto expected = g_t_zonal(spectrum, spectrum, 0.0);

  Engine rng = make_engine(101, 0);
  const int draws = 48;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    Eigen::VectorXd x;
    do {
      x = sample_sphere(n, rng);
    } while (!oracle.contains(x));
    double slice =
        slice_density(oracle, x, frame, 2500, mix_seed(101, 1 + i)).mean;
    sum += slice;
    sum_sq += slice * slice;
  }
  double avg = sum / draws;
  double var = (sum_sq - draws * avg * avg) / (draws - 1);
  double se = std::sqrt(var / draws);
  CHECK(std::abs(mass * avg - expected.value) <=
        3.0 * mass * se + expected.tail_bound);
}

TEST_CASE("verify_frame flags each defect independently") {
  auto oracle = zonal_oracle(band_profile(4, 0.5));
  std::vector<Eigen::VectorXd> vecs{unit_axis(4, 1), unit_axis(4, 2)};
  auto good = verify_frame(oracle, vecs);
  CHECK(good.ok());

  auto bad_member = vecs;
  bad_member.push_back(unit_axis(4, 0));  // t = 1 is outside the band
  auto flagged = verify_frame(oracle, bad_member);
  CHECK(flagged.orthogonal);
  CHECK(flagged.unit);
  CHECK_FALSE(flagged.members);

  auto bad_norm = vecs;
  bad_norm[0] *= 1.0 + 1e-10;
  CHECK_FALSE(verify_frame(oracle, bad_norm).unit);

  auto bad_angle = vecs;
  bad_angle[1] = (unit_axis(4, 1) + 1e-4 * unit_axis(4, 3)).normalized();
  CHECK_FALSE(verify_frame(oracle, bad_angle).orthogonal);

  CHECK_FALSE(verify_frame(oracle, {}).ok());
}

TEST_CASE("finder configuration is validated") {
  auto oracle = full_sphere_oracle(6);
  FinderConfig cfg;
  cfg.n0 = 1;
  CHECK_THROWS_AS(find_orthogonal_frame(oracle, cfg), std::invalid_argument);
  cfg.n0 = 8;
  CHECK_THROWS_AS(find_orthogonal_frame(oracle, cfg), std::invalid_argument);
  cfg.n0 = 4;
  cfg.slice_samples = 0;
  CHECK_THROWS_AS(find_orthogonal_frame(oracle, cfg), std::invalid_argument);
}
