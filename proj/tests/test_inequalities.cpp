#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sphere/gegenbauer.hpp"
#include "sphere/inequalities.hpp"
#include "sphere/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

using namespace sphere;

TEST_CASE("level-d bound values") {
  double a = std::exp(-1.0);
  CHECK(level_d_bound({a, 1, 10}) ==
        doctest::Approx(100.0 * std::exp(-2.0)).epsilon(1e-13));
  CHECK(level_d_bound({0.3, 0, 10}) == doctest::Approx(0.09).epsilon(1e-14));
  // The bound exceeds the trivial bound alpha^2 whenever it applies.
  for (double alpha : {0.01, 0.2, 0.5}) {
    for (int d = 1; d <= static_cast<int>(std::log(1.0 / alpha)); ++d)
      CHECK(level_d_bound({alpha, d, 30}) >= alpha * alpha);
  }
}

TEST_CASE("level-d preconditions are named") {
  CHECK_THROWS_AS((void)level_d_bound({0.6, 1, 10}), std::domain_error);
  CHECK_THROWS_AS((void)level_d_bound({0.0, 0, 10}), std::domain_error);
  CHECK_THROWS_AS((void)level_d_bound({0.03125, 1, 4}), std::domain_error);
  CHECK_THROWS_AS((void)level_d_bound({0.3, 3, 10}), std::domain_error);
  CHECK_THROWS_AS((void)level_d_bound({0.3, -1, 10}), std::domain_error);
  try {
    (void)level_d_bound({0.3, 3, 10});
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("ln(1/alpha)") != std::string::npos);
  }
  try {
    (void)level_d_bound({0.03125, 1, 4});
  } catch (const std::domain_error& e) {
    CHECK(std::string(e.what()).find("2^-n") != std::string::npos);
  }
}

TEST_CASE("level-d check on sparse and dense profiles") {
  // Narrow band at n = 10: density about 0.25, below 1/2, no flip needed.
  auto band = band_profile(10, 0.1);
  for (int d : {0, 1}) {
    auto rep = check_level_d(band, d);
    CHECK(rep.applicable);
    CHECK(!rep.flipped);
    CHECK(rep.holds);
    CHECK(rep.measured <= rep.bound);
  }

  // Cap complement of measure 0.1 is dense; the complement is checked.
  auto cc = cap_complement_profile(20, 0.1);
  auto rep = check_level_d(cc, 2);
  CHECK(rep.applicable);
  CHECK(rep.flipped);
  CHECK(rep.alpha == doctest::Approx(0.1).epsilon(1e-10));
  CHECK(rep.holds);
  CHECK(rep.bound / rep.measured > 1.0);

  // Flipped d = 0: the complement's mean is alpha.
  auto rep0 = check_level_d(cc, 0);
  CHECK(rep0.applicable);
  CHECK(rep0.measured == doctest::Approx(0.01).epsilon(1e-8));
  CHECK(rep0.holds);

  auto na1 = check_level_d(full_profile(8), 1);
  CHECK(!na1.applicable);
  auto na2 = check_level_d(band, 5);  // 5 > ln(1/0.25)
  CHECK(!na2.applicable);
  CHECK(na2.reason.find("ln(1/alpha)") != std::string::npos);
}

TEST_CASE("flipped degree components match the direct complement") {
  // For d >= 1 the complement has the same degree-d norm, so the flipped
  // path must measure exactly what the explicit complement profile gives.
  int n = 12;
  double tau = cap_threshold_for_measure(n, 0.2);
  auto dense = cap_complement_profile(n, 0.2);     // {t <= tau}
  auto sparse = cap_profile(n, tau);               // {t >= tau}
  auto rep = check_level_d(dense, 1);
  auto s = funk_hecke_spectrum(sparse, 1);
  CHECK(rep.applicable);
  CHECK(rep.flipped);
  CHECK(rep.measured ==
        doctest::Approx(projection_inner_product(s, s, 1)).epsilon(1e-9));
}

TEST_CASE("sphere moment bound closed forms") {
  CHECK(sphere_moment_bound(10, 0, 4.0) == 1.0);
  CHECK(sphere_moment_bound(10, 2, 4.0) ==
        doctest::Approx(3.0 * std::exp(1.6)).epsilon(1e-13));
  CHECK(sphere_moment_bound(7, 3, 2.0) ==
        doctest::Approx(std::exp(18.0 / 7.0)).epsilon(1e-13));
  CHECK_THROWS_AS((void)sphere_moment_bound(10, 2, 1.5), std::domain_error);
}

TEST_CASE("norm conversion closed forms") {
  CHECK(norm_conversion_factor(5, 0, 3.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(norm_conversion_factor(2, 1, 2.0) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-13));
  for (int n : {2, 3, 10, 50})
    CHECK(norm_conversion_factor(n, 1, 2.0) ==
          doctest::Approx(1.0 / std::sqrt(static_cast<double>(n))).epsilon(1e-13));
  CHECK_THROWS_AS((void)norm_conversion_factor(5, 1, 0.5), std::domain_error);
}

TEST_CASE("conversion takes gaussian norms to sphere norms") {
  // Degree-d zonal solid harmonic: sphere L2 norm^2 is 1/dim; its Gaussian
  // L2 norm, estimated by MC, should match after conversion.
  for (int n : {4, 9}) {
    for (int d : {1, 2, 3}) {
      auto est = run_mc(500 + n + d, 60000, [&](Engine& eng) {
        std::normal_distribution<double> normal;
        Eigen::VectorXd g(n);
        for (int i = 0; i < n; ++i) g(i) = normal(eng);
        double v = zonal_harmonic_value(n, d, g);
        return v * v;
      });
      double factor = norm_conversion_factor(n, d, 2.0);
      double sphere_sq = 1.0 / dim_harmonic_real(n, d);
      // Delta-method error bar for sqrt, then through the factor.
      double se = factor * factor * est.std_err;
      CHECK(std::abs(factor * factor * est.mean - sphere_sq) <= 3.0 * se);
    }
  }
}

TEST_CASE("budget chain accounting") {
  // No loss constant: the budget stays at the starting density.
  auto flat = budget_chain({0.01, 50, 10, 0.0});
  CHECK(flat.final_density_lower_bound == doctest::Approx(0.99).epsilon(1e-14));
  for (const auto& s : flat.per_step) CHECK(s.loss == 0.0);
  CHECK(!flat.exhausted);

  // Healthy regime: n0 small enough that the threshold is reachable.
  auto ok = budget_chain({0.01, 100, 10, 1.0});
  CHECK(!ok.exhausted);
  CHECK(ok.final_density_lower_bound >= ok.threshold);
  CHECK(ok.per_step.size() == 90);
  CHECK(ok.per_step.front().k == 0);
  CHECK(ok.final_density_lower_bound ==
        doctest::Approx(ok.per_step.back().lower_bound).epsilon(1e-14));

  // Large-scale chain: losses sum to O(eps log^2(1/eps)/n0 + 1/n0^2).
  auto big = budget_chain({0.01, 1000000, 1000, 1.0});
  CHECK(big.final_density_lower_bound >= 1.0 - 2.0 * 0.01);
  // A thousand-dimensional terminal stage needs density 1 - 1/2000, which
  // even the starting density misses; the report must say so.
  CHECK(big.exhausted);
  CHECK(big.failing_step == -1);

  // Monotonicity in the loss constant.
  auto c1 = budget_chain({0.01, 200, 10, 1.0});
  auto c2 = budget_chain({0.01, 200, 10, 2.0});
  CHECK(c2.final_density_lower_bound <= c1.final_density_lower_bound);

  CHECK_THROWS_AS((void)budget_chain({0.2, 100, 10, 1.0}), std::domain_error);
  CHECK_THROWS_AS((void)budget_chain({0.2, 100, 10, 1.0, 0.1}), std::domain_error);
  CHECK_THROWS_AS((void)budget_chain({0.01, 100, 200, 1.0}), std::domain_error);
  CHECK_THROWS_AS((void)budget_chain({0.0, 100, 10, 1.0}), std::domain_error);

  // Wider eps0 admits larger epsilon.
  auto wide = budget_chain({0.2, 100, 2, 1.0, 0.5});
  CHECK(wide.final_density_lower_bound < 0.8);
}

TEST_CASE("zero-value decay sweep matches the cubic envelope") {
  for (int n = 2; n <= 500; n += (n < 20 ? 1 : 37)) {
    double envelope = 15.0 / (static_cast<double>(n) * n * n);
    double at6 = std::abs(gegenbauer_zero(n, 6));
    for (int d = 6; d <= 40; d += 2) {
      double v = std::abs(gegenbauer_zero(n, d));
      CHECK(v <= at6 + 1e-15);
      CHECK(v <= envelope + 1e-15);
    }
  }
}
