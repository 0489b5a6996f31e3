#include "sphere/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <utility>

namespace sphere {

MembershipOracle zonal_oracle(const ZonalProfile& profile,
                              Eigen::VectorXd axis, bool symmetrize) {
  if (axis.size() != profile.n)
    throw std::invalid_argument("zonal_oracle: axis dimension mismatch");
  if (std::abs(axis.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("zonal_oracle: axis must be a unit vector");

  MembershipOracle oracle;
  oracle.n = profile.n;
  oracle.symmetrize = symmetrize;
  oracle.profile = std::make_shared<ZonalProfile>(profile);
  oracle.axis = std::move(axis);
  auto held = oracle.profile;
  Eigen::VectorXd ax = oracle.axis;
  oracle.predicate = [held, ax](const Eigen::VectorXd& x) {
    const double t = std::clamp(ax.dot(x), -1.0, 1.0);
    return (*held)(t) > 0.5;
  };
  return oracle;
}

MembershipOracle zonal_oracle(const ZonalProfile& profile, bool symmetrize) {
  Eigen::VectorXd axis = Eigen::VectorXd::Zero(profile.n);
  axis(0) = 1.0;
  return zonal_oracle(profile, std::move(axis), symmetrize);
}

MembershipOracle full_sphere_oracle(int n) {
  if (n < 1) throw std::domain_error("full_sphere_oracle: n must be >= 1");
  MembershipOracle oracle;
  oracle.n = n;
  oracle.symmetrize = false;
  if (n >= 2) {
    oracle.profile = std::make_shared<ZonalProfile>(full_profile(n));
    oracle.axis = Eigen::VectorXd::Zero(n);
    oracle.axis(0) = 1.0;
  }
  oracle.predicate = [](const Eigen::VectorXd&) { return true; };
  return oracle;
}

MembershipOracle named_set_oracle(const std::string& name, int n,
                                  std::optional<double> param,
                                  bool symmetrize) {
  if (name == "full") return full_sphere_oracle(n);
  return zonal_oracle(make_named_profile(name, n, param), symmetrize);
}

}  // namespace sphere
