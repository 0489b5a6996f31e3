#pragma once

// Membership-oracle constructors: zonal profiles lifted to predicates on
// unit vectors, the full sphere, and the named-set registry.

#include "sphere/montecarlo.hpp"

#include <optional>
#include <string>

namespace sphere {

// Oracle for {x : g(<x, axis>) = 1}. The default axis is e1. With
// symmetrize the effective set is A u (-A). Keeps a copy of the profile so
// spectral consumers can reach the 1-D pipeline through oracle.profile.
MembershipOracle zonal_oracle(const ZonalProfile& profile,
                              bool symmetrize = false);
MembershipOracle zonal_oracle(const ZonalProfile& profile,
                              Eigen::VectorXd axis, bool symmetrize = false);

MembershipOracle full_sphere_oracle(int n);

// Named sets accepted: "band", "double_cap", "cap", "cap_complement",
// "full"; parameter semantics as in make_named_profile.
MembershipOracle named_set_oracle(const std::string& name, int n,
                                  std::optional<double> param = std::nullopt,
                                  bool symmetrize = false);

}  // namespace sphere
