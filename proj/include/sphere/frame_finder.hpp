#pragma once

// Recursive orthogonal-frame extraction from a dense membership oracle:
// greedily pick points of A whose orthogonal slices stay dense, descend into
// the orthogonal complement, and finish the last few dimensions by
// randomized frame search. Output frames are certified by an independent
// verifier; every randomized step is a pure function of (inputs, seed).

#include "sphere/montecarlo.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace sphere {

// Working state of the descent. `basis` columns span the current subspace;
// `chosen` holds the accepted points, each orthogonal to the current
// subspace and to one another.
struct SubspaceFrame {
  int ambient_n = 0;
  Eigen::MatrixXd basis;
  std::vector<Eigen::VectorXd> chosen;

  int subspace_dim() const { return static_cast<int>(basis.cols()); }
};

// Full-sphere starting state: basis = identity, nothing chosen.
SubspaceFrame make_full_frame(int n);

// Largest orthonormality defect over basis pairs, chosen pairs, and
// chosen-vs-basis inner products.
double frame_residual(const SubspaceFrame& frame);

// Frame after accepting x (a unit vector of the current subspace): x joins
// `chosen`, the basis shrinks to the orthogonal complement of x via one
// Householder reflection plus a thin-QR cleanup pass, deterministically.
SubspaceFrame descend_frame(const SubspaceFrame& frame,
                            const Eigen::VectorXd& x);

struct FinderConfig {
  int candidates_per_level = 16;
  int slice_samples = 1500;
  int n0 = 4;                   // terminal subspace dimension
  int terminal_trials = 200;
  std::uint64_t seed = 0;
  int max_rejections = 100000;  // consecutive misses before "too sparse"
  bool symmetrize = true;       // work with A u (-A), sign-correct on output
  bool restrict_degree2 = false;  // keep only candidates with f^{=2}(x) <= 0
};

// MC estimate of the density of A within (current subspace) ^ x-perp.
// Requires x unit, inside the subspace (projection residual <= 1e-9), and a
// member of A; violations throw std::domain_error.
McEstimate slice_density(const MembershipOracle& oracle,
                         const Eigen::VectorXd& x, const SubspaceFrame& frame,
                         std::int64_t samples, std::uint64_t seed);

struct Candidate {
  Eigen::VectorXd x;
  McEstimate slice;
};

// Draws cfg.candidates_per_level members of A in the current subsphere by
// rejection sampling, scores each by slice_density, and returns the argmax
// (ties keep the first drawn). Candidate i uses substreams derived from
// (level_seed, i), so a parallel scorer reproduces the sequential result.
// Throws std::runtime_error("set too sparse in subspace") after
// cfg.max_rejections consecutive misses.
Candidate select_next(const MembershipOracle& oracle,
                      const SubspaceFrame& frame, const FinderConfig& cfg,
                      std::uint64_t level_seed);

struct TerminalResult {
  bool success = false;
  std::vector<Eigen::VectorXd> vectors;  // n0 ambient vectors on success
  int trials_used = 0;
};

// Up to cfg.terminal_trials Haar-random orthonormal n0-frames in the current
// subspace (QR of a Gaussian matrix, sign-fixed); accepts the first whose
// members all lie in A, flipping individual signs first when the oracle is
// symmetrized. Exhaustion is a result, not an exception.
TerminalResult terminal_search(const MembershipOracle& oracle,
                               const SubspaceFrame& frame,
                               const FinderConfig& cfg, std::uint64_t seed);

struct OrthoFrame {
  std::vector<Eigen::VectorXd> vectors;
};

struct LevelReport {
  int level = 0;         // 0-based descent level
  int subspace_dim = 0;  // dimension the selection ran in
  McEstimate slice;      // slice density of the accepted point
};

struct FrameSearchReport {
  bool success = false;
  OrthoFrame frame;  // populated only on success
  int level_reached = 0;
  std::vector<LevelReport> levels;
  int terminal_trials_used = 0;
  std::string message;  // failure cause; empty on success
};

// n - n0 greedy levels followed by terminal search. Algorithmic failures
// (sparse subspace, exhausted trials) come back as a structured report with
// the level reached and the per-level density estimates; only malformed
// arguments throw.
FrameSearchReport find_orthogonal_frame(const MembershipOracle& oracle,
                                        const FinderConfig& cfg);

struct FrameCheck {
  bool orthogonal = false;  // pairwise |<v_i,v_j>| <= 1e-9
  bool unit = false;        // norms within 1e-12 of 1
  bool members = false;     // oracle.raw holds for every vector
  double max_cross = 0.0;
  double max_norm_err = 0.0;

  bool ok() const { return orthogonal && unit && members; }
};

// Independent certificate for a claimed frame; shares no code with the
// search path.
FrameCheck verify_frame(const MembershipOracle& oracle,
                        const std::vector<Eigen::VectorXd>& vectors);

}  // namespace sphere
