#pragma once

// Normalized Gegenbauer (ultraspherical) polynomials P_{n,d} and the
// dimensions of the spaces of degree-d spherical harmonics in n variables.
//
// P_{n,d} is the degree-d member of the orthogonal family for the weight
// (1 - t^2)^{(n-3)/2} on [-1, 1], normalized so that P_{n,d}(1) = 1. It is
// the eigenvalue function of the fixed-scalar-product averaging operator on
// degree-d harmonics.

#include <cstdint>
#include <span>
#include <vector>

namespace sphere {

// Evaluates P_{n,d}(t) by the three-term recurrence
//   P_{n,0} = 1,  P_{n,1} = t,
//   P_{n,d}(t) = [(2d+n-4) t P_{n,d-1}(t) - (d-1) P_{n,d-2}(t)] / (d+n-3).
// Requires n >= 2, d >= 0 and |t| <= 1; throws std::domain_error otherwise.
double gegenbauer_eval(int n, int d, double t);

// Fills out[k] = P_{n,k}(t) for k = 0..out.size()-1 in one recurrence pass.
void gegenbauer_eval_all(int n, double t, std::span<double> out);
std::vector<double> gegenbauer_eval_all(int n, int d_max, double t);

// Evaluates P_{n,d}(t) by direct summation of the classical explicit
// alternating-sum formula, with all Gamma ratios in log space. Limited to
// d <= 30 where the sum is numerically safe; independent of the recurrence
// and used as its validation oracle. Accepts any finite t (polynomial);
// throws std::overflow_error if an intermediate term leaves double range.
double gegenbauer_eval_explicit(int n, int d, double t);

// P_{n,d}(0), exact via P_{n,d}(0) = -(d-1)/(n-3+d) P_{n,d-2}(0).
// Zero for odd d.
double gegenbauer_zero(int n, int d);

// dim H_{n,d} = C(n+d-1, n-1) - C(n+d-3, n-1), exact integer arithmetic.
// Throws std::overflow_error when the value exceeds the int64 range.
std::int64_t dim_harmonic(int n, int d);

// dim H_{n,d} as a double: exact when it fits an int64, log-gamma otherwise.
double dim_harmonic_real(int n, int d);

}  // namespace sphere
