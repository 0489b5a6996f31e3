#pragma once

// Quadrature for the scalar-product marginal of the uniform measure on the
// unit sphere in R^n. If x, y are independent uniform points then t = <x, y>
// has density p_n(t) = c_n (1 - t^2)^{(n-3)/2} on [-1, 1].

#include <functional>
#include <vector>

namespace sphere {

struct QuadratureRule {
  int n = 0;      // sphere dimension the rule targets
  int order = 0;  // node count; exact for polynomial degree <= 2*order - 1
  std::vector<double> nodes;
  std::vector<double> weights;  // weights include the density, sum to 1
};

// Gauss rule for the weight (1 - t^2)^{(n-3)/2} via Golub-Welsch on the
// ultraspherical Jacobi matrix, normalized to total mass 1. Exact for
// polynomial integrands of degree <= 2*order - 1.
// Requires n >= 2 and order >= 1.
QuadratureRule make_quadrature(int n, int order);

// log of the normalizing constant c_n = Gamma(n/2) / (Gamma((n-1)/2) sqrt(pi)).
double log_marginal_const(int n);

// p_n(t); 0 outside [-1, 1]. For n = 2 the value at |t| = 1 is +infinity.
double marginal_density(int n, double t);

// Integral of f against p_n over [a, b] by composite Gauss-Legendre in the
// angle theta = acos(t), which absorbs the endpoint singularity. degree_hint
// bounds the oscillation of f (e.g. the maximal polynomial degree present);
// higher hints shrink the panels.
double integrate_marginal_segment(int n, double a, double b,
                                  const std::function<double(double)>& f,
                                  int degree_hint = 16);
double integrate_marginal(int n, const std::function<double(double)>& f,
                          int degree_hint = 16);

// Mass of {a <= t <= b} under p_n.
double marginal_mass(int n, double a, double b);

// Visits (t_i, w_i) for the same composite rule; sum of w_i * f(t_i)
// reproduces the segment integral. Useful to integrate many integrands over
// one shared node set.
void foreach_marginal_segment_node(
    int n, double a, double b, int degree_hint,
    const std::function<void(double, double)>& visit);
void foreach_marginal_node(int n, int degree_hint,
                           const std::function<void(double, double)>& visit);

}  // namespace sphere
