#include "sphere/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sphere {

namespace {

// Gauss rule for the weight (1 - t^2)^mu on [-1, 1] with prescribed total
// mass: eigenvalues of the symmetric tridiagonal Jacobi matrix are the
// nodes, squared first eigenvector components give the weights.
void golub_welsch(int order, double mu, double mass,
                  std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(order, 0.0);
  weights.assign(order, 0.0);
  if (order == 1) {
    weights[0] = mass;
    return;
  }

  const double ab = 2.0 * mu;
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
  Eigen::VectorXd sub(order - 1);
  sub(0) = std::sqrt(4.0 * (1.0 + mu) * (1.0 + mu) /
                     ((ab + 3.0) * (ab + 2.0) * (ab + 2.0)));
  for (int i = 2; i < order; ++i) {
    const double abi = 2.0 * i + ab;
    sub(i - 1) = std::sqrt(4.0 * i * (i + mu) * (i + mu) * (i + ab) /
                           ((abi * abi - 1.0) * abi * abi));
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("make_quadrature: tridiagonal eigensolve failed");

  for (int i = 0; i < order; ++i) {
    nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    weights[i] = mass * v0 * v0;
  }
  // The weight is even, so enforce the exact +/- symmetry the eigensolver
  // only approximates.
  for (int i = 0, j = order - 1; i < j; ++i, --j) {
    const double t = 0.5 * (nodes[j] - nodes[i]);
    nodes[i] = -t;
    nodes[j] = t;
    const double w = 0.5 * (weights[i] + weights[j]);
    weights[i] = w;
    weights[j] = w;
  }
  if (order % 2 == 1) nodes[order / 2] = 0.0;
}

struct PanelRule {
  std::vector<double> nodes, weights;
  PanelRule() { golub_welsch(32, 0.0, 2.0, nodes, weights); }
};

const PanelRule& panel_rule() {
  static const PanelRule rule;
  return rule;
}

double panel_width(int n, int degree_hint) {
  const double pi = std::acos(-1.0);
  double h = pi / 8.0;
  if (degree_hint > 1) h = std::min(h, 8.0 / degree_hint);
  h = std::min(h, 4.0 / std::sqrt(static_cast<double>(n)));
  return h;
}

}  // namespace

QuadratureRule make_quadrature(int n, int order) {
  if (n < 2) throw std::domain_error("make_quadrature: dimension n must be >= 2");
  if (order < 1) throw std::domain_error("make_quadrature: order must be >= 1");
  QuadratureRule rule;
  rule.n = n;
  rule.order = order;
  golub_welsch(order, 0.5 * (n - 3.0), 1.0, rule.nodes, rule.weights);
  return rule;
}

double log_marginal_const(int n) {
  if (n < 2) throw std::domain_error("log_marginal_const: dimension n must be >= 2");
  return std::lgamma(0.5 * n) - std::lgamma(0.5 * (n - 1.0)) -
         0.5 * std::log(std::acos(-1.0));
}

double marginal_density(int n, double t) {
  if (n < 2) throw std::domain_error("marginal_density: dimension n must be >= 2");
  if (!(t >= -1.0 && t <= 1.0)) return 0.0;
  const double e = 0.5 * (n - 3.0);
  const double u = (1.0 - t) * (1.0 + t);
  if (u == 0.0) {
    if (e > 0.0) return 0.0;
    if (e == 0.0) return std::exp(log_marginal_const(n));
    return std::numeric_limits<double>::infinity();
  }
  return std::exp(log_marginal_const(n) + e * std::log(u));
}

void foreach_marginal_segment_node(
    int n, double a, double b, int degree_hint,
    const std::function<void(double, double)>& visit) {
  if (n < 2)
    throw std::domain_error("foreach_marginal_segment_node: dimension n must be >= 2");
  if (!(a <= b))
    throw std::domain_error("foreach_marginal_segment_node: need a <= b");
  a = std::max(a, -1.0);
  b = std::min(b, 1.0);
  if (a >= b) return;

  const double log_c = log_marginal_const(n);
  // Substituting t = cos(theta) turns the integral into
  //   int f(cos theta) c_n sin(theta)^{n-2} dtheta
  // whose integrand is smooth up to the boundary for every n >= 2.
  const double theta_lo = std::acos(b);
  const double theta_hi = std::acos(a);
  const double h = panel_width(n, degree_hint);
  const int panels =
      std::max(1, static_cast<int>(std::ceil((theta_hi - theta_lo) / h)));
  const PanelRule& gl = panel_rule();

  for (int p = 0; p < panels; ++p) {
    const double lo = theta_lo + (theta_hi - theta_lo) * p / panels;
    const double hi = theta_lo + (theta_hi - theta_lo) * (p + 1) / panels;
    const double mid = 0.5 * (lo + hi);
    const double halfw = 0.5 * (hi - lo);
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
      const double theta = mid + halfw * gl.nodes[k];
      const double s = std::sin(theta);
      double w;
      if (n == 2) {
        w = std::exp(log_c);
      } else if (s <= 0.0) {
        w = 0.0;
      } else {
        w = std::exp(log_c + (n - 2.0) * std::log(s));
      }
      visit(std::cos(theta), halfw * gl.weights[k] * w);
    }
  }
}

void foreach_marginal_node(int n, int degree_hint,
                           const std::function<void(double, double)>& visit) {
  foreach_marginal_segment_node(n, -1.0, 1.0, degree_hint, visit);
}

double integrate_marginal_segment(int n, double a, double b,
                                  const std::function<double(double)>& f,
                                  int degree_hint) {
  double sum = 0.0;
  foreach_marginal_segment_node(n, a, b, degree_hint,
                                [&](double t, double w) { sum += w * f(t); });
  return sum;
}

double integrate_marginal(int n, const std::function<double(double)>& f,
                          int degree_hint) {
  return integrate_marginal_segment(n, -1.0, 1.0, f, degree_hint);
}

double marginal_mass(int n, double a, double b) {
  return integrate_marginal_segment(n, a, b, [](double) { return 1.0; }, 1);
}

}  // namespace sphere
