#include "crenrich/quadrature.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace crenrich
{

//------------------------------------------------------------------------------
QuadRule1D gauss_jacobi_01(int n, double exp_left, double exp_right)
{
  if (n < 1) {
    throw std::invalid_argument("gauss_jacobi_01: need at least one node");
  }
  if (!(exp_left > -1.0) || !(exp_right > -1.0)) {
    throw std::domain_error("gauss_jacobi_01: exponents must exceed -1");
  }

  // Golub-Welsch on [-1,1] for (1-x)^A (1+x)^B with A = exp_right,
  // B = exp_left, then map x -> v = (1+x)/2.
  const double A = exp_right;
  const double B = exp_left;
  const double mu0 = beta_fn(exp_left + 1.0, exp_right + 1.0);

  Eigen::VectorXd diag(n), sub(std::max(n - 1, 0));
  diag[0] = (B - A) / (A + B + 2.0);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + A + B;
    diag[k] = (B * B - A * A) / (s * (s + 2.0));
  }
  if (n > 1) {
    sub[0] = std::sqrt(4.0 * (A + 1.0) * (B + 1.0) /
                       ((A + B + 2.0) * (A + B + 2.0) * (A + B + 3.0)));
  }
  for (int k = 2; k < n; ++k) {
    const double s = 2.0 * k + A + B;
    sub[k - 1] = std::sqrt(4.0 * k * (k + A) * (k + B) * (k + A + B) /
                           (s * s * (s * s - 1.0)));
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) {
    throw NumericalError("gauss_jacobi_01: tridiagonal eigensolve failed");
  }

  QuadRule1D rule;
  rule.nodes = (es.eigenvalues().array() + 1.0) / 2.0; // sorted increasing
  rule.weights = mu0 * es.eigenvectors().row(0).transpose().array().square();
  rule.exactness_degree = 2 * n - 1;
  return rule;
}

namespace
{

double kernel_poly(EdgeKernel kernel, const ElementParams& p, double v)
{
  // v = u^2 with u = 2t - 1.
  if (kernel == EdgeKernel::Quadratic) {
    return 2.0 * (p.alpha + p.beta + 1.0) * v - (2.0 * p.beta + 1.0);
  }
  return 2.0 * (p.alpha + p.beta + 2.0) * v - (2.0 * p.beta + 3.0);
}

} // namespace

//------------------------------------------------------------------------------
EdgeFunctionalRule make_edge_functional_rule(const ElementParams& params,
                                             EdgeKernel kernel, int n)
{
  // Folding t -> 1-t and substituting v = (2t-1)^2 turns the weighted kernel
  // moment into a Gauss-Jacobi integral in v:
  //   Quadratic: exponents (beta - 1/2, alpha - 1/2), factor p2(v)
  //   Cubic:     exponents (beta + 1/2, alpha - 1/2), factor q2(v)/sqrt(v),
  // where the odd fold (g(t+) - g(t-)) contributes the extra sqrt(v) that
  // keeps the integrand smooth.  Both carry the scale 2^(-2 alpha - 1).
  const bool odd = (kernel == EdgeKernel::Cubic);
  const QuadRule1D base =
      gauss_jacobi_01(n, params.beta + (odd ? 0.5 : -0.5), params.alpha - 0.5);

  const double scale = std::exp2(-2.0 * params.alpha - 1.0);
  EdgeFunctionalRule rule;
  rule.kernel = kernel;
  rule.t_plus.resize(n);
  rule.t_minus.resize(n);
  rule.w.resize(n);
  for (int i = 0; i < n; ++i) {
    const double v = base.nodes[i];
    const double u = std::sqrt(v);
    rule.t_plus[i] = 0.5 * (1.0 + u);
    rule.t_minus[i] = 0.5 * (1.0 - u);
    double wi = scale * base.weights[i] * kernel_poly(kernel, params, v);
    if (odd) {
      wi /= u;
    }
    rule.w[i] = wi;
  }
  return rule;
}

//------------------------------------------------------------------------------
double EdgeFunctionalRule::apply(const std::function<double(double)>& g) const
{
  const double sign = (kernel == EdgeKernel::Cubic) ? -1.0 : 1.0;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    sum += w[i] * (g(t_plus[i]) + sign * g(t_minus[i]));
  }
  return sum;
}

//------------------------------------------------------------------------------
double weighted_edge_integral(const ElementParams& params, EdgeKernel kernel,
                              const std::function<double(double)>& g, int n)
{
  return make_edge_functional_rule(params, kernel, n).apply(g);
}

//------------------------------------------------------------------------------
CheckedIntegral weighted_edge_integral_checked(
    const ElementParams& params, EdgeKernel kernel,
    const std::function<double(double)>& g, int n)
{
  const double coarse = weighted_edge_integral(params, kernel, g, n);
  const double fine = weighted_edge_integral(params, kernel, g, 2 * n);
  return {fine, std::abs(fine - coarse)};
}

//------------------------------------------------------------------------------
double integrate_triangle(const QuadRule2D& rule, const TriangleGeom& tri,
                          const std::function<double(const Eigen::Vector2d&)>& f)
{
  double sum = 0.0;
  for (Eigen::Index i = 0; i < rule.weights.size(); ++i) {
    sum += rule.weights[i] * f(tri.point(rule.nodes.row(i).transpose()));
  }
  return tri.area() * sum;
}

} // namespace crenrich
