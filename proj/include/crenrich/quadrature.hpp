#pragma once

#include <functional>

#include <Eigen/Dense>

#include "crenrich/mesh.hpp"
#include "crenrich/specfun.hpp"

namespace crenrich
{

/// Gauss rule on (0,1) for the weight v^exp_left * (1-v)^exp_right.
struct QuadRule1D
{
  Eigen::VectorXd nodes;   ///< strictly increasing, inside (0,1)
  Eigen::VectorXd weights; ///< positive; sum = B(exp_left+1, exp_right+1)
  int exactness_degree;    ///< 2n - 1
};

/// n-point Gauss-Jacobi rule via Golub-Welsch (symmetric tridiagonal
/// eigensolve).  Requires n >= 1 and exponents > -1.
QuadRule1D gauss_jacobi_01(int n, double exp_left, double exp_right);

/// The two edge-moment kernels of the enriched elements, as functions of the
/// edge parameter t in (0,1) with u = 2t - 1:
///   Quadratic: w(t) * (2(a+b+1)u^2 - (2b+1))            [even in u]
///   Cubic:     w(t) * (2(a+b+2)u^2 - (2b+3)) * u        [odd in u]
/// where w(t) = t^(a-1/2) (1-t)^(a-1/2) |u|^(2b) and (a, b) = (alpha, beta).
enum class EdgeKernel
{
  Quadratic,
  Cubic
};

/// Precomputed rule for integrating g against one edge kernel.  The symmetry
/// of the kernel about t = 1/2 is folded into the substitution v = u^2, which
/// removes the |u|^(2b) singularity exactly:
///   Quadratic: sum_i w_i * (g(t+_i) + g(t-_i))
///   Cubic:     sum_i w_i * (g(t+_i) - g(t-_i))
/// with t+- = (1 +- sqrt(v_i)) / 2 and Gauss-Jacobi nodes v_i.  Exact whenever
/// the even (resp. odd) part of g(about t = 1/2) is polynomial of degree
/// <= 2*(2n-1) in t.
struct EdgeFunctionalRule
{
  EdgeKernel kernel;
  Eigen::VectorXd t_plus;
  Eigen::VectorXd t_minus;
  Eigen::VectorXd w;

  double apply(const std::function<double(double)>& g) const;
};

EdgeFunctionalRule make_edge_functional_rule(const ElementParams& params,
                                             EdgeKernel kernel, int n);

/// One-shot convenience wrapper around make_edge_functional_rule + apply.
double weighted_edge_integral(const ElementParams& params, EdgeKernel kernel,
                              const std::function<double(double)>& g,
                              int n = 24);

/// weighted_edge_integral together with a node-doubling error estimate
/// |I_2n - I_n|; the returned value is the 2n-node result.
struct CheckedIntegral
{
  double value;
  double error_estimate;
};
CheckedIntegral weighted_edge_integral_checked(
    const ElementParams& params, EdgeKernel kernel,
    const std::function<double(double)>& g, int n = 24);

/// Symmetric quadrature rule on the reference triangle in barycentric form.
struct QuadRule2D
{
  Eigen::Matrix<double, Eigen::Dynamic, 3> nodes; ///< rows sum to 1, all >= 0
  Eigen::VectorXd weights;                        ///< sum to 1 (area-normalized)
  int exactness_degree;
};

/// Rule exact for polynomials of total degree <= degree, 1 <= degree <= 20.
/// Orbit tables are used where a rule with interior nodes and the stated
/// degree exists; the remaining degrees fall back to the next higher table or
/// to a rotation-symmetrized conical-product rule.  The returned
/// exactness_degree is >= the request.
QuadRule2D triangle_rule(int degree);

/// Integral of f over the physical triangle:
///   tri.area() * sum_i w_i * f(tri.point(nodes_i)).
double integrate_triangle(const QuadRule2D& rule, const TriangleGeom& tri,
                          const std::function<double(const Eigen::Vector2d&)>& f);

} // namespace crenrich
