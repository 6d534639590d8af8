#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "crenrich/mesh.hpp"
#include "crenrich/polynomial.hpp"
#include "crenrich/quadrature.hpp"
#include "crenrich/specfun.hpp"

namespace crenrich
{

using PlaneFn = std::function<double(const Eigen::Vector2d&)>;

/// CR: the classical nonconforming linear element (edge means only).
/// C2: CR enriched to quadratics with the weighted quadratic edge moments.
/// S3: CR enriched to cubics with quadratic + cubic edge moments and the
///     area integral.
enum class ElementKind
{
  CR,
  C2,
  S3
};

int dof_count(ElementKind kind);       // 3, 6, 10
std::string kind_tag(ElementKind kind); // "cr", "c2", "s3"
ElementKind parse_kind(const std::string& tag); // throws std::invalid_argument

/// Quadrature rules backing the DOF functionals, shareable across all
/// elements with the same parameters (building them involves eigensolves).
struct ElementQuadrature
{
  QuadRule1D edge_mean;           ///< Gauss-Legendre on (0,1), for I_j
  EdgeFunctionalRule quadratic;   ///< for F_j
  EdgeFunctionalRule cubic;       ///< for L_j
  QuadRule2D area;                ///< for the area integral J
  ElementQuadrature(const ElementParams& params, int edge_nodes = 24,
                    int area_degree = 8);
};

/// One element on one triangle.  Degrees of freedom, in the fixed order used
/// by dofs() and basis():
///   [I_0, I_1, I_2]                          CR  (3)
///   ... + [F_0, F_1, F_2]                    C2  (6)
///   ... + [L_0, L_1, L_2] + [J]              S3  (10)
/// where, along edge j (opposite vertex j, parametrized by t),
///   I_j(f) = integral_0^1 f dt                       (plain edge mean)
///   F_j(f) = quadratic kernel moment of f            (see EdgeKernel)
///   L_j(f) = cubic kernel moment of f
///   J(f)   = integral_T f.
/// The basis polynomials are the closed-form duals: dofs(basis(i)) = e_i.
class EnrichedElement
{
public:
  EnrichedElement(const TriangleGeom& tri, const ElementParams& params,
                  ElementKind kind,
                  std::shared_ptr<const ElementQuadrature> quad = nullptr);

  const TriangleGeom& tri() const { return tri_; }
  const ElementParams& params() const { return params_; }
  ElementKind kind() const { return kind_; }
  int dof_count() const { return static_cast<int>(basis_.size()); }

  double dof_edge_mean(int j, const PlaneFn& f) const;
  double dof_edge_quadratic(int j, const PlaneFn& f) const;
  double dof_edge_cubic(int j, const PlaneFn& f) const;
  double dof_area_integral(const PlaneFn& f) const;

  /// All DOFs of f, in the documented order.
  Eigen::VectorXd dofs(const PlaneFn& f) const;

  /// Exact DOFs of a local polynomial (edge restrictions and the area
  /// integral are evaluated in closed form, no quadrature).
  Eigen::VectorXd dofs(const BarycentricPoly& p) const;

  const BarycentricPoly& basis(int i) const;
  double eval_basis(int i, const Eigen::Vector2d& x) const;

  /// Interpolation operator: sum_i dof_i(f) * basis_i.  Reproduces local
  /// polynomials up to the element's degree (1, 2, 3) exactly.
  BarycentricPoly project(const PlaneFn& f) const;

  /// Evaluate a local polynomial at a physical point.
  double eval_local(const BarycentricPoly& p, const Eigen::Vector2d& x) const;

private:
  TriangleGeom tri_;
  ElementParams params_;
  ElementKind kind_;
  std::shared_ptr<const ElementQuadrature> quad_;
  std::vector<BarycentricPoly> basis_;
};

/// Diagnostic for the enrichment DOF/basis pairing on one triangle: the 3x3
/// matrix of the element's characteristic probe pair, its determinant, and
/// the analytically expected values.
///   CR: I_j(l_k)        -> (ones - I)/2,  det 1/4
///   C2: F_j(l_k^2)      -> K (ones - I),  det 2 K^3
///   S3: L_j(e_k)        -> G I,           det G^3
/// with e_1 = l2 l3^2, e_2 = l3 l1^2, e_3 = l1 l2^2 (1-based labels).
struct UnisolvenceReport
{
  Eigen::Matrix3d matrix;
  Eigen::Matrix3d expected;
  double determinant;
  double expected_determinant;
  double max_deviation; ///< max entrywise |matrix - expected|
};

UnisolvenceReport unisolvence_report(const EnrichedElement& element);

} // namespace crenrich
