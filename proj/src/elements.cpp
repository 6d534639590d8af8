#include "crenrich/elements.hpp"

namespace crenrich
{

//------------------------------------------------------------------------------
int dof_count(ElementKind kind)
{
  switch (kind) {
  case ElementKind::CR:
    return 3;
  case ElementKind::C2:
    return 6;
  case ElementKind::S3:
    return 10;
  }
  throw std::invalid_argument("dof_count: unknown element kind");
}

//------------------------------------------------------------------------------
std::string kind_tag(ElementKind kind)
{
  switch (kind) {
  case ElementKind::CR:
    return "cr";
  case ElementKind::C2:
    return "c2";
  case ElementKind::S3:
    return "s3";
  }
  throw std::invalid_argument("kind_tag: unknown element kind");
}

//------------------------------------------------------------------------------
ElementKind parse_kind(const std::string& tag)
{
  if (tag == "cr" || tag == "CR") {
    return ElementKind::CR;
  }
  if (tag == "c2" || tag == "C2") {
    return ElementKind::C2;
  }
  if (tag == "s3" || tag == "S3") {
    return ElementKind::S3;
  }
  throw std::invalid_argument("parse_kind: unknown element kind '" + tag +
                              "' (expected cr, c2 or s3)");
}

//------------------------------------------------------------------------------
ElementQuadrature::ElementQuadrature(const ElementParams& params,
                                     int edge_nodes, int area_degree)
    : edge_mean(gauss_jacobi_01(edge_nodes, 0.0, 0.0)),
      quadratic(
          make_edge_functional_rule(params, EdgeKernel::Quadratic, edge_nodes)),
      cubic(make_edge_functional_rule(params, EdgeKernel::Cubic, edge_nodes)),
      area(triangle_rule(area_degree))
{
}

namespace
{

BarycentricPoly bubble(double coeff)
{
  return BarycentricPoly::monomial(1, 1, 1, coeff);
}

// 1 - 2 l_i: the edge-mean (nonconforming linear) basis.
BarycentricPoly phi_linear(int i)
{
  BarycentricPoly p = BarycentricPoly::monomial(0, 0, 0, 1.0);
  int e[3] = {0, 0, 0};
  e[i] = 1;
  p.coeff(e[0], e[1], e[2]) = -2.0;
  return p;
}

// Quadratic partner: zero edge means, unit quadratic moment on edge i.
BarycentricPoly phi_quadratic(int i, double K)
{
  BarycentricPoly p = (-1.0 / (3.0 * K)) * phi_linear(i);
  for (int k = 0; k < 3; ++k) {
    int e[3] = {0, 0, 0};
    e[k] = 2;
    p.coeff(e[0], e[1], e[2]) += (k == i ? -1.0 : 1.0) / (2.0 * K);
  }
  return p;
}

// l_(i+1) * l_(i+2)^2: the probe annihilated by every L_j except L_i.
BarycentricPoly cubic_probe(int i)
{
  int e[3] = {0, 0, 0};
  e[(i + 1) % 3] = 1;
  e[(i + 2) % 3] = 2;
  return BarycentricPoly::monomial(e[0], e[1], e[2], 1.0);
}

std::vector<BarycentricPoly> build_basis(ElementKind kind,
                                         const ElementParams& params,
                                         double area)
{
  const double K = params.K;
  const double G = params.G;
  std::vector<BarycentricPoly> basis;
  basis.reserve(static_cast<std::size_t>(dof_count(kind)));

  switch (kind) {
  case ElementKind::CR:
    for (int i = 0; i < 3; ++i) {
      basis.push_back(phi_linear(i));
    }
    break;

  case ElementKind::C2:
    for (int i = 0; i < 3; ++i) {
      basis.push_back(phi_linear(i));
    }
    for (int i = 0; i < 3; ++i) {
      basis.push_back(phi_quadratic(i, K));
    }
    break;

  case ElementKind::S3:
    // Cubic corrections keep the paired DOFs at delta values while zeroing
    // the cubic moments and the area integral.
    for (int i = 0; i < 3; ++i) {
      basis.push_back(phi_linear(i) + bubble(-20.0));
    }
    for (int i = 0; i < 3; ++i) {
      basis.push_back(phi_quadratic(i, K) + bubble(5.0 / (3.0 * K)));
    }
    for (int i = 0; i < 3; ++i) {
      basis.push_back((-1.0 / (12.0 * G)) * phi_linear(i) +
                      (K / (2.0 * G)) * phi_quadratic(i, K) +
                      (1.0 / G) * cubic_probe(i) + bubble(1.0 / (2.0 * G)));
    }
    basis.push_back(bubble(60.0 / area));
    break;
  }
  return basis;
}

} // namespace

//------------------------------------------------------------------------------
EnrichedElement::EnrichedElement(const TriangleGeom& tri,
                                 const ElementParams& params, ElementKind kind,
                                 std::shared_ptr<const ElementQuadrature> quad)
    : tri_(tri), params_(params), kind_(kind), quad_(std::move(quad)),
      basis_(build_basis(kind, params, tri.area()))
{
  if (!quad_) {
    quad_ = std::make_shared<const ElementQuadrature>(params_);
  }
}

namespace
{

std::function<double(double)> edge_trace(const TriangleGeom& tri, int j,
                                         const PlaneFn& f)
{
  return [&tri, j, &f](double t) { return f(tri.edge_point(j, t)); };
}

} // namespace

//------------------------------------------------------------------------------
double EnrichedElement::dof_edge_mean(int j, const PlaneFn& f) const
{
  const auto& rule = quad_->edge_mean;
  double sum = 0.0;
  for (Eigen::Index q = 0; q < rule.nodes.size(); ++q) {
    sum += rule.weights[q] * f(tri_.edge_point(j, rule.nodes[q]));
  }
  return sum;
}

//------------------------------------------------------------------------------
double EnrichedElement::dof_edge_quadratic(int j, const PlaneFn& f) const
{
  return quad_->quadratic.apply(edge_trace(tri_, j, f));
}

//------------------------------------------------------------------------------
double EnrichedElement::dof_edge_cubic(int j, const PlaneFn& f) const
{
  return quad_->cubic.apply(edge_trace(tri_, j, f));
}

//------------------------------------------------------------------------------
double EnrichedElement::dof_area_integral(const PlaneFn& f) const
{
  return integrate_triangle(quad_->area, tri_, f);
}

//------------------------------------------------------------------------------
Eigen::VectorXd EnrichedElement::dofs(const PlaneFn& f) const
{
  Eigen::VectorXd d(dof_count());
  for (int j = 0; j < 3; ++j) {
    d[j] = dof_edge_mean(j, f);
  }
  if (kind_ != ElementKind::CR) {
    for (int j = 0; j < 3; ++j) {
      d[3 + j] = dof_edge_quadratic(j, f);
    }
  }
  if (kind_ == ElementKind::S3) {
    for (int j = 0; j < 3; ++j) {
      d[6 + j] = dof_edge_cubic(j, f);
    }
    d[9] = dof_area_integral(f);
  }
  return d;
}

//------------------------------------------------------------------------------
Eigen::VectorXd EnrichedElement::dofs(const BarycentricPoly& p) const
{
  // Exact moments of t^k on (0,1):
  //   edge mean:        1/(k+1)
  //   quadratic kernel: {0, 0, K, 3K/2}  (annihilates affine traces)
  //   cubic kernel:     {0, 0, 0, G}     (annihilates quadratic traces)
  const double K = params_.K;
  const double G = params_.G;
  const Eigen::Vector4d mean_m(1.0, 1.0 / 2.0, 1.0 / 3.0, 1.0 / 4.0);
  const Eigen::Vector4d quad_m(0.0, 0.0, K, 1.5 * K);
  const Eigen::Vector4d cubic_m(0.0, 0.0, 0.0, G);

  Eigen::VectorXd d(dof_count());
  for (int j = 0; j < 3; ++j) {
    const Eigen::Vector4d trace = p.edge_restriction(j);
    d[j] = mean_m.dot(trace);
    if (kind_ != ElementKind::CR) {
      d[3 + j] = quad_m.dot(trace);
    }
    if (kind_ == ElementKind::S3) {
      d[6 + j] = cubic_m.dot(trace);
    }
  }
  if (kind_ == ElementKind::S3) {
    d[9] = p.integral(tri_.area());
  }
  return d;
}

//------------------------------------------------------------------------------
const BarycentricPoly& EnrichedElement::basis(int i) const
{
  return basis_.at(static_cast<std::size_t>(i));
}

//------------------------------------------------------------------------------
double EnrichedElement::eval_basis(int i, const Eigen::Vector2d& x) const
{
  return basis(i).eval(tri_.barycentric(x));
}

//------------------------------------------------------------------------------
BarycentricPoly EnrichedElement::project(const PlaneFn& f) const
{
  const Eigen::VectorXd d = dofs(f);
  BarycentricPoly p;
  for (int i = 0; i < dof_count(); ++i) {
    p += d[i] * basis_[static_cast<std::size_t>(i)];
  }
  return p;
}

//------------------------------------------------------------------------------
double EnrichedElement::eval_local(const BarycentricPoly& p,
                                   const Eigen::Vector2d& x) const
{
  return p.eval(tri_.barycentric(x));
}

//------------------------------------------------------------------------------
UnisolvenceReport unisolvence_report(const EnrichedElement& element)
{
  const double K = element.params().K;
  const double G = element.params().G;

  UnisolvenceReport rep;
  for (int k = 0; k < 3; ++k) {
    // Probes are evaluated through the quadrature-backed functionals (not the
    // exact polynomial moments), so the report genuinely checks the numerics
    // against the analytic constants.
    BarycentricPoly probe;
    switch (element.kind()) {
    case ElementKind::CR: {
      int e[3] = {0, 0, 0};
      e[k] = 1;
      probe = BarycentricPoly::monomial(e[0], e[1], e[2], 1.0);
      break;
    }
    case ElementKind::C2: {
      int e[3] = {0, 0, 0};
      e[k] = 2;
      probe = BarycentricPoly::monomial(e[0], e[1], e[2], 1.0);
      break;
    }
    case ElementKind::S3:
      probe = cubic_probe(k);
      break;
    }
    const PlaneFn fn = [&element, probe](const Eigen::Vector2d& x) {
      return probe.eval(element.tri().barycentric(x));
    };
    for (int j = 0; j < 3; ++j) {
      switch (element.kind()) {
      case ElementKind::CR:
        rep.matrix(j, k) = element.dof_edge_mean(j, fn);
        rep.expected(j, k) = (j == k) ? 0.0 : 0.5;
        break;
      case ElementKind::C2:
        rep.matrix(j, k) = element.dof_edge_quadratic(j, fn);
        rep.expected(j, k) = (j == k) ? 0.0 : K;
        break;
      case ElementKind::S3:
        rep.matrix(j, k) = element.dof_edge_cubic(j, fn);
        rep.expected(j, k) = (j == k) ? G : 0.0;
        break;
      }
    }
  }
  rep.determinant = rep.matrix.determinant();
  rep.expected_determinant = rep.expected.determinant();
  rep.max_deviation = (rep.matrix - rep.expected).cwiseAbs().maxCoeff();
  return rep;
}

} // namespace crenrich
