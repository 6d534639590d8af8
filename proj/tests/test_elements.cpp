#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "crenrich/elements.hpp"
#include "test_support.hpp"

using namespace crenrich;

namespace
{

const std::vector<std::pair<double, double>>& param_set()
{
  static const std::vector<std::pair<double, double>> ps = {
      {0.5, 0.0}, {1.0, 1.0}, {2.0, 0.0},
      {0.5, 0.5}, {2.5, 0.5}, {0.9, -0.3}};
  return ps;
}

const std::vector<ElementKind>& all_kinds()
{
  static const std::vector<ElementKind> ks = {ElementKind::CR, ElementKind::C2,
                                              ElementKind::S3};
  return ks;
}

BarycentricPoly random_poly(std::mt19937_64& rng, int degree)
{
  BarycentricPoly p;
  for (int idx = 0; idx < BarycentricPoly::kCoeffCount; ++idx) {
    const auto& e = BarycentricPoly::exponents(idx);
    if (e[0] + e[1] + e[2] <= degree) {
      p.coeff(e[0], e[1], e[2]) = testsupport::uniform(rng, -2.0, 2.0);
    }
  }
  return p;
}

int polynomial_degree(ElementKind kind)
{
  switch (kind) {
    case ElementKind::CR: return 1;
    case ElementKind::C2: return 2;
    default: return 3;
  }
}

} // namespace

TEST_CASE("kind helpers")
{
  CHECK(dof_count(ElementKind::CR) == 3);
  CHECK(dof_count(ElementKind::C2) == 6);
  CHECK(dof_count(ElementKind::S3) == 10);
  CHECK(kind_tag(ElementKind::CR) == "cr");
  CHECK(kind_tag(ElementKind::C2) == "c2");
  CHECK(kind_tag(ElementKind::S3) == "s3");
  for (const ElementKind k : all_kinds()) {
    CHECK(parse_kind(kind_tag(k)) == k);
  }
  CHECK(parse_kind("S3") == ElementKind::S3);
  CHECK_THROWS_AS(parse_kind("p1"), std::invalid_argument);
}

TEST_CASE("basis and DOFs are dual: exact polynomial route")
{
  std::mt19937_64 rng(31);
  for (const auto& [alpha, beta] : param_set()) {
    const ElementParams params(alpha, beta);
    for (int rep = 0; rep < 5; ++rep) {
      const TriangleGeom tri = testsupport::random_triangle(rng);
      for (const ElementKind kind : all_kinds()) {
        const EnrichedElement el(tri, params, kind);
        const int n = el.dof_count();
        for (int i = 0; i < n; ++i) {
          const Eigen::VectorXd d = el.dofs(el.basis(i));
          for (int j = 0; j < n; ++j) {
            CHECK(std::abs(d[j] - (i == j ? 1.0 : 0.0)) <= 1e-11);
          }
        }
      }
    }
  }
}

TEST_CASE("basis and DOFs are dual: quadrature route")
{
  std::mt19937_64 rng(32);
  for (const auto& [alpha, beta] : param_set()) {
    const ElementParams params(alpha, beta);
    const auto quad = std::make_shared<const ElementQuadrature>(params);
    for (int rep = 0; rep < 3; ++rep) {
      const TriangleGeom tri = testsupport::random_triangle(rng);
      for (const ElementKind kind : all_kinds()) {
        const EnrichedElement el(tri, params, kind, quad);
        const int n = el.dof_count();
        for (int i = 0; i < n; ++i) {
          const BarycentricPoly& b = el.basis(i);
          const PlaneFn f = [&](const Eigen::Vector2d& x) {
            return b.eval(tri.barycentric(x));
          };
          const Eigen::VectorXd d = el.dofs(f);
          for (int j = 0; j < n; ++j) {
            CHECK(std::abs(d[j] - (i == j ? 1.0 : 0.0)) <= 1e-10);
          }
        }
      }
    }
  }
}

TEST_CASE("unisolvence reports match the closed forms")
{
  std::mt19937_64 rng(33);
  for (const auto& [alpha, beta] : param_set()) {
    const ElementParams params(alpha, beta);
    for (int rep = 0; rep < 3; ++rep) {
      const TriangleGeom tri = testsupport::random_triangle(rng);

      const UnisolvenceReport cr =
          unisolvence_report(EnrichedElement(tri, params, ElementKind::CR));
      CHECK(cr.max_deviation <= 1e-11);
      CHECK(cr.determinant == doctest::Approx(0.25).epsilon(1e-10));
      CHECK(cr.expected_determinant == doctest::Approx(0.25).epsilon(1e-15));

      const UnisolvenceReport c2 =
          unisolvence_report(EnrichedElement(tri, params, ElementKind::C2));
      CHECK(c2.max_deviation <= 1e-11);
      CHECK(c2.determinant ==
            doctest::Approx(2.0 * std::pow(params.K, 3)).epsilon(1e-9));
      for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
          CHECK(c2.expected(j, k) ==
                doctest::Approx(j == k ? 0.0 : params.K).epsilon(1e-15));
        }
      }

      const UnisolvenceReport s3 =
          unisolvence_report(EnrichedElement(tri, params, ElementKind::S3));
      CHECK(s3.max_deviation <= 1e-11);
      CHECK(s3.determinant ==
            doctest::Approx(std::pow(params.G, 3)).epsilon(1e-9));
    }
  }

  // Frozen numbers for the two reference parameter choices.
  const TriangleGeom tri({0.1, -0.2}, {1.3, 0.1}, {0.4, 1.1});
  {
    const ElementParams p(0.5, 0.0);
    const UnisolvenceReport r =
        unisolvence_report(EnrichedElement(tri, p, ElementKind::C2));
    CHECK(r.expected(0, 1) == doctest::Approx(1.0 / 15.0).epsilon(1e-14));
    CHECK(r.expected_determinant ==
          doctest::Approx(2.0 / 3375.0).epsilon(1e-13));
  }
  {
    const ElementParams p(1.0, 1.0);
    const double pi = 3.14159265358979323846;
    CHECK(p.K == doctest::Approx(3.0 * pi / 1024.0).epsilon(1e-13));
    CHECK(p.G == doctest::Approx(3.0 * pi / 4096.0).epsilon(1e-13));
    const UnisolvenceReport r =
        unisolvence_report(EnrichedElement(tri, p, ElementKind::S3));
    CHECK(r.expected(1, 1) ==
          doctest::Approx(3.0 * pi / 4096.0).epsilon(1e-13));
  }
}

TEST_CASE("projection reproduces polynomials of the element degree")
{
  std::mt19937_64 rng(34);
  for (const auto& [alpha, beta] : param_set()) {
    const ElementParams params(alpha, beta);
    const auto quad = std::make_shared<const ElementQuadrature>(params);
    for (int rep = 0; rep < 4; ++rep) {
      const TriangleGeom tri = testsupport::random_triangle(rng);
      for (const ElementKind kind : all_kinds()) {
        const EnrichedElement el(tri, params, kind, quad);
        const BarycentricPoly target =
            random_poly(rng, polynomial_degree(kind));
        const PlaneFn f = [&](const Eigen::Vector2d& x) {
          return target.eval(tri.barycentric(x));
        };
        const BarycentricPoly proj = el.project(f);
        double scale = 1.0;
        for (int s = 0; s < 20; ++s) {
          const Eigen::Vector2d x = testsupport::random_point_in(tri, rng);
          scale = std::max(scale, std::abs(target.eval(tri.barycentric(x))));
          CHECK(std::abs(el.eval_local(proj, x) -
                         target.eval(tri.barycentric(x))) <= 1e-10 * scale);
        }
      }
    }
  }
}

TEST_CASE("projection is idempotent")
{
  std::mt19937_64 rng(35);
  const ElementParams params(1.0, 1.0);
  const auto quad = std::make_shared<const ElementQuadrature>(params);
  const TriangleGeom tri = testsupport::random_triangle(rng);
  for (const ElementKind kind : all_kinds()) {
    const EnrichedElement el(tri, params, kind, quad);
    const PlaneFn f = [&](const Eigen::Vector2d& x) {
      return std::exp(x[0] - 0.3 * x[1]);
    };
    const BarycentricPoly once = el.project(f);
    const BarycentricPoly twice = el.project(
        [&](const Eigen::Vector2d& x) { return el.eval_local(once, x); });
    for (int s = 0; s < 20; ++s) {
      const Eigen::Vector2d x = testsupport::random_point_in(tri, rng);
      CHECK(el.eval_local(twice, x) ==
            doctest::Approx(el.eval_local(once, x)).epsilon(1e-9));
    }
  }
}

TEST_CASE("quadrature DOFs agree with exact polynomial DOFs")
{
  std::mt19937_64 rng(36);
  for (const auto& [alpha, beta] : param_set()) {
    const ElementParams params(alpha, beta);
    const auto quad = std::make_shared<const ElementQuadrature>(params);
    const TriangleGeom tri = testsupport::random_triangle(rng);
    const EnrichedElement el(tri, params, ElementKind::S3, quad);
    const BarycentricPoly p = random_poly(rng, 3);
    const Eigen::VectorXd exact = el.dofs(p);
    const Eigen::VectorXd numeric = el.dofs(
        [&](const Eigen::Vector2d& x) { return p.eval(tri.barycentric(x)); });
    const double scale = std::max(1.0, exact.cwiseAbs().maxCoeff());
    CHECK((exact - numeric).cwiseAbs().maxCoeff() <= 1e-10 * scale);
  }
}

TEST_CASE("area DOF of the constant is the area")
{
  std::mt19937_64 rng(37);
  const ElementParams params(0.5, 0.0);
  for (int rep = 0; rep < 10; ++rep) {
    const TriangleGeom tri = testsupport::random_triangle(rng);
    const EnrichedElement el(tri, params, ElementKind::S3);
    const double j = el.dof_area_integral(
        [](const Eigen::Vector2d&) { return 1.0; });
    CHECK(j == doctest::Approx(tri.area()).epsilon(1e-13));
  }
}

TEST_CASE("shared and owned quadrature give identical DOFs")
{
  std::mt19937_64 rng(38);
  const ElementParams params(1.0, 1.0);
  const auto quad = std::make_shared<const ElementQuadrature>(params);
  const TriangleGeom tri = testsupport::random_triangle(rng);
  const EnrichedElement shared(tri, params, ElementKind::S3, quad);
  const EnrichedElement owned(tri, params, ElementKind::S3);
  const PlaneFn f = [](const Eigen::Vector2d& x) {
    return std::cos(2.0 * x[0] + x[1]);
  };
  const Eigen::VectorXd a = shared.dofs(f);
  const Eigen::VectorXd b = owned.dofs(f);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("basis index bounds")
{
  const TriangleGeom tri({0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0});
  const EnrichedElement el(tri, ElementParams(0.5, 0.0), ElementKind::CR);
  CHECK_THROWS_AS(el.basis(3), std::out_of_range);
  CHECK_THROWS_AS(el.basis(-1), std::out_of_range);
}
