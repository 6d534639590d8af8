#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "crenrich/polynomial.hpp"
#include "crenrich/quadrature.hpp"
#include "test_support.hpp"

using namespace crenrich;
using testsupport::adaptive_simpson;
using testsupport::beta_oracle;

namespace
{

// The defining weighted integrals in the edge parameter t, integrated
// directly (no folding, no substitution) as an independent oracle.  Bounded
// integrands require alpha >= 1/2 and beta >= 0.
double direct_kernel_integral(const ElementParams& p, EdgeKernel kernel,
                              const std::function<double(double)>& g)
{
  const auto integrand = [&](double t) {
    const double u = 2.0 * t - 1.0;
    const double w = std::pow(t * (1.0 - t), p.alpha - 0.5) *
                     std::pow(std::abs(u), 2.0 * p.beta);
    if (kernel == EdgeKernel::Quadratic) {
      return w * (2.0 * (p.alpha + p.beta + 1.0) * u * u -
                  (2.0 * p.beta + 1.0)) * g(t);
    }
    return w * (2.0 * (p.alpha + p.beta + 2.0) * u * u -
                (2.0 * p.beta + 3.0)) * u * g(t);
  };
  return adaptive_simpson(integrand, 0.0, 1.0, 1e-13);
}

} // namespace

TEST_CASE("gauss_jacobi_01 basic structure")
{
  for (const double el : {-0.49, -0.25, 0.0, 0.5, 1.0, 2.5}) {
    for (const double er : {-0.49, 0.0, 1.5}) {
      for (const int n : {1, 4, 8, 24}) {
        const QuadRule1D rule = gauss_jacobi_01(n, el, er);
        REQUIRE(rule.nodes.size() == n);
        REQUIRE(rule.weights.size() == n);
        CHECK(rule.exactness_degree == 2 * n - 1);
        for (int i = 0; i < n; ++i) {
          CHECK(rule.nodes[i] > 0.0);
          CHECK(rule.nodes[i] < 1.0);
          CHECK(rule.weights[i] > 0.0);
          if (i > 0) {
            CHECK(rule.nodes[i] > rule.nodes[i - 1]);
          }
        }
        CHECK(rule.weights.sum() ==
              doctest::Approx(beta_oracle(el + 1.0, er + 1.0)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("gauss_jacobi_01 single-node rule sits at the weight centroid")
{
  const QuadRule1D rule = gauss_jacobi_01(1, 2.0, 3.0);
  // centroid of v^2 (1-v)^3 on (0,1): (el+1)/(el+er+2)
  CHECK(rule.nodes[0] == doctest::Approx(3.0 / 7.0).epsilon(1e-14));
}

TEST_CASE("gauss_jacobi_01 reduces to Gauss-Legendre at zero exponents")
{
  // Frozen 4-point Gauss-Legendre rule mapped to (0,1).
  const QuadRule1D rule = gauss_jacobi_01(4, 0.0, 0.0);
  const double nodes[4] = {0.069431844202973712, 0.33000947820757187,
                           0.66999052179242813, 0.93056815579702629};
  const double weights[4] = {0.17392742256872693, 0.32607257743127307,
                             0.32607257743127307, 0.17392742256872693};
  for (int i = 0; i < 4; ++i) {
    CHECK(rule.nodes[i] == doctest::Approx(nodes[i]).epsilon(1e-13));
    CHECK(rule.weights[i] == doctest::Approx(weights[i]).epsilon(1e-13));
  }
}

TEST_CASE("gauss_jacobi_01 moments match the beta function up to exactness")
{
  for (const double el : {-0.49, -0.25, 0.0, 0.5, 2.5}) {
    for (const double er : {-0.49, 0.0, 1.0}) {
      for (const int n : {4, 8, 16}) {
        const QuadRule1D rule = gauss_jacobi_01(n, el, er);
        for (int k = 0; k <= rule.exactness_degree; ++k) {
          double quad = 0.0;
          for (int i = 0; i < n; ++i) {
            quad += rule.weights[i] * std::pow(rule.nodes[i], k);
          }
          const double exact = beta_oracle(el + k + 1.0, er + 1.0);
          CHECK(std::abs(quad - exact) <= 1e-11 * exact);
        }
      }
    }
  }
}

TEST_CASE("gauss_jacobi_01 rejects bad arguments")
{
  CHECK_THROWS_AS(gauss_jacobi_01(0, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(gauss_jacobi_01(4, -1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(gauss_jacobi_01(4, 0.0, -1.2), std::domain_error);
}

TEST_CASE("edge kernels: exact moments of polynomial traces")
{
  // Quadratic kernel: annihilates affine t, gives K on t^2, 3K/2 on t^3.
  // Cubic kernel: annihilates quadratics, gives G on t^3 (and on t(1-t)^2).
  const double params[][2] = {{0.5, 0.0}, {1.0, 1.0},  {2.0, 0.0},
                              {0.5, 0.5}, {2.5, 0.5},  {0.9, -0.3}};
  for (const auto& ab : params) {
    const ElementParams p(ab[0], ab[1]);
    const double scale = std::max(p.K, 1.0);
    const auto fq = [&](const std::function<double(double)>& g) {
      return weighted_edge_integral(p, EdgeKernel::Quadratic, g);
    };
    const auto fc = [&](const std::function<double(double)>& g) {
      return weighted_edge_integral(p, EdgeKernel::Cubic, g);
    };

    CHECK(std::abs(fq([](double) { return 1.0; })) <= 1e-13 * scale);
    CHECK(std::abs(fq([](double t) { return t; })) <= 1e-13 * scale);
    CHECK(std::abs(fq([](double t) { return 3.0 - 2.0 * t; })) <=
          1e-13 * scale);
    CHECK(fq([](double t) { return t * t; }) ==
          doctest::Approx(p.K).epsilon(1e-12));
    CHECK(fq([](double t) { return t * t * t; }) ==
          doctest::Approx(1.5 * p.K).epsilon(1e-12));

    CHECK(std::abs(fc([](double) { return 1.0; })) <= 1e-13 * scale);
    CHECK(std::abs(fc([](double t) { return t; })) <= 1e-13 * scale);
    CHECK(std::abs(fc([](double t) { return t * t; })) <= 1e-13 * scale);
    CHECK(std::abs(fc([](double t) { return 1.0 + 2.0 * t - 5.0 * t * t; })) <=
          1e-12 * scale);
    CHECK(fc([](double t) { return t * t * t; }) ==
          doctest::Approx(p.G).epsilon(1e-12));
    CHECK(fc([](double t) { return t * (1.0 - t) * (1.0 - t); }) ==
          doctest::Approx(p.G).epsilon(1e-12));
  }
}

TEST_CASE("edge kernels match direct integration of the weighted t-form")
{
  // Oracle restricted to bounded-integrand parameters.
  const double params[][2] = {
      {0.5, 0.0}, {1.0, 1.0}, {2.0, 0.0}, {0.5, 0.5}, {2.5, 0.5}};
  const std::function<double(double)> gs[] = {
      [](double t) { return std::exp(t); },
      [](double t) { return std::cos(3.0 * t); },
      [](double t) { return 1.0 / (1.0 + t); },
      [](double t) { return std::sin(2.0 * t) + t * t * t * t; },
  };
  for (const auto& ab : params) {
    const ElementParams p(ab[0], ab[1]);
    for (const auto& g : gs) {
      for (const auto kernel : {EdgeKernel::Quadratic, EdgeKernel::Cubic}) {
        const double split = weighted_edge_integral(p, kernel, g);
        const double direct = direct_kernel_integral(p, kernel, g);
        CHECK(std::abs(split - direct) <=
              1e-9 * std::max(1.0, std::abs(direct)));
      }
    }
  }
}

TEST_CASE("node doubling agrees with itself in the singular-weight regime")
{
  // beta < 0 makes the t-form integrand unbounded at t = 1/2; the folded rule
  // absorbs it, so doubling the nodes must not move the answer.
  const ElementParams p(0.9, -0.3);
  const auto g = [](double t) { return std::exp(t) / (2.0 - t); };
  for (const auto kernel : {EdgeKernel::Quadratic, EdgeKernel::Cubic}) {
    const CheckedIntegral c =
        weighted_edge_integral_checked(p, kernel, g, 24);
    CHECK(std::isfinite(c.value));
    CHECK(c.error_estimate <= 1e-12 * std::max(1.0, std::abs(c.value)));
  }
}

TEST_CASE("triangle_rule structure across all supported degrees")
{
  for (int degree = 1; degree <= 20; ++degree) {
    const QuadRule2D rule = triangle_rule(degree);
    CHECK(rule.exactness_degree >= degree);
    REQUIRE(rule.nodes.rows() == rule.weights.size());
    CHECK(rule.weights.sum() == doctest::Approx(1.0).epsilon(1e-13));
    for (Eigen::Index i = 0; i < rule.nodes.rows(); ++i) {
      CHECK(rule.nodes.row(i).sum() == doctest::Approx(1.0).epsilon(1e-13));
      for (int k = 0; k < 3; ++k) {
        CHECK(rule.nodes(i, k) >= -1e-15);
        CHECK(rule.nodes(i, k) <= 1.0 + 1e-15);
      }
    }
  }
  CHECK_THROWS_AS(triangle_rule(0), std::invalid_argument);
  CHECK_THROWS_AS(triangle_rule(21), std::invalid_argument);
}

TEST_CASE("triangle_rule integrates barycentric monomials exactly")
{
  std::mt19937_64 rng(31);
  const TriangleGeom ref({0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0});
  const TriangleGeom rnd = testsupport::random_triangle(rng);

  for (int degree = 1; degree <= 20; ++degree) {
    const QuadRule2D rule = triangle_rule(degree);
    for (const TriangleGeom* tri : {&ref, &rnd}) {
      for (int a = 0; a <= degree; ++a) {
        for (int b = 0; a + b <= degree; ++b) {
          for (int c = 0; a + b + c <= degree; ++c) {
            double quad = 0.0;
            for (Eigen::Index i = 0; i < rule.nodes.rows(); ++i) {
              quad += rule.weights[i] * std::pow(rule.nodes(i, 0), a) *
                      std::pow(rule.nodes(i, 1), b) *
                      std::pow(rule.nodes(i, 2), c);
            }
            quad *= tri->area();
            const double exact =
                tri->area() * simplex_monomial_moment(a, b, c);
            // all-positive summands: absolute accuracy at the area scale
            CHECK(std::abs(quad - exact) <= 5e-13 * tri->area());
          }
        }
      }
    }
  }
}

TEST_CASE("integrate_triangle evaluates physical integrals")
{
  std::mt19937_64 rng(32);
  const QuadRule2D rule = triangle_rule(8);
  for (int rep = 0; rep < 20; ++rep) {
    const TriangleGeom tri = testsupport::random_triangle(rng);
    CHECK(integrate_triangle(rule, tri, [](const Eigen::Vector2d&) {
            return 1.0;
          }) == doctest::Approx(tri.area()).epsilon(1e-13));
    // integral of x over T = area * centroid_x
    const double cx =
        (tri.vertex(0).x() + tri.vertex(1).x() + tri.vertex(2).x()) / 3.0;
    CHECK(integrate_triangle(rule, tri, [](const Eigen::Vector2d& p) {
            return p.x();
          }) == doctest::Approx(tri.area() * cx).epsilon(1e-12));
  }
}
