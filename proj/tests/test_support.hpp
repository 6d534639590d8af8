#pragma once

#include <cmath>
#include <functional>
#include <random>

#include "crenrich/mesh.hpp"

namespace testsupport
{

// Recursive adaptive Simpson; independent of the library quadrature, used as
// an oracle for 1-D integrals with bounded integrands.
inline double adaptive_simpson_rec(const std::function<double(double)>& f,
                                   double a, double b, double fa, double fm,
                                   double fb, double whole, double tol,
                                   int depth, int force)
{
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 ||
      (force <= 0 && std::abs(left + right - whole) <= 15.0 * tol)) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1,
                              force - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0,
                              depth - 1, force - 1);
}

// The first `force` levels subdivide unconditionally: integrands whose zeros
// line up with the dyadic sample points would otherwise terminate the
// recursion instantly with a bogus 0.
inline double adaptive_simpson(const std::function<double(double)>& f,
                               double a, double b, double tol = 1e-13,
                               int depth = 48)
{
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth, 6);
}

// Beta function through the standard library, as an oracle independent of the
// in-tree Lanczos implementation.
inline double beta_oracle(double a, double b)
{
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi)
{
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

// Random triangle with a mild quality guard (keeps conditioning sane so
// tolerance checks measure the algorithms, not sliver geometry).
inline crenrich::TriangleGeom random_triangle(std::mt19937_64& rng)
{
  for (;;) {
    const Eigen::Vector2d a(uniform(rng, -1.0, 2.0), uniform(rng, -1.0, 2.0));
    const Eigen::Vector2d b(uniform(rng, -1.0, 2.0), uniform(rng, -1.0, 2.0));
    const Eigen::Vector2d c(uniform(rng, -1.0, 2.0), uniform(rng, -1.0, 2.0));
    const double cross =
        (b - a).x() * (c - a).y() - (b - a).y() * (c - a).x();
    const double longest =
        std::max({(b - a).norm(), (c - a).norm(), (c - b).norm()});
    if (0.5 * std::abs(cross) > 0.05 * longest * longest &&
        0.5 * std::abs(cross) > 0.05) {
      return cross > 0.0 ? crenrich::TriangleGeom(a, b, c)
                         : crenrich::TriangleGeom(a, c, b);
    }
  }
}

// Random point with barycentric coordinates strictly inside the triangle.
inline Eigen::Vector2d random_point_in(const crenrich::TriangleGeom& tri,
                                       std::mt19937_64& rng)
{
  double l1 = uniform(rng, 0.0, 1.0);
  double l2 = uniform(rng, 0.0, 1.0);
  if (l1 + l2 > 1.0) {
    l1 = 1.0 - l1;
    l2 = 1.0 - l2;
  }
  return tri.point({1.0 - l1 - l2, l1, l2});
}

} // namespace testsupport
