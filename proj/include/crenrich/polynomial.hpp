#pragma once

#include <array>

#include <Eigen/Dense>

namespace crenrich
{

/// Exact moment of a barycentric monomial over any triangle, per unit area:
///   integral_T l1^a l2^b l3^c = area * 2 a! b! c! / (a + b + c + 2)!.
/// Valid for a + b + c <= 20 (factorials stay exactly representable).
double simplex_monomial_moment(int a, int b, int c);

/// Polynomial of total degree <= 3 in the barycentric coordinates of one
/// triangle, stored densely on the 20 monomials l1^a l2^b l3^c with
/// a + b + c <= 3.  The representation is redundant (l1 + l2 + l3 = 1), which
/// is harmless here: evaluation, integration and edge restriction are all
/// linear in the coefficients.
class BarycentricPoly
{
public:
  static constexpr int kCoeffCount = 20;
  static constexpr int kMaxDegree = 3;

  BarycentricPoly() { c_.setZero(); }

  /// Position of monomial (a, b, c) in the coefficient vector; throws
  /// std::out_of_range for exponents outside the representable range.
  static int index(int a, int b, int c);
  static const std::array<int, 3>& exponents(int idx);

  static BarycentricPoly monomial(int a, int b, int c, double coeff = 1.0);

  double coeff(int a, int b, int c) const { return c_[index(a, b, c)]; }
  double& coeff(int a, int b, int c) { return c_[index(a, b, c)]; }
  const Eigen::Matrix<double, kCoeffCount, 1>& coeffs() const { return c_; }

  double eval(const Eigen::Vector3d& lambda) const;

  /// Exact integral over a triangle of the given area (the barycentric
  /// moments do not depend on the triangle's shape).
  double integral(double area) const;

  /// Coefficients in t of the restriction to edge j, where the barycentric
  /// coordinates are (l_j, l_j+1, l_j+2) = (0, t, 1-t); entry k multiplies
  /// t^k.
  Eigen::Vector4d edge_restriction(int j) const;

  BarycentricPoly& operator+=(const BarycentricPoly& o);
  BarycentricPoly& operator-=(const BarycentricPoly& o);
  BarycentricPoly& operator*=(double s);
  friend BarycentricPoly operator+(BarycentricPoly a, const BarycentricPoly& b)
  {
    return a += b;
  }
  friend BarycentricPoly operator-(BarycentricPoly a, const BarycentricPoly& b)
  {
    return a -= b;
  }
  friend BarycentricPoly operator*(double s, BarycentricPoly p)
  {
    return p *= s;
  }

private:
  Eigen::Matrix<double, kCoeffCount, 1> c_;
};

} // namespace crenrich
