#include "crenrich/polynomial.hpp"

#include <stdexcept>

namespace crenrich
{

namespace
{

// Monomial exponents ordered by total degree, then lexicographically.
constexpr std::array<std::array<int, 3>, BarycentricPoly::kCoeffCount>
    kExponents = {{
        {0, 0, 0},
        {1, 0, 0},
        {0, 1, 0},
        {0, 0, 1},
        {2, 0, 0},
        {1, 1, 0},
        {1, 0, 1},
        {0, 2, 0},
        {0, 1, 1},
        {0, 0, 2},
        {3, 0, 0},
        {2, 1, 0},
        {2, 0, 1},
        {1, 2, 0},
        {1, 1, 1},
        {1, 0, 2},
        {0, 3, 0},
        {0, 2, 1},
        {0, 1, 2},
        {0, 0, 3},
    }};

double factorial(int n)
{
  double f = 1.0;
  for (int k = 2; k <= n; ++k) {
    f *= k;
  }
  return f;
}

} // namespace

//------------------------------------------------------------------------------
double simplex_monomial_moment(int a, int b, int c)
{
  if (a < 0 || b < 0 || c < 0 || a + b + c > 20) {
    throw std::out_of_range("simplex_monomial_moment: bad exponents");
  }
  return 2.0 * factorial(a) * factorial(b) * factorial(c) /
         factorial(a + b + c + 2);
}

//------------------------------------------------------------------------------
int BarycentricPoly::index(int a, int b, int c)
{
  if (a >= 0 && b >= 0 && c >= 0 && a + b + c <= kMaxDegree) {
    for (int i = 0; i < kCoeffCount; ++i) {
      if (kExponents[i][0] == a && kExponents[i][1] == b &&
          kExponents[i][2] == c) {
        return i;
      }
    }
  }
  throw std::out_of_range("BarycentricPoly: exponents outside degree-3 range");
}

//------------------------------------------------------------------------------
const std::array<int, 3>& BarycentricPoly::exponents(int idx)
{
  return kExponents.at(static_cast<std::size_t>(idx));
}

//------------------------------------------------------------------------------
BarycentricPoly BarycentricPoly::monomial(int a, int b, int c, double coeff)
{
  BarycentricPoly p;
  p.c_[index(a, b, c)] = coeff;
  return p;
}

//------------------------------------------------------------------------------
double BarycentricPoly::eval(const Eigen::Vector3d& lambda) const
{
  std::array<std::array<double, 4>, 3> pow{};
  for (int i = 0; i < 3; ++i) {
    pow[i][0] = 1.0;
    for (int d = 1; d <= kMaxDegree; ++d) {
      pow[i][d] = pow[i][d - 1] * lambda[i];
    }
  }
  double sum = 0.0;
  for (int i = 0; i < kCoeffCount; ++i) {
    if (c_[i] != 0.0) {
      const auto& e = kExponents[i];
      sum += c_[i] * pow[0][e[0]] * pow[1][e[1]] * pow[2][e[2]];
    }
  }
  return sum;
}

//------------------------------------------------------------------------------
double BarycentricPoly::integral(double area) const
{
  static const auto moments = [] {
    std::array<double, kCoeffCount> m{};
    for (int i = 0; i < kCoeffCount; ++i) {
      m[static_cast<std::size_t>(i)] = simplex_monomial_moment(
          kExponents[i][0], kExponents[i][1], kExponents[i][2]);
    }
    return m;
  }();
  double sum = 0.0;
  for (int i = 0; i < kCoeffCount; ++i) {
    sum += c_[i] * moments[static_cast<std::size_t>(i)];
  }
  return area * sum;
}

//------------------------------------------------------------------------------
Eigen::Vector4d BarycentricPoly::edge_restriction(int j) const
{
  // On edge j the monomial l1^e1 l2^e2 l3^e3 vanishes unless e_j = 0, and
  // otherwise becomes t^p (1-t)^q with p = e_(j+1), q = e_(j+2).
  static constexpr double binom[4][4] = {
      {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  Eigen::Vector4d out = Eigen::Vector4d::Zero();
  for (int i = 0; i < kCoeffCount; ++i) {
    if (c_[i] == 0.0 || kExponents[i][j % 3] != 0) {
      continue;
    }
    const int p = kExponents[i][(j + 1) % 3];
    const int q = kExponents[i][(j + 2) % 3];
    double sign = 1.0;
    for (int k = 0; k <= q; ++k) {
      out[p + k] += c_[i] * sign * binom[q][k];
      sign = -sign;
    }
  }
  return out;
}

//------------------------------------------------------------------------------
BarycentricPoly& BarycentricPoly::operator+=(const BarycentricPoly& o)
{
  c_ += o.c_;
  return *this;
}

BarycentricPoly& BarycentricPoly::operator-=(const BarycentricPoly& o)
{
  c_ -= o.c_;
  return *this;
}

BarycentricPoly& BarycentricPoly::operator*=(double s)
{
  c_ *= s;
  return *this;
}

} // namespace crenrich
