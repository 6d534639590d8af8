#include "crenrich/specfun.hpp"

#include <cmath>

namespace crenrich
{

//------------------------------------------------------------------------------
double log_gamma(double z)
{
  if (!(z > 0.0)) {
    throw std::domain_error("log_gamma: argument must be positive");
  }

  // Reflection keeps full accuracy on (0, 1/2), where the Lanczos series
  // alone degrades: Gamma(z) Gamma(1-z) = pi / sin(pi z).
  if (z < 0.5) {
    constexpr double pi = 3.14159265358979323846;
    return std::log(pi / std::sin(pi * z)) - log_gamma(1.0 - z);
  }

  // Lanczos approximation, g = 7, 9 coefficients.
  static constexpr double g = 7.0;
  static constexpr double coeff[9] = {
      0.99999999999980993,
      676.5203681218851,
      -1259.1392167224028,
      771.32342877765313,
      -176.61502916214059,
      12.507343278686905,
      -0.13857109526572012,
      9.9843695780195716e-6,
      1.5056327351493116e-7,
  };

  const double x = z - 1.0;
  double series = coeff[0];
  for (int i = 1; i < 9; ++i) {
    series += coeff[i] / (x + static_cast<double>(i));
  }
  const double t = x + g + 0.5;
  constexpr double half_log_two_pi = 0.91893853320467274178032973640562;
  return half_log_two_pi + (x + 0.5) * std::log(t) - t + std::log(series);
}

//------------------------------------------------------------------------------
double beta_fn(double z1, double z2)
{
  if (!(z1 > 0.0) || !(z2 > 0.0)) {
    throw std::domain_error("beta_fn: arguments must be positive");
  }
  return std::exp(log_gamma(z1) + log_gamma(z2) - log_gamma(z1 + z2));
}

//------------------------------------------------------------------------------
double constant_K(double alpha, double beta)
{
  if (!(alpha > -0.5) || !(beta > -0.5)) {
    throw std::domain_error("constant_K: requires alpha, beta > -1/2");
  }
  return beta_fn(beta + 1.5, alpha + 1.5) / std::exp2(2.0 * alpha + 1.0);
}

//------------------------------------------------------------------------------
double constant_G(double alpha, double beta)
{
  return (2.0 * beta + 3.0) * constant_K(alpha, beta) /
         (4.0 * (alpha + beta + 3.0));
}

//------------------------------------------------------------------------------
ElementParams::ElementParams(double alpha_, double beta_)
    : alpha(alpha_), beta(beta_), K(constant_K(alpha_, beta_)),
      G(constant_G(alpha_, beta_))
{
}

} // namespace crenrich
