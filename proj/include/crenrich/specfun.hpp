#pragma once

#include <stdexcept>

namespace crenrich
{

/// Natural log of the Gamma function for z > 0 (Lanczos approximation,
/// relative accuracy ~1e-14 on (0, 50]).  Throws std::domain_error for z <= 0.
double log_gamma(double z);

/// Euler beta function B(z1, z2) = Gamma(z1)*Gamma(z2)/Gamma(z1+z2),
/// computed in log space to avoid overflow.  Requires z1, z2 > 0.
double beta_fn(double z1, double z2);

/// Normalization constant of the quadratic edge functionals:
///   K = B(beta + 3/2, alpha + 3/2) / 2^(2*alpha + 1).
/// Requires alpha, beta > -1/2.
double constant_K(double alpha, double beta);

/// Normalization constant of the cubic edge functionals:
///   G = (2*beta + 3) * K / (4 * (alpha + beta + 3)).
double constant_G(double alpha, double beta);

/// Weight-family parameters of the enriched elements, with the derived
/// normalization constants cached.  Only alpha, beta > -1/2 are admissible;
/// the constructor throws std::domain_error otherwise.
struct ElementParams
{
  double alpha;
  double beta;
  double K; ///< quadratic normalization, constant_K(alpha, beta)
  double G; ///< cubic normalization, constant_G(alpha, beta)

  ElementParams(double alpha_, double beta_);
};

} // namespace crenrich
