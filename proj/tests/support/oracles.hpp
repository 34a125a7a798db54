#pragma once

// Independent reference values for the numerical tests: closed forms and
// adaptive Gauss-Kronrod quadrature on the real line. Nothing here touches
// the library's FFT or grid code.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

/// \int_{-inf}^{inf} g(x) dx by adaptive 61-point Gauss-Kronrod.
template <class F>
double line_integral(F&& g) {
  using boost::math::quadrature::gauss_kronrod;
  const double inf = std::numeric_limits<double>::infinity();
  return gauss_kronrod<double, 61>::integrate(g, -inf, inf, 15, 1e-14);
}

/// \int_a^b g(x) dx.
template <class F>
double integral(F&& g, double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 61>::integrate(g, a, b, 15, 1e-14);
}

/// \int e^{-a x^2} dx = sqrt(pi / a).
inline double gaussian_integral(double a) { return std::sqrt(pi / a); }

}  // namespace oracle
