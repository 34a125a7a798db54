#pragma once

#include <string>

#include "dnls/field.hpp"

namespace dnls {

/// Constants of the two sharp Gagliardo-Nirenberg inequalities and of the
/// cubic f(x) = (1/16 - C_GN^{-18} x^2) x maximized in the momentum bound.
struct SharpConstants {
  /// ||f||_6^6 <= c_gn6 ||f||_2^4 ||f_x||_2^2.
  double c_gn6;
  /// ||f||_6 <= c_gn ||f||_4^{8/9} ||f_x||_2^{1/9}, c_gn = 3^{1/6} (2 pi)^{-1/9}.
  double c_gn;
  /// c_gn^{-18}, equal to 4 pi^2 / 27.
  double c_gn_pow_minus18;
  /// Closed-form maximizer c_gn^9 / (4 sqrt 3) = 3 / (8 pi).
  double f_argmax;
  /// Closed-form maximum c_gn^9 / (96 sqrt 3) = 1 / (64 pi).
  double f_max;
};

const SharpConstants& sharp_constants();

/// Outcome of checking lhs <= rhs.
struct InequalityReport {
  std::string label;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool satisfied = false;
};

inline constexpr double kDefaultSlackTol = 1e-10;

/// satisfied <=> slack >= -rel_tol * max(1, |rhs|).
InequalityReport make_report(std::string label, double lhs, double rhs,
                             double rel_tol = kDefaultSlackTol);

InequalityReport check_gn_sextic(const Field& f);
InequalityReport check_gn_interp(const Field& f);

/// (1/16 - C_GN^{-18} x^2) x, for x >= 0.
double cubic_f(double x);

struct CubicMax {
  double argmax;
  double max;
};
/// Closed form (3/(8 pi), 1/(64 pi)).
CubicMax cubic_f_max();

/// P(v) >= (1/4)||v||_4^4 (1 - ||v||_2/(2 sqrt pi)) - 4 sqrt(pi) E(v) ||v||_2 / ||v||_4^4.
/// Uses the signed energy E(v). No mass restriction.
InequalityReport momentum_lower_bound(const Field& v);

/// The identity behind the phase-modulation trick: for u = e^{i alpha x} v,
/// ||u_x||^2 = ||v_x||^2 + alpha^2 ||v||^2 + 2 alpha Im \int v_x conj(v).
/// lhs is computed from the modulated field, rhs from the formula.
InequalityReport modulation_identity(const Field& v, double alpha);

/// Largest root bound of a x^2 - c x - b <= 0: ((c + sqrt(c^2 + 4ab)) / (2a))^2,
/// and its relaxation (c^2 + 2ab) / a^2.
struct QuadraticBound {
  double root_squared;
  double relaxed;
};
QuadraticBound quadratic_bound(double a, double b, double c);

/// Upper bound on ||v||_4^8:
///   16 (1 - r)^{-2} (P^2 + 2 (1 - r) sqrt(pi) |E| ||v||_2),  r = ||v||_2 / (2 sqrt pi).
/// Requires ||v||_2^2 < 4 pi.
double l4_bound(double mass_sqrt, double momentum, double energy);

struct H1Bound {
  double value;  // max(raw, 0)
  double raw;
  bool clamped;
};

/// Upper bound on ||v_x||_2^2:
///   2E + (P^2 + 2 sqrt(pi) |E| ||v||_2) / (1 - ||v||_2/(2 sqrt pi))^2.
/// Requires ||v||_2^2 < 4 pi.
H1Bound h1_bound(double mass_sqrt, double momentum, double energy);

/// ||v_x||_2^2 <= 2 E(v) + 2^{-4} ||v||_4^8.
InequalityReport kinetic_l4_bound(const Field& v);

/// ||v||_4^8 <= l4_bound(||v||_2, P(v), E(v)) for a gauged field.
InequalityReport check_l4_bound(const Field& v);
/// ||v_x||_2^2 <= h1_bound(||v||_2, P(v), E(v)) for a gauged field.
InequalityReport check_h1_bound(const Field& v);

/// gamma_0 = sqrt(1 + sqrt(pi) ||v0||_2 / (1 - ||v0||_2/(2 sqrt pi))^2).
double gamma0(double mass_sqrt);

/// True when ||v||_2^2 < 4 pi.
bool below_mass_threshold(double mass_sqrt);

}  // namespace dnls
