#include "dnls/apriori.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dnls/errors.hpp"
#include "dnls/functionals.hpp"
#include "dnls/spectral.hpp"

namespace dnls {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrtPi = std::sqrt(kPi);

void require_nonzero(const Field& f, const char* op) {
  if (mass(f) == 0.0) throw PreconditionError(std::string(op) + " is undefined for the zero field");
}

void require_gauged(const Field& f, const char* op) {
  if (f.frame() != Frame::Gauged) {
    throw FrameMismatch(std::string(op) + " expects a gauged-frame field");
  }
}

// 1 - ||v||_2 / (2 sqrt pi), positive exactly when the mass is below 4 pi.
double mass_gap(double mass_sqrt, const char* op) {
  if (!(mass_sqrt >= 0.0)) throw PreconditionError(std::string(op) + ": negative L2 norm");
  if (!below_mass_threshold(mass_sqrt)) {
    throw PreconditionError(std::string(op) + " requires mass below 4 pi");
  }
  return 1.0 - mass_sqrt / (2.0 * kSqrtPi);
}

struct Norms {
  double l2;       // ||f||_2
  double l4_4;     // ||f||_4^4
  double l6_6;     // ||f||_6^6
  double kinetic;  // ||f_x||_2^2
};

Norms norms_of(const Field& f) {
  const double kin = std::pow(homogeneous_norm(f, 1.0), 2);
  return {lp_norm(f, 2.0), std::pow(lp_norm(f, 4.0), 4), std::pow(lp_norm(f, 6.0), 6), kin};
}

}  // namespace

const SharpConstants& sharp_constants() {
  static const SharpConstants constants = [] {
    SharpConstants c{};
    c.c_gn6 = 4.0 / (kPi * kPi);
    c.c_gn = std::pow(3.0, 1.0 / 6.0) * std::pow(2.0 * kPi, -1.0 / 9.0);
    c.c_gn_pow_minus18 = std::pow(c.c_gn, -18.0);
    const double c9 = std::pow(c.c_gn, 9.0);
    c.f_argmax = c9 / (4.0 * std::sqrt(3.0));
    c.f_max = c9 / (96.0 * std::sqrt(3.0));
    return c;
  }();
  return constants;
}

InequalityReport make_report(std::string label, double lhs, double rhs, double rel_tol) {
  InequalityReport r;
  r.label = std::move(label);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.satisfied = r.slack >= -rel_tol * std::max(1.0, std::abs(rhs));
  return r;
}

InequalityReport check_gn_sextic(const Field& f) {
  require_nonzero(f, "check_gn_sextic");
  const auto n = norms_of(f);
  const double l2_4 = n.l2 * n.l2 * n.l2 * n.l2;
  return make_report("gn_sextic", n.l6_6, sharp_constants().c_gn6 * l2_4 * n.kinetic);
}

InequalityReport check_gn_interp(const Field& f) {
  require_nonzero(f, "check_gn_interp");
  const auto n = norms_of(f);
  const double lhs = std::pow(n.l6_6, 1.0 / 6.0);
  const double rhs = sharp_constants().c_gn * std::pow(n.l4_4, 2.0 / 9.0) *
                     std::pow(n.kinetic, 1.0 / 18.0);
  return make_report("gn_interp", lhs, rhs);
}

double cubic_f(double x) {
  if (x < 0.0) throw PreconditionError("cubic_f is defined for x >= 0");
  return (1.0 / 16.0 - sharp_constants().c_gn_pow_minus18 * x * x) * x;
}

CubicMax cubic_f_max() {
  const auto& c = sharp_constants();
  return {c.f_argmax, c.f_max};
}

InequalityReport momentum_lower_bound(const Field& v) {
  require_gauged(v, "momentum_lower_bound");
  require_nonzero(v, "momentum_lower_bound");
  const auto q = conserved(v);
  const double l2 = std::sqrt(q.mass);
  const double l4_4 = std::pow(lp_norm(v, 4.0), 4);
  const double rhs =
      0.25 * l4_4 * (1.0 - l2 / (2.0 * kSqrtPi)) - 4.0 * kSqrtPi * q.energy * l2 / l4_4;
  // A lower bound on P: the bound goes on the left of "lhs <= rhs".
  return make_report("momentum_lower_bound", rhs, q.momentum);
}

InequalityReport modulation_identity(const Field& v, double alpha) {
  const auto& g = v.grid();
  std::vector<cplx> modulated(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    modulated[j] = std::polar(1.0, alpha * g.node(j)) * v[j];
  }
  const Field u(g, std::move(modulated), v.frame());
  const Field ux = derivative(u);
  const double lhs = mass(ux);
  const double vx2 = mass(derivative(v));
  // Im \int v_x conj(v) is the transport term Im \int conj(v) v_x.
  const double rhs = vx2 + alpha * alpha * mass(v) + 2.0 * alpha * transport(v);
  return make_report("modulation_identity", lhs, rhs);
}

QuadraticBound quadratic_bound(double a, double b, double c) {
  if (!(a > 0.0)) throw PreconditionError("quadratic_bound needs a > 0");
  const double root = (c + std::sqrt(c * c + 4.0 * a * b)) / (2.0 * a);
  return {root * root, (c * c + 2.0 * a * b) / (a * a)};
}

double l4_bound(double mass_sqrt, double momentum, double energy) {
  const double gap = mass_gap(mass_sqrt, "l4_bound");
  return 16.0 / (gap * gap) *
         (momentum * momentum + 2.0 * gap * kSqrtPi * std::abs(energy) * mass_sqrt);
}

H1Bound h1_bound(double mass_sqrt, double momentum, double energy) {
  const double gap = mass_gap(mass_sqrt, "h1_bound");
  const double raw = 2.0 * energy + (momentum * momentum +
                                     2.0 * kSqrtPi * std::abs(energy) * mass_sqrt) /
                                        (gap * gap);
  return {std::max(raw, 0.0), raw, raw < 0.0};
}

InequalityReport kinetic_l4_bound(const Field& v) {
  require_gauged(v, "kinetic_l4_bound");
  require_nonzero(v, "kinetic_l4_bound");
  const auto q = conserved(v);
  const double l4_8 = std::pow(lp_norm(v, 4.0), 8);
  return make_report("kinetic_l4_bound", mass(derivative(v)), 2.0 * q.energy + l4_8 / 16.0);
}

InequalityReport check_l4_bound(const Field& v) {
  require_gauged(v, "check_l4_bound");
  require_nonzero(v, "check_l4_bound");
  const auto q = conserved(v);
  return make_report("l4_bound", std::pow(lp_norm(v, 4.0), 8),
                     l4_bound(std::sqrt(q.mass), q.momentum, q.energy));
}

InequalityReport check_h1_bound(const Field& v) {
  require_gauged(v, "check_h1_bound");
  require_nonzero(v, "check_h1_bound");
  const auto q = conserved(v);
  const double kinetic = std::pow(homogeneous_norm(v, 1.0), 2);
  return make_report("h1_bound", kinetic, h1_bound(std::sqrt(q.mass), q.momentum, q.energy).value);
}

double gamma0(double mass_sqrt) {
  const double gap = mass_gap(mass_sqrt, "gamma0");
  return std::sqrt(1.0 + kSqrtPi * mass_sqrt / (gap * gap));
}

bool below_mass_threshold(double mass_sqrt) {
  return mass_sqrt * mass_sqrt < 4.0 * kPi && mass_sqrt < 2.0 * kSqrtPi;
}

}  // namespace dnls
