#include "dnls/functionals.hpp"

#include <cmath>

#include "dnls/errors.hpp"
#include "dnls/spectral.hpp"

namespace dnls {

namespace {

void require_frame(const Field& f, Frame expected, const char* op) {
  if (f.frame() != expected) {
    throw FrameMismatch(std::string(op) + " expects a " + std::string(to_string(expected)) +
                        "-frame field, got " + std::string(to_string(f.frame())));
  }
}

struct Integrals {
  double mass = 0.0;       // \int |f|^2
  double transport = 0.0;  // Im \int conj(f) f_x
  double kinetic = 0.0;    // \int |f_x|^2
  double quartic = 0.0;    // \int |f|^4
  double sextic = 0.0;     // \int |f|^6
  double coupling = 0.0;   // \int |f|^2 Im(f conj(f_x))
};

Integrals integrate(const Field& f) {
  const Field fx = derivative(f);
  Integrals acc;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const cplx z = f[j];
    const cplx zx = fx[j];
    const double r2 = std::norm(z);
    acc.mass += r2;
    acc.transport += (std::conj(z) * zx).imag();
    acc.kinetic += std::norm(zx);
    acc.quartic += r2 * r2;
    acc.sextic += r2 * r2 * r2;
    acc.coupling += r2 * (z * std::conj(zx)).imag();
  }
  const double dx = f.grid().dx();
  acc.mass *= dx;
  acc.transport *= dx;
  acc.kinetic *= dx;
  acc.quartic *= dx;
  acc.sextic *= dx;
  acc.coupling *= dx;
  return acc;
}

ConservedSet gauged_set(const Integrals& q) {
  return {q.mass, q.transport + 0.25 * q.quartic, q.kinetic - q.sextic / 16.0, Frame::Gauged};
}

ConservedSet original_set(const Integrals& q) {
  return {q.mass, q.transport - 0.5 * q.quartic, q.kinetic + 1.5 * q.coupling + 0.5 * q.sextic,
          Frame::Original};
}

}  // namespace

double mass(const Field& f) {
  double acc = 0.0;
  for (const auto& z : f.samples()) acc += std::norm(z);
  return acc * f.grid().dx();
}

double transport(const Field& f) { return integrate(f).transport; }

double momentum_gauged(const Field& v) {
  require_frame(v, Frame::Gauged, "momentum_gauged");
  return gauged_set(integrate(v)).momentum;
}

double energy_gauged(const Field& v) {
  require_frame(v, Frame::Gauged, "energy_gauged");
  return gauged_set(integrate(v)).energy;
}

double momentum_original(const Field& u) {
  require_frame(u, Frame::Original, "momentum_original");
  return original_set(integrate(u)).momentum;
}

double energy_original(const Field& u) {
  require_frame(u, Frame::Original, "energy_original");
  return original_set(integrate(u)).energy;
}

ConservedSet conserved(const Field& f) {
  const auto q = integrate(f);
  return f.frame() == Frame::Gauged ? gauged_set(q) : original_set(q);
}

}  // namespace dnls
