#include "dnls/gauge.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "dnls/errors.hpp"
#include "dnls/fft.hpp"

namespace dnls {

namespace {

// Antiderivative of the density |u|^2 anchored at -L.
//
// The density has nonzero mean, so its antiderivative is a linear ramp plus a
// periodic part. The ramp is exact; the periodic part is integrated in
// frequency space (divide by i xi), which keeps the phase spectrally accurate
// and its x-derivative equal to |u|^2 to rounding.
std::vector<double> anchored_antiderivative(const Grid& g, std::span<const double> density) {
  const std::size_t n = g.size();
  std::vector<cplx> buf(density.begin(), density.end());
  fft::forward(buf, buf);
  const double mean = buf[0].real() / static_cast<double>(n);
  buf[0] = 0.0;
  buf[g.nyquist_slot()] = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    if (i == g.nyquist_slot()) continue;
    buf[i] /= cplx{0.0, g.frequency(i)};
  }
  fft::backward(buf, buf);
  std::vector<double> out(n);
  const double base = buf[0].real() / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double periodic = buf[j].real() / static_cast<double>(n) - base;
    out[j] = mean * (g.node(j) + g.half_length()) + periodic;
  }
  return out;
}

void require_decay(const Field& f, double boundary_tol) {
  const double edge = std::abs(f[0]);
  if (!(edge <= boundary_tol)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "field does not decay at x = -L (|f(-L)| = %.3g > %.3g)", edge, boundary_tol);
    throw PreconditionError(std::string(buf) + "; the torus cannot stand in for the line");
  }
}

PhaseProfile phase_of(const Field& f, double boundary_tol) {
  require_decay(f, boundary_tol);
  const auto& g = f.grid();
  std::vector<double> density(f.size());
  double mass = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    density[j] = std::norm(f[j]);
    mass += density[j];
  }
  mass *= g.dx();
  auto values = anchored_antiderivative(g, density);
  for (auto& v : values) v *= 0.75;
  return PhaseProfile{g, std::move(values), 0.75 * mass};
}

Field rotate(const Field& f, const PhaseProfile& phase, double sign, Frame frame) {
  std::vector<cplx> out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    out[j] = std::polar(1.0, sign * phase.values[j]) * f[j];
  }
  return Field(f.grid(), std::move(out), frame);
}

}  // namespace

PhaseProfile cumulative_mass(const Field& u, double boundary_tol) {
  return phase_of(u, boundary_tol);
}

Field gauge_forward(const Field& u, double boundary_tol) {
  if (u.frame() != Frame::Original) {
    throw FrameMismatch("gauge_forward expects an original-frame field");
  }
  return rotate(u, phase_of(u, boundary_tol), -1.0, Frame::Gauged);
}

Field gauge_inverse(const Field& v, double boundary_tol) {
  if (v.frame() != Frame::Gauged) {
    throw FrameMismatch("gauge_inverse expects a gauged-frame field");
  }
  return rotate(v, phase_of(v, boundary_tol), +1.0, Frame::Original);
}

}  // namespace dnls
