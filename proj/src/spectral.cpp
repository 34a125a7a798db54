#include "dnls/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dnls/errors.hpp"
#include "dnls/fft.hpp"

namespace dnls {

namespace {

// Rectangle-rule continuous-transform scale dx / sqrt(2 pi), times the phase
// e^{i xi_k L} = (-1)^k coming from nodes that start at -L.
double parity(long k) { return (k % 2 == 0) ? 1.0 : -1.0; }

double coefficient_scale(const Grid& g) {
  return g.dx() / std::sqrt(2.0 * std::numbers::pi);
}

bool is_integer(double s) { return std::floor(s) == s; }

double weighted_sum(const Spectrum& s, auto&& weight) {
  const auto& g = s.grid();
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double w = weight(g.frequency(i));
    if (w == 0.0) continue;
    acc += w * std::norm(s[i]);
  }
  return acc * g.frequency_step();
}

}  // namespace

Spectrum transform(const Field& f) {
  const auto& g = f.grid();
  std::vector<cplx> out(f.size());
  fft::forward(f.samples(), out);
  const double scale = coefficient_scale(g);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= scale * parity(g.wavenumber(i));
  return Spectrum(g, std::move(out), f.frame());
}

Field inverse_transform(const Spectrum& s) {
  const auto& g = s.grid();
  std::vector<cplx> buf(s.coeffs().begin(), s.coeffs().end());
  const double scale = 1.0 / (coefficient_scale(g) * static_cast<double>(g.size()));
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] *= scale * parity(g.wavenumber(i));
  fft::backward(buf, buf);
  return Field(g, std::move(buf), s.frame());
}

bool is_mean_free(const Spectrum& s, double rel_tol) {
  double total = 0.0;
  for (const auto& c : s.coeffs()) total += std::norm(c);
  return std::abs(s[0]) <= rel_tol * std::sqrt(total) + 1e-300;
}

Field fractional_derivative(const Field& f, double s) {
  if (s < -0.5) throw PreconditionError("fractional order below -1/2 is not supported");
  auto spec = transform(f);
  if (s < 0.0 && !is_mean_free(spec)) {
    throw PreconditionError("negative-order derivative of a field with nonzero mean");
  }
  const auto& g = f.grid();
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const double xi = std::abs(g.frequency(i));
    if (xi == 0.0) {
      spec[i] = s == 0.0 ? spec[i] : cplx{};
    } else {
      spec[i] *= std::pow(xi, s);
    }
  }
  if (!is_integer(s)) spec[g.nyquist_slot()] = 0.0;
  return inverse_transform(spec);
}

Field derivative(const Field& f) {
  auto spec = transform(f);
  const auto& g = f.grid();
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= cplx{0.0, g.frequency(i)};
  spec[g.nyquist_slot()] = 0.0;
  return inverse_transform(spec);
}

double bessel_norm(const Spectrum& s, double order) {
  return std::sqrt(
      weighted_sum(s, [order](double xi) { return std::pow(1.0 + xi * xi, order); }));
}

double homogeneous_norm(const Spectrum& s, double order) {
  if (order < 0.0 && !is_mean_free(s)) {
    throw PreconditionError("negative-order homogeneous norm of a field with nonzero mean");
  }
  return std::sqrt(weighted_sum(s, [order](double xi) {
    if (xi == 0.0) return order == 0.0 ? 1.0 : 0.0;
    return std::pow(std::abs(xi), 2.0 * order);
  }));
}

double bessel_norm(const Field& f, double s) { return bessel_norm(transform(f), s); }

double homogeneous_norm(const Field& f, double s) { return homogeneous_norm(transform(f), s); }

double lp_norm(const Field& f, double p) {
  if (!(p >= 1.0)) throw PreconditionError("lp_norm needs p >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& z : f.samples()) m = std::max(m, std::abs(z));
    return m;
  }
  double acc = 0.0;
  if (p == 2.0) {
    for (const auto& z : f.samples()) acc += std::norm(z);
  } else {
    for (const auto& z : f.samples()) acc += std::pow(std::abs(z), p);
  }
  return std::pow(acc * f.grid().dx(), 1.0 / p);
}

Spectrum project(const Spectrum& s, Band band) {
  Spectrum out = s;
  const auto& g = s.grid();
  const bool low = std::holds_alternative<LowPass>(band);
  const double cutoff = low ? std::get<LowPass>(band).cutoff : std::get<HighPass>(band).cutoff;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double xi = std::abs(g.frequency(i));
    const bool keep = low ? xi <= cutoff : xi >= cutoff;
    if (!keep) out[i] = 0.0;
  }
  return out;
}

Field project(const Field& f, Band band) { return inverse_transform(project(transform(f), band)); }

}  // namespace dnls
