#include "dnls/multiplier.hpp"

#include <cmath>

#include "dnls/errors.hpp"
#include "dnls/spectral.hpp"

namespace dnls {

double smoothstep(double r) {
  if (r <= 0.0) return 0.0;
  if (r >= 1.0) return 1.0;
  return r * r * r * (r * (6.0 * r - 15.0) + 10.0);
}

double multiplier_symbol(double cutoff, double xi) {
  const double a = std::abs(xi);
  if (a <= cutoff) return 1.0;
  if (a >= 2.0 * cutoff) return std::sqrt(cutoff / a);
  const double r = (a - cutoff) / cutoff;
  return std::exp(smoothstep(r) * 0.5 * std::log(cutoff / a));
}

IMultiplier::IMultiplier(double cutoff, Grid grid) : cutoff_(cutoff), grid_(std::move(grid)) {
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) {
    throw PreconditionError("multiplier cutoff N must be positive");
  }
  values_.resize(grid_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    values_[i] = multiplier_symbol(cutoff_, grid_.frequency(i));
  }
}

IMultiplier make_multiplier(double cutoff, const Grid& grid) { return IMultiplier(cutoff, grid); }

Spectrum apply_I(const Spectrum& s, const IMultiplier& m) {
  if (!(s.grid() == m.grid())) throw PreconditionError("multiplier built for a different grid");
  Spectrum out = s;
  const auto values = m.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= values[i];
  return out;
}

Field apply_I(const Field& f, const IMultiplier& m) {
  return inverse_transform(apply_I(transform(f), m));
}

}  // namespace dnls
