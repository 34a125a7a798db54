#pragma once

#include <span>
#include <vector>

#include "dnls/field.hpp"

namespace dnls {

/// C^2 monotone smoothstep on [0, 1]: 6r^5 - 15r^4 + 10r^3.
double smoothstep(double r);

/// The I-method symbol m_N(xi):
///   1                                  for |xi| <= N
///   (N/|xi|)^{1/2}                     for |xi| >= 2N
///   exp(s(r) * log((N/|xi|)^{1/2}))    in between, r = (|xi| - N)/N,
/// i.e. a log-space blend, which keeps m positive and nonincreasing in |xi|.
double multiplier_symbol(double cutoff, double xi);

/// m_N tabulated on a grid's frequency lattice (FFT order).
class IMultiplier {
 public:
  IMultiplier(double cutoff, Grid grid);

  double cutoff() const noexcept { return cutoff_; }
  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator()(double xi) const { return multiplier_symbol(cutoff_, xi); }

 private:
  double cutoff_;
  Grid grid_;
  std::vector<double> values_;
};

IMultiplier make_multiplier(double cutoff, const Grid& grid);

/// I_N f: spectrum multiplied by m_N. The multiplier must live on f's grid.
Field apply_I(const Field& f, const IMultiplier& m);
Spectrum apply_I(const Spectrum& s, const IMultiplier& m);

}  // namespace dnls
