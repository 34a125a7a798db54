#pragma once

#include <vector>

#include "dnls/field.hpp"

namespace dnls {

inline constexpr double kDefaultBoundaryTol = 1e-8;

/// phi(x_j) = (3/4) \int_{-L}^{x_j} |u(y)|^2 dy on the grid nodes.
struct PhaseProfile {
  Grid grid;
  std::vector<double> values;
  /// (3/4) \int_{-L}^{L} |u|^2, the phase accumulated across the whole torus.
  double total;
};

/// Cumulative-mass phase anchored at the left edge x = -L, which stands in
/// for -infinity. Refuses data with |u(-L)| > boundary_tol.
PhaseProfile cumulative_mass(const Field& u, double boundary_tol = kDefaultBoundaryTol);

/// v = exp(-i phi) u. Input must be in the original frame; output is gauged.
Field gauge_forward(const Field& u, double boundary_tol = kDefaultBoundaryTol);

/// u = exp(+i psi) v with psi built from |v|^2 = |u|^2. Gauged in, original out.
Field gauge_inverse(const Field& v, double boundary_tol = kDefaultBoundaryTol);

}  // namespace dnls
