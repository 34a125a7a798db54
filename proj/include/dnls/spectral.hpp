#pragma once

#include <limits>
#include <variant>

#include "dnls/field.hpp"

namespace dnls {

/// Forward transform with the Parseval normalization documented on Spectrum.
/// The frame tag is carried over.
Spectrum transform(const Field& f);
Field inverse_transform(const Spectrum& s);

/// D^s f: multiplies the spectrum by |xi|^s.
///
/// For non-integer s the unpaired Nyquist mode is zeroed. Orders below zero
/// require a mean-free field (|xi|^s is singular at xi = 0) and orders below
/// -1/2 are rejected.
Field fractional_derivative(const Field& f, double s);

/// d/dx f: multiplies the spectrum by i*xi, with the Nyquist mode zeroed.
Field derivative(const Field& f);

/// ||f||_{H^s}, symbol (1 + xi^2)^{s/2}.
double bessel_norm(const Field& f, double s);
/// ||f||_{\dot H^s}, symbol |xi|^s. Negative s needs a mean-free field.
double homogeneous_norm(const Field& f, double s);

/// Spectral-side versions for callers that already hold the coefficients.
double bessel_norm(const Spectrum& s, double order);
double homogeneous_norm(const Spectrum& s, double order);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// (sum_j |f_j|^p dx)^{1/p}; p = kInfinity gives max_j |f_j|.
double lp_norm(const Field& f, double p);

/// Sharp Littlewood-Paley cutoffs. A mode with |xi| exactly N belongs to both
/// LowPass(N) and HighPass(N).
struct LowPass {
  double cutoff;
};
struct HighPass {
  double cutoff;
};
using Band = std::variant<LowPass, HighPass>;

Field project(const Field& f, Band band);
Spectrum project(const Spectrum& s, Band band);

/// True when |c_0| is negligible against the field's L2 content.
bool is_mean_free(const Spectrum& s, double rel_tol = 1e-12);

}  // namespace dnls
