#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dnls/evolution.hpp"
#include "dnls/field.hpp"
#include "dnls/functionals.hpp"
#include "dnls/multiplier.hpp"

namespace dnls {

inline constexpr std::size_t kDefaultMaxRescalePoints = std::size_t{1} << 24;

/// f_lambda(x) = lambda^{-1/2} f(x / lambda) on the grid (lambda L, n * ceil(lambda)).
///
/// Dilating the torus together with the field maps the frequency lattice onto
/// itself, so the rescaled spectrum is the old one times lambda^{1/2} and the
/// result is exact for any lambda >= 1.
Field rescale(const Field& f, double lambda, std::size_t max_points = kDefaultMaxRescalePoints);

/// (M, P, E) of I f, in f's frame.
ConservedSet modified_functionals(const Field& v, const IMultiplier& m);

// --- ||f||_{H^{1/2}} ~ ||I_N f||_{H^1} ~ N^{1/2} ||f||_{H^{1/2}} -----------------

struct OperatorNormRow {
  std::size_t field_index;
  double cutoff;
  double lower_ratio;  // ||f||_{H^{1/2}} / ||I_N f||_{H^1}
  double upper_ratio;  // ||I_N f||_{H^1} / (N^{1/2} ||f||_{H^{1/2}})
};

struct OperatorNormSummary {
  double cutoff;
  double sup_lower;
  double sup_upper;
};

struct OperatorNormStudy {
  std::vector<OperatorNormRow> rows;
  std::vector<OperatorNormSummary> per_cutoff;
  double lower_slope;  // log-log slope of sup_lower against N
  double upper_slope;
};

OperatorNormStudy operator_norm_study(std::span<const Field> fields, std::span<const double> cutoffs);

// --- |P(I v) - P(v)| <~ N^{-1} (||I v||_{H^1}^2 + ||I v||_{H^1}^4) --------------

struct CommutatorRow {
  std::size_t field_index;
  double cutoff;
  double lhs;             // |P(I v) - P(v)|
  double rhs;             // N^{-1} (||Iv||_{H^1}^2 + ||Iv||_{H^1}^4)
  double ratio;           // lhs / rhs
  double term_quadratic;  // Im \int (I v_x - v_x)(conj(I v) + conj(v))
  double term_quartic;    // (1/4)(\int |I v|^4 - \int |v|^4)
  double recombination_error;  // |term_quadratic + term_quartic - (P(Iv) - P(v))|
};

struct CommutatorSummary {
  double cutoff;
  double sup_ratio;
};

struct CommutatorStudy {
  std::vector<CommutatorRow> rows;
  std::vector<CommutatorSummary> per_cutoff;
  double ratio_slope;  // log-log slope of sup_ratio against N
  double max_recombination_error;
};

/// Fields must be gauged. The bound is (||Iv||_{H^1}^2 + ||Iv||_{H^1}^4) N^{-mu};
/// the decay power is not pinned down by the analysis, so it is a parameter.
CommutatorStudy momentum_commutator_study(std::span<const Field> fields,
                                          std::span<const double> cutoffs, double mu = 1.0);

// --- parameter arithmetic of the continuity argument ----------------------------

struct GwpBudgetInput {
  double mass_sqrt = 0.0;    // ||v0||_2
  double hhalf = 1.0;        // ||v0||_{\dot H^{1/2}}
  double target_time = 1.0;  // T
  double epsilon = 0.125;    // in (0, 1/4]
  /// Constant c in ||d_x I v_{0,lambda}||_2 <= c N^{1/2} lambda^{-1/2} ||v0||_{\dot H^{1/2}}.
  /// sqrt(2) is an upper bound for the blended multiplier (m^2 <= 2N/|xi| above N).
  double rescale_constant = 1.4142135623730951;
  int max_log2_cutoff = 400;
};

struct GwpBudget {
  GwpBudgetInput input;
  double gamma0;
  double eps0;             // 1 / (200 gamma0)
  double c_lambda;         // (c * hhalf / eps0)^2, lambda ~ c_lambda * N
  double exponent;         // 1/2 - 2 epsilon
  int log2_cutoff;
  double cutoff;           // N, a power of two
  double lambda;           // ceil(c_lambda * N)
  double log2_T0;          // (5/2 - 2 epsilon) log2 N
  double T0;               // N^{5/2 - 2 epsilon}
  double guaranteed_time;  // lambda^{-2} T0
};

GwpBudget gwp_budget(const GwpBudgetInput& in);

/// sup over (f, N, lambda) of ||d_x I_N f_lambda||_2 / (N^{1/2} lambda^{-1/2} ||f||_{\dot H^{1/2}}),
/// computed from explicitly rescaled fields.
double measure_rescaling_constant(std::span<const Field> fields, std::span<const double> cutoffs,
                                  std::span<const double> lambdas,
                                  std::size_t max_points = kDefaultMaxRescalePoints);

// --- modified-energy drift -----------------------------------------------------

struct EnergyDriftRow {
  double cutoff;
  double lambda;
  std::size_t grid_points;
  double initial_modified_energy;
  double drift;            // sup_t |E_I(t) - E_I(0)|
  double reduction;        // previous drift / this drift (NaN for the first row)
  std::string abort_reason;
  std::size_t records;
  double ceiling_ratio;    // max_t ||v_x||_2^2 / h1_bound(M, P, E) of the rescaled datum
};

/// For each N: rescale v0 by lambda = max(1, N / reference_cutoff), evolve the
/// gauged equation to `horizon` with an I_N monitor and record the drift of E_I.
std::vector<EnergyDriftRow> modified_energy_drift_study(const Field& v0,
                                                        std::span<const double> cutoffs,
                                                        double horizon, SimConfig sim,
                                                        double reference_cutoff);

}  // namespace dnls
