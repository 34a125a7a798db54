#include "dnls/imethod.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dnls/apriori.hpp"
#include "dnls/errors.hpp"
#include "dnls/spectral.hpp"
#include "dnls/stats.hpp"

namespace dnls {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_nonzero_fields(std::span<const Field> fields, const char* op) {
  for (const auto& f : fields) {
    if (mass(f) == 0.0) throw PreconditionError(std::string(op) + ": zero field in the sweep");
  }
}

void require_cutoffs(std::span<const double> cutoffs, const char* op) {
  if (cutoffs.empty()) throw PreconditionError(std::string(op) + ": empty cutoff list");
  for (double n : cutoffs) {
    if (!(n > 0.0)) throw PreconditionError(std::string(op) + ": cutoffs must be positive");
  }
}

double sum_over(const Spectrum& s, auto&& weight) {
  const auto& g = s.grid();
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) acc += weight(g.frequency(i)) * std::norm(s[i]);
  return acc * g.frequency_step();
}

double quartic_integral(const Field& f) {
  double acc = 0.0;
  for (const auto& z : f.samples()) acc += std::norm(z) * std::norm(z);
  return acc * f.grid().dx();
}

double slope_or_zero(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2) return 0.0;
  for (double v : y) {
    if (!(v > 0.0)) return kNaN;
  }
  return loglog_fit(x, y).slope;
}

}  // namespace

Field rescale(const Field& f, double lambda, std::size_t max_points) {
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) throw PreconditionError("rescale needs lambda >= 1");
  const auto& g = f.grid();
  const auto factor = static_cast<std::size_t>(std::ceil(lambda));
  const std::size_t n_new = g.size() * factor;
  if (n_new > max_points) {
    throw PreconditionError("rescaled grid of " + std::to_string(n_new) +
                            " points exceeds the configured maximum " + std::to_string(max_points));
  }
  const Grid target(g.half_length() * lambda, n_new);
  const auto spec = transform(f);
  std::vector<cplx> coeffs(n_new);
  const double amp = std::sqrt(lambda);
  for (std::size_t i = 0; i < g.size(); ++i) {
    coeffs[target.slot(g.wavenumber(i))] = amp * spec[i];
  }
  return inverse_transform(Spectrum(target, std::move(coeffs), f.frame()));
}

ConservedSet modified_functionals(const Field& v, const IMultiplier& m) {
  if (v.frame() != Frame::Gauged) throw FrameMismatch("modified functionals expect a gauged-frame field");
  return conserved(apply_I(v, m));
}

OperatorNormStudy operator_norm_study(std::span<const Field> fields,
                                      std::span<const double> cutoffs) {
  require_nonzero_fields(fields, "operator_norm_study");
  require_cutoffs(cutoffs, "operator_norm_study");
  OperatorNormStudy study;
  study.per_cutoff.reserve(cutoffs.size());
  for (double n : cutoffs) study.per_cutoff.push_back({n, 0.0, 0.0});

  for (std::size_t fi = 0; fi < fields.size(); ++fi) {
    const auto spec = transform(fields[fi]);
    const double hhalf = std::sqrt(sum_over(spec, [](double xi) { return std::sqrt(1.0 + xi * xi); }));
    for (std::size_t ni = 0; ni < cutoffs.size(); ++ni) {
      const double n = cutoffs[ni];
      const double ih1 = std::sqrt(sum_over(spec, [n](double xi) {
        const double m = multiplier_symbol(n, xi);
        return m * m * (1.0 + xi * xi);
      }));
      OperatorNormRow row{fi, n, hhalf / ih1, ih1 / (std::sqrt(n) * hhalf)};
      auto& sum = study.per_cutoff[ni];
      sum.sup_lower = std::max(sum.sup_lower, row.lower_ratio);
      sum.sup_upper = std::max(sum.sup_upper, row.upper_ratio);
      study.rows.push_back(row);
    }
  }
  std::vector<double> ns, lower, upper;
  for (const auto& s : study.per_cutoff) {
    ns.push_back(s.cutoff);
    lower.push_back(s.sup_lower);
    upper.push_back(s.sup_upper);
  }
  study.lower_slope = slope_or_zero(ns, lower);
  study.upper_slope = slope_or_zero(ns, upper);
  return study;
}

CommutatorStudy momentum_commutator_study(std::span<const Field> fields,
                                          std::span<const double> cutoffs, double mu) {
  require_nonzero_fields(fields, "momentum_commutator_study");
  require_cutoffs(cutoffs, "momentum_commutator_study");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw PreconditionError("momentum_commutator_study: mu must be positive");
  for (const auto& f : fields) {
    if (f.frame() != Frame::Gauged) {
      throw FrameMismatch("momentum_commutator_study expects gauged-frame fields");
    }
  }
  CommutatorStudy study;
  study.max_recombination_error = 0.0;
  for (double n : cutoffs) study.per_cutoff.push_back({n, 0.0});

  for (std::size_t fi = 0; fi < fields.size(); ++fi) {
    const Field& v = fields[fi];
    const auto& g = v.grid();
    const auto spec = transform(v);
    const double p = momentum_gauged(v);
    const double quartic_v = quartic_integral(v);
    const Field vx = derivative(v);
    for (std::size_t ni = 0; ni < cutoffs.size(); ++ni) {
      const double n = cutoffs[ni];
      const IMultiplier m(n, g);
      const auto ispec = apply_I(spec, m);
      const Field iv = inverse_transform(ispec);
      const Field ivx = derivative(iv);
      const double p_i = momentum_gauged(iv);
      const double h1_sq = bessel_norm(ispec, 1.0) * bessel_norm(ispec, 1.0);

      double quad = 0.0;
      for (std::size_t j = 0; j < v.size(); ++j) {
        quad += ((ivx[j] - vx[j]) * (std::conj(iv[j]) + std::conj(v[j]))).imag();
      }
      quad *= g.dx();
      const double quart = 0.25 * (quartic_integral(iv) - quartic_v);

      CommutatorRow row{};
      row.field_index = fi;
      row.cutoff = n;
      row.lhs = std::abs(p_i - p);
      row.rhs = (h1_sq + h1_sq * h1_sq) * std::pow(n, -mu);
      row.ratio = row.lhs == 0.0 ? 0.0 : row.lhs / row.rhs;
      row.term_quadratic = quad;
      row.term_quartic = quart;
      row.recombination_error = std::abs(quad + quart - (p_i - p));
      study.max_recombination_error = std::max(study.max_recombination_error, row.recombination_error);
      auto& sum = study.per_cutoff[ni];
      sum.sup_ratio = std::max(sum.sup_ratio, row.ratio);
      study.rows.push_back(row);
    }
  }
  std::vector<double> ns, sups;
  for (const auto& s : study.per_cutoff) {
    ns.push_back(s.cutoff);
    sups.push_back(s.sup_ratio);
  }
  study.ratio_slope = slope_or_zero(ns, sups);
  return study;
}

GwpBudget gwp_budget(const GwpBudgetInput& in) {
  if (!below_mass_threshold(in.mass_sqrt)) {
    throw PreconditionError("mass must be below 4 pi for the global existence argument");
  }
  if (!(in.mass_sqrt >= 0.0)) throw PreconditionError("mass_sqrt must be nonnegative");
  if (!(in.target_time > 0.0) || !std::isfinite(in.target_time)) {
    throw PreconditionError("target time must be positive");
  }
  if (!(in.epsilon > 0.0 && in.epsilon <= 0.25)) throw PreconditionError("epsilon must lie in (0, 1/4]");
  if (!(in.hhalf > 0.0)) throw PreconditionError("hhalf must be positive");
  if (!(in.rescale_constant > 0.0)) throw PreconditionError("rescale constant must be positive");

  GwpBudget b{};
  b.input = in;
  b.gamma0 = gamma0(in.mass_sqrt);
  b.eps0 = 1.0 / (200.0 * b.gamma0);
  const double ratio = in.rescale_constant * in.hhalf / b.eps0;
  b.c_lambda = ratio * ratio;
  b.exponent = 0.5 - 2.0 * in.epsilon;

  const double log2_c = std::log2(b.c_lambda);
  const double log2_t = std::log2(in.target_time);
  // lambda^{-2} T0 = c_lambda^{-2} N^{1/2 - 2 eps} >= T, before snapping lambda.
  int start = 1;
  if (b.exponent > 0.0) {
    start = std::max(1, static_cast<int>(std::ceil((log2_t + 2.0 * log2_c) / b.exponent)) - 1);
  }
  for (int k = start; k <= in.max_log2_cutoff; ++k) {
    const double n = std::exp2(static_cast<double>(k));
    const double lambda = std::ceil(b.c_lambda * n);
    const double log2_t0 = (2.5 - 2.0 * in.epsilon) * k;
    const double log2_guaranteed = log2_t0 - 2.0 * std::log2(lambda);
    if (log2_guaranteed >= log2_t) {
      b.log2_cutoff = k;
      b.cutoff = n;
      b.lambda = lambda;
      b.log2_T0 = log2_t0;
      b.T0 = std::exp2(log2_t0);
      b.guaranteed_time = std::exp2(log2_guaranteed);
      if (!std::isfinite(b.T0) || !std::isfinite(b.lambda)) break;
      return b;
    }
    if (b.exponent <= 0.0) break;
  }
  throw PreconditionError("no power-of-two cutoff N <= 2^" + std::to_string(in.max_log2_cutoff) +
                          " reaches the target time");
}

double measure_rescaling_constant(std::span<const Field> fields, std::span<const double> cutoffs,
                                  std::span<const double> lambdas, std::size_t max_points) {
  require_cutoffs(cutoffs, "measure_rescaling_constant");
  double sup = 0.0;
  for (const auto& f : fields) {
    const double hhalf = homogeneous_norm(f, 0.5);
    if (hhalf == 0.0) continue;
    for (double lambda : lambdas) {
      const Field scaled = rescale(f, lambda, max_points);
      const auto spec = transform(scaled);
      for (double n : cutoffs) {
        const double kinetic = std::sqrt(sum_over(spec, [n](double xi) {
          const double m = multiplier_symbol(n, xi);
          return m * m * xi * xi;
        }));
        sup = std::max(sup, kinetic / (std::sqrt(n / lambda) * hhalf));
      }
    }
  }
  return sup;
}

std::vector<EnergyDriftRow> modified_energy_drift_study(const Field& v0,
                                                        std::span<const double> cutoffs,
                                                        double horizon, SimConfig sim,
                                                        double reference_cutoff) {
  require_cutoffs(cutoffs, "modified_energy_drift_study");
  if (v0.frame() != Frame::Gauged) throw FrameMismatch("drift study expects a gauged datum");
  if (!below_mass_threshold(std::sqrt(mass(v0)))) {
    throw PreconditionError("drift study requires mass below 4 pi");
  }
  if (!(reference_cutoff > 0.0)) throw PreconditionError("reference cutoff must be positive");
  sim.frame = Frame::Gauged;
  sim.t_end = horizon;
  sim.keep_snapshots = false;

  std::vector<EnergyDriftRow> rows;
  for (double n : cutoffs) {
    const double lambda = std::max(1.0, std::round(n / reference_cutoff));
    const Field scaled = rescale(v0, lambda);
    const IMultiplier m(n, scaled.grid());
    const auto traj = evolve(scaled, sim, &m);
    EnergyDriftRow row{};
    row.cutoff = n;
    row.lambda = lambda;
    row.grid_points = scaled.size();
    row.initial_modified_energy = traj.diagnostics.front().modified_energy;
    row.drift = 0.0;
    for (const auto& d : traj.diagnostics) {
      row.drift = std::max(row.drift, std::abs(d.modified_energy - row.initial_modified_energy));
    }
    row.reduction = rows.empty() ? kNaN : rows.back().drift / row.drift;
    row.abort_reason = std::string(to_string(traj.abort));
    row.records = traj.diagnostics.size();
    const auto q = conserved(scaled);
    const double bound = h1_bound(std::sqrt(q.mass), q.momentum, q.energy).value;
    row.ceiling_ratio = 0.0;
    for (const auto& d : traj.diagnostics) {
      row.ceiling_ratio = std::max(row.ceiling_ratio, d.h1_seminorm * d.h1_seminorm / bound);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dnls
