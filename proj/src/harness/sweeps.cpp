#include "dnls/harness/sweeps.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "dnls/functionals.hpp"
#include "dnls/gauge.hpp"
#include "dnls/harness/pool.hpp"
#include "dnls/random_fields.hpp"
#include "dnls/spectral.hpp"

namespace dnls::harness {

namespace {

double rel_gap(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-12); }

}  // namespace

const std::array<std::string, kInequalityCount>& inequality_labels() {
  static const std::array<std::string, kInequalityCount> labels{
      "gn_sextic",         "gn_interp", "momentum_lower_bound", "modulation_identity",
      "kinetic_l4_bound",  "l4_bound",  "h1_bound"};
  return labels;
}

InequalityTrial inequality_trial(const Grid& grid, std::uint64_t seed, std::uint64_t index) {
  auto rng = trial_rng(seed, index);
  const Field base = random_decaying_field(grid, rng, Frame::Gauged);
  InequalityTrial t{};
  t.mass_any = uniform(rng, 0.05, 30.0);
  t.mass_below = uniform(rng, 0.01, 4.0 * std::numbers::pi * (1.0 - 1e-3));
  t.alpha = uniform(rng, -5.0, 5.0);
  const Field any = with_mass(base, t.mass_any);
  const Field below = with_mass(base, t.mass_below);
  t.reports = {check_gn_sextic(any),       check_gn_interp(any),  momentum_lower_bound(any),
               modulation_identity(any, t.alpha), kinetic_l4_bound(any), check_l4_bound(below),
               check_h1_bound(below)};
  // the identity has no direction; either sign of the slack is a defect
  auto& mod = t.reports[3];
  mod.satisfied = std::abs(mod.slack) <= kDefaultSlackTol * std::max(1.0, std::abs(mod.rhs));
  return t;
}

InequalitySweep inequality_sweep(const Grid& grid, std::size_t trials, std::uint64_t seed,
                                 std::size_t workers) {
  InequalitySweep sweep;
  sweep.trials = parallel_map(trials, workers, [&](std::size_t i) {
    return inequality_trial(grid, seed, i);
  });
  for (std::size_t k = 0; k < kInequalityCount; ++k) {
    auto& s = sweep.summary[k];
    s.label = inequality_labels()[k];
    s.trials = trials;
    s.worst_rel_slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < trials; ++i) {
      const auto& r = sweep.trials[i].reports[k];
      if (!r.satisfied) ++s.violations;
      const double rel = (k == 3 ? -std::abs(r.slack) : r.slack) / std::max(1.0, std::abs(r.rhs));
      if (rel < s.worst_rel_slack) {
        s.worst_rel_slack = rel;
        s.worst_trial = i;
      }
    }
  }
  return sweep;
}

CorrespondenceRow correspondence(const Field& u) {
  const Field v = gauge_forward(u);
  const auto d = conserved(u);
  const auto g = conserved(v);
  const Field back = gauge_inverse(v);
  CorrespondenceRow row{};
  row.mass_rel = rel_gap(g.mass, d.mass);
  row.momentum_rel = rel_gap(g.momentum, d.momentum);
  row.energy_rel = rel_gap(g.energy, d.energy);
  for (std::size_t j = 0; j < u.size(); ++j) {
    row.roundtrip_sup = std::max(row.roundtrip_sup, std::abs(back[j] - u[j]));
    row.modulus_sup = std::max(row.modulus_sup, std::abs(std::abs(v[j]) - std::abs(u[j])));
  }
  return row;
}

std::vector<CorrespondenceRow> correspondence_sweep(const Grid& grid, std::size_t trials,
                                                    std::uint64_t seed, std::size_t workers) {
  return parallel_map(trials, workers, [&](std::size_t i) {
    auto rng = trial_rng(seed, i);
    return correspondence(random_decaying_field(grid, rng, Frame::Original));
  });
}

}  // namespace dnls::harness
