#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "dnls/apriori.hpp"
#include "dnls/field.hpp"

namespace dnls::harness {

inline constexpr std::size_t kInequalityCount = 7;

/// Labels in the order the sweep reports them.
const std::array<std::string, kInequalityCount>& inequality_labels();

struct InequalityTrial {
  double mass_any;      // mass of the unrestricted field
  double mass_below;    // mass of the field used for the 4 pi-restricted bounds
  double alpha;         // modulation frequency
  std::array<InequalityReport, kInequalityCount> reports;
};

/// One trial: a random decaying field scaled to an arbitrary mass in
/// [0.05, 30] and, separately, to a mass below 4 pi.
InequalityTrial inequality_trial(const Grid& grid, std::uint64_t seed, std::uint64_t index);

struct InequalitySummary {
  std::string label;
  std::size_t trials = 0;
  std::size_t violations = 0;
  double worst_rel_slack = 0.0;  // min over trials of slack / max(1, |rhs|)
  std::size_t worst_trial = 0;
};

struct InequalitySweep {
  std::vector<InequalityTrial> trials;
  std::array<InequalitySummary, kInequalityCount> summary;
};

InequalitySweep inequality_sweep(const Grid& grid, std::size_t trials, std::uint64_t seed,
                                 std::size_t workers);

/// Relative gaps between (M, P, E) of G(u) and (M_D, P_D, E_D) of u.
struct CorrespondenceRow {
  double mass_rel;
  double momentum_rel;
  double energy_rel;
  double roundtrip_sup;  // ||G^{-1}(G(u)) - u||_inf
  double modulus_sup;    // || |G(u)| - |u| ||_inf
};

CorrespondenceRow correspondence(const Field& u);

std::vector<CorrespondenceRow> correspondence_sweep(const Grid& grid, std::size_t trials,
                                                    std::uint64_t seed, std::size_t workers);

}  // namespace dnls::harness
