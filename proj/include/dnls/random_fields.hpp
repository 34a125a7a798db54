#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "dnls/field.hpp"

namespace dnls {

/// A * exp(-(x - x0)^2 / w^2) * exp(i (chirp (x - x0)^2 + carrier (x - x0))).
struct GaussianComponent {
  cplx amplitude{1.0, 0.0};
  double width = 1.0;
  double center = 0.0;
  double chirp = 0.0;
  double carrier = 0.0;
};

Field gaussian_sum(const Grid& grid, std::span<const GaussianComponent> components,
                   Frame frame = Frame::Original);

/// Independent, reproducible stream for trial `index` of a sweep seeded with `seed`.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index);

/// Uniform double in [lo, hi) built from the top 53 bits of one draw.
double uniform(std::mt19937_64& rng, double lo, double hi);

struct DecayingFieldOptions {
  int min_components = 1;
  int max_components = 6;
  double width_min = 0.5;
  double width_max = 3.0;
  double amplitude_max = 2.0;
  double chirp_max = 1.0;
  double carrier_max = 3.0;
};

/// Sum of random Gaussians centered in [-L/4, L/4] with complex amplitudes,
/// chirps and carriers.
std::vector<GaussianComponent> random_components(const Grid& grid, std::mt19937_64& rng,
                                                 const DecayingFieldOptions& opts = {});
Field random_decaying_field(const Grid& grid, std::mt19937_64& rng, Frame frame,
                            const DecayingFieldOptions& opts = {});

/// Scales f so that ||f||_2^2 equals target_mass.
Field with_mass(const Field& f, double target_mass);

/// 1-3 narrow Gaussian packets with random widths in [0.05, 0.4] and integer
/// lattice carriers log-uniform in [1, carrier_max]; used for the I-operator studies.
Field random_wave_packets(const Grid& grid, std::mt19937_64& rng, Frame frame, double carrier_max);

/// Unit-L2 single lattice modes e^{i xi x} at xi = 0 and a geometric ladder
/// of `per_octave` frequencies per doubling up to max_frequency.
std::vector<Field> mode_ladder(const Grid& grid, int per_octave, double max_frequency,
                               Frame frame = Frame::Gauged);

}  // namespace dnls
