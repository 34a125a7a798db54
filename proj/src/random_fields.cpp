#include "dnls/random_fields.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "dnls/errors.hpp"
#include "dnls/functionals.hpp"

namespace dnls {

Field gaussian_sum(const Grid& grid, std::span<const GaussianComponent> components, Frame frame) {
  std::vector<cplx> values(grid.size());
  for (const auto& c : components) {
    if (!(c.width > 0.0)) throw PreconditionError("gaussian width must be positive");
    for (std::size_t j = 0; j < values.size(); ++j) {
      const double y = grid.node(j) - c.center;
      const double envelope = std::exp(-(y * y) / (c.width * c.width));
      if (envelope == 0.0) continue;
      values[j] += c.amplitude * envelope * std::polar(1.0, c.chirp * y * y + c.carrier * y);
    }
  }
  return Field(grid, std::move(values), frame);
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 of (seed, index) so neighbouring trials get unrelated streams.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return std::mt19937_64(z);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

std::vector<GaussianComponent> random_components(const Grid& grid, std::mt19937_64& rng,
                                                 const DecayingFieldOptions& opts) {
  const double quarter = 0.25 * grid.half_length();
  const int span = opts.max_components - opts.min_components + 1;
  const int count = opts.min_components + static_cast<int>(rng() % static_cast<std::uint64_t>(span));
  std::vector<GaussianComponent> comps(static_cast<std::size_t>(count));
  for (auto& c : comps) {
    const double modulus = uniform(rng, 0.05, opts.amplitude_max);
    const double phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    c.amplitude = std::polar(modulus, phase);
    c.width = uniform(rng, opts.width_min, opts.width_max);
    c.center = uniform(rng, -quarter, quarter);
    c.chirp = uniform(rng, -opts.chirp_max, opts.chirp_max);
    c.carrier = uniform(rng, -opts.carrier_max, opts.carrier_max);
  }
  return comps;
}

Field random_decaying_field(const Grid& grid, std::mt19937_64& rng, Frame frame,
                            const DecayingFieldOptions& opts) {
  const auto comps = random_components(grid, rng, opts);
  return gaussian_sum(grid, comps, frame);
}

Field with_mass(const Field& f, double target_mass) {
  const double m = mass(f);
  if (m == 0.0) throw PreconditionError("cannot rescale the mass of the zero field");
  const double s = std::sqrt(target_mass / m);
  std::vector<cplx> out(f.samples().begin(), f.samples().end());
  for (auto& z : out) z *= s;
  return f.with_samples(std::move(out));
}

Field random_wave_packets(const Grid& grid, std::mt19937_64& rng, Frame frame, double carrier_max) {
  const int count = 1 + static_cast<int>(rng() % 3);
  const double quarter = 0.25 * grid.half_length();
  std::vector<GaussianComponent> comps(static_cast<std::size_t>(count));
  for (auto& c : comps) {
    c.amplitude = std::polar(uniform(rng, 0.05, 1.0), uniform(rng, 0.0, 2.0 * std::numbers::pi));
    c.width = uniform(rng, 0.05, 0.4);
    c.center = uniform(rng, -quarter, quarter);
    const double carrier = std::exp(uniform(rng, 0.0, std::log(carrier_max)));
    const double sign = (rng() & 1U) ? 1.0 : -1.0;
    c.carrier = sign * std::round(carrier / grid.frequency_step()) * grid.frequency_step();
  }
  return gaussian_sum(grid, comps, frame);
}

std::vector<Field> mode_ladder(const Grid& grid, int per_octave, double max_frequency, Frame frame) {
  if (per_octave < 1) throw PreconditionError("mode ladder needs at least one mode per octave");
  const double limit = std::min(max_frequency, grid.nyquist() - grid.frequency_step());
  std::set<long> indices{0};
  for (int j = 0;; ++j) {
    const double xi = std::exp2(static_cast<double>(j) / per_octave) * grid.frequency_step();
    if (xi > limit) break;
    indices.insert(std::lround(xi / grid.frequency_step()));
  }
  const double amp = 1.0 / std::sqrt(2.0 * grid.half_length());
  std::vector<Field> out;
  for (long k : indices) {
    const double xi = static_cast<double>(k) * grid.frequency_step();
    out.push_back(Field::sample(grid, [&](double x) { return std::polar(amp, xi * x); }, frame));
  }
  return out;
}

}  // namespace dnls
