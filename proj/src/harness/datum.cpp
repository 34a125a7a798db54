#include "dnls/harness/datum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dnls/errors.hpp"
#include "dnls/gauge.hpp"
#include "dnls/harness/io.hpp"
#include "dnls/random_fields.hpp"

namespace dnls::harness {

Grid parse_grid(const ConfigMap& cfg, double default_L, long default_n) {
  const double L = cfg.get_real("grid.L", default_L);
  const long n = cfg.get_int("grid.n", default_n);
  if (!(L > 0.0)) throw ConfigError("grid.L must be positive");
  if (n < 8 || n % 2 != 0) throw ConfigError("grid.n must be even and at least 8");
  return make_grid(L, static_cast<std::size_t>(n));
}

namespace {

std::vector<GaussianComponent> parse_components(const std::string& text) {
  std::vector<GaussianComponent> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    const auto values = parse_reals(item);
    if (values.size() < 2 || values.size() > 4) {
      throw ConfigError("each gaussian component needs A,w[,x0[,chirp]]: '" + item + "'");
    }
    GaussianComponent c;
    c.amplitude = values[0];
    c.width = values[1];
    if (values.size() > 2) c.center = values[2];
    if (values.size() > 3) c.chirp = values[3];
    if (!(c.width > 0.0)) throw ConfigError("gaussian width must be positive");
    out.push_back(c);
  }
  if (out.empty()) throw ConfigError("datum.components is empty");
  return out;
}

}  // namespace

Field parse_datum(const ConfigMap& cfg, const Grid& grid) {
  const std::string family = cfg.get_string("datum.family", "gaussian");
  const Frame frame = frame_from_string(cfg.get_string("datum.frame", "original"));
  if (family == "gaussian") {
    GaussianComponent c;
    c.amplitude = cfg.get_real("datum.A", 1.0);
    c.width = cfg.get_real("datum.w", 1.0);
    c.center = cfg.get_real("datum.x0", 0.0);
    c.chirp = cfg.get_real("datum.chirp", 0.0);
    c.carrier = cfg.get_real("datum.carrier", 0.0);
    if (!(c.width > 0.0)) throw ConfigError("datum.w must be positive");
    return gaussian_sum(grid, std::span(&c, 1), frame);
  }
  if (family == "multi-gaussian") {
    const auto comps = parse_components(cfg.get_string("datum.components"));
    return gaussian_sum(grid, comps, frame);
  }
  if (family == "plane-wave") {
    const double amp = cfg.get_real("datum.A", 1.0);
    const double xi0 = cfg.get_real("datum.xi0");
    const double k = xi0 / grid.frequency_step();
    if (std::abs(k - std::round(k)) > 1e-9 * std::max(1.0, std::abs(k))) {
      throw PreconditionError("plane-wave frequency " + format_real(xi0) +
                              " is not on the lattice (pi/L) Z of this grid");
    }
    const double xi = std::round(k) * grid.frequency_step();
    return Field::sample(grid, [=](double x) { return std::polar(amp, xi * x); }, frame);
  }
  if (family == "file") {
    return read_field_csv(cfg.get_string("datum.path"), grid, frame);
  }
  throw ConfigError("unknown datum family '" + family + "'");
}

Field to_frame(const Field& f, Frame target) {
  if (f.frame() == target) return f;
  return target == Frame::Gauged ? gauge_forward(f) : gauge_inverse(f);
}

}  // namespace dnls::harness
