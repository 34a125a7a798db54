#include "dnls/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dnls/errors.hpp"

namespace dnls {

std::string_view to_string(Frame frame) {
  return frame == Frame::Original ? "original" : "gauged";
}

Frame frame_from_string(std::string_view name) {
  if (name == "original") return Frame::Original;
  if (name == "gauged") return Frame::Gauged;
  throw ConfigError("unknown frame '" + std::string(name) + "' (expected original|gauged)");
}

Grid::Grid(double half_length, std::size_t num_points) {
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw PreconditionError("grid half-length must be positive and finite");
  }
  if (num_points % 2 != 0) {
    throw PreconditionError("grid size must be even, got " + std::to_string(num_points));
  }
  if (num_points < 8) {
    throw PreconditionError("grid size must be at least 8, got " + std::to_string(num_points));
  }
  auto data = std::make_shared<Data>();
  data->half_length = half_length;
  data->dx = 2.0 * half_length / static_cast<double>(num_points);
  data->dk = std::numbers::pi / half_length;
  data->nodes.resize(num_points);
  data->frequencies.resize(num_points);
  const auto n = static_cast<long>(num_points);
  for (long j = 0; j < n; ++j) {
    data->nodes[j] = -half_length + static_cast<double>(j) * data->dx;
    const long k = j < n / 2 ? j : j - n;
    data->frequencies[j] = static_cast<double>(k) * data->dk;
  }
  data_ = std::move(data);
}

double Grid::nyquist() const noexcept {
  return static_cast<double>(size() / 2) * frequency_step();
}

long Grid::wavenumber(std::size_t i) const noexcept {
  const auto n = static_cast<long>(size());
  const auto k = static_cast<long>(i);
  return k < n / 2 ? k : k - n;
}

std::size_t Grid::slot(long k) const noexcept {
  const auto n = static_cast<long>(size());
  return static_cast<std::size_t>(k >= 0 ? k : k + n);
}

Grid make_grid(double half_length, std::size_t num_points) {
  return Grid(half_length, num_points);
}

}  // namespace dnls
