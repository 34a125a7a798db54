#include "dnls/field.hpp"

#include <cmath>
#include <string>

#include "dnls/errors.hpp"

namespace dnls {

namespace {

void require_size(const Grid& grid, std::size_t count, const char* what) {
  if (count != grid.size()) {
    throw PreconditionError(std::string(what) + " has " + std::to_string(count) +
                            " values but the grid has " + std::to_string(grid.size()) +
                            " points");
  }
}

}  // namespace

Field::Field(Grid grid, std::vector<cplx> samples, Frame frame)
    : grid_(std::move(grid)), samples_(std::move(samples)), frame_(frame) {
  require_size(grid_, samples_.size(), "field");
  for (const auto& z : samples_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw PreconditionError("field samples must be finite");
    }
  }
}

Field Field::zeros(const Grid& grid, Frame frame) {
  return Field(grid, std::vector<cplx>(grid.size()), frame);
}

Field Field::with_samples(std::vector<cplx> samples) const {
  return Field(grid_, std::move(samples), frame_);
}

Field Field::retagged(Frame frame) const {
  Field out = *this;
  out.frame_ = frame;
  return out;
}

Spectrum::Spectrum(Grid grid, std::vector<cplx> coeffs, Frame frame)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)), frame_(frame) {
  require_size(grid_, coeffs_.size(), "spectrum");
}

}  // namespace dnls
