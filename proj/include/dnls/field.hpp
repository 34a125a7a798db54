#pragma once

#include <complex>
#include <span>
#include <vector>

#include "dnls/grid.hpp"

namespace dnls {

using cplx = std::complex<double>;

/// Complex samples of u (original frame) or v (gauged frame) on a grid.
/// Samples are always finite; the frame tag never changes after construction.
class Field {
 public:
  Field(Grid grid, std::vector<cplx> samples, Frame frame = Frame::Original);

  static Field zeros(const Grid& grid, Frame frame = Frame::Original);

  /// Samples `fn(x_j)` at every node.
  template <class Fn>
  static Field sample(const Grid& grid, Fn&& fn, Frame frame = Frame::Original) {
    std::vector<cplx> values(grid.size());
    for (std::size_t j = 0; j < values.size(); ++j) values[j] = fn(grid.node(j));
    return Field(grid, std::move(values), frame);
  }

  const Grid& grid() const noexcept { return grid_; }
  Frame frame() const noexcept { return frame_; }
  std::size_t size() const noexcept { return samples_.size(); }
  std::span<const cplx> samples() const noexcept { return samples_; }
  const cplx& operator[](std::size_t j) const { return samples_[j]; }

  /// Same grid and frame, new samples.
  Field with_samples(std::vector<cplx> samples) const;
  /// Same samples reinterpreted in another frame. Only the gauge maps and
  /// explicit user conversions should need this.
  Field retagged(Frame frame) const;

 private:
  Grid grid_;
  std::vector<cplx> samples_;
  Frame frame_;
};

/// Fourier coefficients of a field, stored in the grid's FFT order.
///
/// Normalized as the continuous transform (2 pi)^{-1/2} \int f e^{-i xi x} dx
/// evaluated by the rectangle rule, so that
///   ||f||_2^2 = sum_k |c_k|^2 * (pi / L).
class Spectrum {
 public:
  Spectrum(Grid grid, std::vector<cplx> coeffs, Frame frame = Frame::Original);

  const Grid& grid() const noexcept { return grid_; }
  Frame frame() const noexcept { return frame_; }
  std::size_t size() const noexcept { return coeffs_.size(); }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  std::span<cplx> coeffs() noexcept { return coeffs_; }
  const cplx& operator[](std::size_t i) const { return coeffs_[i]; }
  cplx& operator[](std::size_t i) { return coeffs_[i]; }

 private:
  Grid grid_;
  std::vector<cplx> coeffs_;
  Frame frame_;
};

}  // namespace dnls
