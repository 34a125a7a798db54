#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace dnls {

/// Which equation a field belongs to: the derivative NLS itself or its
/// gauge-transformed form.
enum class Frame { Original, Gauged };

std::string_view to_string(Frame frame);
Frame frame_from_string(std::string_view name);

/// Periodic grid on [-L, L) with n nodes.
///
/// Nodes are x_j = -L + j*dx. Frequencies are the lattice pi*k/L and are
/// stored in FFT order: index i holds k = i for i < n/2 and k = i - n
/// otherwise, so index n/2 is the unpaired Nyquist mode k = -n/2.
///
/// Grid is an immutable value; copies share the node and frequency tables.
class Grid {
 public:
  Grid(double half_length, std::size_t num_points);

  double half_length() const noexcept { return data_->half_length; }
  std::size_t size() const noexcept { return data_->nodes.size(); }
  double dx() const noexcept { return data_->dx; }
  /// Spacing pi/L of the frequency lattice.
  double frequency_step() const noexcept { return data_->dk; }
  /// |xi| of the Nyquist mode.
  double nyquist() const noexcept;

  std::span<const double> nodes() const noexcept { return data_->nodes; }
  std::span<const double> frequencies() const noexcept { return data_->frequencies; }
  double node(std::size_t j) const { return data_->nodes[j]; }
  double frequency(std::size_t i) const { return data_->frequencies[i]; }
  /// Signed lattice index k of FFT slot i.
  long wavenumber(std::size_t i) const noexcept;
  /// FFT slot holding lattice index k, for -n/2 <= k < n/2.
  std::size_t slot(long k) const noexcept;
  std::size_t nyquist_slot() const noexcept { return size() / 2; }

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.data_ == b.data_ ||
           (a.half_length() == b.half_length() && a.size() == b.size());
  }

 private:
  struct Data {
    double half_length;
    double dx;
    double dk;
    std::vector<double> nodes;
    std::vector<double> frequencies;
  };
  std::shared_ptr<const Data> data_;
};

/// Validating factory: rejects L <= 0, odd n and n < 8.
Grid make_grid(double half_length, std::size_t num_points);

}  // namespace dnls
