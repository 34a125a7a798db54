#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dnls/field.hpp"
#include "dnls/functionals.hpp"
#include "dnls/multiplier.hpp"

namespace dnls {

struct SimConfig {
  /// Time step. Negative values integrate backward in time.
  double dt = 1e-4;
  /// Length of the integration interval (always positive).
  double t_end = 1.0;
  Frame frame = Frame::Gauged;
  /// 2/3-rule truncation of every product, formed on a 2x padded grid.
  bool dealias = true;
  std::size_t record_stride = 100;
  /// Relative drift of any conserved quantity that invalidates a run.
  double drift_tol = 1e-6;
  /// Sup-norm guard.
  double max_amplitude = 1e6;
  /// Test hook: false turns the flow into free Schrodinger evolution, and
  /// the drift check then watches the mass only.
  bool nonlinear = true;
  bool keep_snapshots = true;
};

/// Throws PreconditionError on an unusable configuration.
void validate(const SimConfig& cfg);

struct DiagnosticsRow {
  double t;
  double mass;
  double momentum;
  double energy;
  double h1_seminorm;  // ||f_x||_2
  double hhalf_norm;   // ||f||_{H^{1/2}}
  double modified_momentum;  // P(I f); NaN without a monitor
  double modified_energy;    // E(I f); NaN without a monitor
  double mass_drift_rel;
  double momentum_drift_rel;
  double energy_drift_rel;
};

enum class AbortReason { None, DriftTolerance, Blowup };

std::string_view to_string(AbortReason reason);

struct Trajectory {
  std::vector<double> times;
  std::vector<Field> snapshots;  // empty unless keep_snapshots
  std::vector<DiagnosticsRow> diagnostics;
  std::optional<Field> final_state;
  AbortReason abort = AbortReason::None;
  std::string abort_message;
  double abort_time = 0.0;
  std::vector<std::string> warnings;

  bool completed() const noexcept { return abort == AbortReason::None; }
};

/// Time derivative with the dispersive part removed, in u_t form:
///   original:  d/dx (|u|^2 u)
///   gauged:    (1/2)|v|^2 v_x - (1/2) v^2 conj(v_x) + (3i/16) |v|^4 v
Field nonlinearity(const Field& f, bool dealias = true);

/// One integrating-factor RK4 step. The free flow exp(i t d_xx) is applied
/// exactly in frequency space.
Field step(const Field& f, double dt, const SimConfig& cfg);

/// Integrates from f0 over [0, t_end] (or [-t_end, 0] when dt < 0).
/// Stops early with a partial trajectory on a drift or blowup trip.
Trajectory evolve(const Field& f0, const SimConfig& cfg, const IMultiplier* monitor = nullptr);

/// Diagnostics for one state; the drift columns are relative to `reference`.
DiagnosticsRow diagnose(const Field& f, double t, const ConservedSet& reference,
                        const IMultiplier* monitor);

}  // namespace dnls
