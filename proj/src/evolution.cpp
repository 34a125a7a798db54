#include "dnls/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dnls/errors.hpp"
#include "dnls/fft.hpp"
#include "dnls/spectral.hpp"

namespace dnls {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Right-hand sides and IF-RK4 stages on raw DFT coefficients
// F_k = sum_j u_j e^{-2 pi i jk/n}.
class Propagator {
 public:
  Propagator(const Grid& grid, Frame frame, bool dealias, bool nonlinear)
      : grid_(grid),
        frame_(frame),
        dealias_(dealias),
        nonlinear_(nonlinear),
        n_(grid.size()),
        m_(dealias ? 2 * grid.size() : grid.size()),
        cutoff_(dealias ? static_cast<long>(grid.size() / 3)
                        : static_cast<long>(grid.size() / 2) - 1),
        u_(m_),
        ux_(m_),
        a_(n_),
        b_(n_),
        c_(n_),
        d_(n_),
        stage_(n_) {}

  double last_sup() const noexcept { return last_sup_; }

  void rhs(std::span<const cplx> F, std::span<cplx> out) {
    if (!nonlinear_) {
      std::fill(out.begin(), out.end(), cplx{});
      last_sup_ = 0.0;
      return;
    }
    const double inv_n = 1.0 / static_cast<double>(n_);
    std::fill(u_.begin(), u_.end(), cplx{});
    const bool gauged = frame_ == Frame::Gauged;
    if (gauged) std::fill(ux_.begin(), ux_.end(), cplx{});
    for (std::size_t i = 0; i < n_; ++i) {
      const long k = grid_.wavenumber(i);
      if (!kept(k)) continue;
      const std::size_t p = padded_slot(k);
      u_[p] = F[i] * inv_n;
      if (gauged) ux_[p] = cplx{0.0, grid_.frequency(i)} * F[i] * inv_n;
    }
    fft::backward(u_, u_);
    if (gauged) fft::backward(ux_, ux_);

    double sup = 0.0;
    for (std::size_t j = 0; j < m_; ++j) {
      const cplx v = u_[j];
      const double r2 = std::norm(v);
      sup = std::max(sup, r2);
      if (gauged) {
        const cplx vx = ux_[j];
        u_[j] = 0.5 * r2 * vx - 0.5 * v * v * std::conj(vx) + cplx{0.0, 3.0 / 16.0} * r2 * r2 * v;
      } else {
        u_[j] = r2 * v;
      }
    }
    last_sup_ = std::sqrt(sup);
    fft::forward(u_, u_);

    const double back = static_cast<double>(n_) / static_cast<double>(m_);
    for (std::size_t i = 0; i < n_; ++i) {
      const long k = grid_.wavenumber(i);
      if (!kept(k)) {
        out[i] = 0.0;
        continue;
      }
      cplx value = u_[padded_slot(k)] * back;
      if (!gauged) value *= cplx{0.0, grid_.frequency(i)};
      out[i] = value;
    }
  }

  void step(std::vector<cplx>& F, double dt) {
    const auto& half = half_factors(dt);
    rhs(F, a_);
    for (std::size_t i = 0; i < n_; ++i) stage_[i] = half[i] * (F[i] + 0.5 * dt * a_[i]);
    rhs(stage_, b_);
    for (std::size_t i = 0; i < n_; ++i) stage_[i] = half[i] * F[i] + 0.5 * dt * b_[i];
    rhs(stage_, c_);
    for (std::size_t i = 0; i < n_; ++i) {
      stage_[i] = half[i] * half[i] * F[i] + dt * half[i] * c_[i];
    }
    rhs(stage_, d_);
    for (std::size_t i = 0; i < n_; ++i) {
      const cplx e = half[i];
      const cplx e2 = e * e;
      F[i] = e2 * F[i] + dt / 6.0 * (e2 * a_[i] + 2.0 * e * (b_[i] + c_[i]) + d_[i]);
    }
  }

 private:
  // The Nyquist mode never enters a product; with dealiasing only |k| <= n/3 does.
  bool kept(long k) const noexcept { return std::abs(k) <= cutoff_; }

  std::size_t padded_slot(long k) const noexcept {
    const auto m = static_cast<long>(m_);
    return static_cast<std::size_t>(k >= 0 ? k : k + m);
  }

  const std::vector<cplx>& half_factors(double dt) {
    for (auto& [key, factors] : factor_cache_) {
      if (key == dt) return factors;
    }
    std::vector<cplx> factors(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      const double xi = grid_.frequency(i);
      factors[i] = std::polar(1.0, -xi * xi * 0.5 * dt);
    }
    if (factor_cache_.size() >= 4) factor_cache_.erase(factor_cache_.begin());
    factor_cache_.emplace_back(dt, std::move(factors));
    return factor_cache_.back().second;
  }

  Grid grid_;
  Frame frame_;
  bool dealias_;
  bool nonlinear_;
  std::size_t n_;
  std::size_t m_;
  long cutoff_;
  std::vector<cplx> u_, ux_;
  std::vector<cplx> a_, b_, c_, d_, stage_;
  std::vector<std::pair<double, std::vector<cplx>>> factor_cache_;
  double last_sup_ = 0.0;
};

std::vector<cplx> dft(const Field& f) {
  std::vector<cplx> F(f.size());
  fft::forward(f.samples(), F);
  return F;
}

Field from_dft(const Field& like, std::vector<cplx> F) {
  fft::backward(F, F);
  const double inv_n = 1.0 / static_cast<double>(F.size());
  for (auto& z : F) z *= inv_n;
  return like.with_samples(std::move(F));
}

bool all_finite(std::span<const cplx> values) {
  for (const auto& z : values) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

double relative_drift(double value, double reference) {
  return std::abs(value - reference) / std::max(std::abs(reference), 1e-12);
}

}  // namespace

std::string_view to_string(AbortReason reason) {
  switch (reason) {
    case AbortReason::None: return "none";
    case AbortReason::DriftTolerance: return "drift_tolerance";
    case AbortReason::Blowup: return "blowup";
  }
  return "unknown";
}

void validate(const SimConfig& cfg) {
  if (!(cfg.dt != 0.0) || !std::isfinite(cfg.dt)) throw PreconditionError("dt must be nonzero");
  if (!(cfg.t_end > 0.0) || !std::isfinite(cfg.t_end)) {
    throw PreconditionError("t_end must be positive");
  }
  if (cfg.t_end < std::abs(cfg.dt) * (1.0 - 1e-12)) throw PreconditionError("t_end must be >= |dt|");
  if (cfg.record_stride == 0) throw PreconditionError("record_stride must be positive");
  if (!(cfg.drift_tol > 0.0)) throw PreconditionError("drift_tol must be positive");
  if (!(cfg.max_amplitude > 0.0)) throw PreconditionError("max_amplitude must be positive");
}

Field nonlinearity(const Field& f, bool dealias) {
  Propagator prop(f.grid(), f.frame(), dealias, true);
  const auto F = dft(f);
  std::vector<cplx> out(F.size());
  prop.rhs(F, out);
  return from_dft(f, std::move(out));
}

Field step(const Field& f, double dt, const SimConfig& cfg) {
  if (f.frame() != cfg.frame) throw FrameMismatch("field frame does not match the configured equation");
  Propagator prop(f.grid(), f.frame(), cfg.dealias, cfg.nonlinear);
  auto F = dft(f);
  prop.step(F, dt);
  if (!all_finite(F)) throw PreconditionError("non-finite state after one step");
  return from_dft(f, std::move(F));
}

DiagnosticsRow diagnose(const Field& f, double t, const ConservedSet& reference,
                        const IMultiplier* monitor) {
  const auto q = conserved(f);
  const auto spec = transform(f);
  DiagnosticsRow row{};
  row.t = t;
  row.mass = q.mass;
  row.momentum = q.momentum;
  row.energy = q.energy;
  row.h1_seminorm = homogeneous_norm(spec, 1.0);
  row.hhalf_norm = bessel_norm(spec, 0.5);
  row.modified_momentum = kNaN;
  row.modified_energy = kNaN;
  if (monitor != nullptr) {
    const auto qi = conserved(inverse_transform(apply_I(spec, *monitor)));
    row.modified_momentum = qi.momentum;
    row.modified_energy = qi.energy;
  }
  row.mass_drift_rel = relative_drift(q.mass, reference.mass);
  row.momentum_drift_rel = relative_drift(q.momentum, reference.momentum);
  row.energy_drift_rel = relative_drift(q.energy, reference.energy);
  return row;
}

Trajectory evolve(const Field& f0, const SimConfig& cfg, const IMultiplier* monitor) {
  validate(cfg);
  if (f0.frame() != cfg.frame) {
    throw FrameMismatch("initial datum frame does not match the configured equation");
  }
  if (monitor != nullptr && !(monitor->grid() == f0.grid())) {
    throw PreconditionError("monitor multiplier built for a different grid");
  }

  Trajectory traj;
  const auto& g = f0.grid();
  if (std::abs(cfg.dt) > 0.5 * g.dx() * g.dx()) {
    std::ostringstream msg;
    msg << "dt = " << cfg.dt << " exceeds the explicit stability ceiling 0.5*dx^2 = "
        << 0.5 * g.dx() * g.dx() << "; the integrating factor handles the linear part";
    traj.warnings.push_back(msg.str());
  }

  const double abs_dt = std::abs(cfg.dt);
  const double direction = cfg.dt > 0.0 ? 1.0 : -1.0;
  const auto full_steps = static_cast<std::size_t>(std::floor(cfg.t_end / abs_dt * (1.0 + 1e-12)));
  const double remainder = cfg.t_end - static_cast<double>(full_steps) * abs_dt;
  const bool partial_last = remainder > 1e-12 * cfg.t_end;
  const std::size_t total_steps = full_steps + (partial_last ? 1 : 0);

  const ConservedSet reference = conserved(f0);
  auto record = [&](const Field& f, double t) {
    traj.times.push_back(t);
    traj.diagnostics.push_back(diagnose(f, t, reference, monitor));
    if (cfg.keep_snapshots) traj.snapshots.push_back(f);
  };
  record(f0, 0.0);

  Propagator prop(g, cfg.frame, cfg.dealias, cfg.nonlinear);
  auto F = dft(f0);
  double t = 0.0;
  for (std::size_t s = 1; s <= total_steps; ++s) {
    const double h = (partial_last && s == total_steps) ? remainder : abs_dt;
    prop.step(F, direction * h);
    t = direction * (static_cast<double>(s - 1) * abs_dt + h);
    if (!all_finite(F) || prop.last_sup() > cfg.max_amplitude) {
      traj.abort = AbortReason::Blowup;
      traj.abort_time = t;
      std::ostringstream msg;
      msg << "sup-norm guard tripped at t = " << t << " (limit " << cfg.max_amplitude << ")";
      traj.abort_message = msg.str();
      break;
    }
    if (s % cfg.record_stride == 0 || s == total_steps) {
      Field current = from_dft(f0, F);
      if (lp_norm(current, kInfinity) > cfg.max_amplitude) {
        traj.abort = AbortReason::Blowup;
        traj.abort_time = t;
        traj.abort_message = "sup-norm guard tripped at a record";
        break;
      }
      record(current, t);
      const auto& row = traj.diagnostics.back();
      // The free flow only keeps the mass; P and E carry nonlinear terms.
      const double worst =
          cfg.nonlinear
              ? std::max({row.mass_drift_rel, row.momentum_drift_rel, row.energy_drift_rel})
              : row.mass_drift_rel;
      if (worst > cfg.drift_tol) {
        traj.abort = AbortReason::DriftTolerance;
        traj.abort_time = t;
        std::ostringstream msg;
        msg << "relative conservation drift " << worst << " exceeds " << cfg.drift_tol
            << " at t = " << t;
        traj.abort_message = msg.str();
        traj.final_state = std::move(current);
        return traj;
      }
      traj.final_state = std::move(current);
    }
  }
  if (!traj.final_state && all_finite(F)) traj.final_state = from_dft(f0, F);
  return traj;
}

}  // namespace dnls
