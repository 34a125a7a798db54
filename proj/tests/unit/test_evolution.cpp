#include <cmath>

#include "doctest.h"
#include "dnls/apriori.hpp"
#include "dnls/errors.hpp"
#include "dnls/evolution.hpp"
#include "dnls/gauge.hpp"
#include "dnls/spectral.hpp"
#include "support/oracles.hpp"

using namespace dnls;

namespace {

const double kPi = oracle::pi;

double sup_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
  return m;
}

Field plane_wave(const Grid& g, double amp, double xi, double t = 0.0) {
  const double omega = xi * xi - amp * amp * xi;
  return Field::sample(g, [=](double x) { return std::polar(amp, xi * x - omega * t); });
}

Field reference_datum(const Grid& g) {
  return gauge_forward(Field::sample(g, [](double x) { return cplx{std::exp(-x * x), 0.0}; }));
}

SimConfig config(Frame frame, double dt, double t_end) {
  SimConfig c;
  c.frame = frame;
  c.dt = dt;
  c.t_end = t_end;
  return c;
}

}  // namespace

TEST_CASE("nonlinearity examples") {
  const auto g = make_grid(kPi, 64);
  CHECK(lp_norm(nonlinearity(Field::zeros(g)), kInfinity) == 0.0);
  CHECK(lp_norm(nonlinearity(Field::zeros(g, Frame::Gauged)), kInfinity) == 0.0);

  const double amp = 0.7, xi = 3.0;
  const auto u = plane_wave(g, amp, xi);
  for (bool dealias : {true, false}) {
    const auto n = nonlinearity(u, dealias);
    for (std::size_t j = 0; j < g.size(); ++j) {
      CHECK(std::abs(n[j] - cplx{0.0, xi * amp * amp} * u[j]) < 1e-13);
    }
  }

  const double c = 1.3;
  const auto v = Field::sample(g, [=](double) { return cplx{c, 0.0}; }, Frame::Gauged);
  const auto nv = nonlinearity(v);
  for (std::size_t j = 0; j < g.size(); ++j) {
    CHECK(std::abs(nv[j] - cplx{0.0, 3.0 / 16.0 * std::pow(c, 5)}) < 1e-13);
  }
}

TEST_CASE("gauged nonlinearity matches the pointwise formula on a smooth field") {
  const auto g = make_grid(10 * kPi, 1024);
  const auto v = reference_datum(g);
  const auto vx = derivative(v);
  const auto n = nonlinearity(v, false);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const cplx z = v[j], zx = vx[j];
    const double r = std::norm(z);
    const cplx expected = 0.5 * r * zx - 0.5 * z * z * std::conj(zx) + cplx{0.0, 3.0 / 16.0} * r * r * z;
    CHECK(std::abs(n[j] - expected) < 1e-11);
  }
}

TEST_CASE("free flow is the exact Schrodinger propagator") {
  const auto g = make_grid(kPi, 64);
  SimConfig cfg = config(Frame::Original, 0.01, 1.0);
  cfg.nonlinear = false;
  const double xi = 5.0, dt = 0.0137;
  const auto f = plane_wave(g, 1.0, xi);
  const auto s = step(f, dt, cfg);
  for (std::size_t j = 0; j < g.size(); ++j) {
    CHECK(std::abs(s[j] - std::polar(1.0, -xi * xi * dt) * f[j]) < 1e-14);
  }
}

TEST_CASE("one step on a plane wave converges at fifth order") {
  const auto g = make_grid(kPi, 64);
  const double amp = 1.0, xi = 5.0;
  const auto f = plane_wave(g, amp, xi);
  const auto cfg = config(Frame::Original, 0.1, 1.0);
  double prev = 0.0;
  for (double dt : {0.1, 0.05, 0.025}) {
    const double err = sup_diff(step(f, dt, cfg), plane_wave(g, amp, xi, dt));
    if (prev > 0.0) CHECK(std::log2(prev / err) == doctest::Approx(5.0).epsilon(0.05));
    prev = err;
  }
}

TEST_CASE("one-step error on a smooth datum drops by about 2^5 per halving") {
  const auto g = make_grid(10 * kPi, 512);
  const auto u = Field::sample(g, [](double x) { return std::polar(1.5 * std::exp(-x * x), 2.0 * x); });
  const auto cfg = config(Frame::Original, 0.1, 1.0);
  auto fine = [&](double dt) {
    Field s = u;
    for (int i = 0; i < 64; ++i) s = step(s, dt / 64, cfg);
    return s;
  };
  double prev = 0.0;
  for (double dt : {0.02, 0.01, 0.005}) {
    const double err = sup_diff(step(u, dt, cfg), fine(dt));
    if (prev > 0.0) CHECK(std::log2(prev / err) == doctest::Approx(5.0).epsilon(0.1));
    prev = err;
  }
}

TEST_CASE("plane-wave regression over unit time") {
  const auto g = make_grid(kPi, 64);
  const auto cfg = config(Frame::Original, 1e-3, 1.0);
  for (auto [amp, xi] : {std::pair{0.8, 3.0}, std::pair{1.5, -2.0}, std::pair{1.0, 5.0}}) {
    const auto traj = evolve(plane_wave(g, amp, xi), cfg);
    REQUIRE(traj.completed());
    CHECK(sup_diff(*traj.final_state, plane_wave(g, amp, xi, 1.0)) < 1e-8);
  }
}

TEST_CASE("free evolution conserves mass over many steps") {
  const auto g = make_grid(10 * kPi, 256);
  SimConfig cfg = config(Frame::Original, 1e-3, 10.0);
  cfg.nonlinear = false;
  cfg.record_stride = 1000;
  cfg.keep_snapshots = false;
  const auto u = Field::sample(g, [](double x) { return std::exp(-x * x) * cplx{1.0, 0.5}; });
  const auto traj = evolve(u, cfg);
  REQUIRE(traj.completed());
  for (const auto& d : traj.diagnostics) CHECK(std::abs(d.mass_drift_rel) < 1e-13);
}

TEST_CASE("trajectory bookkeeping") {
  const auto g = make_grid(20 * kPi, 1024);
  const auto v = reference_datum(g);
  SimConfig cfg = config(Frame::Gauged, 1e-3, 0.105);
  cfg.record_stride = 20;
  const auto traj = evolve(v, cfg);
  REQUIRE(traj.completed());
  CHECK(traj.times.size() == traj.diagnostics.size());
  CHECK(traj.snapshots.size() == traj.times.size());
  CHECK(traj.times.front() == 0.0);
  CHECK(traj.times.back() == doctest::Approx(0.105).epsilon(1e-12));
  for (std::size_t i = 1; i < traj.times.size(); ++i) {
    CHECK(traj.times[i] > traj.times[i - 1]);
    CHECK(traj.diagnostics[i].t == traj.times[i]);
  }
  CHECK(traj.final_state->frame() == Frame::Gauged);
  CHECK(std::isnan(traj.diagnostics.front().modified_energy));
  CHECK(traj.diagnostics.front().mass == doctest::Approx(mass(v)).epsilon(1e-14));

  SUBCASE("monitor columns") {
    const IMultiplier m(4.0, g);
    const auto with = evolve(v, cfg, &m);
    CHECK(std::isfinite(with.diagnostics.back().modified_energy));
    CHECK(std::isfinite(with.diagnostics.back().modified_momentum));
    const IMultiplier wrong(4.0, make_grid(kPi, 64));
    CHECK_THROWS_AS(evolve(v, cfg, &wrong), PreconditionError);
  }
  SUBCASE("snapshots can be dropped") {
    cfg.keep_snapshots = false;
    CHECK(evolve(v, cfg).snapshots.empty());
  }
}

TEST_CASE("short gauged run conserves the triple and stays under the a-priori ceiling") {
  const auto g = make_grid(20 * kPi, 1024);
  const auto v = reference_datum(g);
  SimConfig cfg = config(Frame::Gauged, 1e-3, 0.5);
  cfg.record_stride = 50;
  const auto traj = evolve(v, cfg);
  REQUIRE(traj.completed());
  const auto q = conserved(v);
  const double ceiling = h1_bound(std::sqrt(q.mass), q.momentum, q.energy).value;
  for (const auto& d : traj.diagnostics) {
    CHECK(std::abs(d.mass_drift_rel) < 1e-10);
    CHECK(std::abs(d.momentum_drift_rel) < 1e-10);
    CHECK(std::abs(d.energy_drift_rel) < 1e-10);
    CHECK(d.h1_seminorm * d.h1_seminorm <= ceiling * (1 + 1e-6));
  }
}

TEST_CASE("time reversibility") {
  const auto g = make_grid(20 * kPi, 1024);
  const auto v = reference_datum(g);
  auto cfg = config(Frame::Gauged, 1e-3, 0.2);
  const auto forward = evolve(v, cfg);
  cfg.dt = -1e-3;
  const auto back = evolve(*forward.final_state, cfg);
  CHECK(back.times.back() == doctest::Approx(-0.2));
  CHECK(sup_diff(*back.final_state, v) < 1e-8);
}

TEST_CASE("partial last step lands on t_end") {
  const auto g = make_grid(kPi, 64);
  auto cfg = config(Frame::Original, 0.3, 1.0);
  cfg.drift_tol = 1.0;
  const auto traj = evolve(plane_wave(g, 0.8, 3.0), cfg);
  REQUIRE(traj.completed());
  CHECK(traj.times.back() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("aborts") {
  const auto g = make_grid(20 * kPi, 512);
  const auto v = reference_datum(g);
  SUBCASE("drift tolerance") {
    auto cfg = config(Frame::Gauged, 1e-2, 1.0);
    cfg.drift_tol = 1e-15;
    cfg.record_stride = 1;
    const auto traj = evolve(v, cfg);
    CHECK(traj.abort == AbortReason::DriftTolerance);
    CHECK_FALSE(traj.completed());
    CHECK(traj.abort_time > 0.0);
    CHECK(traj.abort_time < 1.0);
    CHECK_FALSE(traj.abort_message.empty());
    CHECK(traj.times.size() == traj.diagnostics.size());
  }
  SUBCASE("blowup guard") {
    auto cfg = config(Frame::Gauged, 1e-2, 1.0);
    cfg.max_amplitude = 0.5;
    const auto traj = evolve(v, cfg);
    CHECK(traj.abort == AbortReason::Blowup);
    CHECK(to_string(traj.abort) == "blowup");
  }
  CHECK(to_string(AbortReason::None) == "none");
  CHECK(to_string(AbortReason::DriftTolerance) == "drift_tolerance");
}

TEST_CASE("configuration checks") {
  const auto g = make_grid(20 * kPi, 512);
  const auto v = reference_datum(g);
  auto cfg = config(Frame::Gauged, 1e-3, 1.0);
  CHECK_THROWS_AS(evolve(v.retagged(Frame::Original), cfg), FrameMismatch);
  cfg.dt = 0.0;
  CHECK_THROWS_AS(validate(cfg), PreconditionError);
  cfg.dt = 2.0;
  CHECK_THROWS_AS(validate(cfg), PreconditionError);
  cfg.dt = 1e-3;
  cfg.record_stride = 0;
  CHECK_THROWS_AS(validate(cfg), PreconditionError);
  cfg.record_stride = 1;
  cfg.drift_tol = -1.0;
  CHECK_THROWS_AS(validate(cfg), PreconditionError);
  cfg.drift_tol = 1e-6;
  cfg.max_amplitude = 0.0;
  CHECK_THROWS_AS(validate(cfg), PreconditionError);
  cfg.max_amplitude = 1e6;
  CHECK_NOTHROW(validate(cfg));

  // dx^2 / 2 is about 0.03 here; a larger step only warns
  auto big = config(Frame::Gauged, 0.05, 0.1);
  CHECK_FALSE(evolve(v, big).warnings.empty());
  CHECK(evolve(v, config(Frame::Gauged, 0.01, 0.02)).warnings.empty());
}
