#include <cmath>

#include "doctest.h"
#include "dnls/apriori.hpp"
#include "dnls/errors.hpp"
#include "dnls/functionals.hpp"
#include "dnls/random_fields.hpp"
#include "dnls/spectral.hpp"
#include "support/oracles.hpp"

using namespace dnls;

namespace {

const double kPi = oracle::pi;

const Grid& line_grid() {
  static const Grid g = make_grid(20 * kPi, 2048);
  return g;
}

Field gaussian(double amp = 1.0, double carrier = 0.0) {
  return Field::sample(
      line_grid(), [=](double x) { return std::polar(amp * std::exp(-x * x), carrier * x); },
      Frame::Gauged);
}

}  // namespace

TEST_CASE("sharp constants") {
  const auto& c = sharp_constants();
  CHECK(c.c_gn6 == doctest::Approx(4 / (kPi * kPi)).epsilon(1e-15));
  CHECK(c.c_gn == doctest::Approx(0.979114668789372427).epsilon(1e-14));
  CHECK(std::abs(std::pow(c.c_gn, -18) - 4 * kPi * kPi / 27) < 1e-12);
  CHECK(std::abs(c.c_gn_pow_minus18 - 4 * kPi * kPi / 27) < 1e-14);
  CHECK(std::abs(c.f_argmax - 3 / (8 * kPi)) < 1e-14);
  CHECK(std::abs(c.f_max - 1 / (64 * kPi)) < 1e-14);
  CHECK(std::abs(cubic_f(c.f_argmax) - c.f_max) < 1e-14);
  CHECK(std::abs(std::pow(c.c_gn, 9) / (4 * std::sqrt(3.0)) - c.f_argmax) < 1e-14);
  CHECK(std::abs(std::pow(c.c_gn, 9) / (96 * std::sqrt(3.0)) - c.f_max) < 1e-14);
}

TEST_CASE("cubic f") {
  CHECK(cubic_f(0.0) == 0.0);
  CHECK_THROWS_AS(cubic_f(-0.1), PreconditionError);
  const auto [argmax, max] = cubic_f_max();
  CHECK(argmax == doctest::Approx(0.1193662073189215).epsilon(1e-13));
  CHECK(max == doctest::Approx(0.004973591971621729).epsilon(1e-13));
  double best = 0.0, best_x = 0.0;
  for (long i = 0; i <= 1000000; ++i) {
    const double x = i * 1e-6;
    const double fx = cubic_f(x);
    if (fx > best) {
      best = fx;
      best_x = x;
    }
  }
  CHECK(std::abs(best - max) < 1e-11);
  CHECK(std::abs(best_x - argmax) < 1e-6);
}

TEST_CASE("make_report tolerance") {
  CHECK(make_report("t", 1.0, 1.0).satisfied);
  CHECK(make_report("t", 1.0 + 5e-11, 1.0).satisfied);
  CHECK_FALSE(make_report("t", 1.0 + 2e-10, 1.0).satisfied);
  CHECK(make_report("t", 1e4 + 5e-7, 1e4).satisfied);
  const auto r = make_report("label", 2.0, 3.0);
  CHECK(r.slack == 1.0);
  CHECK(r.label == "label");
}

TEST_CASE("Gagliardo-Nirenberg checks on the Gaussian") {
  const auto v = gaussian();
  const auto s = check_gn_sextic(v);
  CHECK(s.satisfied);
  CHECK(std::abs(s.lhs - 0.7236012545582676) < 1e-8);
  CHECK(std::abs(s.rhs - 0.7978845608028654) < 1e-8);
  const auto i = check_gn_interp(v);
  CHECK(i.satisfied);
  CHECK(std::abs(i.lhs - 0.9475087265884606) < 1e-8);
  CHECK(std::abs(i.rhs - 0.9652163093072981) < 1e-8);
  CHECK_THROWS_AS(check_gn_sextic(Field::zeros(line_grid())), PreconditionError);
  CHECK_THROWS_AS(check_gn_interp(Field::zeros(line_grid())), PreconditionError);
}

TEST_CASE("GN interpolation ratio is invariant under a f(bx)") {
  const auto g = make_grid(20 * kPi, 4096);
  double ref = -1.0;
  for (double a : {0.3, 1.0, 2.5}) {
    for (double b : {0.5, 1.0, 2.0}) {
      const auto f = Field::sample(g, [=](double x) {
        const double y = b * x;
        return a * std::exp(-y * y) * cplx{1.0 + 0.5 * y, 0.2 * y * y};
      });
      const auto r = check_gn_interp(f);
      const double ratio = r.lhs / r.rhs;
      if (ref < 0) ref = ratio;
      CHECK(std::abs(ratio - ref) < 1e-10);
    }
  }
}

TEST_CASE("momentum lower bound") {
  const auto r = momentum_lower_bound(gaussian());
  CHECK(r.satisfied);
  CHECK(std::abs(r.rhs - 0.22155673136318949) < 1e-10);
  CHECK(std::abs(r.lhs - (-10.668204850780424)) < 1e-8);
  CHECK_THROWS_AS(momentum_lower_bound(Field::zeros(line_grid(), Frame::Gauged)), PreconditionError);
  CHECK_THROWS_AS(momentum_lower_bound(gaussian().retagged(Frame::Original)), FrameMismatch);

  SUBCASE("phase modulation keeps it satisfied") {
    for (double alpha = -6.0; alpha <= 6.0; alpha += 0.25) {
      CHECK(momentum_lower_bound(gaussian(1.3, alpha)).satisfied);
    }
  }
  SUBCASE("random fields of any mass") {
    for (std::uint64_t i = 0; i < 300; ++i) {
      auto rng = trial_rng(31, i);
      auto v = random_decaying_field(line_grid(), rng, Frame::Gauged);
      v = with_mass(v, uniform(rng, 0.1, 30.0));
      CHECK(momentum_lower_bound(v).satisfied);
    }
  }
}

TEST_CASE("modulation identity") {
  for (std::uint64_t i = 0; i < 50; ++i) {
    auto rng = trial_rng(41, i);
    const auto v = random_decaying_field(line_grid(), rng, Frame::Gauged);
    for (double alpha : {-3.0, -0.5, 0.0, 0.05, 1.0, 2.7, 10.0}) {
      const auto r = modulation_identity(v, alpha);
      CHECK(std::abs(r.slack) <= 1e-10 * std::max(1.0, r.rhs));
    }
  }
}

TEST_CASE("quadratic bound") {
  // a x^2 - c x - b = 0 at x = 3 with a = 1, c = 2, b = 3.
  const auto q = quadratic_bound(1.0, 3.0, 2.0);
  CHECK(q.root_squared == doctest::Approx(9.0));
  CHECK(q.relaxed == doctest::Approx(10.0));
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = trial_rng(43, i);
    const double a = uniform(rng, 0.01, 2), b = uniform(rng, 0, 5), c = uniform(rng, 0, 5);
    const auto r = quadratic_bound(a, b, c);
    CHECK(r.root_squared <= r.relaxed * (1 + 1e-14));
  }
  CHECK_THROWS_AS(quadratic_bound(0.0, 1.0, 1.0), PreconditionError);
}

TEST_CASE("l4 and h1 bounds") {
  const double ms = std::sqrt(1.2533141373155001);
  const double P = 0.22155673136318949, E = 1.2080890589056084;
  CHECK(l4_bound(ms, P, E) == doctest::Approx(113.79613947991734).epsilon(1e-12));
  CHECK(h1_bound(ms, P, E).value == doctest::Approx(12.762918318116481).epsilon(1e-12));
  CHECK(l4_bound(ms, 0, 0) == 0.0);
  CHECK(h1_bound(ms, 0, 0).value == 0.0);

  const auto neg = h1_bound(0.1, 0.0, -1.0);
  CHECK(neg.clamped);
  CHECK(neg.raw < 0.0);
  CHECK(neg.value == 0.0);

  const double edge = 2 * std::sqrt(kPi);
  CHECK_THROWS_AS(l4_bound(edge, P, E), PreconditionError);
  CHECK_THROWS_AS(h1_bound(edge * 1.01, P, E), PreconditionError);
  CHECK_THROWS_AS(l4_bound(-1.0, P, E), PreconditionError);

  double prev = 0.0;
  for (int i = 1; i < 400; ++i) {
    const double b = l4_bound(edge * i / 400.0, P, E);
    CHECK(b > prev);
    prev = b;
  }
  CHECK(prev > 1e5);

  // proof order: the l4 bound feeds the kinetic bound into the h1 bound
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto rng = trial_rng(47, i);
    const double m = uniform(rng, 0.0, edge * 0.999);
    const double p = uniform(rng, -5, 5), e = uniform(rng, -5, 5);
    CHECK(h1_bound(m, p, e).raw >= (2 * e + l4_bound(m, p, e) / 16) * (1 - 1e-14) - 1e-14);
  }
}

TEST_CASE("field-level bound checks") {
  const auto v = gaussian();
  const auto kin = kinetic_l4_bound(v);
  CHECK(kin.satisfied);
  CHECK(std::abs(kin.lhs - 1.2533141373155001) < 1e-10);
  CHECK(std::abs(kin.rhs - 2.4652655030235576) < 1e-9);
  CHECK(kinetic_l4_bound(gaussian(1.0, 20.0)).satisfied);

  const auto l4 = check_l4_bound(v);
  CHECK(std::abs(l4.lhs - kPi / 4) < 1e-9);
  CHECK(l4.satisfied);
  const auto h1 = check_h1_bound(v);
  CHECK(h1.satisfied);

  CHECK_THROWS_AS(check_h1_bound(gaussian(3.2)), PreconditionError);

  for (std::uint64_t i = 0; i < 300; ++i) {
    auto rng = trial_rng(53, i);
    auto f = random_decaying_field(line_grid(), rng, Frame::Gauged);
    CHECK(kinetic_l4_bound(with_mass(f, uniform(rng, 0.1, 30.0))).satisfied);
    f = with_mass(f, uniform(rng, 0.01, 4 * kPi * 0.999));
    CHECK(check_l4_bound(f).satisfied);
    CHECK(check_h1_bound(f).satisfied);
  }
}

TEST_CASE("gamma0") {
  CHECK(gamma0(0.0) == 1.0);
  CHECK(std::abs(gamma0(std::sqrt(kPi)) - std::sqrt(1 + 4 * kPi)) < 1e-12);
  CHECK(gamma0(std::sqrt(kPi)) == doctest::Approx(3.683255437022957).epsilon(1e-14));
  CHECK_THROWS_AS(gamma0(2 * std::sqrt(kPi)), PreconditionError);
  double prev = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double g = gamma0(2 * std::sqrt(kPi) * i / 1000.0);
    CHECK(g > prev);
    prev = g;
  }
  CHECK(below_mass_threshold(std::sqrt(4 * kPi) * 0.9999));
  CHECK_FALSE(below_mass_threshold(std::sqrt(4 * kPi)));
}
