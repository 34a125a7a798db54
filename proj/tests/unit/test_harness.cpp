#include <cmath>
#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "dnls/errors.hpp"
#include "dnls/gauge.hpp"
#include "dnls/harness/config.hpp"
#include "dnls/harness/datum.hpp"
#include "dnls/harness/io.hpp"
#include "dnls/harness/pool.hpp"
#include "dnls/harness/scenarios.hpp"
#include "dnls/harness/sweeps.hpp"
#include "dnls/random_fields.hpp"
#include "support/oracles.hpp"

using namespace dnls;
using namespace dnls::harness;
namespace fs = std::filesystem;

namespace {

const double kPi = oracle::pi;

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / "dnls-harness-tests" / name;
  fs::remove_all(p);
  return p;
}

int run_scenario(const std::string& scenario, const std::string& cfg_text, const fs::path& out,
                 std::optional<std::size_t> workers = std::nullopt, std::string* err_text = nullptr) {
  RunOptions o;
  o.scenario = scenario;
  o.config = parse_key_values(cfg_text);
  o.out = out;
  o.workers = workers;
  std::ostringstream err;
  const int rc = run(o, err);
  if (err_text) *err_text = err.str();
  return rc;
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(read_text(p)); }

}  // namespace

TEST_CASE("parse_real with pi factors") {
  CHECK(parse_real("1.5") == 1.5);
  CHECK(parse_real("pi") == kPi);
  CHECK(parse_real("20pi") == 20 * kPi);
  CHECK(parse_real("0.5*pi") == 0.5 * kPi);
  CHECK(parse_real("-3 pi") == -3 * kPi);
  CHECK(parse_real("1e-4") == 1e-4);
  CHECK_THROWS_AS(parse_real("abc"), ConfigError);
  CHECK_THROWS_AS(parse_real("1.5x"), ConfigError);
  CHECK_THROWS_AS(parse_real(""), ConfigError);
}

TEST_CASE("parse_int, parse_bool, parse_reals") {
  CHECK(parse_int("2048") == 2048);
  CHECK_THROWS_AS(parse_int("2.5"), ConfigError);
  CHECK(parse_bool("true"));
  CHECK_FALSE(parse_bool("0"));
  CHECK_THROWS_AS(parse_bool("maybe"), ConfigError);
  const auto v = parse_reals("[16, 32, 2pi]");
  REQUIRE(v.size() == 3);
  CHECK(v[2] == 2 * kPi);
  CHECK(parse_reals("1,2").size() == 2);
}

TEST_CASE("format_real round-trips") {
  for (double x : {0.1, 1e-6, 20 * kPi, 3.1666, -2.5e300}) CHECK(parse_real(format_real(x)) == x);
}

TEST_CASE("key-value configs") {
  const auto c = parse_key_values("# comment\ngrid.n = 1024\n\ndatum.family = gaussian  # trailing\n");
  CHECK(c.get_int("grid.n") == 1024);
  CHECK(c.get_string("datum.family") == "gaussian");
  CHECK(c.get_real("missing", 2.0) == 2.0);
  CHECK(c.resolved().at("missing") == "2");
  CHECK_THROWS_AS(c.get_real("absent"), ConfigError);
  CHECK_THROWS_AS(parse_key_values("a = 1\na = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_key_values("no equals sign\n"), ConfigError);
}

TEST_CASE("JSON configs flatten to dotted keys") {
  const auto c = parse_json_config(R"({"grid": {"L": "20pi", "n": 512}, "imethod": {"cutoffs": [16, 32]},
                                       "sim": {"dealias": false}})");
  CHECK(c.get_real("grid.L") == 20 * kPi);
  CHECK(c.get_int("grid.n") == 512);
  CHECK(c.get_reals("imethod.cutoffs").size() == 2);
  CHECK_FALSE(c.get_bool("sim.dealias", true));
  CHECK_THROWS_AS(parse_json_config("{not json"), ConfigError);
}

TEST_CASE("CSV cells") {
  Table t{{"a", "b", "c"}, {}};
  t.add({0.1, 3L, std::string("x")});
  t.add({std::numeric_limits<double>::quiet_NaN(), -1L, std::string("y")});
  CHECK(t.to_csv() == "a,b,c\n0.10000000000000001,3,x\nnan,-1,y\n");
  CHECK_THROWS(t.add({1.0}));
}

TEST_CASE("sha256 of known strings") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("field CSV roundtrip is bit-identical") {
  const Grid g = make_grid(20 * kPi, 256);
  auto rng = trial_rng(7, 0);
  const Field f = random_decaying_field(g, rng, Frame::Original);
  const auto dir = scratch("roundtrip");
  fs::create_directories(dir);
  write_text(dir / "f.csv", field_table(f).to_csv());
  const Field back = read_field_csv(dir / "f.csv", g, Frame::Original);
  for (std::size_t j = 0; j < g.size(); ++j) CHECK(back[j] == f[j]);
  CHECK_THROWS_AS(read_field_csv(dir / "f.csv", make_grid(20 * kPi, 128), Frame::Original), ConfigError);
  CHECK_THROWS_AS(read_field_csv(dir / "f.csv", make_grid(10 * kPi, 256), Frame::Original), ConfigError);
}

TEST_CASE("datum families") {
  const Grid g = make_grid(20 * kPi, 1024);
  auto c = parse_key_values("datum.family = gaussian\ndatum.A = 2\ndatum.w = 0.5\n");
  const Field f = parse_datum(c, g);
  CHECK(f.frame() == Frame::Original);
  CHECK(std::abs(f[g.size() / 2]) == doctest::Approx(2.0));

  c = parse_key_values("datum.family = multi-gaussian\ndatum.components = 1,1,-3; 1,1,3\n");
  const Field m = parse_datum(c, g);
  CHECK(std::abs(m[g.size() / 2]) == doctest::Approx(2 * std::exp(-9.0)).epsilon(1e-12));

  c = parse_key_values("datum.family = plane-wave\ndatum.A = 1\ndatum.xi0 = 0.3\n");
  CHECK(std::abs(parse_datum(c, g)[5]) == doctest::Approx(1.0));
  c = parse_key_values("datum.family = plane-wave\ndatum.A = 1\ndatum.xi0 = 0.31\n");
  CHECK_THROWS_AS(parse_datum(c, g), PreconditionError);

  c = parse_key_values("datum.family = sawtooth\n");
  CHECK_THROWS_AS(parse_datum(c, g), ConfigError);
  c = parse_key_values("datum.family = file\ndatum.path = /nonexistent/f.csv\n");
  CHECK_THROWS_AS(parse_datum(c, g), ConfigError);
}

TEST_CASE("to_frame applies the gauge map") {
  const Grid g = make_grid(20 * kPi, 1024);
  const auto c = parse_key_values("datum.family = gaussian\n");
  const Field u = parse_datum(c, g);
  const Field v = to_frame(u, Frame::Gauged);
  CHECK(v.frame() == Frame::Gauged);
  const Field ref = gauge_forward(u);
  for (std::size_t j = 0; j < g.size(); ++j) CHECK(v[j] == ref[j]);
  CHECK(to_frame(u, Frame::Original).frame() == Frame::Original);
  const Field back = to_frame(v, Frame::Original);
  for (std::size_t j = 0; j < g.size(); ++j) CHECK(std::abs(back[j] - u[j]) < 1e-13);
}

TEST_CASE("parallel_map keeps index order and rethrows the lowest failure") {
  const auto r = parallel_map(50, 4, [](std::size_t i) { return static_cast<int>(i * i); });
  for (std::size_t i = 0; i < r.size(); ++i) CHECK(r[i] == static_cast<int>(i * i));
  CHECK_THROWS_WITH(parallel_map(10, 3,
                                 [](std::size_t i) -> int {
                                   if (i == 4 || i == 7) throw std::runtime_error(std::to_string(i));
                                   return 0;
                                 }),
                    "4");
}

TEST_CASE("inequality sweep is reproducible and independent of the worker count") {
  const Grid g = make_grid(20 * kPi, 1024);
  const auto a = inequality_sweep(g, 24, 11, 1);
  const auto b = inequality_sweep(g, 24, 11, 3);
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    CHECK(a.trials[i].alpha == b.trials[i].alpha);
    for (std::size_t k = 0; k < kInequalityCount; ++k) {
      CHECK(a.trials[i].reports[k].slack == b.trials[i].reports[k].slack);
    }
  }
  for (const auto& s : a.summary) CHECK(s.violations == 0);
  CHECK(a.trials[0].mass_below < 4 * kPi);
}

TEST_CASE("output directory precedence") {
  RunOptions o;
  o.scenario = "simulate";
  ::unsetenv(kOutEnv);
  CHECK(resolve_out_dir(o) == fs::path("dnls-out") / "simulate");
  ::setenv(kOutEnv, "/tmp/envroot", 1);
  CHECK(resolve_out_dir(o) == fs::path("/tmp/envroot") / "simulate");
  o.config.set("out", "/tmp/cfgout");
  CHECK(resolve_out_dir(o) == fs::path("/tmp/cfgout"));
  o.out = "/tmp/cliout";
  CHECK(resolve_out_dir(o) == fs::path("/tmp/cliout"));
  ::unsetenv(kOutEnv);
}

TEST_CASE("exit codes") {
  std::string err;
  CHECK(run_scenario("no-such", "", scratch("x0"), std::nullopt, &err) == kExitConfig);
  CHECK(err.find("unknown scenario") != std::string::npos);
  CHECK(run_scenario("simulate", "grid.n = abc\n", scratch("x1")) == kExitConfig);
  CHECK(run_scenario("simulate", "sim.dt = 0\n", scratch("x2")) == kExitConfig);
  // Off-lattice plane wave.
  CHECK(run_scenario("simulate", "datum.family = plane-wave\ndatum.xi0 = 0.31\nsim.frame = original\n",
                     scratch("x3")) == kExitPrecondition);
  // The gauge needs a decaying datum.
  CHECK(run_scenario("simulate", "datum.family = plane-wave\ndatum.xi0 = 0.3\n", scratch("x4")) ==
        kExitPrecondition);
  CHECK(run_scenario("gwp-budget", "gwp.mass = 13\n", scratch("x5")) == kExitPrecondition);
  CHECK(run_scenario("simulate", "workers = 0\n", scratch("x6")) == kExitConfig);
}

TEST_CASE("simulate writes diagnostics, final state and manifest") {
  const auto out = scratch("sim");
  const std::string cfg =
      "grid.n = 1024\nsim.dt = 1e-3\nsim.t_end = 0.1\nsim.record_stride = 10\nsim.monitor_cutoff = 32\n"
      "stray.key = 1\n";
  REQUIRE(run_scenario("simulate", cfg, out) == kExitOk);
  const auto m = read_json(out / "manifest.json");
  CHECK(m["status"] == "ok");
  CHECK(m["scenario"] == "simulate");
  CHECK(m["seed"] == 42);
  CHECK(m["config"]["sim.dt"] == "0.001");
  CHECK(m["config"]["sim.frame"] == "gauged");
  CHECK(m["tables"]["diagnostics.csv"]["rows"] == 11);
  CHECK(m["tables"]["diagnostics.csv"]["sha256"] == sha256_hex(read_text(out / "diagnostics.csv")));
  CHECK(m["summary"]["ceiling_ok"] == true);
  REQUIRE(m["warnings"].size() == 1);
  CHECK(m["warnings"][0].get<std::string>().find("stray.key") != std::string::npos);
  const auto csv = read_text(out / "diagnostics.csv");
  CHECK(csv.rfind("t,mass,momentum,energy,h1_seminorm,hhalf_norm,PI,EI,", 0) == 0);

  // The final state feeds back in through the file family.
  const auto out2 = scratch("sim2");
  const std::string cfg2 = "grid.n = 1024\ndatum.family = file\ndatum.frame = gauged\ndatum.path = " +
                           (out / "final_state.csv").string() + "\nsim.dt = 1e-3\nsim.t_end = 0.01\n";
  CHECK(run_scenario("simulate", cfg2, out2) == kExitOk);
}

TEST_CASE("simulate exits 4 on a drift abort and keeps the partial record") {
  const auto out = scratch("abort");
  const std::string cfg = "grid.n = 256\ndatum.A = 2\nsim.dt = 0.05\nsim.t_end = 1\nsim.record_stride = 1\n";
  std::string err;
  CHECK(run_scenario("simulate", cfg, out, std::nullopt, &err) == kExitAbort);
  CHECK_FALSE(err.empty());
  const auto m = read_json(out / "manifest.json");
  CHECK(m["status"] == "aborted");
  CHECK(m["exit_code"] == 4);
  CHECK(m["summary"]["completed"] == false);
  CHECK(fs::exists(out / "diagnostics.csv"));
}

TEST_CASE("artifacts are byte-identical across worker counts") {
  const std::string cfg = "grid.n = 512\ntrials = 40\n";
  const auto a = scratch("w1"), b = scratch("w3");
  REQUIRE(run_scenario("verify-inequalities", cfg, a, 1) == kExitOk);
  REQUIRE(run_scenario("verify-inequalities", cfg, b, 3) == kExitOk);
  CHECK(read_text(a / "slacks.csv") == read_text(b / "slacks.csv"));
  CHECK(read_text(a / "inequalities.csv") == read_text(b / "inequalities.csv"));
  auto ma = read_json(a / "manifest.json"), mb = read_json(b / "manifest.json");
  CHECK(ma["tables"] == mb["tables"]);

  const std::string im = "grid.n = 1024\nimethod.fields = 6\nimethod.cutoffs = 16, 64, 256\n";
  const auto c = scratch("im1"), d = scratch("im2");
  REQUIRE(run_scenario("imethod-study", im, c, 1) == kExitOk);
  REQUIRE(run_scenario("imethod-study", im, d, 2) == kExitOk);
  CHECK(read_text(c / "operator_norm.csv") == read_text(d / "operator_norm.csv"));
  CHECK(read_text(c / "commutator_rows.csv") == read_text(d / "commutator_rows.csv"));
}

TEST_CASE("gauge-check passes on the default datum") {
  const auto out = scratch("gauge");
  REQUIRE(run_scenario("gauge-check", "sim.dt = 1e-3\nsim.t_end = 0.05\ngauge.trials = 10\n", out, 2) == kExitOk);
  const auto m = read_json(out / "manifest.json");
  CHECK(m["summary"]["all_passed"] == true);
  CHECK(m["tables"]["correspondence.csv"]["rows"] == 10);
  CHECK(fs::exists(out / "diagnostics_original.csv"));
  CHECK(fs::exists(out / "diagnostics_gauged.csv"));
}

TEST_CASE("gwp-budget values") {
  const auto out = scratch("gwp");
  REQUIRE(run_scenario("gwp-budget", "gwp.mass = pi\ngwp.T = 10\ngwp.T_sweep = 10, 1e3, 1e5, 1e7\n", out) ==
          kExitOk);
  const auto b = read_json(out / "budget.json");
  CHECK(b["gamma0"].get<double>() == doctest::Approx(3.683255437022957).epsilon(1e-14));
  CHECK(b["eps0"].get<double>() == doctest::Approx(0.001357494772081656).epsilon(1e-13));
  CHECK(b["hundred_gamma0_eps0"].get<double>() == doctest::Approx(0.5).epsilon(1e-14));
  // c_lambda = 2 (200 gamma0)^2 = 80000 (1 + 4 pi).
  CHECK(b["c_lambda"].get<double>() == doctest::Approx(80000 * (1 + 4 * kPi)).epsilon(1e-13));
  CHECK(b["exponent"].get<double>() == 0.25);
  // Smallest k with 0.25 k >= log2 10 + 2 log2 c_lambda is 174 (the bound is 173.69).
  CHECK(b["log2_N"] == 174);
  CHECK(b["guaranteed_time"].get<double>() >= 10.0);
  const auto m = read_json(out / "manifest.json");
  CHECK(m["summary"]["sweep_fitted_exponent"].get<double>() == doctest::Approx(4.0).epsilon(0.02));
  CHECK(m["tables"]["budget_sweep.csv"]["rows"] == 4);
}

TEST_CASE("threshold-sweep marks the 4 pi crossing") {
  const auto out = scratch("thr");
  REQUIRE(run_scenario("threshold-sweep", "sim.t_end = 0.01\nsweep.amplitudes = 3.0, 3.1666\n", out) ==
          kExitOk);
  const auto csv = read_text(out / "threshold_sweep.csv");
  std::istringstream in(csv);
  std::string header, row0, row1;
  std::getline(in, header);
  std::getline(in, row0);
  std::getline(in, row1);
  CHECK(header == "A,mass,mass_ratio,below_threshold,gamma0,h1_bound,max_kinetic,max_ceiling_ratio,status");
  // A^2 sqrt(pi/2) / (4 pi) at A = 3.1666.
  const double ratio = 3.1666 * 3.1666 * std::sqrt(kPi / 2) / (4 * kPi);
  std::vector<std::string> cells;
  std::istringstream rs(row1);
  for (std::string c; std::getline(rs, c, ',');) cells.push_back(c);
  REQUIRE(cells.size() == 9);
  CHECK(std::stod(cells[2]) == doctest::Approx(ratio).epsilon(1e-10));
  CHECK(std::stod(cells[2]) == doctest::Approx(1.000).epsilon(1e-3));
  CHECK(cells[3] == "0");
  CHECK(cells[8] == "above_threshold");
  CHECK(row0.substr(row0.size() - 5) == ",none");
  // One diagnostics table per evolved amplitude, indexed by sweep position.
  CHECK(fs::exists(out / "diagnostics_000.csv"));
  CHECK_FALSE(fs::exists(out / "diagnostics_001.csv"));
}
