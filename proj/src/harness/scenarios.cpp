#include "dnls/harness/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <ostream>

#include <nlohmann/json.hpp>

#include "dnls/apriori.hpp"
#include "dnls/errors.hpp"
#include "dnls/evolution.hpp"
#include "dnls/functionals.hpp"
#include "dnls/gauge.hpp"
#include "dnls/harness/datum.hpp"
#include "dnls/harness/io.hpp"
#include "dnls/harness/pool.hpp"
#include "dnls/harness/sweeps.hpp"
#include "dnls/imethod.hpp"
#include "dnls/random_fields.hpp"
#include "dnls/spectral.hpp"
#include "dnls/stats.hpp"

namespace dnls::harness {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// NaN and infinities are not JSON; they are written as null.
json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json grid_json(const Grid& g) {
  return {{"L", g.half_length()}, {"n", g.size()}, {"dx", g.dx()}};
}

class Emitter {
 public:
  explicit Emitter(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  void table(const std::string& name, const Table& t) {
    emit(name, t.to_csv(), t.rows.size());
  }
  void document(const std::string& name, const json& doc) { emit(name, doc.dump(2) + "\n", 0); }
  const json& artifacts() const { return artifacts_; }
  const fs::path& dir() const { return dir_; }

 private:
  void emit(const std::string& name, const std::string& bytes, std::size_t rows) {
    write_text(dir_ / name, bytes);
    json entry{{"sha256", sha256_hex(bytes)}, {"bytes", bytes.size()}};
    if (rows > 0 || name.ends_with(".csv")) entry["rows"] = rows;
    artifacts_[name] = entry;
  }

  fs::path dir_;
  json artifacts_ = json::object();
};

struct Context {
  const ConfigMap& cfg;
  std::uint64_t seed;
  std::size_t workers;
  Emitter& out;
  json summary = json::object();
  json grid = nullptr;
  std::vector<std::string> warnings;
  int code = kExitOk;
  std::string message;
};

SimConfig parse_sim(const ConfigMap& cfg, const std::string& prefix = "sim.") {
  SimConfig s;
  s.dt = cfg.get_real(prefix + "dt", s.dt);
  s.t_end = cfg.get_real(prefix + "t_end", s.t_end);
  s.frame = frame_from_string(cfg.get_string(prefix + "frame", std::string(to_string(s.frame))));
  s.dealias = cfg.get_bool(prefix + "dealias", s.dealias);
  const long stride = cfg.get_int(prefix + "record_stride", static_cast<long>(s.record_stride));
  if (stride <= 0) throw ConfigError(prefix + "record_stride must be positive");
  s.record_stride = static_cast<std::size_t>(stride);
  s.drift_tol = cfg.get_real(prefix + "drift_tol", s.drift_tol);
  s.max_amplitude = cfg.get_real(prefix + "max_amplitude", s.max_amplitude);
  s.keep_snapshots = false;
  try {
    validate(s);
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
  return s;
}

Table diagnostics_table(const Trajectory& traj) {
  Table t{{"t", "mass", "momentum", "energy", "h1_seminorm", "hhalf_norm", "PI", "EI",
           "mass_drift_rel", "momentum_drift_rel", "energy_drift_rel"},
          {}};
  for (const auto& d : traj.diagnostics) {
    t.add({d.t, d.mass, d.momentum, d.energy, d.h1_seminorm, d.hhalf_norm, d.modified_momentum,
           d.modified_energy, d.mass_drift_rel, d.momentum_drift_rel, d.energy_drift_rel});
  }
  return t;
}

json run_summary(const Trajectory& traj) {
  double m = 0, p = 0, e = 0;
  for (const auto& d : traj.diagnostics) {
    m = std::max(m, d.mass_drift_rel);
    p = std::max(p, d.momentum_drift_rel);
    e = std::max(e, d.energy_drift_rel);
  }
  json s{{"completed", traj.completed()},
         {"abort_reason", std::string(to_string(traj.abort))},
         {"final_time", traj.times.empty() ? 0.0 : traj.times.back()},
         {"records", traj.times.size()},
         {"max_mass_drift_rel", m},
         {"max_momentum_drift_rel", p},
         {"max_energy_drift_rel", e}};
  if (!traj.completed()) {
    s["abort_time"] = traj.abort_time;
    s["abort_message"] = traj.abort_message;
  }
  return s;
}

// Largest ||v_x(t)||^2 / h1_bound(M, P, E) over the records of a gauged run.
double ceiling_ratio(const Trajectory& traj, const ConservedSet& q0) {
  const double bound = h1_bound(std::sqrt(q0.mass), q0.momentum, q0.energy).value;
  double worst = 0.0;
  for (const auto& d : traj.diagnostics) worst = std::max(worst, d.h1_seminorm * d.h1_seminorm / bound);
  return worst;
}

void note_abort(Context& ctx, const Trajectory& traj, const std::string& which) {
  if (traj.completed()) return;
  ctx.code = kExitAbort;
  ctx.message += (ctx.message.empty() ? "" : "; ") + which + ": " + traj.abort_message;
}

// --- scenarios -----------------------------------------------------------------

void simulate(Context& ctx) {
  const Grid grid = parse_grid(ctx.cfg, 20 * kPi, 2048);
  ctx.grid = grid_json(grid);
  const SimConfig sim = parse_sim(ctx.cfg);
  const Field f0 = to_frame(parse_datum(ctx.cfg, grid), sim.frame);
  const double cutoff = ctx.cfg.get_real("sim.monitor_cutoff", 0.0);
  std::optional<IMultiplier> monitor;
  if (cutoff > 0.0) monitor.emplace(cutoff, grid);
  const auto traj = evolve(f0, sim, monitor ? &*monitor : nullptr);
  ctx.warnings.insert(ctx.warnings.end(), traj.warnings.begin(), traj.warnings.end());

  ctx.out.table("diagnostics.csv", diagnostics_table(traj));
  if (ctx.cfg.get_bool("out.final_state", true) && traj.final_state) {
    ctx.out.table("final_state.csv", field_table(*traj.final_state));
  }
  ctx.summary = run_summary(traj);
  const auto q0 = conserved(f0);
  if (sim.frame == Frame::Gauged && below_mass_threshold(std::sqrt(q0.mass))) {
    const double ratio = ceiling_ratio(traj, q0);
    ctx.summary["h1_bound"] = h1_bound(std::sqrt(q0.mass), q0.momentum, q0.energy).value;
    ctx.summary["max_ceiling_ratio"] = num(ratio);
    ctx.summary["ceiling_ok"] = ratio <= 1.0 + 1e-6;
  }
  note_abort(ctx, traj, "simulate");
}

void gauge_check(Context& ctx) {
  const Grid grid = parse_grid(ctx.cfg, 20 * kPi, 2048);
  ctx.grid = grid_json(grid);
  SimConfig sim = parse_sim(ctx.cfg);
  const Field u0 = to_frame(parse_datum(ctx.cfg, grid), Frame::Original);
  const Field v0 = gauge_forward(u0);
  const double consistency_tol = ctx.cfg.get_real("gauge.consistency_tol", 1e-4);
  const double roundtrip_tol = ctx.cfg.get_real("gauge.roundtrip_tol", 1e-12);
  const double correspondence_tol = ctx.cfg.get_real("gauge.correspondence_tol", 1e-8);
  const long trials = ctx.cfg.get_int("gauge.trials", 100);
  if (trials < 0) throw ConfigError("gauge.trials must be nonnegative");

  const auto runs = parallel_map(2, ctx.workers, [&](std::size_t i) {
    SimConfig s = sim;
    s.frame = i == 0 ? Frame::Original : Frame::Gauged;
    return evolve(i == 0 ? u0 : v0, s);
  });
  ctx.out.table("diagnostics_original.csv", diagnostics_table(runs[0]));
  ctx.out.table("diagnostics_gauged.csv", diagnostics_table(runs[1]));

  const auto datum_row = correspondence(u0);
  const auto rows = correspondence_sweep(grid, static_cast<std::size_t>(trials), ctx.seed, ctx.workers);
  Table corr{{"trial", "mass_rel", "momentum_rel", "energy_rel", "roundtrip_sup", "modulus_sup"}, {}};
  double worst_corr = std::max({datum_row.mass_rel, datum_row.momentum_rel, datum_row.energy_rel});
  double worst_roundtrip = datum_row.roundtrip_sup;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    corr.add({static_cast<long>(i), r.mass_rel, r.momentum_rel, r.energy_rel, r.roundtrip_sup, r.modulus_sup});
    worst_corr = std::max({worst_corr, r.mass_rel, r.momentum_rel, r.energy_rel});
    worst_roundtrip = std::max(worst_roundtrip, r.roundtrip_sup);
  }
  ctx.out.table("correspondence.csv", corr);

  Table checks{{"check", "value", "threshold", "passed"}, {}};
  auto add_check = [&](const std::string& name, double value, double tol) {
    const bool ok = value < tol;
    checks.add({name, value, tol, static_cast<long>(ok)});
    ctx.summary[name] = {{"value", num(value)}, {"threshold", tol}, {"passed", ok}};
    return ok;
  };
  bool all = true;
  if (runs[0].completed() && runs[1].completed()) {
    const Field gu = gauge_forward(*runs[0].final_state);
    double sup = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) sup = std::max(sup, std::abs(gu[j] - (*runs[1].final_state)[j]));
    all &= add_check("flow_consistency", sup, consistency_tol);
  }
  all &= add_check("roundtrip", worst_roundtrip, roundtrip_tol);
  all &= add_check("correspondence", worst_corr, correspondence_tol);
  ctx.out.table("gauge_check.csv", checks);
  ctx.summary["all_passed"] = all;
  ctx.summary["original_run"] = run_summary(runs[0]);
  ctx.summary["gauged_run"] = run_summary(runs[1]);
  note_abort(ctx, runs[0], "original-frame run");
  note_abort(ctx, runs[1], "gauged-frame run");
}

void verify_inequalities(Context& ctx) {
  const Grid grid = parse_grid(ctx.cfg, 20 * kPi, 2048);
  ctx.grid = grid_json(grid);
  const long trials = ctx.cfg.get_int("trials", 1000);
  if (trials <= 0) throw ConfigError("trials must be positive");
  const auto sweep = inequality_sweep(grid, static_cast<std::size_t>(trials), ctx.seed, ctx.workers);

  Table summary{{"inequality", "trials", "violations", "worst_rel_slack", "worst_trial"}, {}};
  std::size_t total = 0;
  for (const auto& s : sweep.summary) {
    summary.add({s.label, static_cast<long>(s.trials), static_cast<long>(s.violations), s.worst_rel_slack,
                 static_cast<long>(s.worst_trial)});
    ctx.summary[s.label] = {{"violations", s.violations}, {"worst_rel_slack", num(s.worst_rel_slack)}};
    total += s.violations;
  }
  ctx.summary["total_violations"] = total;
  ctx.out.table("inequalities.csv", summary);

  std::vector<std::string> cols{"trial", "mass_any", "mass_below", "alpha"};
  for (const auto& l : inequality_labels()) cols.push_back(l + "_rel_slack");
  Table slacks{cols, {}};
  for (std::size_t i = 0; i < sweep.trials.size(); ++i) {
    const auto& t = sweep.trials[i];
    std::vector<Cell> row{static_cast<long>(i), t.mass_any, t.mass_below, t.alpha};
    for (const auto& r : t.reports) row.push_back(r.slack / std::max(1.0, std::abs(r.rhs)));
    slacks.add(std::move(row));
  }
  ctx.out.table("slacks.csv", slacks);
}

void imethod_study(Context& ctx) {
  const Grid grid = parse_grid(ctx.cfg, kPi, 8192);
  ctx.grid = grid_json(grid);
  const auto cutoffs = ctx.cfg.get_reals("imethod.cutoffs", {16, 32, 64, 128, 256, 512, 1024});
  const long count = ctx.cfg.get_int("imethod.fields", 100);
  const double carrier_max = ctx.cfg.get_real("imethod.carrier_max", 0.75 * grid.nyquist());
  const long per_octave = ctx.cfg.get_int("imethod.ladder_per_octave", 16);
  if (count < 0) throw ConfigError("imethod.fields must be nonnegative");
  if (!(carrier_max >= 1.0)) throw ConfigError("imethod.carrier_max must be at least 1");

  std::vector<Field> fields = mode_ladder(grid, static_cast<int>(per_octave), carrier_max, Frame::Gauged);
  const auto packets = parallel_map(static_cast<std::size_t>(count), ctx.workers, [&](std::size_t i) {
    auto rng = trial_rng(ctx.seed, i);
    return random_wave_packets(grid, rng, Frame::Gauged, carrier_max);
  });
  fields.insert(fields.end(), packets.begin(), packets.end());

  const auto op = operator_norm_study(fields, cutoffs);
  Table opt{{"N", "sup_lower", "sup_upper"}, {}};
  for (const auto& s : op.per_cutoff) opt.add({s.cutoff, s.sup_lower, s.sup_upper});
  ctx.out.table("operator_norm.csv", opt);

  const double mu = ctx.cfg.get_real("imethod.mu", 1.0);
  const auto cm = momentum_commutator_study(fields, cutoffs, mu);
  Table cmt{{"N", "sup_ratio"}, {}};
  for (const auto& s : cm.per_cutoff) cmt.add({s.cutoff, s.sup_ratio});
  ctx.out.table("commutator.csv", cmt);
  Table rows{{"field", "N", "lhs", "rhs", "ratio", "term_quadratic", "term_quartic", "recombination_error"}, {}};
  for (const auto& r : cm.rows) {
    rows.add({static_cast<long>(r.field_index), r.cutoff, r.lhs, r.rhs, r.ratio, r.term_quadratic,
              r.term_quartic, r.recombination_error});
  }
  ctx.out.table("commutator_rows.csv", rows);

  ctx.summary["fields"] = fields.size();
  ctx.summary["operator_norm"] = {{"lower_slope", num(op.lower_slope)}, {"upper_slope", num(op.upper_slope)}};
  ctx.summary["commutator"] = {{"ratio_slope", num(cm.ratio_slope)},
                               {"max_recombination_error", cm.max_recombination_error}};

  if (!ctx.cfg.has("drift.cutoffs")) return;
  const auto drift_cutoffs = ctx.cfg.get_reals("drift.cutoffs");
  const Grid dgrid = make_grid(ctx.cfg.get_real("drift.L", 4 * kPi),
                               static_cast<std::size_t>(ctx.cfg.get_int("drift.n", 16384)));
  const Field v0 = to_frame(parse_datum(ctx.cfg, dgrid), Frame::Gauged);
  SimConfig sim = parse_sim(ctx.cfg, "drift.");
  const double horizon = ctx.cfg.get_real("drift.horizon", sim.t_end);
  const double reference = ctx.cfg.get_real("drift.reference_cutoff", drift_cutoffs.front());
  auto drift_rows = parallel_map(drift_cutoffs.size(), ctx.workers, [&](std::size_t i) {
    return modified_energy_drift_study(v0, std::span(&drift_cutoffs[i], 1), horizon, sim, reference).front();
  });
  Table dt{{"N", "lambda", "grid_points", "initial_EI", "drift", "reduction", "ceiling_ratio", "abort_reason"}, {}};
  bool monotone = true;
  for (std::size_t i = 0; i < drift_rows.size(); ++i) {
    auto& r = drift_rows[i];
    r.reduction = i == 0 ? kNaN : drift_rows[i - 1].drift / r.drift;
    if (i > 0 && !(r.drift < drift_rows[i - 1].drift)) monotone = false;
    dt.add({r.cutoff, r.lambda, static_cast<long>(r.grid_points), r.initial_modified_energy, r.drift,
            r.reduction, r.ceiling_ratio, r.abort_reason});
    if (r.abort_reason != "none") {
      ctx.code = kExitAbort;
      ctx.message = "drift study run for N = " + format_real(r.cutoff) + " aborted: " + r.abort_reason;
    }
  }
  ctx.out.table("energy_drift.csv", dt);
  json drift_summary{{"monotone_decrease", monotone}};
  std::vector<double> ns, ds;
  for (const auto& r : drift_rows) ns.push_back(r.cutoff), ds.push_back(r.drift);
  const bool fittable = ns.size() >= 2 && std::all_of(ds.begin(), ds.end(), [](double d) { return d > 0.0; });
  // Drift ~ N^{-alpha}: the fitted decay rate is minus the log-log slope.
  const double rate = fittable ? -loglog_fit(ns, ds).slope : kNaN;
  drift_summary["fitted_decay_rate"] = num(rate);
  if (ctx.cfg.has("drift.alpha")) {
    const double alpha = ctx.cfg.get_real("drift.alpha");
    drift_summary["alpha"] = alpha;
    drift_summary["decay_at_least_alpha"] = fittable && rate >= alpha;
  }
  ctx.summary["energy_drift"] = drift_summary;
}

json budget_json(const GwpBudget& b) {
  return {{"mass", b.input.mass_sqrt * b.input.mass_sqrt},
          {"mass_sqrt", b.input.mass_sqrt},
          {"hhalf", b.input.hhalf},
          {"target_time", b.input.target_time},
          {"epsilon", b.input.epsilon},
          {"rescale_constant", b.input.rescale_constant},
          {"gamma0", b.gamma0},
          {"eps0", b.eps0},
          {"hundred_gamma0_eps0", 100 * b.gamma0 * b.eps0},
          {"c_lambda", b.c_lambda},
          {"exponent", b.exponent},
          {"log2_N", b.log2_cutoff},
          {"N", b.cutoff},
          {"lambda", b.lambda},
          {"log2_T0", b.log2_T0},
          {"T0", num(b.T0)},
          {"guaranteed_time", num(b.guaranteed_time)}};
}

void gwp_budget_scenario(Context& ctx) {
  GwpBudgetInput in;
  if (ctx.cfg.has("gwp.mass_sqrt")) {
    in.mass_sqrt = ctx.cfg.get_real("gwp.mass_sqrt");
  } else {
    const double m = ctx.cfg.get_real("gwp.mass", kPi);
    if (m < 0.0) throw ConfigError("gwp.mass must be nonnegative");
    in.mass_sqrt = std::sqrt(m);
  }
  in.hhalf = ctx.cfg.get_real("gwp.hhalf", in.hhalf);
  in.target_time = ctx.cfg.get_real("gwp.T", 10.0);
  in.epsilon = ctx.cfg.get_real("gwp.epsilon", in.epsilon);
  in.rescale_constant = ctx.cfg.get_real("gwp.rescale_constant", in.rescale_constant);
  in.max_log2_cutoff = static_cast<int>(ctx.cfg.get_int("gwp.max_log2_cutoff", in.max_log2_cutoff));

  const auto b = gwp_budget(in);
  ctx.summary = budget_json(b);
  ctx.out.document("budget.json", ctx.summary);
  Table listing{{"parameter", "value"}, {}};
  for (const auto& [k, v] : ctx.summary.items()) listing.add({k, v.is_null() ? kNaN : v.get<double>()});
  ctx.out.table("budget.csv", listing);

  if (!ctx.cfg.has("gwp.T_sweep")) return;
  const auto ts = ctx.cfg.get_reals("gwp.T_sweep");
  Table sweep{{"T", "log2_N", "N", "lambda", "guaranteed_time"}, {}};
  std::vector<double> tv, nv;
  for (double t : ts) {
    GwpBudgetInput ti = in;
    ti.target_time = t;
    const auto bt = gwp_budget(ti);
    sweep.add({t, static_cast<long>(bt.log2_cutoff), bt.cutoff, bt.lambda, bt.guaranteed_time});
    tv.push_back(t);
    nv.push_back(bt.cutoff);
  }
  ctx.out.table("budget_sweep.csv", sweep);
  if (tv.size() >= 2) {
    const auto fit = loglog_fit(tv, nv);
    ctx.summary["sweep_fitted_exponent"] = fit.slope;
    ctx.summary["sweep_expected_exponent"] = 1.0 / b.exponent;
  }
}

void threshold_sweep(Context& ctx) {
  const Grid grid = parse_grid(ctx.cfg, 20 * kPi, 2048);
  ctx.grid = grid_json(grid);
  const auto amps = ctx.cfg.get_reals("sweep.amplitudes", {2.8, 2.9, 3.0, 3.1, 3.1666, 3.2, 3.3, 3.4});
  const double width = ctx.cfg.get_real("datum.w", 1.0);
  if (!(width > 0.0)) throw ConfigError("datum.w must be positive");
  const bool run_flow = ctx.cfg.get_bool("sweep.evolve", true);
  SimConfig sim = parse_sim(ctx.cfg);
  sim.frame = Frame::Gauged;

  struct Outcome {
    double mass, ratio, gamma0, bound, max_kinetic, ceiling;
    bool below;
    std::string status;
    std::optional<Table> diagnostics;
  };
  const auto outcomes = parallel_map(amps.size(), ctx.workers, [&](std::size_t i) {
    const double a = amps[i];
    const Field u = Field::sample(grid, [=](double x) { return cplx{a * std::exp(-x * x / (width * width)), 0.0}; });
    Outcome o{mass(u), 0, kNaN, kNaN, kNaN, kNaN, false, "above_threshold", std::nullopt};
    o.ratio = o.mass / (4 * kPi);
    o.below = below_mass_threshold(std::sqrt(o.mass));
    if (!o.below) return o;
    const Field v = gauge_forward(u);
    const auto q = conserved(v);
    o.gamma0 = gamma0(std::sqrt(q.mass));
    o.bound = h1_bound(std::sqrt(q.mass), q.momentum, q.energy).value;
    o.status = "not_run";
    if (!run_flow) return o;
    const auto traj = evolve(v, sim);
    o.max_kinetic = 0.0;
    for (const auto& d : traj.diagnostics) o.max_kinetic = std::max(o.max_kinetic, d.h1_seminorm * d.h1_seminorm);
    o.ceiling = o.max_kinetic / o.bound;
    o.status = std::string(to_string(traj.abort));
    o.diagnostics = diagnostics_table(traj);
    return o;
  });
  Table t{{"A", "mass", "mass_ratio", "below_threshold", "gamma0", "h1_bound", "max_kinetic",
           "max_ceiling_ratio", "status"},
          {}};
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const auto& o = outcomes[i];
    t.add({amps[i], o.mass, o.ratio, static_cast<long>(o.below), o.gamma0, o.bound, o.max_kinetic, o.ceiling,
           o.status});
    if (o.diagnostics) {
      char name[40];
      std::snprintf(name, sizeof name, "diagnostics_%03zu.csv", i);
      ctx.out.table(name, *o.diagnostics);
    }
    if (o.status == "drift_tolerance" || o.status == "blowup") {
      ctx.code = kExitAbort;
      ctx.message = "run at A = " + format_real(amps[i]) + " aborted: " + o.status;
    }
  }
  ctx.out.table("threshold_sweep.csv", t);
  ctx.summary["amplitudes"] = amps.size();
}

using ScenarioFn = void (*)(Context&);

ScenarioFn lookup(const std::string& name) {
  if (name == "simulate") return simulate;
  if (name == "gauge-check") return gauge_check;
  if (name == "verify-inequalities") return verify_inequalities;
  if (name == "imethod-study") return imethod_study;
  if (name == "gwp-budget") return gwp_budget_scenario;
  if (name == "threshold-sweep") return threshold_sweep;
  return nullptr;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"simulate",      "gauge-check", "verify-inequalities",
                                              "imethod-study", "gwp-budget",  "threshold-sweep"};
  return names;
}

fs::path resolve_out_dir(const RunOptions& opts) {
  if (opts.out) return *opts.out;
  if (opts.config.has("out")) return opts.config.get_string("out");
  if (const char* root = std::getenv(kOutEnv); root != nullptr && *root != '\0') {
    return fs::path(root) / opts.scenario;
  }
  return fs::path("dnls-out") / opts.scenario;
}

int run(const RunOptions& opts, std::ostream& err) {
  try {
    const auto fn = lookup(opts.scenario);
    if (fn == nullptr) throw ConfigError("unknown scenario '" + opts.scenario + "'");
    const auto& cfg = opts.config;
    const std::uint64_t seed =
        opts.seed ? *opts.seed : static_cast<std::uint64_t>(cfg.get_int("seed", 42));
    const long workers_cfg = cfg.get_int("workers", 1);
    if (workers_cfg < 1) throw ConfigError("workers must be at least 1");
    const std::size_t workers = opts.workers ? *opts.workers : static_cast<std::size_t>(workers_cfg);
    if (workers < 1) throw ConfigError("workers must be at least 1");

    Emitter out(resolve_out_dir(opts));
    Context ctx{cfg, seed, workers, out, json::object(), nullptr, {}, kExitOk, {}};
    fn(ctx);
    for (const auto& [k, v] : cfg.raw()) {
      if (!cfg.resolved().count(k) && k != "seed" && k != "workers") {
        ctx.warnings.push_back("config key '" + k + "' was not used by " + opts.scenario);
      }
    }

    json manifest;
    manifest["tool"] = "dnls-lab";
    manifest["version"] = kToolVersion;
    manifest["scenario"] = opts.scenario;
    manifest["status"] = ctx.code == kExitOk ? "ok" : "aborted";
    manifest["exit_code"] = ctx.code;
    if (!ctx.message.empty()) manifest["message"] = ctx.message;
    manifest["seed"] = seed;
    manifest["workers"] = workers;
    manifest["grid"] = ctx.grid;
    json resolved = json::object();
    for (const auto& [k, v] : cfg.resolved()) resolved[k] = v;
    resolved["seed"] = std::to_string(seed);
    manifest["config"] = resolved;
    manifest["tables"] = out.artifacts();
    manifest["summary"] = ctx.summary;
    manifest["warnings"] = ctx.warnings;
    write_text(out.dir() / "manifest.json", manifest.dump(2) + "\n");
    if (ctx.code != kExitOk) err << "dnls-lab: " << ctx.message << "\n";
    return ctx.code;
  } catch (const ConfigError& e) {
    err << "dnls-lab: configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const PreconditionError& e) {
    err << "dnls-lab: precondition violated: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    err << "dnls-lab: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace dnls::harness
