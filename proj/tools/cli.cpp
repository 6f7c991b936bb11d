// Copyright 2026 The weakinv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "weakinv/action.hpp"
#include "weakinv/invariant.hpp"
#include "weakinv/random.hpp"
#include "weakinv/verify.hpp"

namespace weakinv::cli {

namespace fs = std::filesystem;

namespace {

double number_field(const json& j, const char* key, double fallback, const std::string& field) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError(field + "." + key + ": expected a number");
  return j.at(key).get<double>();
}

std::ofstream open_output(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream out(fs::path(dir) / name);
  if (!out) throw Error("cannot write " + (fs::path(dir) / name).string());
  return out;
}

void write_json(const std::string& dir, const std::string& name, const json& j) {
  open_output(dir, name) << j.dump(2) << "\n";
}

ScenarioSpec build_named(const std::string& name, const json& params) {
  const std::string field = "params";
  if (name == "amp-damp")
    return amplitude_damping_qubit(number_field(params, "omega", 1.0, field),
                                   number_field(params, "gamma", 0.5, field));
  if (name == "dephase")
    return dephasing_qubit(number_field(params, "omega", 1.0, field),
                           number_field(params, "gamma", 0.25, field));
  if (name == "damped-ho") {
    const double n = number_field(params, "n_trunc", 20, field);
    if (n < 2 || n != static_cast<double>(static_cast<std::size_t>(n)))
      throw ConfigError("params.n_trunc: must be an integer >= 2");
    const ScalarSchedule omega = params.contains("omega")
                                     ? parse_scalar_schedule(params.at("omega"), "params.omega")
                                     : ScalarSchedule::sinusoidal(1.0, 0.1, 1.0);
    const ScalarSchedule gamma = params.contains("gamma")
                                     ? parse_scalar_schedule(params.at("gamma"), "params.gamma")
                                     : ScalarSchedule(0.1);
    return damped_oscillator(static_cast<std::size_t>(n), omega, gamma);
  }
  throw ConfigError("scenario: unknown scenario '" + name + "' (expected amp-damp, dephase or damped-ho)");
}

Operator basis_state(std::size_t dim, std::size_t level) {
  Operator out(dim);
  out(level, level) = 1.0;
  return out;
}

}  // namespace

RunConfig parse_run_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  RunConfig c;
  if (j.contains("scenario")) {
    const json& s = j.at("scenario");
    if (s.is_string())
      c.scenario_name = s.get<std::string>();
    else if (s.is_object())
      c.inline_model = s;
    else
      throw ConfigError("scenario: expected a name or an inline model object");
  } else if (j.contains("model")) {
    c.inline_model = j.at("model");
  }
  if (j.contains("params")) {
    if (!j.at("params").is_object()) throw ConfigError("params: expected an object");
    c.params = j.at("params");
  }
  if (j.contains("grid")) {
    if (!j.at("grid").is_object()) throw ConfigError("grid: expected an object");
    c.grid = j.at("grid");
  }
  if (j.contains("method")) {
    if (!j.at("method").is_string()) throw ConfigError("method: expected \"rk4\" or \"midpoint\"");
    try {
      c.method = parse_method(j.at("method").get<std::string>());
    } catch (const Error& e) {
      throw ConfigError(std::string("method: ") + e.what());
    }
  }
  if (j.contains("rho0")) c.rho0 = j.at("rho0");
  if (j.contains("invariant_seed")) c.invariant_seed = j.at("invariant_seed");
  if (j.contains("lambda_final")) c.lambda_final = j.at("lambda_final");
  if (j.contains("output_dir")) {
    if (!j.at("output_dir").is_string()) throw ConfigError("output_dir: expected a string");
    c.output_dir = j.at("output_dir").get<std::string>();
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw ConfigError("seed: expected a nonnegative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  c.drift_bound = number_field(j, "drift_bound", c.drift_bound, "config");
  c.residual_bound = number_field(j, "residual_bound", c.residual_bound, "config");
  c.gauge_bound = number_field(j, "gauge_bound", c.gauge_bound, "config");
  c.strong_threshold = number_field(j, "strong_threshold", c.strong_threshold, "config");
  if (j.contains("monitor_bounds")) {
    const json& b = j.at("monitor_bounds");
    c.monitor_bounds.trace_drift = number_field(b, "trace_drift", c.monitor_bounds.trace_drift, "monitor_bounds");
    c.monitor_bounds.min_eigenvalue =
        number_field(b, "min_eigenvalue", c.monitor_bounds.min_eigenvalue, "monitor_bounds");
    c.monitor_bounds.leakage = number_field(b, "leakage", c.monitor_bounds.leakage, "monitor_bounds");
  }
  if (!c.scenario_name && !c.inline_model) c.scenario_name = "amp-damp";
  return c;
}

ResolvedRun resolve(const RunConfig& config) {
  std::optional<ScenarioSpec> spec;
  if (config.scenario_name) {
    spec = build_named(*config.scenario_name, config.params);
  } else {
    LindbladModel model = parse_model(*config.inline_model);
    const std::size_t d = model.dim;
    if (!config.grid) throw ConfigError("grid: required for inline models");
    spec = ScenarioSpec{"inline", std::move(model), basis_state(d, 0), Operator::identity(d),
                        TimeGrid(0.0, 1.0, 1000), std::nullopt};
  }

  double t_start = spec->default_grid.t_start();
  double t_end = spec->default_grid.t_end();
  double n_steps = static_cast<double>(spec->default_grid.n_steps());
  if (config.grid) {
    t_start = number_field(*config.grid, "t_start", t_start, "grid");
    t_end = number_field(*config.grid, "t_end", t_end, "grid");
    n_steps = number_field(*config.grid, "n_steps", n_steps, "grid");
  }
  if (n_steps < 1) throw ConfigError("grid.n_steps must be ≥ 1");
  if (n_steps != static_cast<double>(static_cast<std::size_t>(n_steps)))
    throw ConfigError("grid.n_steps must be an integer");
  if (!(t_end > t_start)) throw ConfigError("grid.t_end must be greater than grid.t_start");
  TimeGrid grid(t_start, t_end, static_cast<std::size_t>(n_steps));

  ResolvedRun run{std::move(*spec), grid};
  if (config.rho0) run.spec.default_rho0 = resolve_operator(*config.rho0, run, t_start, "rho0");
  return run;
}

Operator resolve_operator(const json& j, const ResolvedRun& run, double t, const std::string& field) {
  const std::size_t d = run.spec.model.dim;
  Operator op;
  if (j.is_string()) {
    const std::string name = j.get<std::string>();
    if (name == "identity") {
      op = Operator::identity(d);
    } else if (name == "hamiltonian") {
      op = run.spec.model.hamiltonian(t);
    } else if (name == "number") {
      op = ops::number(d);
    } else if (name == "ground") {
      op = basis_state(d, 0);
    } else if (name == "top") {
      op = basis_state(d, d - 1);
    } else if (name == "default") {
      op = field == "rho0" ? run.spec.default_rho0 : run.spec.default_invariant_seed;
    } else if (name == "sz" || name == "sx" || name == "sy") {
      if (d != 2) throw ConfigError(field + ": '" + name + "' needs a two-level model");
      op = name == "sz" ? ops::sigma_z() : name == "sx" ? ops::sigma_x() : ops::sigma_y();
    } else {
      throw ConfigError(field + ": unknown operator name '" + name + "'");
    }
  } else {
    op = parse_matrix(j, field);
  }
  if (op.dim() != d)
    throw ConfigError(field + ": dimension " + std::to_string(op.dim()) + " does not match model dimension " +
                      std::to_string(d));
  return op;
}

int cmd_simulate(const RunConfig& config, std::ostream& log) {
  const ResolvedRun run = resolve(config);
  StateResult result = integrate_state(run.spec.model, run.spec.default_rho0, run.grid, config.method,
                                       {run.spec.leakage_level()});
  {
    auto out = open_output(config.output_dir, "state.csv");
    write_trajectory_csv(out, result.trajectory);
  }
  json monitors = to_json(result.monitors, config.monitor_bounds);
  monitors["scenario"] = run.spec.name;
  monitors["grid"] = to_json(run.grid);
  monitors["method"] = to_string(config.method);
  write_json(config.output_dir, "monitors.json", monitors);

  const bool ok = result.monitors.ok(config.monitor_bounds);
  log << "simulate " << run.spec.name << ": trace drift " << result.monitors.max_trace_drift
      << ", min eigenvalue " << result.monitors.min_eigenvalue;
  if (result.monitors.max_leakage) log << ", leakage " << *result.monitors.max_leakage;
  log << (ok ? " [ok]" : " [MONITOR VIOLATION]") << "\n";
  return ok ? kSuccess : kCheckFailed;
}

int cmd_invariant(const RunConfig& config, std::ostream& log) {
  const ResolvedRun run = resolve(config);
  const Operator seed = config.invariant_seed
                            ? resolve_operator(*config.invariant_seed, run, run.grid.t_start(), "invariant_seed")
                            : run.spec.default_invariant_seed;
  const StateResult state = integrate_state(run.spec.model, run.spec.default_rho0, run.grid, config.method,
                                            {run.spec.leakage_level()});
  const Trajectory inv = integrate_invariant(run.spec.model, seed, SeedTime::kStart, run.grid, config.method);

  const std::vector<double> series = conservation_series(inv, state.trajectory);
  const SpectrumSeries spectrum = spectrum_series(inv);
  const InvariantReport report = analyze(inv, state.trajectory, config.strong_threshold);
  {
    auto out = open_output(config.output_dir, "expectation.csv");
    write_expectation_csv(out, run.grid, series);
  }
  {
    auto out = open_output(config.output_dir, "spectrum.csv");
    write_spectrum_csv(out, spectrum);
  }
  const bool ok = report.max_expectation_drift <= config.drift_bound;
  json j = to_json(report);
  j["scenario"] = run.spec.name;
  j["grid"] = to_json(run.grid);
  j["method"] = to_string(config.method);
  j["drift_bound"] = config.drift_bound;
  j["initial_expectation"] = series.front();
  j["passed"] = ok;
  write_json(config.output_dir, "invariant_report.json", j);

  log << "invariant " << run.spec.name << ": <I> drift " << report.max_expectation_drift << ", class "
      << to_string(report.classification) << (ok ? " [ok]" : " [DRIFT ABOVE BOUND]") << "\n";
  return ok ? kSuccess : kCheckFailed;
}

int cmd_action_check(const RunConfig& config, std::ostream& log) {
  const ResolvedRun run = resolve(config);
  if (!config.lambda_final) throw ConfigError("lambda_final: required for action-check");
  const Operator lam_final = resolve_operator(*config.lambda_final, run, run.grid.t_end(), "lambda_final");

  const StationarityResult st =
      stationarity_check(run.spec.model, run.spec.default_rho0, lam_final, run.grid, config.method);

  // seeded random multiplier, tabulated on 11 nodes across the grid
  Rng rng(config.seed);
  std::vector<double> times;
  std::vector<double> values;
  for (int k = 0; k <= 10; ++k) {
    times.push_back(k == 10 ? run.grid.t_end()
                            : run.grid.t_start() + (run.grid.t_end() - run.grid.t_start()) * k / 10.0);
    values.push_back(rng.uniform(-1.0, 1.0));
  }
  const ScalarSchedule lambda = ScalarSchedule::tabulated(times, values);
  const GaugeShiftResult gauge = gauge_shift_check(st.path, run.spec.model, lambda);

  const ActionReport& r = st.report;
  const bool residuals_ok = r.grad_rho_residual <= config.residual_bound &&
                            r.grad_lam_residual <= config.residual_bound;
  const bool gauge_ok = gauge.defect <= config.gauge_bound && gauge.final_condition_unchanged;

  json j = to_json(r);
  j["scenario"] = run.spec.name;
  j["method"] = to_string(config.method);
  j["gauge"] = {{"defect", gauge.defect},
                {"delta_action", gauge.delta_action},
                {"constraint_integral", gauge.constraint_integral},
                {"final_condition_unchanged", gauge.final_condition_unchanged},
                {"lambda_times", times},
                {"lambda_values", values}};
  j["bounds"] = {{"residual", config.residual_bound}, {"gauge", config.gauge_bound}};
  j["passed"] = residuals_ok && gauge_ok;
  write_json(config.output_dir, "action_report.json", j);

  log << "action-check " << run.spec.name << ": S = " << r.action_value << ", residuals "
      << r.grad_rho_residual << " / " << r.grad_lam_residual << ", gauge defect " << gauge.defect
      << (residuals_ok && gauge_ok ? " [ok]" : " [FAILED]") << "\n";
  return residuals_ok && gauge_ok ? kSuccess : kCheckFailed;
}

int cmd_verify(std::uint64_t seed, std::size_t trials, bool break_adjoint, const std::string& output_dir,
               std::ostream& log) {
  const VerifyReport report = run_verification({seed, trials, break_adjoint});
  write_json(output_dir, "verify_report.json", to_json(report));
  for (const auto& p : report.properties)
    log << (p.passed ? "PASS " : "FAIL ") << p.name << " worst " << p.worst_defect << " tol " << p.tolerance
        << "\n";
  return report.all_passed() ? kSuccess : kCheckFailed;
}

namespace {

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + path + ": " + e.what());
  }
}

struct Overrides {
  std::optional<std::string> out;
  std::optional<std::size_t> steps;
  std::optional<std::string> method;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> scenario;
  std::optional<std::string> lambda_final;
  std::optional<std::string> invariant_seed;
};

// Runs one command, mapping exceptions onto the exit-code contract.
template <class Fn>
int guarded(const Fn& fn, std::ostream& log, std::ostream& err) {
  try {
    return fn(log);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IntegrationError& e) {
    err << "error: " << e.what() << " (step " << e.step() << ", magnitude " << e.magnitude() << ")\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
}

RunConfig make_config(const std::optional<std::string>& path, const Overrides& o, bool sweep) {
  json j = path ? load_config(*path) : json::object();
  if (o.scenario) j["scenario"] = *o.scenario;
  if (o.steps) j["grid"]["n_steps"] = *o.steps;
  if (o.method) j["method"] = *o.method;
  if (o.seed) j["seed"] = *o.seed;
  if (o.lambda_final) j["lambda_final"] = *o.lambda_final;
  if (o.invariant_seed) j["invariant_seed"] = *o.invariant_seed;
  RunConfig c = parse_run_config(j);
  if (o.out) c.output_dir = *o.out;
  if (sweep && path) c.output_dir = (fs::path(c.output_dir) / fs::path(*path).stem()).string();
  return c;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Open-system dynamics, weak invariants and the auxiliary-operator action"};
  app.require_subcommand(1);

  std::vector<std::string> configs;
  Overrides o;
  auto add_run_options = [&](CLI::App* sub) {
    sub->add_option("--config", configs, "JSON run configuration (repeat for a parallel sweep)");
    sub->add_option("--out", o.out, "Output directory");
    sub->add_option("--steps", o.steps, "Override grid.n_steps");
    sub->add_option("--method", o.method, "rk4 or midpoint");
    sub->add_option("--seed", o.seed, "Seed for randomized parts");
    sub->add_option("--scenario", o.scenario, "amp-damp, dephase or damped-ho");
  };

  auto* simulate = app.add_subcommand("simulate", "Integrate the master equation; write state.csv and monitors.json");
  add_run_options(simulate);
  auto* invariant = app.add_subcommand("invariant", "Propagate a weak invariant and analyze conservation and spectrum");
  add_run_options(invariant);
  invariant->add_option("--invariant-seed", o.invariant_seed, "sz, sx, identity, hamiltonian, number or default");
  auto* action = app.add_subcommand("action-check", "Stationarity and gauge-shift checks of the discrete action");
  add_run_options(action);
  action->add_option("--lambda-final", o.lambda_final, "Named final auxiliary operator (e.g. sz)");

  std::uint64_t verify_seed = 0;
  std::size_t trials = 100;
  bool break_adjoint = false;
  std::string verify_out = ".";
  auto* verify = app.add_subcommand("verify", "Randomized property suites; write verify_report.json");
  verify->add_option("--seed", verify_seed, "Seed (default 0)");
  verify->add_option("--trials", trials, "Trials per property")->check(CLI::PositiveNumber);
  verify->add_option("--out", verify_out, "Output directory");
  verify->add_flag("--break-adjoint", break_adjoint, "Negative control: corrupt the adjoint (testing only)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kConfigError;
  }

  if (verify->parsed()) {
    return guarded([&](std::ostream& log) { return cmd_verify(verify_seed, trials, break_adjoint, verify_out, log); },
                   std::cout, std::cerr);
  }

  using Command = int (*)(const RunConfig&, std::ostream&);
  Command command = simulate->parsed() ? cmd_simulate : invariant->parsed() ? cmd_invariant : cmd_action_check;

  if (configs.size() <= 1) {
    const std::optional<std::string> path = configs.empty() ? std::nullopt : std::optional(configs.front());
    return guarded([&](std::ostream& log) { return command(make_config(path, o, false), log); }, std::cout,
                   std::cerr);
  }

  // Sweep: independent jobs, each writing below <out>/<config stem>.
  std::vector<std::future<std::pair<int, std::string>>> jobs;
  for (const auto& path : configs) {
    jobs.push_back(std::async(std::launch::async, [&, path] {
      std::ostringstream log;
      const int code = guarded([&](std::ostream& l) { return command(make_config(path, o, true), l); }, log, log);
      return std::pair{code, path + ": " + log.str()};
    }));
  }
  int worst = kSuccess;
  for (auto& job : jobs) {
    auto [code, text] = job.get();
    std::cout << text;
    worst = std::max(worst, code);
  }
  return worst;
}

}  // namespace weakinv::cli
