// swcycle: limit cycles of planar switched systems with hysteresis.
//
// Exit status: 0 success, 2 bad command line or scenario, 3 numerical failure
// (a JSON error record is printed and written to <out>/error.json).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"

#include "swcycle/builtins.hpp"
#include "swcycle/report.hpp"
#include "swcycle/scenario.hpp"

namespace fs = std::filesystem;
using namespace swcycle;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct Context {
  Scenario scenario;
  fs::path out;
  int workers = 1;
};

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

template <typename Writer>
void write_with(const fs::path& path, Writer&& writer) {
  std::ofstream f(path, std::ios::binary);
  writer(f);
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

double equilibrium_guess(const Context& ctx) {
  const Scenario& s = ctx.scenario;
  if (s.type == "converter") return to_normal(s.rule.n, s.initial_iu).y();
  return s.eq_guess;
}

int run_check(const Context& ctx) {
  const SwitchedSystem system = build_system(ctx.scenario);
  const double eq_y = switched_equilibrium(system, equilibrium_guess(ctx));
  const HypothesisReport report = check_hypotheses(system, {system.center(), eq_y});
  Json doc;
  doc["eq_point"] = {system.center(), eq_y};
  doc["hypotheses"] = to_json(report);
  int status = kExitOk;
  if (report.transversal && report.equilibrium()) {
    doc["sliding"] = to_json(stability_certificate(system, eq_y));
  }
  if (!report.satisfied()) {
    doc["error"] = "hypothesis";
    doc["message"] = "standing hypotheses fail at the switched equilibrium";
    status = kExitNumeric;
  }
  const std::string text = dump(doc);
  write_file(ctx.out / "check.json", text);
  std::cout << text;
  return status;
}

int run_simulate(const Context& ctx) {
  const Scenario& s = ctx.scenario;
  const SwitchedSystem system = build_system(s);
  Point start;
  if (s.initial) start = *s.initial;
  else if (s.type == "converter") start = to_normal(s.rule.n, s.initial_iu);
  else start = Point(system.right_line(), 0.0);
  StopCriterion stop = s.stop;
  if (!stop.duration && !stop.switches) stop.switches = 20;

  const Trajectory traj = simulate(system, start, s.mode, stop, s.cycle.flow);
  write_with(ctx.out / "trajectory.csv", [&](std::ostream& o) { write_trajectory_csv(o, traj); });
  write_with(ctx.out / "events.csv", [&](std::ostream& o) { write_events_csv(o, traj); });
  if (s.type == "converter") {
    write_with(ctx.out / "converter_trajectory.csv",
               [&](std::ostream& o) { write_converter_csv(o, traj, s.rule.n); });
  }
  const Arc& last = traj.arcs.back();
  fmt::print("arcs={} switches={} t_end={} x={} y={}\n", traj.arcs.size(), traj.switch_count,
             format_number(last.t_end), format_number(last.end_state().x()),
             format_number(last.end_state().y()));
  return kExitOk;
}

int run_cycle(const Context& ctx) {
  const Scenario& s = ctx.scenario;
  const SwitchedSystem system = build_system(s);
  const double eq_y = switched_equilibrium(system, equilibrium_guess(ctx));
  CycleOptions opts = s.cycle;
  opts.eq_guess = eq_y;
  const LimitCycle cycle =
      find_limit_cycle(system, system.half_width(), s.y_guess.value_or(eq_y), opts);

  Json doc = to_json(cycle);
  doc["period_asymptotic"] = asymptotic_period(system, system.half_width(), cycle.eq_y);
  doc["sliding"] = to_json(stability_certificate(system, cycle.eq_y));
  const std::string text = dump(doc);
  write_file(ctx.out / "cycle.json", text);
  Trajectory loop;
  loop.arcs = {cycle.arc_plus, cycle.arc_minus};
  loop.switch_count = 2;
  write_with(ctx.out / "cycle.csv", [&](std::ostream& o) { write_trajectory_csv(o, loop); });
  std::cout << text;
  return kExitOk;
}

int run_sweep(const Context& ctx) {
  const Scenario& s = ctx.scenario;
  if (s.half_widths.empty()) throw ScenarioError("sweep needs [sweep] half_widths");
  const SwitchedSystem system = build_system(s);
  const auto rows = sweep(system, s.half_widths, equilibrium_guess(ctx), s.cycle,
                          ctx.workers);
  write_with(ctx.out / "sweep.csv", [&](std::ostream& o) { write_sweep_csv(o, rows); });
  write_sweep_csv(std::cout, rows);
  return kExitOk;
}

int run_design(const Context& ctx) {
  const Scenario& s = ctx.scenario;
  const double c = solve_reference_c(s.converter, s.rule.n, s.u_ref);
  ControlRule rule = s.rule;
  rule.c = c;
  rule.eps = 0.0;
  const SwitchedSystem system = transform_to_normal(s.converter, rule);
  const double y_guess = (s.u_ref - s.rule.n[1] * system.center()) / s.rule.n[0];
  const double eq_y = switched_equilibrium(system, y_guess);

  Json doc;
  doc["u_ref"] = s.u_ref;
  doc["n1"] = s.rule.n[0];
  doc["n2"] = s.rule.n[1];
  doc["c"] = c;
  doc["eq_x"] = system.center();
  doc["eq_y"] = eq_y;
  doc["u_c"] = from_normal(s.rule.n, {system.center(), eq_y}).y();
  doc["sliding"] = to_json(stability_certificate(system, eq_y));
  write_file(ctx.out / "design.json", dump(doc));
  fmt::print("c = {}\n", format_number(c));
  return kExitOk;
}

int run_case_study(const Context& ctx) {
  const Scenario& s = ctx.scenario;
  CaseStudyOptions opts;
  opts.cycle = s.cycle;
  opts.transient_switches = s.transient_switches;
  const CaseStudy study = case_study(s.converter, s.rule, s.initial_iu, opts);
  const std::string text = dump(to_json(study));
  write_file(ctx.out / "case_study.json", text);
  write_with(ctx.out / "case_study_trajectory.csv",
             [&](std::ostream& o) { write_converter_csv(o, study.transient, s.rule.n); });
  Trajectory loop;
  loop.arcs = {study.cycle.arc_plus, study.cycle.arc_minus};
  loop.switch_count = 2;
  write_with(ctx.out / "case_study_cycle.csv",
             [&](std::ostream& o) { write_converter_csv(o, loop, s.rule.n); });
  std::cout << text;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limit cycles of planar switched systems with hysteresis switching"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string scenario_path;
  std::string out_dir;
  std::string builtin;
  std::vector<std::string> overrides;
  double tol = 0.0;
  long switch_budget = 0;
  int workers = 1;
  app.add_option("--scenario", scenario_path, "Scenario file (INI)")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--builtin", builtin, "Builtin system: symmetric-test, tangency-test, converter");
  app.add_option("--set", overrides, "Scenario override section.key=value (repeatable)");
  app.add_option("--tol", tol, "Integrator relative tolerance")->check(CLI::PositiveNumber);
  app.add_option("--switch-budget", switch_budget, "Maximum number of switches")
      ->check(CLI::PositiveNumber);
  app.add_option("--workers", workers, "Worker threads for sweep")->check(CLI::PositiveNumber);

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Context&);
  };
  const Command commands[] = {
      {"check", "Check the standing hypotheses at the switched equilibrium", run_check},
      {"simulate", "Simulate the hysteretic switched system", run_simulate},
      {"cycle", "Locate the limit cycle", run_cycle},
      {"sweep", "Limit cycles over a list of half-widths", run_sweep},
      {"converter-design", "Threshold constant c for a reference voltage", run_design},
      {"converter-case-study", "Full converter case study", run_case_study},
  };
  std::vector<CLI::App*> subs;
  for (const auto& c : commands) subs.push_back(app.add_subcommand(c.name, c.help));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  Context ctx;
  ctx.workers = workers;
  try {
    std::vector<std::string> all = overrides;
    if (!builtin.empty()) all.insert(all.begin(), "system.type=" + builtin);
    ctx.scenario = scenario_path.empty() ? default_scenario(all) : load_scenario(scenario_path, all);
    if (tol > 0.0) ctx.scenario.cycle.flow.rtol = tol;
    if (switch_budget > 0) ctx.scenario.cycle.flow.switch_budget = switch_budget;
  } catch (const ScenarioError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  ctx.out = out_dir.empty() ? fs::path(ctx.scenario.output_dir) : fs::path(out_dir);

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i]->parsed()) continue;
    try {
      fs::create_directories(ctx.out);
      return commands[i].run(ctx);
    } catch (const ScenarioError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitUsage;
    } catch (const NumericError& e) {
      const std::string text = dump(error_json(e));
      std::cout << text;
      try {
        write_file(ctx.out / "error.json", text);
      } catch (const std::exception&) {
      }
      return kExitNumeric;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return kExitUsage;
}
