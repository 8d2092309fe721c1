#include "swcycle/report.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>

namespace swcycle {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.12g}", v);
}

namespace {

void csv_row(std::ostream& out, std::initializer_list<std::string> cells) {
  bool first = true;
  for (const auto& c : cells) {
    if (!first) out << ',';
    out << c;
    first = false;
  }
  out << '\n';
}

Json rounded(const Json& doc) {
  if (doc.is_number_float()) {
    const double v = doc.get<double>();
    if (!std::isfinite(v)) return format_number(v);
    return std::stod(format_number(v));
  }
  if (doc.is_object()) {
    Json out = Json::object();
    for (const auto& [k, v] : doc.items()) out[k] = rounded(v);
    return out;
  }
  if (doc.is_array()) {
    Json out = Json::array();
    for (const auto& v : doc) out.push_back(rounded(v));
    return out;
  }
  return doc;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  csv_row(out, {"t", "x", "y", "mode", "arc_index"});
  for (std::size_t i = 0; i < traj.arcs.size(); ++i) {
    const Arc& arc = traj.arcs[i];
    for (const Sample& s : arc.samples) {
      csv_row(out, {format_number(s.t), format_number(s.x), format_number(s.y),
                    std::string(to_string(arc.mode)), std::to_string(i)});
    }
  }
}

void write_events_csv(std::ostream& out, const Trajectory& traj) {
  csv_row(out, {"t", "side", "x", "y"});
  for (const Arc& arc : traj.arcs) {
    if (arc.exit_event != ExitEvent::HitLeft && arc.exit_event != ExitEvent::HitRight) continue;
    const Sample& s = arc.samples.back();
    csv_row(out, {format_number(s.t), std::string(to_string(arc.exit_event)), format_number(s.x),
                  format_number(s.y)});
  }
}

void write_converter_csv(std::ostream& out, const Trajectory& traj, const Eigen::Vector2d& n) {
  csv_row(out, {"t", "i_l", "u_c", "mode", "arc_index"});
  for (std::size_t i = 0; i < traj.arcs.size(); ++i) {
    const Arc& arc = traj.arcs[i];
    for (const Sample& s : arc.samples) {
      const Point iu = from_normal(n, {s.x, s.y});
      csv_row(out, {format_number(s.t), format_number(iu.x()), format_number(iu.y()),
                    std::string(to_string(arc.mode)), std::to_string(i)});
    }
  }
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  csv_row(out, {"half_width", "period_numeric", "period_asymptotic", "multiplier", "amplitude",
                "fixed_y", "error"});
  for (const SweepRow& r : rows) {
    const bool ok = r.error.empty();
    auto cell = [&](double v) { return ok ? format_number(v) : std::string(); };
    std::string err = r.error;
    for (char& ch : err)
      if (ch == ',' || ch == '\n') ch = ';';
    csv_row(out, {format_number(r.half_width), cell(r.period_numeric),
                  format_number(r.period_asymptotic), cell(r.multiplier), cell(r.amplitude),
                  cell(r.fixed_y), err});
  }
}

Json to_json(const HypothesisReport& r) {
  Json j;
  j["f_minus_at_eq"] = r.f_minus_at_eq;
  j["f_plus_at_eq"] = r.f_plus_at_eq;
  j["g_minus_at_eq"] = r.g_minus_at_eq;
  j["g_plus_at_eq"] = r.g_plus_at_eq;
  j["transversal"] = r.transversal;
  j["equilibrium_residual"] = r.equilibrium_residual;
  j["stability_value"] = r.stability_value;
  j["lambda"] = r.lambda;
  j["satisfied"] = r.satisfied();
  return j;
}

Json to_json(const SlidingAnalysis& a) {
  Json j;
  j["eq_y"] = a.eq_y;
  j["lambda"] = a.lambda;
  j["stability_value"] = a.stability_value;
  j["stable"] = a.stable;
  j["degenerate"] = a.degenerate;
  j["b_coefficient"] = a.b_coefficient;
  j["f_minus"] = a.f_minus;
  j["f_plus"] = a.f_plus;
  return j;
}

Json to_json(const LimitCycle& c) {
  Json j;
  j["half_width"] = c.half_width;
  j["fixed_y"] = c.fixed_y;
  j["period"] = c.period;
  j["period_plus"] = c.period_plus;
  j["period_minus"] = c.period_minus;
  j["multiplier"] = c.multiplier;
  j["stable"] = c.stable;
  j["amplitude"] = c.amplitude;
  j["residual"] = c.residual;
  j["eq_y"] = c.eq_y;
  j["iterations"] = c.iterations;
  return j;
}

Json to_json(const CaseStudy& s) {
  Json j;
  j["params"] = {{"r_l", s.params.r_l},
                 {"inductance", s.params.inductance},
                 {"r_load", s.params.r_load},
                 {"capacitance", s.params.capacitance},
                 {"v_s", s.params.v_s},
                 {"v_d", s.params.v_d},
                 {"time_unit", std::string(to_string(s.params.time_unit))}};
  j["rule"] = {{"n1", s.rule.n[0]}, {"n2", s.rule.n[1]}, {"c", s.rule.c}, {"eps", s.rule.eps}};
  j["initial"] = {{"i_l", s.initial_iu[0]}, {"u_c", s.initial_iu[1]}};
  j["transient_switches"] = s.transient.switch_count;
  j["sliding"] = to_json(s.sliding);
  j["u_c_equilibrium"] = s.u_c_equilibrium;
  j["cycle"] = to_json(s.cycle);
  j["period_numeric"] = s.cycle.period;
  j["period_asymptotic"] = s.asymptotic_period;
  j["relative_gap"] = s.relative_gap;
  j["u_c_min"] = s.u_c_min;
  j["u_c_max"] = s.u_c_max;
  return j;
}

Json error_json(const NumericError& e) {
  Json j;
  j["error"] = std::string(to_string(e.kind()));
  j["message"] = e.what();
  return j;
}

std::string dump(const Json& doc) { return rounded(doc).dump(2) + "\n"; }

}  // namespace swcycle
