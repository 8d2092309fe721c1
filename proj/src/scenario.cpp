#include "swcycle/scenario.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "swcycle/builtins.hpp"

namespace swcycle {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"system", {"type", "half_width", "center"}},
      {"plus", {"matrix", "offset"}},
      {"minus", {"matrix", "offset"}},
      {"initial", {"x", "y", "mode"}},
      {"stop", {"duration", "switches"}},
      {"cycle", {"y_guess", "eq_guess", "residual_tol", "max_iterations"}},
      {"sweep", {"half_widths"}},
      {"converter",
       {"r_l", "inductance", "r_load", "capacitance", "v_s", "v_d", "time_unit", "n1", "n2", "c",
        "eps", "u_ref", "i_l0", "u_c0", "transient_switches"}},
      {"solver", {"rtol", "atol", "t_max_arc", "tangency_tol", "switch_budget"}},
      {"output", {"dir"}},
  };
  return keys;
}

double to_double(const std::string& where, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ScenarioError(where + ": expected a number, got '" + text + "'");
  }
  if (used != text.size()) throw ScenarioError(where + ": trailing characters in '" + text + "'");
  return v;
}

long to_long(const std::string& where, const std::string& text) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(text, &used);
  } catch (const std::exception&) {
    throw ScenarioError(where + ": expected an integer, got '" + text + "'");
  }
  if (used != text.size()) throw ScenarioError(where + ": trailing characters in '" + text + "'");
  return v;
}

std::vector<double> to_list(const std::string& where, const std::string& text) {
  std::istringstream in(text);
  std::vector<double> out;
  for (std::string tok; in >> tok;) {
    if (!tok.empty() && tok.back() == ',') tok.pop_back();
    if (!tok.empty()) out.push_back(to_double(where, tok));
  }
  return out;
}

AffineForm to_affine(const pt::ptree& section, const std::string& name) {
  const auto matrix = section.get_optional<std::string>("matrix");
  const auto offset = section.get_optional<std::string>("offset");
  if (!matrix || !offset) throw ScenarioError("[" + name + "] needs both matrix and offset");
  const auto m = to_list(name + ".matrix", *matrix);
  const auto b = to_list(name + ".offset", *offset);
  if (m.size() != 4) throw ScenarioError(name + ".matrix needs 4 entries (row major)");
  if (b.size() != 2) throw ScenarioError(name + ".offset needs 2 entries");
  AffineForm f;
  f.matrix << m[0], m[1], m[2], m[3];
  f.offset << b[0], b[1];
  return f;
}

void apply_override(pt::ptree& tree, const std::string& assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq)
    throw ScenarioError("override '" + assignment + "' is not of the form section.key=value");
  const std::string section = assignment.substr(0, dot);
  const std::string key = assignment.substr(dot + 1, eq - dot - 1);
  tree.put_child(pt::ptree::path_type(section + "/" + key, '/'),
                 pt::ptree(assignment.substr(eq + 1)));
}

Scenario from_tree(const pt::ptree& tree) {
  for (const auto& [section, body] : tree) {
    const auto it = schema().find(section);
    if (it == schema().end()) throw ScenarioError("unknown section [" + section + "]");
    if (!body.data().empty()) throw ScenarioError("key '" + section + "' outside any section");
    for (const auto& [key, value] : body) {
      if (!it->second.count(key))
        throw ScenarioError("unknown key '" + key + "' in [" + section + "]");
    }
  }

  auto get = [&](const std::string& section, const std::string& key) -> std::optional<std::string> {
    const auto child = tree.get_child_optional(pt::ptree::path_type(section + "/" + key, '/'));
    if (!child) return std::nullopt;
    return child->data();
  };
  auto number = [&](const std::string& section, const std::string& key, auto& target) {
    if (const auto v = get(section, key)) target = to_double(section + "." + key, *v);
  };
  auto integer = [&](const std::string& section, const std::string& key, auto& target) {
    if (const auto v = get(section, key)) target = to_long(section + "." + key, *v);
  };

  Scenario s;
  if (const auto v = get("system", "type")) s.type = *v;
  const bool known = s.type == "affine" || s.type == "converter" || s.type == "symmetric-test" ||
                     s.type == "tangency-test";
  if (!known) throw ScenarioError("unknown system type '" + s.type + "'");
  number("system", "half_width", s.half_width);
  number("system", "center", s.center);
  if (s.type == "affine") {
    s.plus = to_affine(tree.get_child("plus", {}), "plus");
    s.minus = to_affine(tree.get_child("minus", {}), "minus");
  } else if (tree.get_child_optional("plus") || tree.get_child_optional("minus")) {
    throw ScenarioError("[plus]/[minus] are only allowed with type = affine");
  }

  const auto ix = get("initial", "x"), iy = get("initial", "y");
  if (ix.has_value() != iy.has_value()) throw ScenarioError("[initial] needs both x and y");
  if (ix) s.initial = Point(to_double("initial.x", *ix), to_double("initial.y", *iy));
  if (const auto v = get("initial", "mode")) {
    s.mode = parse_mode(*v);
    if (!s.mode) throw ScenarioError("initial.mode must be plus or minus");
  }

  if (const auto v = get("stop", "duration")) s.stop.duration = to_double("stop.duration", *v);
  if (const auto v = get("stop", "switches")) s.stop.switches = to_long("stop.switches", *v);

  if (const auto v = get("cycle", "y_guess")) s.y_guess = to_double("cycle.y_guess", *v);
  number("cycle", "eq_guess", s.eq_guess);
  number("cycle", "residual_tol", s.cycle.residual_tol);
  integer("cycle", "max_iterations", s.cycle.max_iterations);
  if (const auto v = get("sweep", "half_widths")) s.half_widths = to_list("sweep.half_widths", *v);

  number("converter", "r_l", s.converter.r_l);
  number("converter", "inductance", s.converter.inductance);
  number("converter", "r_load", s.converter.r_load);
  number("converter", "capacitance", s.converter.capacitance);
  number("converter", "v_s", s.converter.v_s);
  number("converter", "v_d", s.converter.v_d);
  if (const auto v = get("converter", "time_unit")) {
    if (*v == "ms") s.converter.time_unit = TimeUnit::Millisecond;
    else if (*v == "s") s.converter.time_unit = TimeUnit::Second;
    else throw ScenarioError("converter.time_unit must be s or ms");
  }
  number("converter", "n1", s.rule.n[0]);
  number("converter", "n2", s.rule.n[1]);
  number("converter", "c", s.rule.c);
  number("converter", "eps", s.rule.eps);
  number("converter", "u_ref", s.u_ref);
  number("converter", "i_l0", s.initial_iu[0]);
  number("converter", "u_c0", s.initial_iu[1]);
  integer("converter", "transient_switches", s.transient_switches);

  number("solver", "rtol", s.cycle.flow.rtol);
  number("solver", "atol", s.cycle.flow.atol);
  number("solver", "t_max_arc", s.cycle.flow.t_max_arc);
  number("solver", "tangency_tol", s.cycle.flow.tangency_tol);
  integer("solver", "switch_budget", s.cycle.flow.switch_budget);

  if (const auto v = get("output", "dir")) s.output_dir = *v;

  if (!(s.half_width >= 0.0)) throw ScenarioError("system.half_width must be >= 0");
  if (s.type != "affine" && s.center != 0.0)
    throw ScenarioError("system.center applies to type = affine only");
  if (!(s.cycle.flow.rtol > 0.0) || !(s.cycle.flow.atol > 0.0))
    throw ScenarioError("solver tolerances must be positive");
  if (s.cycle.flow.switch_budget < 1) throw ScenarioError("solver.switch_budget must be >= 1");
  try {
    s.converter.validate();
    s.rule.validate();
  } catch (const NumericError& e) {
    throw ScenarioError(std::string("converter: ") + e.what());
  }
  return s;
}

}  // namespace

Scenario parse_scenario(std::istream& in, const std::vector<std::string>& overrides) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ScenarioError(std::string("scenario: ") + e.what());
  }
  for (const auto& o : overrides) apply_override(tree, o);
  return from_tree(tree);
}

Scenario load_scenario(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
  return parse_scenario(in, overrides);
}

Scenario default_scenario(const std::vector<std::string>& overrides) {
  std::istringstream empty;
  return parse_scenario(empty, overrides);
}

SwitchedSystem build_system(const Scenario& s) {
  if (s.type == "symmetric-test") return symmetric_test_system(s.half_width);
  if (s.type == "tangency-test") return tangency_test_system(s.half_width);
  if (s.type == "converter") return transform_to_normal(s.converter, s.rule);
  return SwitchedSystem(PlanarField::affine(s.minus->matrix, s.minus->offset),
                        PlanarField::affine(s.plus->matrix, s.plus->offset), s.half_width,
                        s.center);
}

}  // namespace swcycle
