#include "rectfix/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rectfix/errors.hpp"

namespace rectfix {

namespace {

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string number_text(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump_into(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {  // std::map: sorted
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(key).dump() + ": ";
        dump_into(value, out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return is_scalar(e); });
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          dump_into(j[i], out, indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        dump_into(j[i], out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float: out += number_text(j.get<double>()); return;
    default: out += j.dump(); return;
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw InputError(std::string("expected an object holding '") + key + "'");
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field '") + key + "'");
  return *it;
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string("'") + what + "' must be a number");
  return j.get<double>();
}

std::string text(const Json& j, const char* what) {
  if (!j.is_string()) throw InputError(std::string("'") + what + "' must be a string");
  return j.get<std::string>();
}

std::vector<double> numbers(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string("'") + what + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : j) out.push_back(number(e, what));
  return out;
}

std::vector<double> optional_params(const Json& j) {
  const auto it = j.find("params");
  return it == j.end() ? std::vector<double>{} : numbers(*it, "params");
}

std::vector<std::string> strings(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string("'") + what + "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(text(e, what));
  return out;
}

// nlohmann type errors become InputError with the same message
template <typename F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw InputError(e.what());
  }
}

}  // namespace

std::string canonical_dump(const Json& j) {
  std::string out;
  dump_into(j, out, 0);
  out += "\n";
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

// --- spaces ------------------------------------------------------------------

Json to_json(const DistanceTable& table) {
  Json dist = Json::array();
  for (const auto& row : table.rows()) dist.push_back(row);
  return Json{{"points", table.labels()}, {"dist", dist}};
}

DistanceTable table_from_json(const Json& j) {
  return guarded([&] {
    auto labels = strings(field(j, "points"), "points");
    const Json& dist = field(j, "dist");
    if (!dist.is_array()) throw InputError("'dist' must be an array of rows");
    std::vector<std::vector<double>> rows;
    for (const auto& row : dist) rows.push_back(numbers(row, "dist"));
    return DistanceTable(std::move(labels), rows);
  });
}

Json to_json(const SpaceSpec& spec) {
  if (const auto* table = std::get_if<DistanceTable>(&spec)) return to_json(*table);
  const auto& r = std::get<RuleSpaceSpec>(spec);
  Json overrides = Json::array();
  for (const auto& o : r.rule.overrides()) overrides.push_back({{"x", o.x}, {"y", o.y}, {"d", o.d}});
  Json j{{"rule", {{"kind", "power-abs-diff"}, {"params", {r.rule.exponent()}}}},
         {"overrides", overrides},
         {"points", r.points}};
  if (r.grid) j["grid"] = {{"start", r.grid->start}, {"stop", r.grid->stop}, {"step", r.grid->step}};
  return j;
}

SpaceSpec space_from_json(const Json& j) {
  return guarded([&]() -> SpaceSpec {
    if (!j.is_object()) throw InputError("space must be an object");
    if (!j.contains("rule")) return table_from_json(j);
    const Json& rule = field(j, "rule");
    if (text(field(rule, "kind"), "rule.kind") != "power-abs-diff") {
      throw InputError("unknown distance rule '" + rule["kind"].get<std::string>() + "'");
    }
    const auto params = numbers(field(rule, "params"), "rule.params");
    if (params.size() != 1 || !(params[0] > 0.0)) {
      throw InputError("power-abs-diff needs one positive exponent");
    }
    std::vector<DistanceOverride> overrides;
    if (const auto it = j.find("overrides"); it != j.end()) {
      if (!it->is_array()) throw InputError("'overrides' must be an array");
      for (const auto& o : *it) {
        overrides.push_back({text(field(o, "x"), "x"), text(field(o, "y"), "y"), number(field(o, "d"), "d")});
      }
    }
    RuleSpaceSpec spec;
    spec.rule = DistanceRule(params[0], std::move(overrides));
    if (const auto it = j.find("points"); it != j.end()) spec.points = strings(*it, "points");
    if (const auto it = j.find("grid"); it != j.end()) {
      spec.grid = GridRecipe{number(field(*it, "start"), "start"), number(field(*it, "stop"), "stop"),
                             number(field(*it, "step"), "step")};
      if (!(spec.grid->step > 0.0) || spec.grid->stop < spec.grid->start) {
        throw InputError("grid needs step > 0 and stop >= start");
      }
    }
    if (spec.points.empty() && !spec.grid) throw InputError("rule space needs points or a grid");
    return spec;
  });
}

// --- function families ---------------------------------------------------------

Json to_json(const ThetaSpec& spec) { return {{"kind", to_string(spec.kind)}, {"params", spec.params}}; }
Json to_json(const PhiSpec& spec) { return {{"kind", to_string(spec.kind)}, {"params", spec.params}}; }

ThetaSpec theta_from_json(const Json& j) {
  return guarded([&] {
    ThetaSpec spec{parse_theta_kind(text(field(j, "kind"), "theta.kind")), optional_params(j)};
    check_params(spec);
    return spec;
  });
}

PhiSpec phi_from_json(const Json& j) {
  return guarded([&] {
    PhiSpec spec{parse_phi_kind(text(field(j, "kind"), "phi.kind")), optional_params(j)};
    check_params(spec);
    return spec;
  });
}

// --- maps ----------------------------------------------------------------------

Json to_json(const MapRule& rule) {
  Json j{{"kind", to_string(rule.kind)}};
  if (rule.kind != MapRuleKind::piecewise) {
    j["params"] = rule.params;
    return j;
  }
  Json pieces = Json::array();
  for (std::size_t i = 0; i + 1 < rule.children.size(); ++i) {
    pieces.push_back({{"interval", {rule.params[2 * i], rule.params[2 * i + 1]}},
                      {"fn", to_json(rule.children[i])}});
  }
  j["pieces"] = pieces;
  j["otherwise"] = to_json(rule.children.back());
  return j;
}

MapRule map_rule_from_json(const Json& j) {
  return guarded([&] {
    MapRule rule;
    rule.kind = parse_map_rule_kind(text(field(j, "kind"), "map.kind"));
    if (rule.kind == MapRuleKind::piecewise) {
      const Json& pieces = field(j, "pieces");
      if (!pieces.is_array()) throw InputError("'pieces' must be an array");
      for (const auto& p : pieces) {
        const auto iv = numbers(field(p, "interval"), "interval");
        if (iv.size() != 2) throw InputError("'interval' needs [lo, hi]");
        rule.params.insert(rule.params.end(), iv.begin(), iv.end());
        rule.children.push_back(map_rule_from_json(field(p, "fn")));
      }
      rule.children.push_back(map_rule_from_json(field(j, "otherwise")));
    } else {
      rule.params = optional_params(j);
    }
    check_rule(rule);
    return rule;
  });
}

Json to_json(const MapSpec& spec) {
  if (const auto* table = std::get_if<MapTable>(&spec)) return Json{{"table", *table}};
  return Json{{"rule", to_json(std::get<MapRule>(spec))}};
}

MapSpec map_from_json(const Json& j) {
  return guarded([&]() -> MapSpec {
    if (!j.is_object()) throw InputError("map must be an object");
    if (const auto it = j.find("table"); it != j.end()) {
      if (!it->is_object()) throw InputError("'table' must map labels to labels");
      MapTable table;
      for (const auto& [k, v] : it->items()) table[k] = text(v, "map image");
      return table;
    }
    if (const auto it = j.find("rule"); it != j.end()) return map_rule_from_json(*it);
    throw InputError("map needs a 'table' or a 'rule'");
  });
}

// --- gates ---------------------------------------------------------------------

Json to_json(const GateFn& gate) {
  Json j{{"kind", to_string(gate.kind)}, {"params", gate.params}};
  if (gate.kind == GateKind::piecewise) {
    j["inside"] = to_json(gate.children.at(0));
    j["outside"] = to_json(gate.children.at(1));
  }
  if (gate.kind == GateKind::table) {
    Json entries = Json::array();
    for (const auto& e : gate.entries) entries.push_back({{"x", e.x}, {"y", e.y}, {"value", e.value}});
    j["entries"] = entries;
  }
  return j;
}

GateFn gate_from_json(const Json& j) {
  return guarded([&] {
    GateFn gate;
    gate.kind = parse_gate_kind(text(field(j, "kind"), "gate.kind"));
    gate.params = optional_params(j);
    if (gate.kind == GateKind::constant && gate.params.empty()) gate.params = {1.0};
    if (gate.kind == GateKind::piecewise) {
      gate.children.push_back(gate_from_json(field(j, "inside")));
      gate.children.push_back(gate_from_json(field(j, "outside")));
    }
    if (gate.kind == GateKind::table) {
      const Json& entries = field(j, "entries");
      if (!entries.is_array()) throw InputError("'entries' must be an array");
      for (const auto& e : entries) {
        gate.entries.push_back(
            {text(field(e, "x"), "x"), text(field(e, "y"), "y"), number(field(e, "value"), "value")});
      }
    }
    check_gate(gate);
    return gate;
  });
}

Json to_json(const GatePair& gates) { return {{"alpha", to_json(gates.alpha)}, {"eta", to_json(gates.eta)}}; }

GatePair gates_from_json(const Json& j) {
  return GatePair{gate_from_json(field(j, "alpha")), gate_from_json(field(j, "eta"))};
}

// --- config --------------------------------------------------------------------

Json to_json(const ContractionConfig& cfg) {
  Json j{{"s", cfg.s},
         {"betas", cfg.betas},
         {"theta", to_json(cfg.theta)},
         {"phi", to_json(cfg.phi)},
         {"variant", to_string(cfg.variant)}};
  if (cfg.extra) j["extra"] = *cfg.extra;
  return j;
}

ContractionConfig config_from_json(const Json& j) {
  return guarded([&] {
    ContractionConfig cfg;
    cfg.s = number(field(j, "s"), "s");
    const auto betas = numbers(field(j, "betas"), "betas");
    if (betas.size() != 4) throw InputError("'betas' needs exactly four entries");
    std::copy(betas.begin(), betas.end(), cfg.betas.begin());
    cfg.theta = theta_from_json(field(j, "theta"));
    cfg.phi = phi_from_json(field(j, "phi"));
    if (const auto it = j.find("variant"); it != j.end()) cfg.variant = parse_variant(text(*it, "variant"));
    if (const auto it = j.find("extra"); it != j.end() && !it->is_null()) cfg.extra = number(*it, "extra");
    return cfg;
  });
}

// --- fixtures ------------------------------------------------------------------

Json to_json(const Fixture& f) {
  return Json{{"version", f.version},
              {"name", f.name},
              {"notes", f.notes},
              {"space", to_json(f.space)},
              {"map", to_json(f.map)},
              {"gates", to_json(f.gates)},
              {"config", to_json(f.config)},
              {"class", to_string(f.metric_class)},
              {"assumptions", f.assumptions}};
}

Fixture fixture_from_json(const Json& j) {
  return guarded([&] {
    if (!j.is_object()) throw InputError("fixture must be an object");
    Fixture f;
    if (const auto it = j.find("version"); it != j.end()) {
      if (!it->is_number_integer()) throw InputError("'version' must be an integer");
      f.version = it->get<int>();
      if (f.version != kFixtureVersion) {
        throw InputError("unsupported fixture version " + std::to_string(f.version));
      }
    }
    if (const auto it = j.find("name"); it != j.end()) f.name = text(*it, "name");
    if (const auto it = j.find("notes"); it != j.end()) f.notes = text(*it, "notes");
    f.space = space_from_json(field(j, "space"));
    f.map = map_from_json(field(j, "map"));
    f.gates = gates_from_json(field(j, "gates"));
    f.config = config_from_json(field(j, "config"));
    validate(f.config);
    if (const auto it = j.find("class"); it != j.end()) {
      try {
        f.metric_class = parse_metric_class(text(*it, "class"));
      } catch (const std::exception& e) {
        throw InputError(e.what());
      }
    }
    if (const auto it = j.find("assumptions"); it != j.end()) {
      if (!it->is_object()) throw InputError("'assumptions' must be an object of booleans");
      for (const auto& [k, v] : it->items()) {
        if (!v.is_boolean()) throw InputError("assumption '" + k + "' must be a boolean");
        f.assumptions[k] = v.get<bool>();
      }
    }
    return f;
  });
}

Fixture load_fixture(const std::filesystem::path& path) { return fixture_from_json(read_json_file(path)); }

Problem instantiate(const Fixture& f, std::optional<double> grid_step) {
  SpaceSpec spec = f.space;
  if (grid_step) {
    if (!(*grid_step > 0.0)) throw InputError("grid step must be > 0");
    if (auto* rule = std::get_if<RuleSpaceSpec>(&spec); rule && rule->grid) rule->grid->step = *grid_step;
  }
  Problem p{Space::from_spec(spec), SelfMap::from_images({}), f.gates, f.config, f.metric_class};
  p.map = SelfMap::from_spec(p.space, f.map);
  return p;
}

// --- reports -------------------------------------------------------------------

namespace {

Json witness_json(const std::optional<Witness>& w, const DistanceTable& table) {
  if (!w) return nullptr;
  std::vector<std::string> labels;
  for (auto i : w->tuple) labels.push_back(table.label(i));
  return Json{{"tuple", labels}, {"lhs", w->lhs}, {"path", w->path}, {"ratio", w->ratio}};
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const AxiomReport& r, const DistanceTable& table) {
  return Json{{"class", to_string(r.metric_class)},
              {"coefficient", r.coefficient},
              {"holds", r.holds},
              {"vacuous", r.vacuous},
              {"sampled", r.sampled},
              {"minimal_coefficient", r.minimal_coefficient},
              {"max_ratio", r.max_ratio},
              {"worst_witness", witness_json(r.worst_witness, table)},
              {"first_violation", witness_json(r.first_violation, table)},
              {"inspected", r.inspected},
              {"violations", r.violations}};
}

Json to_json(const AdmissibilityReport& r) {
  Json checks = Json::object();
  for (const auto* c : {&r.t1, &r.t2, &r.t3, &r.t4}) {
    checks[c->name] = {{"holds", c->holds},
                       {"inspected", c->inspected},
                       {"witness", c->witness.empty() ? Json(nullptr) : Json(c->witness)}};
  }
  return Json{{"holds", r.holds()}, {"sampled", r.sampled}, {"checks", checks}};
}

Json to_json(const PairEvaluation& e) {
  Json j{{"x", e.x}, {"y", e.y}, {"d_image", e.d_image}, {"status", to_string(e.status)}};
  if (e.status != PairStatus::exempt) {
    j["lhs"] = e.lhs;
    j["rhs_inner"] = e.rhs_inner;
  }
  if (e.status == PairStatus::satisfied || e.status == PairStatus::violated ||
      e.status == PairStatus::overflow) {
    j["rhs"] = e.rhs;
  }
  return j;
}

Json to_json(const ViolationReport& r) {
  Json pairs = Json::array();
  for (const auto& e : r.evaluations) pairs.push_back(to_json(e));
  return Json{{"satisfied_all", r.satisfied_all},
              {"sampled", r.sampled},
              {"pairs", pairs},
              {"exempt", r.exempt},
              {"violations", r.violations},
              {"domain_gaps", r.domain_gaps},
              {"overflows", r.overflows},
              {"min_margin", optional_number(r.min_margin)}};
}

Json to_json(const PlainReport& r) {
  Json pairs = Json::array();
  for (const auto& p : r.pairs) {
    pairs.push_back({{"x", p.x},
                     {"y", p.y},
                     {"lhs", p.lhs},
                     {"rhs", p.rhs},
                     {"satisfied", p.satisfied},
                     {"embedded", to_string(p.embedded)}});
  }
  return Json{{"satisfied_all", r.satisfied_all},
              {"pairs", pairs},
              {"violations", r.violations},
              {"embedding_violations", r.embedding_violations},
              {"embedding_unevaluable", r.embedding_unevaluable}};
}

Json to_json(const FamilyReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json j{{"name", c.name}, {"status", to_string(c.status)}, {"sampled_evidence", c.sampled_evidence}};
    if (c.witness_t) j["witness_t"] = *c.witness_t;
    if (c.witness_n) j["witness_n"] = *c.witness_n;
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(j);
  }
  return Json{{"member", r.member()}, {"checks", checks}};
}

Json to_json(const Certificate& c) {
  Json issues = Json::array();
  for (const auto& i : c.issues) {
    issues.push_back({{"check", i.check}, {"index", i.index}, {"value", i.value}, {"bound", i.bound}});
  }
  return Json{{"clean", c.clean},
              {"converged", c.converged},
              {"degenerate_ratio", c.degenerate_ratio},
              {"hypothesis_unmet", c.hypothesis_unmet},
              {"ratio", c.ratio},
              {"issues", issues}};
}

std::vector<Json> trace_records(const IterationTrace& trace) {
  std::vector<Json> out;
  for (std::size_t n = 0; n < trace.orbit.size(); ++n) {
    Json j{{"n", n}, {"x", trace.names[n]}};
    if (n < trace.d.size()) {
      j["d_n"] = trace.d[n];
      j["theta_d_n"] = optional_number(trace.theta_d[n]);
      j["envelope"] = n < trace.envelope.size() ? Json(trace.envelope[n]) : Json(nullptr);
    } else {
      j["d_n"] = trace.residual;
      j["theta_d_n"] = nullptr;
      j["envelope"] = nullptr;
    }
    j["alpha_ok"] = n < trace.alpha_ok.size() ? Json(bool(trace.alpha_ok[n])) : Json(nullptr);
    j["eta_ok"] = n < trace.eta_ok.size() ? Json(bool(trace.eta_ok[n])) : Json(nullptr);
    out.push_back(std::move(j));
  }
  return out;
}

}  // namespace rectfix
