#include "rectfix/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "rectfix/errors.hpp"
#include "rectfix/fixtures.hpp"

namespace rectfix {

std::string_view to_string(RowStatus s) {
  switch (s) {
    case RowStatus::match: return "match";
    case RowStatus::known_discrepancy: return "known-discrepancy";
    case RowStatus::mismatch: return "MISMATCH";
  }
  return "unknown";
}

bool ReproduceReport::ok() const {
  return std::none_of(rows.begin(), rows.end(),
                      [](const ComparisonRow& r) { return r.status == RowStatus::mismatch; });
}

const ComparisonRow* ReproduceReport::find(std::string_view item) const {
  for (const auto& r : rows) {
    if (r.item == item) return &r;
  }
  return nullptr;
}

bool agrees_at_printed_precision(double computed, std::string_view printed) {
  const auto value = parse_numeric_label(printed);
  if (!value) return false;
  if (printed.find('/') != std::string_view::npos) return Tolerance{}.close(computed, *value);
  const auto dot = printed.find('.');
  const int decimals = dot == std::string_view::npos ? 0 : static_cast<int>(printed.size() - dot - 1);
  return std::fabs(computed - *value) < std::pow(10.0, -decimals);
}

std::string format_2dp(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

RowStatus verdict(bool ok) { return ok ? RowStatus::match : RowStatus::mismatch; }

std::size_t index(const Space& space, const std::string& label) {
  const auto e = space.find(label);
  if (!e) throw InputError("fixture lacks point '" + label + "'");
  return e->index;
}

// numeric value row; a disagreement is a known discrepancy when `expected_off`
ComparisonRow value_row(std::string item, const std::string& published, double computed,
                        bool expected_off = false, std::string note = {}) {
  const bool agrees = agrees_at_printed_precision(computed, published);
  RowStatus status = verdict(agrees);
  if (!agrees && expected_off) status = RowStatus::known_discrepancy;
  if (agrees && expected_off) note += " (expected a discrepancy, found agreement)";
  return {std::move(item), published, num(computed), status, std::move(note)};
}

std::string label_set(const Space& space, const std::vector<std::size_t>& idx) {
  std::string out = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) out += (i ? "," : "") + space.label(idx[i]);
  return out + "}";
}

ReproduceReport reproduce_311() {
  const Fixture fixture = example311();
  const Problem p = instantiate(fixture);
  const DistanceTable& table = p.space.table();
  ReproduceReport r{"3.11", {}};

  const AxiomReport axioms = check_class(table, p.metric_class, p.config.s);
  r.rows.push_back({"rectangular-b space, s=2", "holds",
                    std::string(axioms.holds ? "holds" : "fails") + " (minimal s " +
                        num(axioms.minimal_coefficient) + ")",
                    verdict(axioms.holds), ""});

  const AdmissibilityReport adm = check_admissibility(p.space, p.map, p.gates);
  r.rows.push_back({"triangular (alpha,eta)-admissible", "holds", adm.holds() ? "holds" : "fails",
                    verdict(adm.holds()), ""});

  const EligibilityMask mask = eligibility(p.space, p.gates);
  std::vector<std::string> active;
  for (const auto& [i, j] : mask.pairs()) {
    if (i >= j) continue;
    const Element ti = p.map.apply(p.space, p.space.element(i));
    const Element tj = p.map.apply(p.space, p.space.element(j));
    if (p.space.distance(ti, tj) > 0.0) active.push_back("{" + table.label(i) + "," + table.label(j) + "}");
  }
  std::string active_text;
  for (std::size_t i = 0; i < active.size(); ++i) active_text += (i ? " " : "") + active[i];
  const std::string published_active = "{1,4} {2,4} {3,4}";
  r.rows.push_back({"eligible pairs with d(Tx,Ty)>0", published_active, active_text,
                    verdict(active_text == published_active), ""});

  const auto pair = [&](const char* x, const char* y) {
    return evaluate_pair(p.config, p.space, p.map, p.space.element(index(p.space, x)),
                         p.space.element(index(p.space, y)));
  };
  const PairEvaluation e14 = pair("1", "4");
  const PairEvaluation e24 = pair("2", "4");
  const PairEvaluation e34 = pair("3", "4");

  r.rows.push_back(value_row("(1,4) lhs", "1.4", e14.lhs));
  r.rows.push_back(value_row("(1,4) inner argument", "21/5", e14.rhs_inner));
  r.rows.push_back(value_row("(1,4) rhs", "2.36", e14.rhs));
  r.rows.push_back(value_row("(2,4) lhs", "1.4", e24.lhs));
  r.rows.push_back(value_row("(2,4) inner argument", "3.65", e24.rhs_inner, true,
                             "table and formula give 1201/240"));
  r.rows.push_back(value_row("(2,4) rhs", "2.27", e24.rhs, true, "follows from the inner argument"));
  r.rows.push_back(value_row("(3,4) lhs", "1.4", e34.lhs));
  r.rows.push_back(value_row("(3,4) inner argument", "10.1", e34.rhs_inner));
  r.rows.push_back(value_row("(3,4) rhs", "3.13", e34.rhs, true,
                             "(2*sqrt(10.1)+3)/3 = 3.11870"));

  const ViolationReport contraction = check_contraction(p.config, p.space, p.map, mask);
  r.rows.push_back({"contraction inequality", "satisfied",
                    contraction.satisfied_all ? "satisfied on all " +
                                                    std::to_string(contraction.evaluations.size()) +
                                                    " ordered pairs"
                                              : std::to_string(contraction.violations) + " violations",
                    verdict(contraction.satisfied_all), ""});

  const FixedPointSet fix = fixed_points(p.space, p.map);
  r.rows.push_back({"unique fixed point", "1", label_set(p.space, fix.points),
                    verdict(fix.unique() && table.label(fix.points.front()) == "1"), ""});

  bool all_converge = true;
  std::size_t max_steps = 0;
  std::size_t starts = 0;
  for (std::size_t i = 0; i < p.space.size(); ++i) {
    const IterationTrace t = picard(p.space, p.map, p.gates, p.config, p.space.element(i));
    if (!t.start_hypothesis) continue;
    ++starts;
    max_steps = std::max(max_steps, t.steps());
    all_converge = all_converge && t.status == TraceStatus::converged && t.names.back() == "1";
  }
  r.rows.push_back({"Picard limit from every admissible start", "1",
                    std::string(all_converge ? "1" : "not all converge") + " (" + std::to_string(starts) +
                        " starts, at most " + std::to_string(max_steps) + " steps)",
                    verdict(all_converge && starts > 0), ""});

  const PropertyPReport pp = property_p(p.space, p.map, 5);
  r.rows.push_back({"property P, n <= 5", "holds", pp.holds ? "holds" : "fails", verdict(pp.holds), ""});
  return r;
}

ReproduceReport reproduce_312(double grid_step) {
  const Problem p = instantiate(example312(grid_step));
  const DistanceTable& table = p.space.table();
  ReproduceReport r{"3.12", {}};

  const auto witness = [&](std::string item, MetricClass cls, double s,
                           std::vector<std::string> labels, const std::string& published) {
    std::vector<std::size_t> tuple;
    for (const auto& l : labels) tuple.push_back(index(p.space, l));
    const TupleCheck c = evaluate_tuple(table, cls, s, tuple);
    const std::string computed = format_2dp(c.lhs) + " > " + format_2dp(c.rhs);
    r.rows.push_back({std::move(item), published, computed, verdict(!c.holds && computed == published),
                      c.holds ? "inequality holds on this tuple" : ""});
  };
  witness("metric witness d(1/5,1/7)", MetricClass::metric, 1.0, {"1/5", "1/7", "1/4"}, "0.4 > 0.29");
  witness("b-metric s=3 witness d(1/3,1/4)", MetricClass::b_metric, 3.0, {"1/3", "1/4", "1/2"},
          "0.4 > 0.39");
  witness("rectangular witness d(1/5,1/7)", MetricClass::rectangular, 1.0, {"1/5", "1/7", "1/4", "1/2"},
          "0.4 > 0.28");

  for (const auto& [cls, s] : {std::pair{MetricClass::metric, 1.0}, std::pair{MetricClass::b_metric, 3.0},
                               std::pair{MetricClass::rectangular, 1.0}}) {
    const AxiomReport a = check_class(table, cls, s);
    r.rows.push_back({std::string(to_string(cls)) + ", s=" + num(s), "fails",
                      a.holds ? "holds" : "fails (" + std::to_string(a.violations) + " violations)",
                      verdict(!a.holds), ""});
  }
  const AxiomReport rectb = check_class(table, MetricClass::rectangular_b, 3.0);
  r.rows.push_back({"rectangular-b, s=3", "holds",
                    std::string(rectb.holds ? "holds" : "fails") + " on " + std::to_string(table.size()) +
                        " sample points (minimal s " + num(rectb.minimal_coefficient) + ")",
                    verdict(rectb.holds), "sampled"});

  const AdmissibilityReport adm = check_admissibility(p.space, p.map, p.gates);
  r.rows.push_back({"triangular (alpha,eta)-admissible", "holds", adm.holds() ? "holds" : "fails",
                    verdict(adm.holds()), "sampled"});

  const EligibilityMask mask = eligibility(p.space, p.gates);
  bool inside = true;
  std::size_t active = 0;
  for (const auto& [i, j] : mask.pairs()) {
    const Element x = p.space.element(i);
    const Element y = p.space.element(j);
    if (p.space.distance(p.map.apply(p.space, x), p.map.apply(p.space, y)) == 0.0) continue;
    ++active;
    const bool in_b = x.value >= 1.0 && x.value <= 2.0 && y.value >= 1.0 && y.value <= 2.0;
    inside = inside && in_b && i != j;
  }
  r.rows.push_back({"eligible pairs with d(Tx,Ty)>0", "x != y in [1,2]",
                    inside ? std::to_string(active) + " ordered pairs, all in [1,2]" : "pair outside [1,2]",
                    verdict(inside && active > 0), "sampled"});

  const ViolationReport contraction = check_contraction(p.config, p.space, p.map, mask);
  r.rows.push_back({"contraction inequality", "satisfied",
                    contraction.satisfied_all ? "satisfied on all " +
                                                    std::to_string(contraction.evaluations.size()) +
                                                    " ordered pairs"
                                              : std::to_string(contraction.violations) + " violations",
                    verdict(contraction.satisfied_all), "sampled"});

  PicardOptions opts;
  opts.tol = 1e-17;
  double worst = 0.0;
  std::size_t starts = 0;
  std::size_t max_steps = 0;
  bool all_converge = true;
  for (std::size_t i = 0; i < p.space.size(); ++i) {
    const IterationTrace t = picard(p.space, p.map, p.gates, p.config, p.space.element(i), opts);
    if (!t.start_hypothesis) continue;
    ++starts;
    max_steps = std::max(max_steps, t.steps());
    all_converge = all_converge && t.status == TraceStatus::converged;
    worst = std::max(worst, std::fabs(t.last().value - 1.0));
  }
  const bool limit_ok = all_converge && starts > 0 && worst < 1e-8;
  r.rows.push_back({"Picard limit from every admissible start", "z = 1",
                    "max |x_N - 1| = " + num(worst) + " (" + std::to_string(starts) + " starts, at most " +
                        std::to_string(max_steps) + " steps)",
                    verdict(limit_ok), ""});
  return r;
}

}  // namespace

ReproduceReport reproduce(std::string_view id, std::optional<double> grid_step) {
  if (id == "3.11") return reproduce_311();
  if (id == "3.12") return reproduce_312(grid_step.value_or(0.1));
  throw InputError("unknown example '" + std::string(id) + "' (expected 3.11 or 3.12)");
}

std::string render_table(const ReproduceReport& report) {
  std::size_t w_item = 4, w_pub = 9, w_comp = 8;
  for (const auto& r : report.rows) {
    w_item = std::max(w_item, r.item.size());
    w_pub = std::max(w_pub, r.published.size());
    w_comp = std::max(w_comp, r.computed.size());
  }
  const auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
  std::ostringstream out;
  out << "example " << report.example << "\n";
  out << pad("item", w_item) << "  " << pad("published", w_pub) << "  " << pad("computed", w_comp)
      << "  status\n";
  out << std::string(w_item + w_pub + w_comp + 14, '-') << "\n";
  for (const auto& r : report.rows) {
    out << pad(r.item, w_item) << "  " << pad(r.published, w_pub) << "  " << pad(r.computed, w_comp) << "  "
        << to_string(r.status);
    if (!r.note.empty()) out << "  [" << r.note << "]";
    out << "\n";
  }
  out << (report.ok() ? "all claims reproduced" : "some claims NOT reproduced") << "\n";
  return out.str();
}

Json to_json(const ReproduceReport& report) {
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"item", r.item},
                    {"published", r.published},
                    {"computed", r.computed},
                    {"status", to_string(r.status)},
                    {"note", r.note}});
  }
  return Json{{"example", report.example}, {"ok", report.ok()}, {"rows", rows}};
}

}  // namespace rectfix
