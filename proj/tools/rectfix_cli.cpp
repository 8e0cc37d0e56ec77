#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rectfix/errors.hpp"
#include "rectfix/fixtures.hpp"
#include "rectfix/io.hpp"
#include "rectfix/reproduce.hpp"

namespace fs = std::filesystem;
using namespace rectfix;

namespace {

constexpr int kOk = 0;
constexpr int kMathFailure = 1;
constexpr int kInputError = 2;

struct Options {
  std::string file;
  std::optional<std::string> cls;
  std::optional<double> s;
  std::optional<std::string> x0;
  std::optional<double> tol;
  std::optional<std::size_t> max_iter;
  std::optional<double> grid_step;
  bool json = false;
  std::string example;
  std::string out_dir;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string tuple_text(const DistanceTable& t, const Witness& w) {
  std::string out = "(";
  for (std::size_t i = 0; i < w.tuple.size(); ++i) out += (i ? "," : "") + t.label(w.tuple[i]);
  return out + ")";
}

// x -> z -> y or x -> u -> v -> y
std::string path_text(const DistanceTable& t, const Witness& w) {
  std::string out = t.label(w.tuple[0]);
  for (std::size_t i = 2; i < w.tuple.size(); ++i) out += " -> " + t.label(w.tuple[i]);
  return out + " -> " + t.label(w.tuple[1]);
}

int verify_space(const Options& o) {
  const Json doc = read_json_file(o.file);
  std::optional<Fixture> fixture;
  SpaceSpec spec;
  if (doc.is_object() && doc.contains("space")) {
    fixture = fixture_from_json(doc);
    spec = fixture->space;
  } else {
    spec = space_from_json(doc);
  }
  if (o.grid_step) {
    if (!(*o.grid_step > 0.0)) throw InputError("--grid-step must be > 0");
    if (auto* rule = std::get_if<RuleSpaceSpec>(&spec); rule && rule->grid) rule->grid->step = *o.grid_step;
  }
  const Space space = Space::from_spec(spec);
  const DistanceTable& table = space.table();

  if (const auto defects = validate_table(table); !defects.empty()) {
    std::string msg = "distance table is not a valid space:";
    for (const auto& d : defects) {
      msg += " " + std::string(to_string(d.kind)) + " at (" + table.label(d.i) + "," + table.label(d.j) + ");";
    }
    throw InputError(msg);
  }

  MetricClass cls = fixture ? fixture->metric_class : MetricClass::rectangular_b;
  if (o.cls) cls = parse_metric_class(*o.cls);
  double s = 1.0;
  if (is_parameterized(cls)) {
    if (o.s) {
      s = *o.s;
    } else if (fixture) {
      s = fixture->config.s;
    } else {
      throw InputError("--s is required for class " + std::string(to_string(cls)));
    }
  } else if (o.s && *o.s != 1.0) {
    throw InputError("class " + std::string(to_string(cls)) + " has its coefficient fixed at 1");
  }

  AxiomReport report = check_class(table, cls, s);
  report.sampled = space.sampled();

  if (o.json) {
    std::cout << canonical_dump(to_json(report, table));
  } else {
    std::cout << "class " << to_string(cls) << ", s=" << num(s) << ": " << (report.holds ? "holds" : "fails")
              << (report.sampled ? " (sampled)" : "") << (report.vacuous ? " (vacuous)" : "") << "\n";
    std::cout << "points " << table.size() << ", tuples inspected " << report.inspected << ", violations "
              << report.violations << "\n";
    std::cout << "minimal coefficient " << num(report.minimal_coefficient);
    if (report.worst_witness) std::cout << " at " << tuple_text(table, *report.worst_witness);
    std::cout << "\n";
    if (report.first_violation) {
      const Witness& w = *report.first_violation;
      std::cout << "witness " << tuple_text(table, w) << ": d(" << table.label(w.tuple[0]) << ","
                << table.label(w.tuple[1]) << ") = " << num(w.lhs) << " > " << num(s) << " * " << num(w.path)
                << " along " << path_text(table, w) << "\n";
    }
  }
  return report.holds ? kOk : kMathFailure;
}

int verify_contraction(const Options& o) {
  const Fixture fixture = load_fixture(o.file);
  const Problem p = instantiate(fixture, o.grid_step);
  validate(p.config);
  const EligibilityMask mask = eligibility(p.space, p.gates);
  const AdmissibilityReport adm = check_admissibility(p.space, p.map, p.gates);
  const ViolationReport report = check_contraction(p.config, p.space, p.map, mask);
  const bool ok = report.satisfied_all && adm.holds();

  if (o.json) {
    std::cout << canonical_dump(Json{{"fixture", fixture.name},
                                     {"sampled", report.sampled},
                                     {"eligible_pairs", mask.count()},
                                     {"admissibility", to_json(adm)},
                                     {"contraction", to_json(report)},
                                     {"ok", ok}});
  } else {
    std::cout << "fixture " << fixture.name << (report.sampled ? " (sampled)" : "") << "\n";
    for (const auto& e : report.evaluations) {
      std::cout << "  (" << e.x << "," << e.y << ") lhs " << num(e.lhs) << " rhs_inner " << num(e.rhs_inner);
      if (e.status == PairStatus::satisfied || e.status == PairStatus::violated) std::cout << " rhs " << num(e.rhs);
      std::cout << "  " << to_string(e.status) << "\n";
    }
    std::cout << "evaluated " << report.evaluations.size() << " pairs, exempt " << report.exempt
              << ", violations " << report.violations << "\n";
    for (const auto* c : {&adm.t1, &adm.t2, &adm.t3, &adm.t4}) {
      std::cout << "admissibility " << c->name << ": " << (c->holds ? "holds" : "fails");
      if (!c->witness.empty()) {
        std::cout << " at (";
        for (std::size_t i = 0; i < c->witness.size(); ++i) std::cout << (i ? "," : "") << c->witness[i];
        std::cout << ")";
      }
      std::cout << "\n";
    }
  }
  if (report.domain_gaps + report.overflows > 0) {
    std::cerr << "warning: " << report.domain_gaps << " theta-domain gaps, " << report.overflows
              << " overflows (not counted as violations)\n";
  }
  if (!report.satisfied_all) {
    for (const auto& e : report.evaluations) {
      if (e.status == PairStatus::violated) {
        std::cerr << "violation at (" << e.x << "," << e.y << "): " << num(e.lhs) << " > " << num(e.rhs) << "\n";
        break;
      }
    }
  }
  return ok ? kOk : kMathFailure;
}

int solve(const Options& o) {
  if (!o.x0) throw InputError("--x0 is required");
  const Fixture fixture = load_fixture(o.file);
  const Problem p = instantiate(fixture, o.grid_step);
  PicardOptions opts;
  if (o.tol) {
    if (!(*o.tol >= 0.0)) throw InputError("--tol must be >= 0");
    opts.tol = *o.tol;
  }
  if (o.max_iter) opts.max_iter = *o.max_iter;

  std::optional<Element> start = p.space.find(*o.x0);
  if (!start && p.space.numeric()) {
    if (const auto v = parse_numeric_label(*o.x0)) start = p.space.at_value(*v);
  }
  if (!start) throw InputError("starting point '" + *o.x0 + "' is not in the space");

  const IterationTrace trace = picard(p.space, p.map, p.gates, p.config, *start, opts);
  for (const auto& rec : trace_records(trace)) std::cout << rec.dump() << "\n";
  const Certificate cert = certify_trace(trace, p.config);

  std::cerr << "status " << to_string(trace.status) << ", steps " << trace.steps() << ", last "
            << trace.names.back() << ", residual " << num(trace.residual) << "\n";
  std::cerr << "certificate " << (cert.clean ? "clean" : "not clean");
  if (cert.hypothesis_unmet) std::cerr << ", start hypothesis unmet";
  if (cert.degenerate_ratio) std::cerr << ", ratio bound degenerate";
  std::cerr << "\n";
  for (const auto& i : cert.issues) {
    std::cerr << "  " << i.check << " at n=" << i.index << ": " << num(i.value) << " vs " << num(i.bound) << "\n";
  }
  return trace.status == TraceStatus::converged && cert.clean ? kOk : kMathFailure;
}

int reproduce_cmd(const Options& o) {
  const ReproduceReport report = reproduce(o.example, o.grid_step);
  if (o.json) {
    std::cout << canonical_dump(to_json(report));
  } else {
    std::cout << render_table(report);
  }
  return report.ok() ? kOk : kMathFailure;
}

int export_fixtures(const Options& o) {
  const fs::path dir = o.out_dir;
  fs::create_directories(dir);
  for (const auto& [stem, fixture] : bundled_fixtures()) {
    const fs::path path = dir / (stem + ".json");
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path.string() + "'");
    out << canonical_dump(to_json(fixture));
    std::cout << path.string() << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed-point toolkit for rectangular b-metric spaces"};
  app.require_subcommand(1);
  Options o;

  auto* vs = app.add_subcommand("verify-space", "check a metric-class axiom on a space or fixture file");
  vs->add_option("file", o.file, "space or fixture JSON")->required();
  vs->add_option("--class", o.cls, "metric, b-metric, rectangular or rectangular-b");
  vs->add_option("--s", o.s, "coefficient");
  vs->add_option("--grid-step", o.grid_step, "sample step for rule-based spaces");
  vs->add_flag("--json", o.json, "emit the report as canonical JSON");

  auto* vc = app.add_subcommand("verify-contraction", "check admissibility and the contraction inequality");
  vc->add_option("file", o.file, "fixture JSON")->required();
  vc->add_option("--grid-step", o.grid_step, "sample step for rule-based spaces");
  vc->add_flag("--json", o.json, "emit the report as canonical JSON");

  auto* sv = app.add_subcommand("solve", "run Picard iteration and stream the trace as JSON lines");
  sv->add_option("file", o.file, "fixture JSON")->required();
  sv->add_option("--x0", o.x0, "starting point label")->required();
  sv->add_option("--tol", o.tol, "stop when d(x, Tx) <= tol");
  sv->add_option("--max-iter", o.max_iter, "iteration cap");
  sv->add_option("--grid-step", o.grid_step, "sample step for rule-based spaces");
  sv->add_flag("--json", o.json, "accepted for uniformity; the trace is always JSON lines");

  auto* rp = app.add_subcommand("reproduce", "rerun a bundled example and compare with its published values");
  rp->add_option("example", o.example, "3.11 or 3.12")->required();
  rp->add_option("--grid-step", o.grid_step, "sample step for 3.12");
  rp->add_flag("--json", o.json, "emit the comparison as canonical JSON");

  auto* ex = app.add_subcommand("export-fixtures", "write the bundled fixtures as canonical JSON");
  ex->add_option("dir", o.out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*vs) return verify_space(o);
    if (*vc) return verify_contraction(o);
    if (*sv) return solve(o);
    if (*rp) return reproduce_cmd(o);
    if (*ex) return export_fixtures(o);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kInputError;
  } catch (const Unsupported& e) {
    std::cerr << "unsupported: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
