#include "rotquad/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "parallel.hpp"
#include "rotquad/error.hpp"
#include "rotquad/rf_table.hpp"
#include "rotquad/symmetry_algebra.hpp"

namespace rotquad::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

Complex parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  invalid("expected a number or [re, im], got " + j.dump());
}

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) invalid(std::string("missing field '") + key + "' in " + j.dump());
  return j.at(key);
}

std::string string_member(const json& j, const char* key) {
  const json& v = member(j, key);
  if (!v.is_string()) invalid(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::string> name_list(const json& j, std::size_t min, std::size_t max) {
  if (!j.is_array() || j.size() < min || j.size() > max) invalid("bad name list " + j.dump());
  std::vector<std::string> out;
  for (const json& e : j) {
    if (!e.is_string()) invalid("point names must be strings: " + j.dump());
    out.push_back(e.get<std::string>());
  }
  return out;
}

Tolerances parse_tolerances(const json& j, Tolerances tol) {
  if (!j.is_object()) invalid("tolerances must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "edge") tol.edge = value.get<double>();
    else if (key == "degenerate") tol.degenerate = value.get<double>();
    else if (key == "winding_snap") tol.winding_snap = value.get<double>();
    else if (key == "fixed_point") tol.fixed_point = value.get<double>();
    else if (key == "max_samples") tol.max_samples = value.get<std::size_t>();
    else if (key == "jitter") tol.jitter = value.get<double>();
    else if (key == "max_attempts") tol.max_attempts = value.get<int>();
    else invalid("unknown tolerance '" + key + "'");
  }
  return tol;
}

std::string status_of(const std::optional<int>& v, bool supported) {
  if (!supported) return "unsupported";
  return v ? "ok" : "inconclusive";
}

ordered_json record_json(const CheckRecord& r) {
  ordered_json j;
  j["name"] = r.name;
  j["inputs"] = r.inputs;
  j["values"] = r.values;
  j["expected"] = r.expected;
  j["status"] = to_string(r.status);
  j["residual"] = r.residual;
  return j;
}

ordered_json report_json(const Report& report) {
  ordered_json out = ordered_json::array();
  for (const CheckRecord& r : report.records()) out.push_back(record_json(r));
  return out;
}

ordered_json summary_json(const Report& report) {
  return {{"pass", report.count(CheckStatus::Pass)},
          {"fail", report.count(CheckStatus::Fail)},
          {"inconclusive", report.count(CheckStatus::Inconclusive)}};
}

ordered_json envelope(const char* command, const std::optional<ScenarioConfig>& config) {
  ordered_json j;
  j["schema"] = kReportSchema;
  j["tool"] = "rotquad";
  j["version"] = kVersion;
  j["command"] = command;
  if (config) {
    j["scenario"] = config->name;
    j["seed"] = config->engine.seed;
    j["config"] = config->echo;
  }
  return j;
}

const SpherePoint& point_named(const ScenarioConfig& c, const std::string& name) {
  for (const NamedPoint& p : c.points) {
    if (p.name == name) return p.point;
  }
  invalid("unknown point '" + name + "'");
}

std::string joined(const std::vector<std::string>& names) {
  std::string s = "(";
  for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "," : "") + names[i];
  return s + ")";
}

std::vector<TupleSpec> effective_tuples(const ScenarioConfig& c) {
  if (!c.tuples.empty()) return c.tuples;
  std::vector<TupleSpec> out;
  const std::size_t n = c.points.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t d = 0; d < n; ++d) {
          const std::set<std::size_t> s{a, b, x, d};
          if (s.size() < 4) continue;
          out.push_back({{c.points[a].name, c.points[b].name, c.points[x].name, c.points[d].name}, std::nullopt});
        }
  return out;
}

std::uint64_t env_seed(std::uint64_t fallback) {
  const char* s = std::getenv("ROTQUAD_SEED");
  if (s == nullptr || *s == '\0') return fallback;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (used != std::string(s).size()) invalid("ROTQUAD_SEED must be an unsigned integer");
    return v;
  } catch (const std::logic_error&) {
    invalid("ROTQUAD_SEED must be an unsigned integer");
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::vector<Method> parse_methods(const std::string& text) {
  if (text == "all") return {Method::Loop, Method::Lift, Method::Trace};
  return {parse_method(text)};
}

SpherePoint parse_point(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return SpherePoint::infinity();
    invalid("points are [re, im], a number or \"inf\", got " + j.dump());
  }
  return SpherePoint(parse_complex(j));
}

MapSpec parse_map(const json& j) {
  const std::string type = string_member(j, "type");
  if (type == "identity") return MapSpec::identity();
  if (type == "twist") {
    const json& prof = member(j, "profile");
    if (!prof.is_array()) invalid("twist profile must be an array of [r, value]");
    std::vector<RadialProfile::Breakpoint> bps;
    for (const json& bp : prof) {
      if (!bp.is_array() || bp.size() != 2) invalid("profile breakpoints are [r, value]");
      bps.emplace_back(bp[0].get<double>(), bp[1].get<double>());
    }
    return MapSpec::twist(RadialProfile(std::move(bps)));
  }
  if (type == "conjugate") {
    const json& m = member(j, "mobius");
    if (!m.is_array() || m.size() != 4) invalid("mobius must be [a, b, c, d]");
    const MobiusTransform h(parse_complex(m[0]), parse_complex(m[1]), parse_complex(m[2]), parse_complex(m[3]));
    return MapSpec::conjugate(h, parse_map(member(j, "inner")));
  }
  if (type == "compose") {
    const json& parts = member(j, "parts");
    if (!parts.is_array()) invalid("compose parts must be an array");
    std::vector<MapSpec> out;
    for (const json& p : parts) out.push_back(parse_map(p));
    return MapSpec::compose(std::move(out));
  }
  if (type == "inverse") return MapSpec::inverse(parse_map(member(j, "inner")));
  if (type == "power") {
    const json& q = member(j, "q");
    if (!q.is_number_integer()) invalid("power q must be an integer");
    return MapSpec::power(q.get<int>(), parse_map(member(j, "inner")));
  }
  invalid("unknown map type '" + type + "'");
}

ScenarioConfig parse_scenario(const json& j) {
  if (!j.is_object()) invalid("a scenario is a JSON object");
  if (string_member(j, "schema") != kScenarioSchema) {
    invalid(std::string("schema must be \"") + kScenarioSchema + "\"");
  }
  ScenarioConfig c;
  c.echo = ordered_json::parse(j.dump());
  c.name = j.value("name", std::string("unnamed"));
  c.map = parse_map(member(j, "map"));
  if (j.contains("g")) c.g = parse_map(j.at("g"));

  const json& pts = member(j, "points");
  if (pts.is_object()) {
    for (const auto& [name, at] : pts.items()) c.points.push_back({name, parse_point(at)});
  } else if (pts.is_array()) {
    for (const json& p : pts) c.points.push_back({string_member(p, "name"), parse_point(member(p, "at"))});
  } else {
    invalid("points must be an object or an array");
  }
  std::set<std::string> names;
  for (const NamedPoint& p : c.points) {
    if (!names.insert(p.name).second) invalid("duplicate point name '" + p.name + "'");
  }
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    for (std::size_t k = i + 1; k < c.points.size(); ++k) {
      if (c.points[i].point == c.points[k].point) {
        throw Error(ErrorKind::CoincidentPoints, c.points[i].name + " and " + c.points[k].name + " coincide");
      }
    }
  }

  if (j.contains("paths")) {
    for (const auto& [name, path] : j.at("paths").items()) {
      const json& verts = path.is_object() ? member(path, "vertices") : path;
      std::vector<Complex> v;
      for (const json& z : verts) v.push_back(parse_complex(z));
      c.paths.emplace_back(name, Polyline::path(std::move(v)));
    }
  }
  if (j.contains("tuples")) {
    for (const json& t : j.at("tuples")) {
      TupleSpec spec;
      if (t.is_object()) {
        spec.names = name_list(member(t, "points"), 4, 5);
        if (t.contains("beta")) spec.beta = t.at("beta").get<std::string>();
      } else {
        spec.names = name_list(t, 4, 5);
      }
      for (const auto& n : spec.names) point_named(c, n);
      if (spec.beta) {
        const bool known = std::any_of(c.paths.begin(), c.paths.end(), [&](const auto& p) { return p.first == *spec.beta; });
        if (!known) invalid("unknown path '" + *spec.beta + "'");
      }
      c.tuples.push_back(std::move(spec));
    }
  }
  if (j.contains("method")) c.methods = parse_methods(j.at("method").get<std::string>());
  if (j.contains("period")) {
    const int q = j.at("period").get<int>();
    if (q <= 0) invalid("period must be positive");
    c.period = q;
  }
  if (j.contains("blowups")) {
    for (const json& b : j.at("blowups")) {
      const auto n = name_list(b, 3, 3);
      for (const auto& s : n) point_named(c, s);
      c.blowups.push_back({n[0], n[1], n[2]});
    }
  }
  if (j.contains("double_blowups")) {
    for (const json& b : j.at("double_blowups")) {
      const auto n = name_list(b, 2, 2);
      for (const auto& s : n) point_named(c, s);
      c.double_blowups.push_back({n[0], n[1]});
    }
  }
  if (j.contains("blowup")) {
    const json& b = j.at("blowup");
    c.blowup.n_iters = b.value("iters", c.blowup.n_iters);
    c.blowup.extrapolate = b.value("extrapolate", c.blowup.extrapolate);
  }
  if (j.contains("tolerances")) c.engine.tol = parse_tolerances(j.at("tolerances"), c.engine.tol);
  c.engine.seed = j.value("seed", std::uint64_t{0});
  c.engine.seed = env_seed(c.engine.seed);

  // Marked points must be fixed by the map (or by its period power) and by g.
  std::vector<SpherePoint> marked;
  for (const NamedPoint& p : c.points) marked.push_back(p.point);
  fixed_points(c.period ? MapSpec::power(*c.period, c.map) : c.map, marked, c.engine.tol);
  if (c.g) fixed_points(*c.g, marked, c.engine.tol);
  return c;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open scenario '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
  return parse_scenario(j);
}

ordered_json compute_report(const ScenarioConfig& c, int& exit_code) {
  ordered_json report = envelope("compute", c);
  const std::vector<TupleSpec> tuples = effective_tuples(c);
  const std::size_t m = c.methods.size();
  const MapSpec period_map = c.period ? MapSpec::power(*c.period, c.map) : c.map;

  std::vector<RfOutcome> outcomes(tuples.size() * m);
  detail::parallel_for(outcomes.size(), [&](std::size_t i) {
    const TupleSpec& t = tuples[i / m];
    const Method method = c.methods[i % m];
    const MarkedTuple x{point_named(c, t.names[0]), point_named(c, t.names[1]), point_named(c, t.names[2]),
                        point_named(c, t.names[3])};
    if (t.beta && method != Method::Trace) {
      const auto it = std::find_if(c.paths.begin(), c.paths.end(), [&](const auto& p) { return p.first == *t.beta; });
      ChartedPath beta{MobiusTransform::identity(), it->second};
      RfOutcome out;
      out.attempts = 1;
      try {
        out.value = method == Method::Loop ? rf_loop(period_map, x, beta, c.engine.tol)
                                           : rf_lift(period_map, x, beta, c.engine.tol);
      } catch (const Error& e) {
        if (!is_numerical(e.kind())) throw;
        out.message = e.what();
      }
      outcomes[i] = out;
      return;
    }
    outcomes[i] = compute_rf(period_map, x, method, c.engine, static_cast<std::uint64_t>(i / m));
  });

  Report checks;
  ordered_json results = ordered_json::array();
  bool numerical_failure = false;
  for (std::size_t k = 0; k < tuples.size(); ++k) {
    const std::string label = joined({tuples[k].names.begin(), tuples[k].names.begin() + 4});
    std::vector<std::pair<Method, int>> values;
    for (std::size_t q = 0; q < m; ++q) {
      const RfOutcome& o = outcomes[k * m + q];
      ordered_json r;
      r["tuple"] = label;
      r["method"] = to_string(c.methods[q]);
      if (o.value && c.period) {
        const Rational v = Rational::make(*o.value, *c.period);
        r["value"] = v.to_double();
        r["rational"] = to_string(v);
      } else if (o.value) {
        r["value"] = *o.value;
      } else {
        r["value"] = nullptr;
      }
      r["status"] = status_of(o.value, o.supported);
      r["attempts"] = o.attempts;
      if (!o.message.empty()) r["message"] = o.message;
      if (o.supported && !o.value) numerical_failure = true;
      if (o.value) values.emplace_back(c.methods[q], *o.value);
      results.push_back(std::move(r));
    }
    if (values.size() > 1) {
      CheckRecord rec;
      rec.name = "method-agreement";
      rec.inputs = label;
      rec.expected = "all methods agree";
      bool same = true;
      for (const auto& [method, v] : values) {
        rec.values.push_back(v);
        same = same && v == values.front().second;
      }
      rec.status = same ? CheckStatus::Pass : CheckStatus::Fail;
      rec.residual = same ? 0.0 : 1.0;
      checks.add(std::move(rec));
    }
  }

  ordered_json blowups = ordered_json::array();
  for (const auto& b : c.blowups) {
    const BlowupEstimate e = rf_blowup(c.map, point_named(c, b[0]), point_named(c, b[1]), point_named(c, b[2]),
                                       c.blowup, c.engine.tol);
    ordered_json r;
    r["tuple"] = joined({b[0], b[1], b[0], b[2]});
    r["value"] = e.value;
    r["error_bound"] = e.error_bound;
    r["iters"] = c.blowup.n_iters;
    r["extrapolated"] = c.blowup.extrapolate;
    r["certified"] = e.certified;
    r["rigid"] = e.rigid;
    if (!e.warning.empty()) r["warning"] = e.warning;
    blowups.push_back(std::move(r));
  }
  for (const auto& b : c.double_blowups) {
    ordered_json r;
    r["tuple"] = joined({b[0], b[1], b[0], b[1]});
    r["value"] = rf_double_blowup(c.map, point_named(c, b[0]), point_named(c, b[1]), c.engine.tol);
    blowups.push_back(std::move(r));
  }

  checks.sort();
  report["results"] = std::move(results);
  if (!blowups.empty()) report["blowups"] = std::move(blowups);
  report["checks"] = report_json(checks);
  report["summary"] = summary_json(checks);
  exit_code = numerical_failure ? kNumerical : (checks.all_passed() ? kOk : kCheckFailed);
  return report;
}

ordered_json verify_report(const std::optional<ScenarioConfig>& config, const std::string& suite, int& exit_code) {
  static const std::set<std::string> known{"rf-symmetries", "theta", "f-symmetry", "decompose", "all"};
  if (!known.count(suite)) invalid("unknown suite '" + suite + "'");
  const bool all = suite == "all";
  if (!config && suite != "theta") invalid("suite '" + suite + "' needs a scenario");

  ordered_json report = envelope("verify", config);
  report["suite"] = suite;
  Report checks;
  ordered_json info = ordered_json::object();

  if (all || suite == "theta") {
    checks.append(verify_theta());
    const KernelImage ki = theta_kernel_image();
    info["theta"] = {{"kernel_size", ki.kernel.size()}, {"image_size", ki.image_size}};
  }
  if (config && (all || suite == "rf-symmetries")) {
    checks.append(verify_rf_identities(config->map, config->g, config->points, config->engine));
  }
  if (config && (all || suite == "f-symmetry" || suite == "decompose")) {
    RfTableOptions opts;
    opts.engine = config->engine;
    opts.blowup = config->blowup;
    const RfTable table = rf_table(config->map, config->points, opts);
    for (const std::string& note : table.notes) {
      CheckRecord rec;
      rec.name = "rf-table";
      rec.inputs = note;
      rec.expected = "every distinct tuple computed";
      rec.status = CheckStatus::Inconclusive;
      checks.add(std::move(rec));
    }
    if (all || suite == "f-symmetry") {
      checks.append(check_relations(table.table));
      checks.append(verify_theorem_Fsym(table.table, ThetaConvention::Action));
      const Report literal = verify_theorem_Fsym(table.table, ThetaConvention::Literal);
      info["literal_theta"] = {{"pass", literal.count(CheckStatus::Pass)},
                               {"fail", literal.count(CheckStatus::Fail)},
                               {"note", "F(x_sigma) = Theta(sigma) F(x) read literally; informational"}};
    }
    if (all || suite == "decompose") {
      CheckRecord rec;
      rec.name = "decompose";
      rec.expected = "build_F_from_g(decompose_g(F)) = F on every defined entry";
      try {
        const GTable g = decompose_g(table.table);
        const FunctionTable rebuilt = build_F_from_g(g);
        for (const auto& x : table.table.tuples(false)) {
          if (const auto v = table.table.at(x)) rec.residual = std::max(rec.residual, std::abs(*rebuilt.at(x) - *v));
        }
        rec.status = CheckStatus::Pass;
        ordered_json gj = ordered_json::object();
        for (std::size_t u = 0; u < g.size(); ++u) {
          for (std::size_t v = 0; v < g.size(); ++v) {
            gj[g.labels()[u]][g.labels()[v]] = g.at(static_cast<int>(u), static_cast<int>(v));
          }
        }
        info["g"] = std::move(gj);
        rec.inputs = "a=" + g.labels().front() + " default labels";
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::RelationViolated) throw;
        rec.status = CheckStatus::Fail;
        rec.inputs = e.what();
        rec.residual = 1.0;
      }
      checks.add(std::move(rec));
    }
  }

  checks.sort();
  report["checks"] = report_json(checks);
  report["summary"] = summary_json(checks);
  if (!info.empty()) report["info"] = std::move(info);
  exit_code = checks.all_passed() ? kOk : kCheckFailed;
  return report;
}

std::string results_csv(const ordered_json& report) {
  std::ostringstream os;
  os << "tuple,method,value,status\r\n";
  for (const auto& r : report.at("results")) {
    os << csv_field(r.at("tuple").get<std::string>()) << ',' << r.at("method").get<std::string>() << ',';
    if (!r.at("value").is_null()) os << r.at("value").dump();
    os << ',' << r.at("status").get<std::string>() << "\r\n";
  }
  return os.str();
}

namespace {

int exit_for(const Error& e) {
  if (is_numerical(e.kind())) return kNumerical;
  if (e.kind() == ErrorKind::RelationViolated) return kCheckFailed;
  return kValidation;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidInput, "cannot write '" + path + "'");
  f << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotation-number invariants R_f for fixed points of sphere homeomorphisms", "rotquad"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string scenario, out_path, csv_path, method, suite = "all", perm;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_winding;
  std::optional<long> iters;
  bool extrapolate = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "report file (default stdout)");
    sub->add_option("--seed", seed, "jitter seed (overrides ROTQUAD_SEED and the scenario)");
    sub->add_option("--tol-winding", tol_winding, "winding snap tolerance");
    sub->add_option("--iters", iters, "blow-up iterations")->check(CLI::PositiveNumber);
    sub->add_flag("--extrapolate", extrapolate, "Richardson-extrapolate blow-up estimates");
  };

  CLI::App* compute = app.add_subcommand("compute", "R_f per tuple and method");
  compute->add_option("scenario", scenario, "scenario JSON")->required();
  compute->add_option("--method", method, "loop | lift | trace | all");
  compute->add_option("--csv", csv_path, "also write the values as CSV");
  add_common(compute);

  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("scenario", scenario, "scenario JSON (optional for the theta suite)");
  verify->add_option("--suite", suite, "rf-symmetries | theta | f-symmetry | decompose | all");
  add_common(verify);

  CLI::App* rep = app.add_subcommand("rep", "print Theta matrices of a permutation");
  rep->add_option("--perm", perm, "cycle notation, e.g. \"(12)(34)\"")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kValidation;
  }

  try {
    if (rep->parsed()) {
      const Permutation p = parse_cycles(perm);
      out << "permutation " << to_string(p) << "\n";
      out << "Theta_action (acting on tuples, Theta(sigma^-1)): " << to_string(theta_action(p)) << "\n";
      out << "Theta (generator homomorphism): " << to_string(theta(p)) << "\n";
      out << "det " << theta(p).det() << "\n";
      return kOk;
    }

    std::optional<ScenarioConfig> config;
    if (!scenario.empty()) config = load_scenario(scenario);
    if (config) {
      if (seed) config->engine.seed = *seed;
      if (tol_winding) config->engine.tol.winding_snap = *tol_winding;
      if (iters) config->blowup.n_iters = *iters;
      if (extrapolate) config->blowup.extrapolate = true;
      if (!method.empty()) config->methods = parse_methods(method);
    }

    int code = kOk;
    ordered_json report;
    if (compute->parsed()) {
      report = compute_report(*config, code);
      if (!csv_path.empty()) write_output(csv_path, results_csv(report), out);
    } else {
      report = verify_report(config, suite, code);
    }
    write_output(out_path, report.dump(2) + "\n", out);
    if (code != kOk) {
      const auto& s = report.at("summary");
      err << "rotquad: " << s.at("fail").get<std::size_t>() << " failed, "
          << s.at("inconclusive").get<std::size_t>() << " inconclusive checks\n";
    }
    return code;
  } catch (const Error& e) {
    err << "rotquad: " << e.what() << "\n";
    return exit_for(e);
  } catch (const nlohmann::json::exception& e) {
    err << "rotquad: InvalidInput: " << e.what() << "\n";
    return kValidation;
  }
}

}  // namespace rotquad::cli
