#include "eznav/scenario_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "eznav/errors.hpp"

namespace eznav {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const json::json_pointer& where, const std::string& what) {
  const std::string loc = where.to_string().empty() ? "/" : where.to_string();
  throw ParseError("scenario " + loc + ": " + what);
}

void check_keys(const json& obj, const json::json_pointer& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) {
    fail(where, "expected an object");
  }
  for (const auto& item : obj.items()) {
    if (!allowed.contains(item.key())) {
      fail(where / item.key(), "unknown key");
    }
  }
}

const json& require(const json& obj, const json::json_pointer& where, const std::string& key) {
  if (!obj.contains(key)) {
    fail(where / key, "missing required key");
  }
  return obj.at(key);
}

double number(const json& v, const json::json_pointer& where) {
  if (!v.is_number()) {
    fail(where, "expected a number");
  }
  return v.get<double>();
}

int integer(const json& v, const json::json_pointer& where) {
  if (!v.is_number_integer()) {
    fail(where, "expected an integer");
  }
  return v.get<int>();
}

std::string text(const json& v, const json::json_pointer& where) {
  if (!v.is_string()) {
    fail(where, "expected a string");
  }
  return v.get<std::string>();
}

Point2 point(const json& v, const json::json_pointer& where) {
  if (!v.is_array() || v.size() != 2) {
    fail(where, "expected [x, y]");
  }
  return {number(v[0], where / 0), number(v[1], where / 1)};
}

double number_at(const json& obj, const json::json_pointer& where, const std::string& key) {
  return number(require(obj, where, key), where / key);
}

Threat parse_threat(const json& v, const json::json_pointer& where) {
  if (!v.is_object()) {
    fail(where, "expected an object");
  }
  const std::string kind = text(require(v, where, "kind"), where / "kind");
  if (kind == "pursuer") {
    check_keys(v, where, {"kind", "position", "mu", "range", "capture_radius"});
    PursuerThreat p;
    p.position = point(require(v, where, "position"), where / "position");
    p.mu = number_at(v, where, "mu");
    p.range = number_at(v, where, "range");
    p.capture_radius = v.contains("capture_radius") ? number_at(v, where, "capture_radius") : 0.0;
    try {
      p.validate();
    } catch (const std::exception& e) {
      fail(where, e.what());
    }
    return p;
  }
  if (kind == "turret") {
    check_keys(v, where, {"kind", "position", "theta0", "mu", "range"});
    TurretThreat t;
    t.position = point(require(v, where, "position"), where / "position");
    t.theta0 = number_at(v, where, "theta0");
    t.mu = number_at(v, where, "mu");
    t.range = number_at(v, where, "range");
    try {
      t.validate();
    } catch (const std::exception& e) {
      fail(where, e.what());
    }
    return t;
  }
  fail(where / "kind", "expected \"pursuer\" or \"turret\"");
}

PlannerOptions parse_options(const json& v, const json::json_pointer& where) {
  check_keys(v, where,
             {"n_nodes", "constraint_tolerance", "opt_tolerance", "max_iterations", "initialization", "custom_path",
              "constraint_placement"});
  PlannerOptions o;
  if (v.contains("n_nodes")) {
    o.n_nodes = integer(v["n_nodes"], where / "n_nodes");
  }
  if (v.contains("constraint_tolerance")) {
    o.constraint_tolerance = number_at(v, where, "constraint_tolerance");
  }
  if (v.contains("opt_tolerance")) {
    o.opt_tolerance = number_at(v, where, "opt_tolerance");
  }
  if (v.contains("max_iterations")) {
    o.max_iterations = integer(v["max_iterations"], where / "max_iterations");
  }
  if (v.contains("initialization")) {
    try {
      o.initialization = initialization_from_string(text(v["initialization"], where / "initialization"));
    } catch (const ArgumentError& e) {
      fail(where / "initialization", e.what());
    }
  }
  if (v.contains("constraint_placement")) {
    try {
      o.constraint_placement =
          placement_from_string(text(v["constraint_placement"], where / "constraint_placement"));
    } catch (const ArgumentError& e) {
      fail(where / "constraint_placement", e.what());
    }
  }
  if (v.contains("custom_path")) {
    const json& path = v["custom_path"];
    if (!path.is_array()) {
      fail(where / "custom_path", "expected an array of [x, y]");
    }
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < path.size(); ++i) {
      pts.push_back(point(path[i], where / "custom_path" / i));
    }
    o.custom_path = std::move(pts);
  }
  try {
    o.validate();
  } catch (const ArgumentError& e) {
    fail(where, e.what());
  }
  return o;
}

OutputOptions parse_output(const json& v, const json::json_pointer& where) {
  check_keys(v, where, {"directory", "formats"});
  OutputOptions o;
  if (v.contains("directory")) {
    o.directory = text(v["directory"], where / "directory");
  }
  if (v.contains("formats")) {
    const json& f = v["formats"];
    if (!f.is_array()) {
      fail(where / "formats", "expected an array");
    }
    o.formats.clear();
    for (std::size_t i = 0; i < f.size(); ++i) {
      std::string s = text(f[i], where / "formats" / i);
      if (s != "csv" && s != "json") {
        fail(where / "formats" / i, "expected \"csv\" or \"json\"");
      }
      o.formats.push_back(std::move(s));
    }
  }
  return o;
}

std::pair<std::size_t, std::size_t> line_column(const std::string& s, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < s.size() && i + 1 < byte; ++i) {
    if (s[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

json point_json(const Point2& p) { return json::array({p.x, p.y}); }

}  // namespace

ScenarioFile parse_scenario(const std::string& source) {
  json doc;
  try {
    doc = json::parse(source, nullptr, true, true);
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(source, e.byte);
    std::string msg = e.what();
    // Drop the library's "[json.exception.parse_error.101] " prefix.
    if (const auto pos = msg.find("] "); pos != std::string::npos) {
      msg = msg.substr(pos + 2);
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  }

  const json::json_pointer root;
  check_keys(doc, root, {"schema_version", "agent", "threats", "planner", "output"});
  ScenarioFile file;
  file.schema_version = integer(require(doc, root, "schema_version"), root / "schema_version");
  if (file.schema_version != kScenarioSchemaVersion) {
    fail(root / "schema_version", "unsupported schema version " + std::to_string(file.schema_version));
  }

  const json::json_pointer ag = root / "agent";
  const json& agent = require(doc, root, "agent");
  check_keys(agent, ag, {"start", "goal", "speed"});
  file.scenario.agent.start = point(require(agent, ag, "start"), ag / "start");
  file.scenario.agent.goal = point(require(agent, ag, "goal"), ag / "goal");
  file.scenario.agent.speed = number_at(agent, ag, "speed");

  const json& threats = require(doc, root, "threats");
  if (!threats.is_array()) {
    fail(root / "threats", "expected an array");
  }
  for (std::size_t i = 0; i < threats.size(); ++i) {
    file.scenario.threats.push_back(parse_threat(threats[i], root / "threats" / i));
  }
  if (doc.contains("planner")) {
    file.scenario.options = parse_options(doc["planner"], root / "planner");
  }
  if (doc.contains("output")) {
    file.output = parse_output(doc["output"], root / "output");
  }
  try {
    file.scenario.validate();
  } catch (const ArgumentError& e) {
    fail(root, e.what());
  }
  return file;
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open scenario file '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const ScenarioFile& file) {
  json doc;
  doc["schema_version"] = file.schema_version;
  const AgentConfig& a = file.scenario.agent;
  doc["agent"] = {{"start", point_json(a.start)}, {"goal", point_json(a.goal)}, {"speed", a.speed}};
  json threats = json::array();
  for (const Threat& t : file.scenario.threats) {
    if (const auto* p = std::get_if<PursuerThreat>(&t)) {
      threats.push_back({{"kind", "pursuer"},
                         {"position", point_json(p->position)},
                         {"mu", p->mu},
                         {"range", p->range},
                         {"capture_radius", p->capture_radius}});
    } else {
      const auto& tt = std::get<TurretThreat>(t);
      threats.push_back({{"kind", "turret"},
                         {"position", point_json(tt.position)},
                         {"theta0", tt.theta0},
                         {"mu", tt.mu},
                         {"range", tt.range}});
    }
  }
  doc["threats"] = threats;
  const PlannerOptions& o = file.scenario.options;
  json planner = {{"n_nodes", o.n_nodes},
                  {"constraint_tolerance", o.constraint_tolerance},
                  {"opt_tolerance", o.opt_tolerance},
                  {"max_iterations", o.max_iterations},
                  {"initialization", to_string(o.initialization)},
                  {"constraint_placement", to_string(o.constraint_placement)}};
  if (o.custom_path) {
    json path = json::array();
    for (const Point2& p : *o.custom_path) {
      path.push_back(point_json(p));
    }
    planner["custom_path"] = path;
  }
  doc["planner"] = planner;
  doc["output"] = {{"directory", file.output.directory}, {"formats", file.output.formats}};
  return doc.dump(2) + "\n";
}

namespace {

bool same_threat(const Threat& a, const Threat& b) {
  if (a.index() != b.index()) {
    return false;
  }
  if (const auto* p = std::get_if<PursuerThreat>(&a)) {
    const auto& q = std::get<PursuerThreat>(b);
    return p->position == q.position && p->mu == q.mu && p->range == q.range &&
           p->capture_radius == q.capture_radius;
  }
  const auto& p = std::get<TurretThreat>(a);
  const auto& q = std::get<TurretThreat>(b);
  return p.position == q.position && p.theta0 == q.theta0 && p.mu == q.mu && p.range == q.range;
}

}  // namespace

bool operator==(const ScenarioFile& a, const ScenarioFile& b) {
  if (a.schema_version != b.schema_version || !(a.scenario.agent == b.scenario.agent) || !(a.output == b.output)) {
    return false;
  }
  if (a.scenario.threats.size() != b.scenario.threats.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.scenario.threats.size(); ++i) {
    if (!same_threat(a.scenario.threats[i], b.scenario.threats[i])) {
      return false;
    }
  }
  const PlannerOptions& x = a.scenario.options;
  const PlannerOptions& y = b.scenario.options;
  return x.n_nodes == y.n_nodes && x.constraint_tolerance == y.constraint_tolerance &&
         x.opt_tolerance == y.opt_tolerance && x.max_iterations == y.max_iterations &&
         x.initialization == y.initialization && x.constraint_placement == y.constraint_placement &&
         x.custom_path == y.custom_path;
}

}  // namespace eznav
