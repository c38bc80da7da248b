#include "eznav_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <random>

#include "CLI11.hpp"
#include "json.hpp"

#include "eznav/circumnav.hpp"
#include "eznav/engagement_oracle.hpp"
#include "eznav/errors.hpp"
#include "eznav/ez_pursuit.hpp"
#include "eznav/ez_turret.hpp"
#include "eznav/planner.hpp"
#include "eznav/scenario_io.hpp"
#include "eznav_cli/output.hpp"

namespace eznav::cli {

namespace {

using nlohmann::ordered_json;

// Nine significant digits inside JSON as well.
double round9(double v) {
  if (!std::isfinite(v)) {
    return v;
  }
  return std::stod(num(v));
}

ordered_json jnum(double v) {
  if (!std::isfinite(v)) {
    return num(v);
  }
  return round9(v);
}

std::filesystem::path output_dir(const PlanArgs& args, const ScenarioFile& file) {
  if (args.output_dir) {
    return *args.output_dir;
  }
  std::filesystem::path dir = file.output.directory;
  if (dir.is_relative()) {
    dir = std::filesystem::path(args.scenario).parent_path() / dir;
  }
  return dir;
}

FormatChoice formats(const PlanArgs& args, const ScenarioFile& file) {
  if (args.format.only) {
    return args.format;
  }
  FormatChoice f;
  const auto& fs = file.output.formats;
  const bool csv = std::find(fs.begin(), fs.end(), "csv") != fs.end();
  const bool json = std::find(fs.begin(), fs.end(), "json") != fs.end();
  if (csv && !json) {
    f.only = "csv";
  } else if (json && !csv) {
    f.only = "json";
  }
  return f;
}

std::string trajectory_csv(const PlanResult& res, const Scenario& sc) {
  std::vector<std::string> header{"t", "x", "y", "psi"};
  for (std::size_t i = 0; i < sc.threats.size(); ++i) {
    header.push_back("clearance_" + std::to_string(i));
  }
  CsvWriter csv(header);
  const Trajectory& tr = res.trajectory;
  for (std::size_t k = 0; k < tr.size(); ++k) {
    const double psi = tr.node_heading(k);
    std::vector<double> row{tr.times[k], tr.points[k].x, tr.points[k].y, psi};
    for (const Threat& t : sc.threats) {
      row.push_back(threat_clearance(tr.points[k], psi, t));
    }
    csv.row(row);
  }
  return csv.str();
}

ordered_json result_json(const PlanResult& res, const Scenario& sc) {
  ordered_json j;
  j["t_f"] = jnum(res.t_f);
  j["converged"] = res.converged;
  j["min_clearance"] = jnum(res.min_clearance);
  j["iterations"] = res.iterations;
  j["constraint_violation"] = jnum(res.constraint_violation);
  j["stationarity"] = jnum(res.stationarity);
  j["n_nodes"] = sc.options.n_nodes;
  j["initialization"] = to_string(sc.options.initialization);
  j["constraint_placement"] = to_string(sc.options.constraint_placement);
  return j;
}

// Parses and plans; returns an exit code and fills `res` when planning ran.
int load_and_plan(const PlanArgs& args, std::ostream& err, ScenarioFile& file, std::optional<PlanResult>& res) {
  try {
    file = load_scenario(args.scenario);
  } catch (const ParseError& e) {
    err << "error: " << args.scenario << ": " << e.what() << '\n';
    return kUsage;
  }
  try {
    res = plan(file.scenario);
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return res->converged ? kOk : kNotConverged;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = s.find(',', pos);
    const std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) {
      throw std::invalid_argument("bad number '" + item + "'");
    }
    out.push_back(v);
    if (comma == std::string::npos) {
      break;
    }
    pos = comma + 1;
  }
  return out;
}

struct SweepCount {
  std::size_t samples = 0;
  std::size_t disagreements = 0;
};

SweepCount pursuer_sweep(const PursuerThreat& threat, int samples, double perturb, std::mt19937_64& rng) {
  // Distances uniform out to 1.5 times the largest boundary radius.
  const double reach = 1.5 * ((1.0 + threat.mu) * threat.range + threat.capture_radius);
  std::uniform_real_distribution<double> dist(0.0, reach);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  const double margin = 1e-3 * threat.range;
  SweepCount count;
  while (count.samples < static_cast<std::size_t>(samples)) {
    const Point2 pos = threat.position + unit_vector(angle(rng)) * dist(rng);
    const Angle heading = Angle::radians(angle(rng));
    if (distance(pos, threat.position) < margin) {
      continue;
    }
    const Angle xi = aspect_angle(pos, heading, threat.position);
    const double r = rho(xi, threat);
    const double clearance = distance(pos, threat.position) - r;
    if (std::abs(clearance) < margin) {
      continue;
    }
    ++count.samples;
    const bool analytic = distance(pos, threat.position) - (1.0 + perturb) * r <= 0.0;
    if (analytic != pursuit_capture_possible(pos, heading, threat)) {
      ++count.disagreements;
    }
  }
  return count;
}

SweepCount turret_sweep(const TurretThreat& threat, int samples, std::mt19937_64& rng) {
  const double box = 2.0 * threat.range;
  std::uniform_real_distribution<double> coord(-box, box);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  const double margin = 1e-3 * threat.range;
  SweepCount count;
  while (count.samples < static_cast<std::size_t>(samples)) {
    const Point2 pos = threat.position + Point2{coord(rng), coord(rng)};
    const double heading = angle(rng);
    if (distance(pos, threat.position) < margin ||
        std::abs(turret_clearance(pos, heading, threat)) < margin) {
      continue;
    }
    ++count.samples;
    const bool analytic = ez_contains_turret(pos, Angle::radians(heading), threat);
    if (analytic != turret_neutralization_possible(pos, Angle::radians(heading), threat)) {
      ++count.disagreements;
    }
  }
  return count;
}

}  // namespace

int cmd_ez_boundary(const BoundaryArgs& a, std::ostream& out, std::ostream& err) {
  if (a.n < 3) {
    err << "error: --n must be at least 3\n";
    return kUsage;
  }
  const Angle heading = Angle::radians(a.heading);
  CsvWriter csv({"xi_or_gamma", "rho_or_x", "y", "world_x", "world_y"});
  ordered_json summary;
  summary["kind"] = a.kind;
  double max_dist = 0.0;
  double min_dist = std::numeric_limits<double>::infinity();
  const Point2 origin{a.px, a.py};
  try {
    if (a.kind == "pursuer") {
      const PursuerThreat threat{origin, a.mu, a.range, a.capture_radius};
      const auto samples = sample_boundary(threat, heading, a.n);
      for (const auto& s : samples) {
        // Heading-frame offset of the boundary point from the threat.
        const Point2 rel = rotate(s.point - origin, -a.heading);
        csv.row(std::vector<double>{s.xi.rad(), s.rho, rel.y, s.point.x, s.point.y});
        max_dist = std::max(max_dist, s.rho);
        min_dist = std::min(min_dist, s.rho);
      }
      summary["parameters"] = {{"mu", jnum(a.mu)},
                               {"R", jnum(a.range)},
                               {"r", jnum(a.capture_radius)},
                               {"heading", jnum(a.heading)},
                               {"position", {jnum(a.px), jnum(a.py)}},
                               {"n", a.n}};
      if (a.mu > 1.0) {
        summary["xi_crossover"] = jnum(xi_crossover(threat).rad());
        summary["xi_touch_limit"] = jnum(xi_touch_limit(threat));
      }
    } else if (a.kind == "turret") {
      const TurretThreat threat{origin, a.theta0, a.mu, a.range};
      const auto samples = sample_turret_boundary(threat, heading, a.n);
      for (const auto& s : samples) {
        const Point2 world = turret_frame_to_world(s.a0, threat, heading);
        csv.row(std::vector<double>{s.gamma, s.a0.x, s.a0.y, world.x, world.y});
        const double d = s.a0.norm();
        max_dist = std::max(max_dist, d);
        min_dist = std::min(min_dist, d);
      }
      summary["parameters"] = {{"mu", jnum(a.mu)},
                               {"R", jnum(a.range)},
                               {"theta0", jnum(a.theta0)},
                               {"heading", jnum(a.heading)},
                               {"position", {jnum(a.px), jnum(a.py)}},
                               {"n", a.n}};
      ordered_json gammas = ordered_json::array();
      for (const auto& iv : gamma_range(Angle::radians(a.theta0 - a.heading))) {
        gammas.push_back({jnum(iv.lo), jnum(iv.hi)});
      }
      summary["gamma_range"] = gammas;
    } else {
      err << "error: --kind must be 'pursuer' or 'turret'\n";
      return kUsage;
    }
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  summary["extrema"] = {{"max_distance", jnum(max_dist)}, {"min_distance", jnum(min_dist)}};
  summary["rows"] = a.n;

  if (a.format.csv()) {
    write_file(a.output_dir, "ez_boundary.csv", csv.str());
  }
  if (a.format.json()) {
    write_file(a.output_dir, "ez_boundary.json", summary.dump(2) + "\n");
  }
  out << "wrote " << a.n << " boundary samples to " << a.output_dir << " (max distance " << num(max_dist)
      << ")\n";
  return kOk;
}

int cmd_plan(const PlanArgs& args, std::ostream& out, std::ostream& err) {
  ScenarioFile file;
  std::optional<PlanResult> res;
  const int code = load_and_plan(args, err, file, res);
  if (!res) {
    return code;
  }
  const auto dir = output_dir(args, file);
  const FormatChoice fmt = formats(args, file);
  if (fmt.csv()) {
    write_file(dir, "plan_trajectory.csv", trajectory_csv(*res, file.scenario));
  }
  if (fmt.json()) {
    write_file(dir, "plan_result.json", result_json(*res, file.scenario).dump(2) + "\n");
  }
  out << "t_f " << num(res->t_f) << (res->converged ? " converged" : " NOT converged") << " after "
      << res->iterations << " iterations, min clearance " << num(res->min_clearance) << '\n';
  if (code == kNotConverged) {
    err << "planner did not converge; partial output written to " << dir.string() << '\n';
  }
  return code;
}

int cmd_compare(const PlanArgs& args, std::ostream& out, std::ostream& err) {
  ScenarioFile file;
  try {
    file = load_scenario(args.scenario);
  } catch (const ParseError& e) {
    err << "error: " << args.scenario << ": " << e.what() << '\n';
    return kUsage;
  }
  std::optional<PursuerThreat> pursuer;
  for (const Threat& t : file.scenario.threats) {
    if (const auto* p = std::get_if<PursuerThreat>(&t)) {
      pursuer = *p;
      break;
    }
  }
  if (!pursuer) {
    err << "error: compare needs a scenario with a pursuer threat\n";
    return kUsage;
  }
  std::optional<PlanResult> res;
  const int code = load_and_plan(args, err, file, res);
  if (!res) {
    return code;
  }
  std::vector<std::string> warnings;
  const auto specs = standard_specs(*pursuer, ReachRadius::kCapturability, &warnings);
  for (const auto& w : warnings) {
    err << "warning: " << w << '\n';
  }

  CsvWriter csv({"label", "radius", "t_circumnav", "t_ez", "percent_difference"});
  ordered_json rows = ordered_json::array();
  out << "label   R_hat        t_circumnav  t_ez         percent\n";
  for (const auto& spec : specs) {
    CircumnavResult circ;
    try {
      circ = circumnavigate(file.scenario.agent.start, file.scenario.agent.goal, pursuer->position, spec,
                            file.scenario.agent.speed);
    } catch (const InfeasibleError& e) {
      err << "warning: " << spec.label << " baseline skipped: " << e.what() << '\n';
      continue;
    }
    const double pct = percent_difference(res->t_f, circ.t_f);
    csv.row(std::vector<std::string>{spec.label, num(spec.radius), num(circ.t_f), num(res->t_f), num(pct)});
    rows.push_back({{"label", spec.label},
                    {"radius", jnum(spec.radius)},
                    {"t_circumnav", jnum(circ.t_f)},
                    {"t_ez", jnum(res->t_f)},
                    {"percent_difference", jnum(pct)}});
    char line[160];
    std::snprintf(line, sizeof line, "%-7s %-12s %-12s %-12s %s\n", spec.label.c_str(), num(spec.radius).c_str(),
                  num(circ.t_f).c_str(), num(res->t_f).c_str(), num(pct).c_str());
    out << line;
  }
  const auto dir = output_dir(args, file);
  const FormatChoice fmt = formats(args, file);
  if (fmt.csv()) {
    write_file(dir, "compare.csv", csv.str());
  }
  if (fmt.json()) {
    ordered_json j;
    j["plan"] = result_json(*res, file.scenario);
    j["baselines"] = rows;
    write_file(dir, "compare.json", j.dump(2) + "\n");
  }
  if (code == kNotConverged) {
    err << "planner did not converge; partial output written to " << dir.string() << '\n';
  }
  return code;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  if (a.samples < 1) {
    err << "error: --samples must be positive\n";
    return kUsage;
  }
  std::vector<Threat> threats;
  try {
    if (a.scenario) {
      threats = load_scenario(*a.scenario).scenario.threats;
    } else if (a.kind == "pursuer") {
      for (const double mu : a.mus) {
        PursuerThreat t{{0.0, 0.0}, mu, a.range, a.capture_radius};
        t.validate();
        threats.emplace_back(t);
      }
    } else if (a.kind == "turret") {
      const std::vector<double> thetas =
          a.theta0s.empty() ? std::vector<double>{kPi / 6.0, 5.0 * kPi / 6.0, -5.0 * kPi / 6.0} : a.theta0s;
      for (const double mu : a.mus) {
        for (const double th : thetas) {
          TurretThreat t{{0.0, 0.0}, th, mu, a.range};
          t.validate();
          threats.emplace_back(t);
        }
      }
    } else {
      err << "error: --kind must be 'pursuer' or 'turret'\n";
      return kUsage;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  std::mt19937_64 rng(a.seed);
  std::size_t total = 0;
  for (const Threat& t : threats) {
    SweepCount c;
    if (const auto* p = std::get_if<PursuerThreat>(&t)) {
      c = pursuer_sweep(*p, a.samples, a.perturb_rho, rng);
      out << "pursuer mu=" << num(p->mu) << " R=" << num(p->range) << " r=" << num(p->capture_radius);
    } else {
      const auto& tt = std::get<TurretThreat>(t);
      c = turret_sweep(tt, a.samples, rng);
      out << "turret mu=" << num(tt.mu) << " R=" << num(tt.range) << " theta0=" << num(tt.theta0);
    }
    out << ": " << c.disagreements << " disagreements in " << c.samples << " samples\n";
    total += c.disagreements;
  }
  out << "total disagreements: " << total << '\n';
  return total == 0 ? kOk : kVerificationFailure;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Engagement-zone geometry and minimum-time path planning"};
  app.require_subcommand(1);

  BoundaryArgs ba;
  std::string ba_format;
  auto* bnd = app.add_subcommand("ez-boundary", "Sample an engagement-zone boundary");
  bnd->add_option("--kind", ba.kind, "pursuer or turret")->check(CLI::IsMember({"pursuer", "turret"}));
  bnd->add_option("--mu", ba.mu, "speed ratio")->required();
  bnd->add_option("--R", ba.range, "pursuer range or turret range")->required();
  bnd->add_option("--r", ba.capture_radius, "capture radius (pursuer)");
  bnd->add_option("--theta0", ba.theta0, "turret initial look angle, world frame [rad]");
  bnd->add_option("--heading", ba.heading, "agent heading, world frame [rad]");
  bnd->add_option("--px", ba.px, "threat x");
  bnd->add_option("--py", ba.py, "threat y");
  bnd->add_option("--n", ba.n, "number of samples");
  bnd->add_option("--output-dir", ba.output_dir, "output directory");
  bnd->add_option("--format", ba_format, "csv or json (default: both)")->check(CLI::IsMember({"csv", "json"}));

  PlanArgs pa;
  std::string pa_format;
  std::string pa_dir;
  auto* pln = app.add_subcommand("plan", "Plan a minimum-time path for a scenario file");
  auto* cmp = app.add_subcommand("compare", "Compare the plan with circumnavigation baselines");
  for (auto* sub : {pln, cmp}) {
    sub->add_option("scenario", pa.scenario, "scenario file")->required();
    sub->add_option("--output-dir", pa_dir, "output directory (overrides the scenario file)");
    sub->add_option("--format", pa_format, "csv or json (default: from the scenario file)")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  VerifyArgs va;
  std::string va_mus;
  std::string va_thetas;
  std::string va_scenario;
  auto* ver = app.add_subcommand("verify", "Oracle-vs-analytic equivalence sweep");
  ver->add_option("--kind", va.kind, "pursuer or turret")->check(CLI::IsMember({"pursuer", "turret"}));
  ver->add_option("--mu", va_mus, "comma-separated speed ratios");
  ver->add_option("--theta0", va_thetas, "comma-separated turret look angles [rad]");
  ver->add_option("--R", va.range, "range");
  ver->add_option("--r", va.capture_radius, "capture radius");
  ver->add_option("--samples", va.samples, "samples per threat");
  ver->add_option("--seed", va.seed, "random seed");
  ver->add_option("--scenario", va_scenario, "take threats from a scenario file");
  ver->add_option("--perturb-rho", va.perturb_rho)->group("");

  try {
    app.parse(argc, argv);
    if (!ba_format.empty()) {
      ba.format.only = ba_format;
    }
    if (!pa_format.empty()) {
      pa.format.only = pa_format;
    }
    if (!pa_dir.empty()) {
      pa.output_dir = pa_dir;
    }
    if (!va_mus.empty()) {
      va.mus = parse_list(va_mus);
    } else if (va.kind == "turret") {
      va.mus = {0.5};
    }
    if (!va_thetas.empty()) {
      va.theta0s = parse_list(va_thetas);
    }
    if (!va_scenario.empty()) {
      va.scenario = va_scenario;
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (bnd->parsed()) {
      return cmd_ez_boundary(ba, out, err);
    }
    if (pln->parsed()) {
      return cmd_plan(pa, out, err);
    }
    if (cmp->parsed()) {
      return cmd_compare(pa, out, err);
    }
    return cmd_verify(va, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace eznav::cli
