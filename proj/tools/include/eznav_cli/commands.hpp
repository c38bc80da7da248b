#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace eznav::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailure = 1,
  kUsage = 2,
  kInfeasible = 3,
  kNotConverged = 4,
};

// Output selection: empty means both CSV and JSON.
struct FormatChoice {
  std::optional<std::string> only;
  bool csv() const { return !only || *only == "csv"; }
  bool json() const { return !only || *only == "json"; }
};

struct BoundaryArgs {
  std::string kind = "pursuer";
  double mu = 0.5;
  double range = 1.0;
  double capture_radius = 0.0;
  double theta0 = 0.0;
  double heading = 0.0;
  double px = 0.0;
  double py = 0.0;
  int n = 360;
  std::string output_dir = ".";
  FormatChoice format;
};

struct PlanArgs {
  std::string scenario;
  std::optional<std::string> output_dir;
  FormatChoice format;
};

struct VerifyArgs {
  std::string kind = "pursuer";
  std::vector<double> mus{0.5, 0.7, 1.0, 1.5, 2.0};
  std::vector<double> theta0s;
  double range = 1.0;
  double capture_radius = 0.25;
  int samples = 1000;
  std::uint64_t seed = 1;
  std::optional<std::string> scenario;
  // Test hook: scale the analytic pursuer radius by (1 + perturb_rho).
  double perturb_rho = 0.0;
};

// ez_boundary.csv (xi_or_gamma, rho_or_x, y, world_x, world_y) and
// ez_boundary.json. For pursuers `y` is the heading-frame lateral offset of
// the boundary point from the threat; for turrets (rho_or_x, y) is the
// heading-frame agent start position.
int cmd_ez_boundary(const BoundaryArgs& args, std::ostream& out, std::ostream& err);

// plan_trajectory.csv (t, x, y, psi, clearance_<i>) and plan_result.json.
int cmd_plan(const PlanArgs& args, std::ostream& out, std::ostream& err);

// Reach/Worst/Apol table on stdout plus compare.csv / compare.json.
int cmd_compare(const PlanArgs& args, std::ostream& out, std::ostream& err);

// Oracle-vs-analytic equivalence sweep; exit 0 iff no disagreements.
int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eznav::cli
