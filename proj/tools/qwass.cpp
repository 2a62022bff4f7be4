// Command-line front end.
//
// Exit codes: 0 success, 2 usage or input errors, 3 solver failures and
// failed verification.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwass/closedform.hpp"
#include "qwass/cost.hpp"
#include "qwass/errors.hpp"
#include "qwass/instance.hpp"
#include "qwass/report.hpp"
#include "qwass/transport.hpp"
#include "qwass/verify.hpp"

using namespace qwass;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;

/// Thrown when a command ran but its outcome is a failure (exit 3).
struct OutcomeFailure {
  std::string message;
};

struct Flags {
  std::string file;
  std::optional<std::string> cost;
  std::optional<double> p;
  std::optional<std::string> mode;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::string out;
  bool verbose = false;
  bool json_output = false;
  std::vector<double> gap_p{1.0, 2.0, 3.0};
  bool gap_joint = false;
  std::string suite;
  int density = 21;
  int samples = 0;
};

using Clock = std::chrono::steady_clock;

std::string g12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

SdpOptions solver_options(const Flags& flags) {
  SdpOptions opts;
  if (flags.tol) {
    if (!(*flags.tol > 0.0)) throw InvalidArgument("--tol must be positive");
    opts.tol_gap = *flags.tol;
    opts.tol_feas = *flags.tol;
  }
  if (flags.verbose) opts.trace = &std::cerr;
  return opts;
}

InstanceFile load(const Flags& flags) {
  InstanceFile file = load_instance(flags.file);
  if (flags.cost) file.cost = parse_cost_kind(*flags.cost);
  if (flags.p) file.p = *flags.p;
  if (flags.mode) file.mode = parse_mode(*flags.mode);
  return file;
}

class Output {
 public:
  explicit Output(const Flags& flags) : json_(flags.json_output) {
    if (!flags.out.empty()) {
      file_.open(flags.out, std::ios::app);
      if (!file_) throw InvalidArgument("cannot open output file '" + flags.out + "'");
    }
  }

  /// Human text to stdout unless --json; structured lines always go to --out.
  void emit(const std::string& human, const json& line) {
    if (json_) {
      std::cout << line.dump() << '\n';
    } else {
      std::cout << human;
    }
    record(line);
  }

  /// Structured line to --out only.
  void record(const json& line) {
    if (file_.is_open()) file_ << line.dump() << '\n';
  }

 private:
  bool json_;
  std::ofstream file_;
};

void require_optimal(const TransportResult& res) {
  if (res.status != SdpStatus::optimal) throw OutcomeFailure{"solver stopped with status " + to_string(res.status)};
}

json potentials_json(const TransportResult& res) {
  json x = json::array();
  json y = json::array();
  for (const auto& m : res.potentials.x) x.push_back(matrix_to_json(m.matrix()));
  for (const auto& m : res.potentials.y) y.push_back(matrix_to_json(m.matrix()));
  return {{"x", x},
          {"y", y},
          {"objective", round12(res.potential_objective)},
          {"slack_min_eigenvalue", round12(res.slack_min_eigenvalue)}};
}

int cmd_distance(const Flags& flags, bool dual) {
  const InstanceFile file = load(flags);
  const TransportInstance instance = make_instance(file);
  Output out(flags);
  const auto start = Clock::now();
  const TransportResult res = wasserstein_distance(instance, solver_options(flags));
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  ReportRecord record = make_distance_record(file, res, seconds);
  if (dual) {
    record.command = "dual";
    record.potentials = potentials_json(res);
  }
  out.emit(format_human(record), to_json(record));
  require_optimal(res);
  return 0;
}

int cmd_divergence(const Flags& flags) {
  const InstanceFile file = load(flags);
  if (file.p != 2.0) throw InvalidArgument("divergence requires p = 2");
  if (!file.rho || !file.omega) throw InvalidArgument("instance needs both rho and omega");
  const SdpOptions opts = solver_options(flags);
  const DensityMatrix& rho = file.rho->state;
  const DensityMatrix& omega = file.omega->state;
  Output out(flags);
  const auto start = Clock::now();
  DivergenceResult res;
  switch (file.cost) {
    case CostKind::symm: res = divergence_quadratic(rho, omega, cost_symm(2.0), opts); break;
    case CostKind::z: res = divergence_quadratic(rho, omega, cost_z(2.0), opts); break;
    case CostKind::factorized: res = divergence_quadratic(rho, omega, observable_set(file), opts); break;
    case CostKind::custom:
      if (!file.cost_matrix) throw InvalidArgument("cost 'custom' needs cost_matrix");
      res = divergence_quadratic(rho, omega, *file.cost_matrix, opts);
      break;
    case CostKind::general: throw InvalidArgument("divergence is not defined for cost 'general'");
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();

  ReportRecord record;
  record.command = "divergence";
  record.instance = echo_instance(file);
  record.status = to_string(SdpStatus::optimal);
  record.primal = round12(res.cross);
  record.dual = round12(res.cross);
  record.distance = round12(std::sqrt(std::max(0.0, res.cross)));
  record.divergence = make_divergence_report(res);
  if (const auto cf = closed_form_divergence(file)) {
    record.closed_form = ClosedFormReport{cf->formula, round12(cf->value), round12(std::abs(res.squared - cf->value))};
  }
  record.seconds = round12(seconds);
  out.emit(format_human(record), to_json(record));
  return 0;
}

int cmd_gap_demo(const Flags& flags) {
  const SdpOptions opts = solver_options(flags);
  Output out(flags);
  std::string header = flags.gap_joint ? "p  nonlinear  linearized  difference  joint\n" : "p  nonlinear  linearized  difference\n";
  if (!flags.json_output) std::cout << header;
  for (double p : flags.gap_p) {
    if (!(p >= 1.0)) throw InvalidArgument("--p values must be at least 1");
    const GapDemoResult res = gap_demo(p, flags.gap_joint, opts);
    json record{{"command", "gap-demo"},
                {"p", round12(p)},
                {"nonlinear", round12(res.nonlinear)},
                {"linearized", round12(res.linearized)},
                {"difference", round12(res.nonlinear - res.linearized)},
                {"per_factor", {round12(res.per_factor[0]), round12(res.per_factor[1]), round12(res.per_factor[2])}}};
    std::string line = g12(p) + "  " + g12(res.nonlinear) + "  " + g12(res.linearized) + "  " +
                       g12(res.nonlinear - res.linearized);
    if (res.joint) {
      record["joint"] = round12(*res.joint);
      line += "  " + g12(*res.joint);
    }
    out.emit(line + "\n", record);
  }
  return 0;
}

int cmd_verify(const Flags& flags) {
  VerifyOptions options;
  options.density = flags.density;
  options.samples = flags.samples;
  options.seed = flags.seed;
  options.sdp = solver_options(flags);
  options.sdp.trace = nullptr;
  const VerifyReport report = run_verify(flags.suite, options);
  Output out(flags);
  for (const auto& c : report.cases) {
    const json record{{"suite", report.suite},       {"key", c.key},
                      {"value", round12(c.value)},   {"reference", round12(c.reference)},
                      {"deviation", round12(c.deviation)}, {"tolerance", round12(c.tolerance)},
                      {"pass", c.pass}};
    if (flags.verbose || !c.pass) {
      out.emit((c.pass ? "ok    " : "FAIL  ") + c.key + "  value " + g12(c.value) + "  reference " +
                   g12(c.reference) + "  deviation " + g12(c.deviation) + "  tolerance " + g12(c.tolerance) + "\n",
               record);
    } else {
      out.record(record);
    }
  }
  double worst = 0.0;
  for (const auto& c : report.cases) worst = std::max(worst, c.deviation);
  const json summary{{"suite", report.suite},
                     {"cases", report.cases.size()},
                     {"failures", report.failures},
                     {"max_deviation", round12(worst)},
                     {"exploratory", report.exploratory},
                     {"verdict", report.passed ? "pass" : "fail"}};
  out.emit(report.suite + ": " + std::to_string(report.cases.size()) + " cases, " + std::to_string(report.failures) +
               " failures, max deviation " + g12(worst) + (report.exploratory ? " (exploratory)" : "") + ", " +
               (report.passed ? "PASS" : "FAIL") + "\n",
           summary);
  if (!report.passed) throw OutcomeFailure{"verification failed"};
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum Wasserstein distances and divergences"};
  app.require_subcommand(1);
  Flags flags;

  auto add_solver_flags = [&flags](CLI::App* cmd) {
    cmd->add_option("--tol", flags.tol, "Solver gap and feasibility tolerance");
    cmd->add_option("--seed", flags.seed, "Random seed");
    cmd->add_option("--out", flags.out, "Append JSON records to this file");
    cmd->add_flag("--verbose", flags.verbose, "Solver trace on stderr");
    cmd->add_flag("--json", flags.json_output, "Print JSON records instead of text");
  };
  auto add_instance_flags = [&](CLI::App* cmd) {
    cmd->add_option("file", flags.file, "Instance file")->required();
    cmd->add_option("--cost", flags.cost, "symm, z, factorized, general or custom");
    cmd->add_option("--p", flags.p, "Cost exponent");
    cmd->add_option("--mode", flags.mode, "joint, linearized or nonlinear");
    add_solver_flags(cmd);
  };

  auto* distance = app.add_subcommand("distance", "Optimal transport cost and distance");
  add_instance_flags(distance);
  auto* dual = app.add_subcommand("dual", "Distance together with the Kantorovich potentials");
  add_instance_flags(dual);
  auto* divergence = app.add_subcommand("divergence", "Quadratic divergence (p = 2)");
  add_instance_flags(divergence);
  auto* gap = app.add_subcommand("gap-demo", "Nonlinear vs linearized optimum for the Pauli triple");
  gap->add_option("--p", flags.gap_p, "Exponents")->delimiter(',');
  gap->add_flag("--joint", flags.gap_joint, "Also solve the 64 x 64 linearized SDP");
  add_solver_flags(gap);
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", flags.suite, "Suite name")->required();
  verify->add_option("--density", flags.density, "Grid points per axis");
  verify->add_option("--samples", flags.samples, "Random cases (0 for the suite default)");
  add_solver_flags(verify);
  app.footer("Verify suites: " + [] {
    std::string s;
    for (const auto& name : verify_suites()) s += (s.empty() ? "" : ", ") + name;
    return s;
  }());

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*distance) return cmd_distance(flags, false);
    if (*dual) return cmd_distance(flags, true);
    if (*divergence) return cmd_divergence(flags);
    if (*gap) return cmd_gap_demo(flags);
    if (*verify) return cmd_verify(flags);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionBudgetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const OutcomeFailure& e) {
    std::cerr << "error: " << e.message << '\n';
    return kExitSolver;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitUsage;
}
