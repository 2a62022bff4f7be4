#include "qwass/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>

#include "qwass/closedform.hpp"
#include "qwass/cost.hpp"
#include "qwass/errors.hpp"
#include "qwass/random.hpp"
#include "qwass/transport.hpp"

namespace qwass {

namespace {

constexpr double kGridEdge = 0.95;
constexpr double kClosedFormTolerance = 1e-5;
constexpr double kWitnessTolerance = 1e-6;
constexpr double kCouplingTolerance = 1e-8;
constexpr double kTriangleTolerance = 1e-9;
constexpr double kDualityTolerance = 1e-6;
constexpr double kPurificationTolerance = 1e-9;
constexpr double kRotationTolerance = 1e-6;
constexpr double kCollinearTolerance = 1e-5;

struct Context {
  const VerifyOptions& options;
  std::vector<VerifyCase>& cases;

  int samples(int fallback) const { return options.samples > 0 ? options.samples : fallback; }

  void add(std::string key, double value, double reference, double tolerance) {
    const double deviation = std::abs(value - reference);
    cases.push_back({std::move(key), value, reference, deviation, tolerance, deviation <= tolerance});
  }

  /// A lower bound check: value >= -tolerance.
  void add_nonnegative(std::string key, double value, double tolerance) {
    const double deviation = std::max(0.0, -value);
    cases.push_back({std::move(key), value, 0.0, deviation, tolerance, deviation <= tolerance});
  }

  double solve(const DensityMatrix& rho, const DensityMatrix& omega, const HermitianMatrix& c, double p) const {
    return wasserstein_distance(TransportInstance::joint(rho, omega, c, p), options.sdp).primal;
  }
};

std::string key(const char* format, int a, int b = 0, int c = 0) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

std::vector<double> grid(int density, double lo, double hi) {
  if (density == 1) return {0.5 * (lo + hi)};
  std::vector<double> g;
  for (int i = 0; i < density; ++i) g.push_back(lo + (hi - lo) * i / (density - 1));
  return g;
}

template <typename F>
void over_grid(Context& ctx, double lo, double hi, F&& f) {
  const auto g = grid(ctx.options.density, lo, hi);
  for (int p = 1; p <= 2; ++p) {
    for (int i = 0; i < static_cast<int>(g.size()); ++i) {
      for (int j = 0; j < static_cast<int>(g.size()); ++j) f(p, i, j, g[i], g[j]);
    }
  }
}

void symm_commuting(Context& ctx) {
  over_grid(ctx, -kGridEdge, kGridEdge, [&](int p, int i, int j, double a, double b) {
    ctx.add(key("p%d/%03d/%03d", p, i, j), ctx.solve(state_z(a), state_z(b), cost_symm(p), p),
            d_symm_commuting(a, b, p), kClosedFormTolerance);
  });
}

void symm_general(Context& ctx) {
  Rng rng(ctx.options.seed);
  for (int n = 0; n < ctx.samples(50); ++n) {
    const auto dir = random_bloch(rng);
    const double len = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
    const double a = uniform(rng, -kGridEdge, kGridEdge);
    const double b = uniform(rng, -kGridEdge, kGridEdge);
    BlochVector r1;
    BlochVector r2;
    for (int k = 0; k < 3; ++k) {
      r1.r[k] = a * dir[k] / len;
      r2.r[k] = b * dir[k] / len;
    }
    const int p = 1 + n % 2;
    ctx.add(key("%05d", n), ctx.solve(state_from_bloch(r1), state_from_bloch(r2), cost_symm(p), p),
            d_symm_general(r1, r2, p), kCollinearTolerance);
  }
}

void z_xy(Context& ctx) {
  over_grid(ctx, -kGridEdge, kGridEdge, [&](int p, int i, int j, double a, double b) {
    ctx.add(key("p%d/%03d/%03d", p, i, j), ctx.solve(state_x(a), state_x(b), cost_z(p), p), d_z_xy(a, b, p),
            kClosedFormTolerance);
  });
}

void z_commuting(Context& ctx) {
  over_grid(ctx, -kGridEdge, kGridEdge, [&](int p, int i, int j, double a, double b) {
    ctx.add(key("p%d/%03d/%03d", p, i, j), ctx.solve(state_z(a), state_z(b), cost_z(p), p),
            d_z_commuting(a, b, p), kClosedFormTolerance);
  });
}

void witness_rows(Context& ctx, const std::string& prefix, const Coupling& pi,
                  const std::vector<DualPotentials>& pots, const HermitianMatrix& c, double p) {
  const double sdp = ctx.solve(pi.rho, pi.omega, c, p);
  const double primal = coupling_objective(c, pi.matrix);
  const double dual = best_dual_objective(pots, pi.rho, pi.omega);
  ctx.add(prefix + "/coupling-objective", primal, sdp, kWitnessTolerance);
  ctx.add(prefix + "/potential-objective", dual, sdp, kWitnessTolerance);
  const CouplingCheck check = is_coupling(pi, kCouplingTolerance);
  ctx.add(prefix + "/marginals", std::max(check.max_marginal_deviation, check.trace_deviation), 0.0,
          kCouplingTolerance);
  ctx.add_nonnegative(prefix + "/coupling-eigenvalue", check.min_eigenvalue, kCouplingTolerance);
  double slack = std::numeric_limits<double>::infinity();
  for (const auto& pot : pots) slack = std::min(slack, dual_slack(c, pot).min_eigenvalue());
  ctx.add_nonnegative(prefix + "/slack-eigenvalue", slack, kCouplingTolerance);
}

void witness(Context& ctx) {
  over_grid(ctx, -kGridEdge, kGridEdge, [&](int p, int i, int j, double a, double b) {
    witness_rows(ctx, key("symm/p%d/%03d/%03d", p, i, j), coupling_symm_commuting(a, b),
                 potentials_symm_commuting(a, b, p), cost_symm(p), p);
    witness_rows(ctx, key("z-xy/p%d/%03d/%03d", p, i, j), coupling_z_xy(a, b), potentials_z_xy(a, b, p),
                 cost_z(p), p);
    witness_rows(ctx, key("z-commuting/p%d/%03d/%03d", p, i, j), coupling_z_commuting(a, b),
                 potentials_z_commuting(p), cost_z(p), p);
  });
}

void divergence_symm(Context& ctx) {
  const auto g = grid(ctx.options.density, -kGridEdge, kGridEdge);
  for (int i = 0; i < static_cast<int>(g.size()); ++i) {
    for (int j = 0; j < static_cast<int>(g.size()); ++j) {
      const double sdp = divergence_quadratic(state_z(g[i]), state_z(g[j]), cost_symm(2.0), ctx.options.sdp).squared;
      ctx.add(key("%03d/%03d", i, j), sdp, divergence_symm_commuting({{0, 0, g[i]}}, {{0, 0, g[j]}}),
              kClosedFormTolerance);
    }
  }
}

void divergence_z(Context& ctx) {
  const auto g = grid(ctx.options.density, 0.0, kGridEdge);
  for (int i = 0; i < static_cast<int>(g.size()); ++i) {
    for (int j = 0; j < static_cast<int>(g.size()); ++j) {
      const double sdp = divergence_quadratic(state_x(g[i]), state_x(g[j]), cost_z(2.0), ctx.options.sdp).squared;
      ctx.add(key("%03d/%03d", i, j), sdp, divergence_z_xy(g[i], g[j]), kClosedFormTolerance);
    }
  }
}

void triangle_symm(Context& ctx) {
  Rng rng(ctx.options.seed);
  for (int n = 0; n < ctx.samples(10000); ++n) {
    const double a = uniform(rng, -1.0, 1.0);
    const double b = uniform(rng, -1.0, 1.0);
    const double c = uniform(rng, -1.0, 1.0);
    ctx.add_nonnegative(key("%05d", n), triangle_margin_symm(a, b, c), kTriangleTolerance);
  }
}

void triangle_z(Context& ctx) {
  Rng rng(ctx.options.seed);
  for (int n = 0; n < ctx.samples(10000); ++n) {
    const double r = uniform(rng, 0.0, 1.0);
    const double s = uniform(rng, 0.0, 1.0);
    const double w = uniform(rng, 0.0, 1.0);
    ctx.add_nonnegative(key("%05d", n), triangle_margin_z(r, s, w), kTriangleTolerance);
  }
}

// Arbitrary qubit triples, divergences from the solver.
void triangle_z_offplane(Context& ctx) {
  Rng rng(ctx.options.seed);
  const HermitianMatrix c = cost_z(2.0);
  auto d2 = [&](const DensityMatrix& x, const DensityMatrix& y) {
    return divergence_quadratic(x, y, c, ctx.options.sdp).squared;
  };
  for (int n = 0; n < ctx.samples(100); ++n) {
    const DensityMatrix r = state_from_bloch({random_bloch(rng, kGridEdge)});
    const DensityMatrix s = state_from_bloch({random_bloch(rng, kGridEdge)});
    const DensityMatrix w = state_from_bloch({random_bloch(rng, kGridEdge)});
    ctx.add_nonnegative(key("%05d", n), d2(r, s) + d2(s, w) - d2(r, w), kTriangleTolerance);
  }
}

void duality(Context& ctx) {
  Rng rng(ctx.options.seed);
  const int n = ctx.samples(100);
  for (int p = 1; p <= 2; ++p) {
    for (int family = 0; family < 2; ++family) {
      const HermitianMatrix c = family == 0 ? cost_symm(p) : cost_z(p);
      for (int i = 0; i < n; ++i) {
        const DensityMatrix rho = random_density(2, rng);
        const DensityMatrix omega = random_density(2, rng);
        const auto res = wasserstein_distance(TransportInstance::joint(rho, omega, c, p), ctx.options.sdp);
        ctx.add(key(family == 0 ? "symm/p%d/%05d" : "z/p%d/%05d", p, i), res.gap / std::max(1.0, res.primal), 0.0,
                kDualityTolerance);
      }
    }
  }
}

void purification(Context& ctx) {
  Rng rng(ctx.options.seed);
  for (int n = 0; n < ctx.samples(100); ++n) {
    const DensityMatrix rho = random_density(2, rng);
    const double t = sqrt_psd(rho).trace();
    ctx.add(key("%05d", n), coupling_objective(cost_symm(2.0), purification_coupling(rho).matrix), 8.0 - 4.0 * t * t,
            kPurificationTolerance);
  }
}

void factorized(Context& ctx) {
  Rng rng(ctx.options.seed);
  const auto obs = ObservableSet::pauli_triple();
  for (int n = 0; n < ctx.samples(20); ++n) {
    const DensityMatrix rho = state_z(uniform(rng, -kGridEdge, kGridEdge));
    const DensityMatrix omega = state_z(uniform(rng, -kGridEdge, kGridEdge));
    const double p = n % 2 == 0 ? 1.0 : 2.0;
    const std::vector<PairCost> per(3, abs_diff_power(p));
    const double joint =
        wasserstein_distance(TransportInstance::linearized(rho, omega, obs, per, p), ctx.options.sdp).primal;
    double sum = 0.0;
    for (const auto& c : cost_operator_factorized(obs, per)) sum += ctx.solve(rho, omega, c, p);
    ctx.add(key("%05d", n), joint, sum, kClosedFormTolerance);
  }
}

// C_z is diagonal, so each state may be rotated about z on its own.
void rotation(Context& ctx) {
  Rng rng(ctx.options.seed);
  auto flatten = [](const std::array<double, 3>& r) { return BlochVector{{std::hypot(r[0], r[1]), 0.0, r[2]}}; };
  for (int n = 0; n < ctx.samples(20); ++n) {
    const auto r1 = random_bloch(rng);
    const auto r2 = random_bloch(rng);
    const int p = 1 + n % 2;
    const HermitianMatrix c = cost_z(p);
    ctx.add(key("%05d", n), ctx.solve(state_from_bloch({r1}), state_from_bloch({r2}), c, p),
            ctx.solve(state_from_bloch(flatten(r1)), state_from_bloch(flatten(r2)), c, p), kRotationTolerance);
  }
}

struct Suite {
  void (*run)(Context&);
  bool exploratory = false;
};

const std::map<std::string, Suite>& registry() {
  static const std::map<std::string, Suite> suites{
      {"symm-commuting", {symm_commuting}},
      {"symm-general", {symm_general}},
      {"z-xy", {z_xy}},
      {"z-commuting", {z_commuting}},
      {"witness", {witness}},
      {"divergence-symm", {divergence_symm}},
      {"divergence-z", {divergence_z}},
      {"triangle-symm", {triangle_symm}},
      {"triangle-z", {triangle_z}},
      {"triangle-z-offplane", {triangle_z_offplane, true}},
      {"duality", {duality}},
      {"purification", {purification}},
      {"factorized", {factorized}},
      {"rotation", {rotation}},
  };
  return suites;
}

}  // namespace

std::vector<std::string> verify_suites() {
  std::vector<std::string> names;
  for (const auto& [name, suite] : registry()) names.push_back(name);
  return names;
}

VerifyReport run_verify(const std::string& suite, const VerifyOptions& options) {
  const auto it = registry().find(suite);
  if (it == registry().end()) throw InvalidArgument("unknown verify suite '" + suite + "'");
  if (options.density < 1) throw InvalidArgument("grid density must be positive");
  if (options.samples < 0) throw InvalidArgument("sample count must be nonnegative");

  VerifyReport report;
  report.suite = suite;
  report.exploratory = it->second.exploratory;
  Context ctx{options, report.cases};
  it->second.run(ctx);
  std::sort(report.cases.begin(), report.cases.end(),
            [](const VerifyCase& a, const VerifyCase& b) { return a.key < b.key; });
  report.failures = static_cast<int>(std::count_if(report.cases.begin(), report.cases.end(),
                                                   [](const VerifyCase& c) { return !c.pass; }));
  report.passed = report.exploratory || report.failures == 0;
  return report;
}

}  // namespace qwass
