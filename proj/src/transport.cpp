#include "qwass/transport.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "qwass/errors.hpp"

namespace qwass {

namespace {

constexpr double kRankThreshold = 1e-6;
constexpr double kSlackTolerance = 1e-8;
constexpr double kRadicandTolerance = 1e-9;

void require_exponent(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw InvalidArgument("transport exponent p must be a finite real >= 1");
  }
}

void require_same_dim(const DensityMatrix& rho, const DensityMatrix& omega) {
  if (rho.dim() != omega.dim()) {
    throw InvalidArgument("rho and omega must have the same dimension");
  }
}

double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.array() * b.transpose().array()).sum().real();
}

std::size_t count_above(const HermitianMatrix& m, double threshold) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(m.matrix(), Eigen::EigenvaluesOnly);
  std::size_t rank = 0;
  for (Index i = 0; i < eig.eigenvalues().size(); ++i) {
    if (eig.eigenvalues()(i) > threshold) ++rank;
  }
  return rank;
}

}  // namespace

std::string to_string(TransportMode mode) {
  switch (mode) {
    case TransportMode::joint: return "joint";
    case TransportMode::linearized: return "linearized";
    case TransportMode::nonlinear: return "nonlinear";
  }
  return "unknown";
}

TransportInstance TransportInstance::joint(DensityMatrix rho, DensityMatrix omega,
                                           HermitianMatrix cost, double p) {
  TransportInstance out{std::move(rho), std::move(omega), std::move(cost), 1, p,
                        TransportMode::joint};
  out.validate();
  return out;
}

TransportInstance TransportInstance::linearized(DensityMatrix rho, DensityMatrix omega,
                                                const ObservableSet& obs,
                                                const ClassicalCost& cost, double p) {
  if (obs.dim() != rho.dim()) throw InvalidArgument("observable and state dimensions differ");
  TransportInstance out{std::move(rho), std::move(omega), cost_operator_general(obs, cost),
                        obs.size(), p, TransportMode::linearized};
  out.validate();
  return out;
}

TransportInstance TransportInstance::linearized(DensityMatrix rho, DensityMatrix omega,
                                                const ObservableSet& obs,
                                                std::span<const PairCost> per_factor, double p) {
  if (obs.dim() != rho.dim()) throw InvalidArgument("observable and state dimensions differ");
  const auto factors = cost_operator_factorized(obs, per_factor);
  TransportInstance out{std::move(rho), std::move(omega), embed_factor_sum(factors), obs.size(),
                        p, TransportMode::linearized};
  out.validate();
  return out;
}

TransportInstance TransportInstance::nonlinear(DensityMatrix rho, DensityMatrix omega,
                                               const ObservableSet& obs,
                                               std::span<const PairCost> per_factor, double p) {
  if (obs.dim() != rho.dim()) throw InvalidArgument("observable and state dimensions differ");
  const auto factors = cost_operator_factorized(obs, per_factor);
  TransportInstance out{std::move(rho), std::move(omega), sum_factors(factors), 1, p,
                        TransportMode::nonlinear};
  out.validate();
  return out;
}

void TransportInstance::validate() const {
  require_same_dim(rho, omega);
  require_exponent(p);
  if (factors == 0) throw InvalidArgument("transport instance needs at least one factor");
  const Index pair = rho.dim() * rho.dim();
  Index n = 1;
  for (std::size_t k = 0; k < factors; ++k) {
    if (n > kMaxSdpDimension / pair) throw DimensionBudgetError("coupling dimension too large");
    n *= pair;
  }
  if (cost.dim() != n) {
    throw InvalidArgument("cost operator has dimension " + std::to_string(cost.dim()) +
                          ", expected " + std::to_string(n));
  }
}

Coupling trivial_coupling(const DensityMatrix& rho, const DensityMatrix& omega) {
  require_same_dim(rho, omega);
  return {kron(omega.hermitian(), transpose_entrywise(rho)), FactorShape::uniform(rho.dim(), 2),
          rho, omega};
}

Coupling purification_coupling(const DensityMatrix& rho) {
  return {outer_vec(sqrt_psd(rho).matrix()), FactorShape::uniform(rho.dim(), 2), rho, rho};
}

CouplingCheck is_coupling(const HermitianMatrix& pi, const DensityMatrix& rho,
                          const DensityMatrix& omega, std::size_t factors, double tol) {
  require_same_dim(rho, omega);
  const FactorShape shape = FactorShape::uniform(rho.dim(), 2 * factors);
  if (pi.dim() != shape.total()) throw InvalidArgument("coupling dimension mismatch");
  CouplingCheck out;
  out.min_eigenvalue = pi.min_eigenvalue();
  out.trace_deviation = std::abs(pi.trace() - 1.0);
  const ComplexMatrix rho_t = rho.matrix().transpose();
  for (std::size_t k = 0; k < factors; ++k) {
    const HermitianMatrix h = partial_trace(pi, shape, {2 * k});
    const HermitianMatrix hs = partial_trace(pi, shape, {2 * k + 1});
    out.max_marginal_deviation =
        std::max({out.max_marginal_deviation, (h.matrix() - omega.matrix()).cwiseAbs().maxCoeff(),
                  (hs.matrix() - rho_t).cwiseAbs().maxCoeff()});
  }
  out.ok = out.min_eigenvalue >= -tol && out.trace_deviation <= tol &&
           out.max_marginal_deviation <= tol;
  return out;
}

CouplingCheck is_coupling(const Coupling& coupling, double tol) {
  return is_coupling(coupling.matrix, coupling.rho, coupling.omega, coupling.factors(), tol);
}

double coupling_objective(const HermitianMatrix& cost, const HermitianMatrix& gamma) {
  if (cost.dim() != gamma.dim()) throw InvalidArgument("cost and coupling dimensions differ");
  return cost.inner(gamma);
}

double dual_objective(const DualPotentials& pot, const DensityMatrix& rho,
                      const DensityMatrix& omega) {
  if (pot.x.size() != pot.y.size()) throw InvalidArgument("potential lists differ in length");
  double sum = 0.0;
  for (std::size_t k = 0; k < pot.x.size(); ++k) {
    sum += real_trace_product(omega.matrix(), pot.y[k].matrix()) +
           real_trace_product(rho.matrix(), pot.x[k].matrix());
  }
  return sum;
}

HermitianMatrix dual_slack(const HermitianMatrix& cost, const DualPotentials& pot) {
  if (pot.x.empty() || pot.x.size() != pot.y.size()) {
    throw InvalidArgument("potentials need one (X_k, Y_k) pair per factor");
  }
  const std::size_t factors = pot.x.size();
  const Index d = pot.x.front().dim();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  ComplexMatrix slack = cost.matrix();
  if (slack.rows() != FactorShape::uniform(d, 2 * factors).total()) {
    throw InvalidArgument("potentials do not match the cost operator dimension");
  }
  for (std::size_t k = 0; k < factors; ++k) {
    const ComplexMatrix local =
        kron(pot.y[k].matrix(), id) + kron(id, ComplexMatrix(pot.x[k].matrix().transpose()));
    slack -= embed(local, d * d, k, factors - k - 1);
  }
  return HermitianMatrix(slack);
}

SdpProblem build_primal(const TransportInstance& instance) {
  instance.validate();
  const Index d = instance.state_dim();
  const std::size_t factors = instance.factors;
  const auto basis = hermitian_basis(d);
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);

  SdpProblem out;
  out.objective = instance.cost;
  for (std::size_t k = 0; k < factors; ++k) {
    for (std::size_t j = 1; j < basis.size(); ++j) {
      const ComplexMatrix& b = basis[j].matrix();
      out.constraints.push_back(
          {HermitianMatrix(embed(kron(b, id), d * d, k, factors - k - 1)),
           real_trace_product(instance.omega.matrix(), b)});
      out.constraints.push_back(
          {HermitianMatrix(embed(kron(id, ComplexMatrix(b.transpose())), d * d, k,
                                 factors - k - 1)),
           real_trace_product(instance.rho.matrix(), b)});
    }
  }
  out.constraints.push_back({HermitianMatrix::identity(instance.cost.dim()), 1.0});
  return out;
}

DualProgram build_dual(const TransportInstance& instance) {
  return {build_primal(instance), instance.factors, instance.state_dim()};
}

DualPotentials DualProgram::potentials(const Eigen::VectorXd& multipliers) const {
  const auto basis = hermitian_basis(state_dim);
  const std::size_t per_factor = 2 * (basis.size() - 1);
  if (static_cast<std::size_t>(multipliers.size()) != factors * per_factor + 1) {
    throw InvalidArgument("multiplier vector does not match the dual program");
  }
  DualPotentials out;
  Index pos = 0;
  for (std::size_t k = 0; k < factors; ++k) {
    HermitianMatrix x = HermitianMatrix::zero(state_dim);
    HermitianMatrix y = HermitianMatrix::zero(state_dim);
    for (std::size_t j = 1; j < basis.size(); ++j) {
      y += multipliers(pos++) * basis[j];
      x += multipliers(pos++) * basis[j];
    }
    out.x.push_back(std::move(x));
    out.y.push_back(std::move(y));
  }
  out.x.front() += multipliers(pos) * HermitianMatrix::identity(state_dim);
  return out;
}

TransportResult wasserstein_distance(const TransportInstance& instance, const SdpOptions& options) {
  const DualProgram program = build_dual(instance);
  const SdpSolution sol = solve(program.problem, options);
  if (sol.status != SdpStatus::optimal) {
    throw SolverError("SDP solver stopped with status " + to_string(sol.status) + " after " +
                      std::to_string(sol.iterations) + " iterations");
  }
  TransportResult out;
  out.status = sol.status;
  out.iterations = sol.iterations;
  out.primal = sol.primal_obj;
  out.dual = sol.dual_obj;
  out.gap = sol.gap;
  out.distance = std::pow(std::max(out.primal, 0.0), 1.0 / instance.p);
  out.coupling = sol.x;
  out.potentials = program.potentials(sol.y);
  out.potential_objective = dual_objective(out.potentials, instance.rho, instance.omega);
  out.slack_min_eigenvalue = dual_slack(instance.cost, out.potentials).min_eigenvalue();
  out.dual_attained =
      out.slack_min_eigenvalue >= -kSlackTolerance &&
      std::abs(out.potential_objective - out.primal) <= 1e-6 * std::max(1.0, std::abs(out.primal));
  const std::size_t n = static_cast<std::size_t>(instance.cost.dim());
  out.degenerate = count_above(sol.x, kRankThreshold) + count_above(sol.s, kRankThreshold) < n;
  out.certificate = certify(sol, program.problem);
  return out;
}

DivergenceResult divergence_quadratic(const DensityMatrix& rho, const DensityMatrix& omega,
                                      const HermitianMatrix& cost, const SdpOptions& options) {
  auto value = [&](const DensityMatrix& a, const DensityMatrix& b) {
    return wasserstein_distance(TransportInstance::joint(a, b, cost, 2.0), options).primal;
  };
  DivergenceResult out;
  out.cross = value(rho, omega);
  out.self_rho = value(rho, rho);
  out.self_omega = value(omega, omega);
  double radicand = out.cross - 0.5 * (out.self_rho + out.self_omega);
  if (radicand < -kRadicandTolerance) {
    throw NumericalError("negative divergence radicand " + std::to_string(radicand));
  }
  radicand = std::max(radicand, 0.0);
  out.squared = radicand;
  out.value = std::sqrt(radicand);
  return out;
}

DivergenceResult divergence_quadratic(const DensityMatrix& rho, const DensityMatrix& omega,
                                      const ObservableSet& obs, const SdpOptions& options) {
  std::vector<PairCost> per_factor(obs.size(), abs_diff_power(2.0));
  return divergence_quadratic(rho, omega, sum_factors(cost_operator_factorized(obs, per_factor)),
                              options);
}

GapDemoResult gap_demo(double p, bool solve_joint, const SdpOptions& options) {
  require_exponent(p);
  const ComplexMatrix half = 0.5 * ComplexMatrix::Identity(2, 2);
  const DensityMatrix rho(ComplexMatrix(half + 0.25 * pauli_z().matrix()));
  const DensityMatrix omega(ComplexMatrix(half - 0.25 * pauli_z().matrix()));
  const ObservableSet paulis = ObservableSet::pauli_triple();
  const std::vector<PairCost> per_factor(3, abs_diff_power(p));

  GapDemoResult out;
  out.p = p;
  out.nonlinear = wasserstein_distance(
                      TransportInstance::nonlinear(rho, omega, paulis, per_factor, p), options)
                      .primal;
  const auto factor_costs = cost_operator_factorized(paulis, per_factor);
  for (const auto& c : factor_costs) {
    const double v = wasserstein_distance(TransportInstance::joint(rho, omega, c, p), options).primal;
    out.per_factor.push_back(v);
    out.linearized += v;
  }
  if (solve_joint) {
    out.joint = wasserstein_distance(
                    TransportInstance::linearized(rho, omega, paulis, per_factor, p), options)
                    .primal;
  }
  return out;
}

}  // namespace qwass
