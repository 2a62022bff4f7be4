#pragma once

// Quantum transport problems between two states of one Hilbert space H.
//
// A coupling of (rho, omega) for K factors is a state Gamma on
// (H (x) H*)^{(x)K}, factor order H_1, H*_1, H_2, H*_2, ..., whose H_k
// marginals equal omega and whose H*_k marginals equal rho^T. The primal
// problem minimizes tr(C Gamma); the dual maximizes
// sum_k tr(omega Y_k) + tr(rho X_k) subject to
// C - sum_k embed_k(Y_k (x) I + I (x) X_k^T) >= 0.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qwass/cost.hpp"
#include "qwass/linalg.hpp"
#include "qwass/sdp.hpp"

namespace qwass {

enum class TransportMode {
  joint,       ///< one coupling on H (x) H* with a given cost operator
  linearized,  ///< one correlated coupling on (H (x) H*)^{(x)K}
  nonlinear,   ///< one coupling on H (x) H* against the summed factor costs
};

std::string to_string(TransportMode mode);

struct TransportInstance {
  DensityMatrix rho;
  DensityMatrix omega;
  HermitianMatrix cost;  ///< operator on (H (x) H*)^{(x)factors}
  std::size_t factors = 1;
  double p = 1.0;
  TransportMode mode = TransportMode::joint;

  Index state_dim() const { return rho.dim(); }

  /// K = 1 problem with an explicit cost operator on H (x) H*.
  static TransportInstance joint(DensityMatrix rho, DensityMatrix omega, HermitianMatrix cost,
                                 double p);
  /// Linearized problem with a general classical cost on R^K x R^K.
  static TransportInstance linearized(DensityMatrix rho, DensityMatrix omega,
                                      const ObservableSet& obs, const ClassicalCost& cost,
                                      double p);
  /// Linearized problem with a factorized cost sum_k f_k(x_k, y_k).
  static TransportInstance linearized(DensityMatrix rho, DensityMatrix omega,
                                      const ObservableSet& obs,
                                      std::span<const PairCost> per_factor, double p);
  /// Single coupling on H (x) H* against sum_k C_k.
  static TransportInstance nonlinear(DensityMatrix rho, DensityMatrix omega,
                                     const ObservableSet& obs,
                                     std::span<const PairCost> per_factor, double p);

  /// Throws InvalidArgument when dimensions or p are inconsistent.
  void validate() const;
};

struct Coupling {
  HermitianMatrix matrix;
  FactorShape shape;  ///< 2K factors of the state dimension
  DensityMatrix rho;
  DensityMatrix omega;

  std::size_t factors() const { return shape.size() / 2; }
};

/// omega (x) rho^T.
Coupling trivial_coupling(const DensityMatrix& rho, const DensityMatrix& omega);
/// |sqrt(rho)>><<sqrt(rho)|, a rank-one coupling of (rho, rho).
Coupling purification_coupling(const DensityMatrix& rho);

struct CouplingCheck {
  bool ok = false;
  double max_marginal_deviation = 0.0;  ///< largest entry of any marginal error
  double trace_deviation = 0.0;
  double min_eigenvalue = 0.0;
};

/// Checks PSD, unit trace and all 2K marginals of `pi` within `tol`.
CouplingCheck is_coupling(const HermitianMatrix& pi, const DensityMatrix& rho,
                          const DensityMatrix& omega, std::size_t factors, double tol = 1e-8);
CouplingCheck is_coupling(const Coupling& coupling, double tol = 1e-8);

/// Transport cost tr(C Gamma).
double coupling_objective(const HermitianMatrix& cost, const HermitianMatrix& gamma);

struct DualPotentials {
  std::vector<HermitianMatrix> x;  ///< paired with rho
  std::vector<HermitianMatrix> y;  ///< paired with omega
};

/// sum_k tr(omega Y_k) + tr(rho X_k).
double dual_objective(const DualPotentials& pot, const DensityMatrix& rho,
                      const DensityMatrix& omega);
/// C - sum_k embed_k(Y_k (x) I + I (x) X_k^T).
HermitianMatrix dual_slack(const HermitianMatrix& cost, const DualPotentials& pot);

/// Primal SDP: for every factor and every non-identity Hermitian basis
/// element B one H-marginal row (b = tr(omega B)) and one H*-marginal row
/// (b = tr(rho B)), plus one global unit-trace row.
SdpProblem build_primal(const TransportInstance& instance);

/// The Kantorovich dual in standard dual form: maximize b^T y subject to
/// C - sum_i y_i A_i >= 0, where y holds the basis coefficients of the
/// potentials. The multiplier of the trace row is stored as t I in X_1, so
/// every Y_k has zero identity component.
struct DualProgram {
  SdpProblem problem;
  std::size_t factors = 1;
  Index state_dim = 0;

  DualPotentials potentials(const Eigen::VectorXd& multipliers) const;
};

DualProgram build_dual(const TransportInstance& instance);

struct TransportResult {
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
  double distance = 0.0;  ///< primal^{1/p}, with tiny negative optima clamped to 0
  HermitianMatrix coupling;  ///< optimal Gamma
  DualPotentials potentials;
  double potential_objective = 0.0;  ///< dual objective recomputed from the potentials
  double slack_min_eigenvalue = 0.0;
  /// The reported potentials are feasible within 1e-8 and reach the primal
  /// value within 1e-6 relative.
  bool dual_attained = false;
  /// rank(Gamma) + rank(S) < n at eigenvalue threshold 1e-6, i.e. strict
  /// complementarity fails and the optimal face may hold several couplings.
  bool degenerate = false;
  SdpStatus status = SdpStatus::numerical;
  int iterations = 0;
  SdpCertificate certificate;
};

/// Solves the primal-dual pair. Throws SolverError unless the solver
/// reports an optimal point.
TransportResult wasserstein_distance(const TransportInstance& instance,
                                     const SdpOptions& options = {});

struct DivergenceResult {
  double cross = 0.0;       ///< D^2(rho, omega)
  double self_rho = 0.0;    ///< D^2(rho, rho)
  double self_omega = 0.0;  ///< D^2(omega, omega)
  double squared = 0.0;     ///< d^2
  double value = 0.0;       ///< d
};

/// Quadratic divergence d^2 = D^2(rho,omega) - (D^2(rho,rho) + D^2(omega,omega)) / 2
/// for a K = 1 cost operator with p = 2 semantics. A radicand below -1e-9
/// throws NumericalError; values in [-1e-9, 0) clamp to 0.
DivergenceResult divergence_quadratic(const DensityMatrix& rho, const DensityMatrix& omega,
                                      const HermitianMatrix& cost, const SdpOptions& options = {});
/// Same with the cost sum_k (A_k (x) I - I (x) A_k^T)^2.
DivergenceResult divergence_quadratic(const DensityMatrix& rho, const DensityMatrix& omega,
                                      const ObservableSet& obs, const SdpOptions& options = {});

struct GapDemoResult {
  double p = 0.0;
  double nonlinear = 0.0;           ///< single coupling, summed Pauli costs
  double linearized = 0.0;          ///< sum of the per-factor optima
  std::vector<double> per_factor;   ///< sigma_x, sigma_y, sigma_z
  std::optional<double> joint;      ///< K = 3 linearized SDP on 64 x 64, if requested
};

/// Qubit states with Bloch vectors (0,0,1/2) and (0,0,-1/2), Pauli
/// observables and per-factor cost |x - y|^p.
GapDemoResult gap_demo(double p, bool solve_joint = false, const SdpOptions& options = {});

}  // namespace qwass
