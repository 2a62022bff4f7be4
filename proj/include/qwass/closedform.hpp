#pragma once

// Closed-form distances, divergences, optimal couplings and Kantorovich
// potentials for qubits under the Pauli-triple cost C_symm,p and the single
// observable cost C_z,p.
//
// Two one-parameter families are used:
//   z-family   rho_z(a) = (I + a sigma_z) / 2
//   x-family   rho_x(a) = (I + a sigma_x) / 2
// Distances are returned as D^p (the optimal transport cost), never D.

#include <array>
#include <vector>

#include "qwass/linalg.hpp"
#include "qwass/transport.hpp"

namespace qwass {

struct BlochVector {
  std::array<double, 3> r{0.0, 0.0, 0.0};

  double norm() const;
  double dot(const BlochVector& other) const;
};

/// (I + r . sigma) / 2. Throws InvalidArgument if |r| > 1 + 1e-12.
DensityMatrix state_from_bloch(const BlochVector& r);
DensityMatrix state_z(double a);
DensityMatrix state_x(double a);

// Pauli-triple cost, commuting states.

/// 2^p (1 + |a - b| / 2 - sqrt((1 + min)(1 - max))).
double d_symm_commuting(double alpha, double beta, double p);
/// Same for collinear Bloch vectors. Throws InvalidArgument unless
/// |r1 x r2| <= 1e-10.
double d_symm_general(const BlochVector& r1, const BlochVector& r2, double p);
/// Optimal coupling of rho_z(alpha) (source) and rho_z(beta) (target).
Coupling coupling_symm_commuting(double alpha, double beta);
/// The two dual-feasible potential pairs (X_1, Y_1), (X_2, Y_2); the larger
/// objective equals d_symm_commuting. Requires |alpha|, |beta| < 1.
std::vector<DualPotentials> potentials_symm_commuting(double alpha, double beta, double p);
/// d^2 for collinear Bloch vectors.
double divergence_symm_commuting(const BlochVector& r1, const BlochVector& r2);

// Single observable sigma_z, states in the xy plane.

/// 2^{p-1} (1 - sqrt(1 - max(a^2, b^2))).
double d_z_xy(double alpha, double beta, double p);
/// Optimal coupling of rho_x(alpha) (source) and rho_x(beta) (target).
/// Uses Pi_+ when |alpha| >= |beta| (ties included), Pi_- otherwise, and
/// diag(1/2, 0, 0, 1/2) when both vanish.
Coupling coupling_z_xy(double alpha, double beta);
/// Candidates (X_+, 0), (X_-, 0), (0, X_+), (0, X_-) built from
/// M = max(|alpha|, |beta|); the best objective equals d_z_xy.
/// Requires M < 1.
std::vector<DualPotentials> potentials_z_xy(double alpha, double beta, double p);
/// d^2 for Bloch radii in the xy plane: sqrt(1 - min^2) - sqrt(1 - max^2).
double divergence_z_xy(double r1, double r2);

// Single observable sigma_z, states commuting with it.

/// 2^{p-1} |a - b|.
double d_z_commuting(double alpha, double beta, double p);
/// Diagonal optimal coupling of rho_z(alpha) and rho_z(beta).
Coupling coupling_z_commuting(double alpha, double beta);
/// (X, -X) and (-X, X) with X = diag(2^p, 0).
std::vector<DualPotentials> potentials_z_commuting(double p);
/// d^2 = 2 |a - b|.
double divergence_z_commuting(double alpha, double beta);

/// Largest dual objective among candidate potentials.
double best_dual_objective(const std::vector<DualPotentials>& candidates,
                           const DensityMatrix& rho, const DensityMatrix& omega);

/// d^2(a,b) + d^2(b,c) - d^2(a,c) for the z-family and the Pauli-triple cost.
double triangle_margin_symm(double alpha, double beta, double gamma);
/// d^2(r,s) + d^2(s,w) - d^2(r,w) for xy-plane radii and C_z,2.
double triangle_margin_z(double r_rho, double r_sigma, double r_omega);

}  // namespace qwass
