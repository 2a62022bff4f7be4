#pragma once

// Dense primal-dual interior-point solver for complex Hermitian SDPs
//
//   minimize  <C, X>  subject to  <A_i, X> = b_i,  X >= 0
//   maximize  b^T y   subject to  C - sum_i y_i A_i = S >= 0
//
// with <A, B> = Re tr(A^* B). The cone is handled natively over the real
// vector space of n x n Hermitian matrices.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "qwass/linalg.hpp"

namespace qwass {

/// Largest variable dimension accepted by solve().
inline constexpr Index kMaxSdpDimension = 256;

struct SdpConstraint {
  HermitianMatrix a;
  double b = 0.0;
};

struct SdpProblem {
  HermitianMatrix objective;
  std::vector<SdpConstraint> constraints;

  Index dim() const { return objective.dim(); }
  /// Throws InvalidArgument on empty or mismatched data.
  void validate() const;
};

enum class SdpStatus { optimal, max_iter, infeasible, numerical };

std::string to_string(SdpStatus status);

struct SdpOptions {
  double tol_gap = 1e-8;
  double tol_feas = 1e-8;  ///< absolute, on primal rows and dual entries
  int max_iter = 200;
  /// Per-iteration trace (iteration, mu, residuals, objectives, steps).
  std::ostream* trace = nullptr;
};

struct PreprocessReport {
  std::vector<std::size_t> removed;  ///< indices into the original constraint list
  bool consistent = true;            ///< false when a dependent row disagrees in b
  std::size_t rank = 0;
};

struct PreprocessResult {
  SdpProblem problem;
  std::vector<std::size_t> kept;  ///< original index of every retained row
  PreprocessReport report;
};

struct SdpSolution {
  HermitianMatrix x;
  Eigen::VectorXd y;  ///< one multiplier per original constraint (0 on pruned rows)
  HermitianMatrix s;
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  double gap = 0.0;  ///< |primal_obj - dual_obj|
  SdpStatus status = SdpStatus::numerical;
  int iterations = 0;
  /// Condition number of the diagonally equilibrated Schur complement at
  /// the last Newton step.
  double schur_condition = 0.0;
  PreprocessReport preprocess;
  std::string message;  ///< reason for a non-optimal stop, empty otherwise
};

/// Removes linearly dependent constraint rows (relative rank tolerance
/// 1e-10) keeping the first occurrence of every independent direction.
PreprocessResult preprocess(const SdpProblem& problem);

/// Infeasible-start primal-dual path following with Nesterov-Todd scaling
/// and Mehrotra predictor-corrector steps. Deterministic for identical inputs.
SdpSolution solve(const SdpProblem& problem, const SdpOptions& options = {});

struct SdpTolerances {
  double primal_feas = 1e-8;
  double dual_feas = 1e-8;
  double psd = 1e-9;
  double relative_gap = 1e-7;
};

/// Residuals recomputed from (X, y, S) alone.
struct SdpCertificate {
  std::vector<double> primal_residuals;  ///< <A_i, X> - b_i
  double max_primal_residual = 0.0;
  double dual_residual = 0.0;  ///< operator norm of C - S - sum y_i A_i
  double min_eig_x = 0.0;
  double min_eig_s = 0.0;
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  double relative_gap = 0.0;  ///< |primal - dual| / max(1, |primal|)
  bool passed = false;
};

SdpCertificate certify(const SdpSolution& solution, const SdpProblem& problem,
                       const SdpTolerances& tol = {});

}  // namespace qwass
