#pragma once

// Cost operators built from observables by finite functional calculus.
//
// For observables A_1..A_K with spectral projectors P_k(.) and a classical
// cost c(x, y), x, y in R^K, the cost operator on (H (x) H*)^{(x)K} is
//
//   C = sum over eigenvalue tuples of  c(x, y) (x)_k [ P_k(y_k) (x) P_k(x_k)^T ].
//
// The first slot of every pair carries the target coordinate y and the
// transposed second slot the source coordinate x.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qwass/linalg.hpp"

namespace qwass {

/// Largest ambient dimension a dense cost operator may have.
inline constexpr Index kMaxCostDimension = 256;

/// Classical cost on R^K x R^K.
struct ClassicalCost {
  std::size_t arity = 1;
  std::function<double(std::span<const double> x, std::span<const double> y)> evaluate;

  /// sum_k |x_k - y_k|^p
  static ClassicalCost lp_power(std::size_t arity, double p);
  /// ||x - y||_2^p, which does not split into per-factor terms for K > 1.
  static ClassicalCost euclidean_power(std::size_t arity, double p);
  static ClassicalCost zero(std::size_t arity);
};

/// Two-argument cost f(x, y) for one factor of a factorized cost.
using PairCost = std::function<double(double x, double y)>;

/// |x - y|^p
PairCost abs_diff_power(double p);

/// Observables A_1..A_K of a common dimension with cached spectra.
class ObservableSet {
 public:
  explicit ObservableSet(std::vector<HermitianMatrix> observables);

  /// {sigma_x, sigma_y, sigma_z}
  static ObservableSet pauli_triple();
  static ObservableSet sigma_z();

  std::size_t size() const { return observables_.size(); }
  Index dim() const { return dim_; }
  const HermitianMatrix& observable(std::size_t k) const { return observables_.at(k); }
  const SpectralDecomposition& spectrum(std::size_t k) const { return spectra_.at(k); }

 private:
  std::vector<HermitianMatrix> observables_;
  std::vector<SpectralDecomposition> spectra_;
  Index dim_ = 0;
};

/// Cost operator of an arbitrary classical cost by explicit summation over
/// all eigenvalue tuples. Throws DimensionBudgetError if (dim^2)^K exceeds
/// `max_dim`.
HermitianMatrix cost_operator_general(const ObservableSet& obs, const ClassicalCost& cost,
                                      Index max_dim = kMaxCostDimension);

/// Per-factor operators C_k = sum_{x,y} f_k(x, y) P_k(y) (x) P_k(x)^T.
std::vector<HermitianMatrix> cost_operator_factorized(const ObservableSet& obs,
                                                      std::span<const PairCost> per_factor);

/// sum_k I^{(x)(k-1)} (x) C_k (x) I^{(x)(K-k)}, each C_k acting on H (x) H*.
HermitianMatrix embed_factor_sum(std::span<const HermitianMatrix> factors,
                                 Index max_dim = kMaxCostDimension);

/// Plain sum of the per-factor operators, the cost of the product-coupling
/// problem for a factorized cost.
HermitianMatrix sum_factors(std::span<const HermitianMatrix> factors);

/// |M|^p through the eigendecomposition of M.
HermitianMatrix abs_power(const HermitianMatrix& m, double p);

/// 2^{p+1} I - 2^p |I>><<I| on C^2 (x) (C^2)*.
HermitianMatrix cost_symm(double p);
/// sum_k |sigma_k (x) I - I (x) sigma_k^T|^p by functional calculus.
HermitianMatrix cost_symm_by_calculus(double p);
/// 2^{p-1} (I (x) I - sigma_z (x) sigma_z^T) = diag(0, 2^p, 2^p, 0).
HermitianMatrix cost_z(double p);

/// Operator norm of (U (x) conj(U)) C (U (x) conj(U))^* - C.
/// Throws InvalidArgument unless U is unitary within 1e-10.
double check_unitary_invariance(const HermitianMatrix& c, const ComplexMatrix& u);

/// The swap transposition A (x) B^T -> B (x) A^T on H (x) H*.
HermitianMatrix swap_transpose(const HermitianMatrix& m);

}  // namespace qwass
