#pragma once

// Dense complex linear algebra on small Hilbert spaces.
//
// Conventions used throughout the library:
//  * H* is identified with H through the computational basis, so the
//    transpose of an operator is the entrywise transpose of its matrix.
//  * On H (x) H* the first tensor factor is the H slot and the second the
//    H* slot. Vectorization is row-major: vec(X)[i*d + j] = X(i, j), hence
//    kron(A, B^T) * vec(X) = vec(A X B).
//  * Tensor factors are indexed from 0 in every API (FactorShape, keep sets).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qwass {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Asymmetry accepted (and removed) by HermitianMatrix, relative to
/// max(1, largest entry magnitude).
inline constexpr double kHermitianTolerance = 1e-12;
/// Lowest admissible eigenvalue of a density matrix.
inline constexpr double kPsdTolerance = 1e-10;
/// Admissible deviation of a density matrix trace from one.
inline constexpr double kTraceTolerance = 1e-10;
/// Eigenvalues closer than this are merged into one spectral projector.
inline constexpr double kEigenClusterGap = 1e-9;

/// Dense Hermitian matrix. Construction symmetrizes (M + M^*)/2 and rejects
/// inputs whose asymmetry exceeds kHermitianTolerance.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& m);

  static HermitianMatrix identity(Index dim);
  static HermitianMatrix zero(Index dim);
  static HermitianMatrix diagonal(std::span<const double> entries);
  static HermitianMatrix diagonal(std::initializer_list<double> entries);

  Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(Index i, Index j) const { return m_(i, j); }

  double trace() const;
  /// Real inner product Re tr(A^* B) = tr(A B) on Hermitian matrices.
  double inner(const HermitianMatrix& other) const;
  /// Largest entry magnitude.
  double max_abs() const;
  /// Operator (spectral) norm, the largest |eigenvalue|.
  double operator_norm() const;
  double min_eigenvalue() const;
  double max_eigenvalue() const;

  HermitianMatrix operator+(const HermitianMatrix& rhs) const;
  HermitianMatrix operator-(const HermitianMatrix& rhs) const;
  HermitianMatrix operator-() const;
  HermitianMatrix operator*(double s) const;
  HermitianMatrix& operator+=(const HermitianMatrix& rhs);
  HermitianMatrix& operator-=(const HermitianMatrix& rhs);

 private:
  ComplexMatrix m_;
};

inline HermitianMatrix operator*(double s, const HermitianMatrix& m) { return m * s; }

/// Positive semidefinite, unit-trace Hermitian matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianMatrix m);
  explicit DensityMatrix(const ComplexMatrix& m) : DensityMatrix(HermitianMatrix(m)) {}

  static DensityMatrix maximally_mixed(Index dim);

  Index dim() const { return m_.dim(); }
  const HermitianMatrix& hermitian() const { return m_; }
  const ComplexMatrix& matrix() const { return m_.matrix(); }
  operator const HermitianMatrix&() const { return m_; }

 private:
  HermitianMatrix m_;
};

/// Eigenvalues in ascending order with one orthogonal projector per
/// (clustered) eigenvalue.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  std::vector<HermitianMatrix> projectors;

  HermitianMatrix reconstruct() const;
  std::size_t size() const { return eigenvalues.size(); }
};

/// Per-factor dimensions of a tensor product space.
class FactorShape {
 public:
  explicit FactorShape(std::vector<Index> dims);
  /// `count` copies of `dim`.
  static FactorShape uniform(Index dim, std::size_t count);

  const std::vector<Index>& dims() const { return dims_; }
  std::size_t size() const { return dims_.size(); }
  Index total() const { return total_; }
  Index operator[](std::size_t k) const { return dims_[k]; }

 private:
  std::vector<Index> dims_;
  Index total_ = 1;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b);

/// Traces out every factor not listed in `keep`. The kept factors stay in
/// their original relative order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const FactorShape& shape,
                            std::span<const std::size_t> keep);
HermitianMatrix partial_trace(const HermitianMatrix& m, const FactorShape& shape,
                              std::span<const std::size_t> keep);
HermitianMatrix partial_trace(const HermitianMatrix& m, const FactorShape& shape,
                              std::initializer_list<std::size_t> keep);

HermitianMatrix transpose_entrywise(const HermitianMatrix& m);

/// Hermitian eigendecomposition; eigenvalues closer than kEigenClusterGap are
/// merged. Throws NumericalError if the eigensolver does not converge.
SpectralDecomposition eig_hermitian(const HermitianMatrix& m);

/// Applies a real function to the spectrum: sum_i f(lambda_i) P_i.
template <typename F>
HermitianMatrix apply_function(const SpectralDecomposition& spec, F&& f) {
  const Index n = spec.projectors.empty() ? 0 : spec.projectors.front().dim();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i < spec.size(); ++i) {
    out += f(spec.eigenvalues[i]) * spec.projectors[i].matrix();
  }
  return HermitianMatrix(out);
}

/// Square root of a PSD matrix. Eigenvalues in [-kPsdTolerance, 0) are
/// clamped to zero; anything lower throws InvalidArgument.
HermitianMatrix sqrt_psd(const HermitianMatrix& m);

/// Row-major vectorization |X>> of a square matrix.
ComplexVector vectorize(const ComplexMatrix& x);
/// |X>><<X| on H (x) H*.
HermitianMatrix outer_vec(const ComplexMatrix& x);

/// dim^2 Hermitian matrices, orthonormal under Re tr(A^* B), starting with
/// I/sqrt(dim) and followed by the generalized Gell-Mann matrices
/// (symmetric and antisymmetric pairs for j < k, then diagonals).
std::vector<HermitianMatrix> hermitian_basis(Index dim);

/// Identity of dimension `dim`^`count`, embedded helper for K-fold spaces.
ComplexMatrix identity_power(Index dim, std::size_t count);

/// I^{(x) before} (x) m (x) I^{(x) after} with identities of dimension `block`.
ComplexMatrix embed(const ComplexMatrix& m, Index block, std::size_t before,
                    std::size_t after);

/// Operator norm of U U^* - I.
double unitarity_defect(const ComplexMatrix& u);

/// Pauli matrices.
HermitianMatrix pauli_x();
HermitianMatrix pauli_y();
HermitianMatrix pauli_z();

}  // namespace qwass
