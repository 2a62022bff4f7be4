#include "qwass/linalg.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numeric>
#include <string>

#include "qwass/errors.hpp"

namespace qwass {

namespace {

double max_abs_entry(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Eigen::VectorXd eigenvalues_of(const ComplexMatrix& m) {
  if (m.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigensolver did not converge");
  }
  return solver.eigenvalues();
}

}  // namespace

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw InvalidArgument("Hermitian matrix must be square, got " + std::to_string(m.rows()) +
                          "x" + std::to_string(m.cols()));
  }
  if (!m.allFinite()) throw InvalidArgument("matrix has non-finite entries");
  const double asym = max_abs_entry(m - m.adjoint());
  const double scale = std::max(1.0, max_abs_entry(m));
  if (asym > kHermitianTolerance * scale) {
    throw InvalidArgument("matrix is not Hermitian (asymmetry " + std::to_string(asym) + ")");
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::identity(Index dim) {
  return HermitianMatrix(ComplexMatrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::zero(Index dim) {
  return HermitianMatrix(ComplexMatrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> entries) {
  const auto n = static_cast<Index>(entries.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
  return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::diagonal(std::initializer_list<double> entries) {
  return diagonal(std::span<const double>(entries.begin(), entries.size()));
}

double HermitianMatrix::trace() const { return m_.trace().real(); }

double HermitianMatrix::inner(const HermitianMatrix& other) const {
  if (other.dim() != dim()) throw InvalidArgument("inner product of mismatched dimensions");
  // tr(A B) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B.
  return (m_.array() * other.m_.conjugate().array()).sum().real();
}

double HermitianMatrix::max_abs() const { return max_abs_entry(m_); }

double HermitianMatrix::operator_norm() const {
  if (dim() == 0) return 0.0;
  const auto ev = eigenvalues_of(m_);
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

double HermitianMatrix::min_eigenvalue() const {
  if (dim() == 0) throw InvalidArgument("empty matrix has no eigenvalues");
  return eigenvalues_of(m_)(0);
}

double HermitianMatrix::max_eigenvalue() const {
  if (dim() == 0) throw InvalidArgument("empty matrix has no eigenvalues");
  const auto ev = eigenvalues_of(m_);
  return ev(ev.size() - 1);
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& rhs) const {
  HermitianMatrix out = *this;
  out += rhs;
  return out;
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& rhs) const {
  HermitianMatrix out = *this;
  out -= rhs;
  return out;
}

HermitianMatrix HermitianMatrix::operator-() const {
  HermitianMatrix out = *this;
  out.m_ = -out.m_;
  return out;
}

HermitianMatrix HermitianMatrix::operator*(double s) const {
  HermitianMatrix out = *this;
  out.m_ *= s;
  return out;
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& rhs) {
  if (rhs.dim() != dim()) throw InvalidArgument("sum of mismatched dimensions");
  m_ += rhs.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& rhs) {
  if (rhs.dim() != dim()) throw InvalidArgument("difference of mismatched dimensions");
  m_ -= rhs.m_;
  return *this;
}

DensityMatrix::DensityMatrix(HermitianMatrix m) : m_(std::move(m)) {
  if (m_.dim() == 0) throw InvalidArgument("density matrix must be non-empty");
  const double tr = m_.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    throw InvalidArgument("density matrix trace " + std::to_string(tr) + " differs from 1");
  }
  const double lo = m_.min_eigenvalue();
  if (lo < -kPsdTolerance) {
    throw InvalidArgument("density matrix has negative eigenvalue " + std::to_string(lo));
  }
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  return DensityMatrix(HermitianMatrix::identity(dim) * (1.0 / static_cast<double>(dim)));
}

HermitianMatrix SpectralDecomposition::reconstruct() const {
  return apply_function(*this, [](double x) { return x; });
}

FactorShape::FactorShape(std::vector<Index> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw InvalidArgument("factor shape needs at least one factor");
  for (Index d : dims_) {
    if (d < 1) throw InvalidArgument("factor dimensions must be >= 1");
    total_ *= d;
  }
}

FactorShape FactorShape::uniform(Index dim, std::size_t count) {
  return FactorShape(std::vector<Index>(count, dim));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

HermitianMatrix kron(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(kron(a.matrix(), b.matrix()));
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const FactorShape& shape,
                            std::span<const std::size_t> keep) {
  if (m.rows() != shape.total() || m.cols() != shape.total()) {
    throw InvalidArgument("partial trace: matrix dimension " + std::to_string(m.rows()) +
                          " does not match factor shape total " +
                          std::to_string(shape.total()));
  }
  if (keep.empty()) throw InvalidArgument("partial trace: keep set must be nonempty");
  std::vector<bool> kept(shape.size(), false);
  for (std::size_t k : keep) {
    if (k >= shape.size()) throw InvalidArgument("partial trace: factor index out of range");
    if (kept[k]) throw InvalidArgument("partial trace: duplicate factor index");
    kept[k] = true;
  }

  // Split every ambient index into (kept index, traced index).
  const Index n = shape.total();
  std::vector<Index> kept_index(static_cast<std::size_t>(n));
  std::vector<Index> traced_index(static_cast<std::size_t>(n));
  Index kept_dim = 1;
  for (std::size_t k = 0; k < shape.size(); ++k) {
    if (kept[k]) kept_dim *= shape[k];
  }
  std::vector<Index> digits(shape.size(), 0);
  for (Index idx = 0; idx < n; ++idx) {
    Index rem = idx;
    for (std::size_t k = shape.size(); k-- > 0;) {
      digits[k] = rem % shape[k];
      rem /= shape[k];
    }
    Index ki = 0, ti = 0;
    for (std::size_t k = 0; k < shape.size(); ++k) {
      if (kept[k]) {
        ki = ki * shape[k] + digits[k];
      } else {
        ti = ti * shape[k] + digits[k];
      }
    }
    kept_index[static_cast<std::size_t>(idx)] = ki;
    traced_index[static_cast<std::size_t>(idx)] = ti;
  }

  ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
  for (Index j = 0; j < n; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    for (Index i = 0; i < n; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      if (traced_index[iu] == traced_index[ju]) {
        out(kept_index[iu], kept_index[ju]) += m(i, j);
      }
    }
  }
  return out;
}

HermitianMatrix partial_trace(const HermitianMatrix& m, const FactorShape& shape,
                              std::span<const std::size_t> keep) {
  return HermitianMatrix(partial_trace(m.matrix(), shape, keep));
}

HermitianMatrix partial_trace(const HermitianMatrix& m, const FactorShape& shape,
                              std::initializer_list<std::size_t> keep) {
  return partial_trace(m, shape, std::span<const std::size_t>(keep.begin(), keep.size()));
}

HermitianMatrix transpose_entrywise(const HermitianMatrix& m) {
  return HermitianMatrix(ComplexMatrix(m.matrix().transpose()));
}

SpectralDecomposition eig_hermitian(const HermitianMatrix& m) {
  if (m.dim() == 0) throw InvalidArgument("eigendecomposition of an empty matrix");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigensolver did not converge");
  }
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();

  SpectralDecomposition out;
  Index start = 0;
  const Index n = m.dim();
  while (start < n) {
    Index end = start + 1;
    while (end < n && values(end) - values(end - 1) < kEigenClusterGap) ++end;
    const auto block = vectors.middleCols(start, end - start);
    out.eigenvalues.push_back(values.segment(start, end - start).mean());
    out.projectors.emplace_back(ComplexMatrix(block * block.adjoint()));
    start = end;
  }
  return out;
}

HermitianMatrix sqrt_psd(const HermitianMatrix& m) {
  const auto spec = eig_hermitian(m);
  if (spec.eigenvalues.front() < -kPsdTolerance) {
    throw InvalidArgument("sqrt_psd: matrix has eigenvalue " +
                          std::to_string(spec.eigenvalues.front()));
  }
  return apply_function(spec, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

ComplexVector vectorize(const ComplexMatrix& x) {
  if (x.rows() != x.cols()) throw InvalidArgument("vectorize expects a square matrix");
  const Index d = x.rows();
  ComplexVector v(d * d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) v(i * d + j) = x(i, j);
  }
  return v;
}

HermitianMatrix outer_vec(const ComplexMatrix& x) {
  const ComplexVector v = vectorize(x);
  return HermitianMatrix(ComplexMatrix(v * v.adjoint()));
}

std::vector<HermitianMatrix> hermitian_basis(Index dim) {
  if (dim < 1) throw InvalidArgument("hermitian_basis: dimension must be >= 1");
  std::vector<HermitianMatrix> basis;
  basis.reserve(static_cast<std::size_t>(dim * dim));
  basis.push_back(HermitianMatrix::identity(dim) * (1.0 / std::sqrt(static_cast<double>(dim))));
  const double r2 = 1.0 / std::sqrt(2.0);
  for (Index j = 0; j < dim; ++j) {
    for (Index k = j + 1; k < dim; ++k) {
      ComplexMatrix sym = ComplexMatrix::Zero(dim, dim);
      sym(j, k) = r2;
      sym(k, j) = r2;
      basis.emplace_back(sym);
      ComplexMatrix anti = ComplexMatrix::Zero(dim, dim);
      anti(j, k) = Complex(0.0, -r2);
      anti(k, j) = Complex(0.0, r2);
      basis.emplace_back(anti);
    }
  }
  for (Index l = 1; l < dim; ++l) {
    // diag(1, ..., 1, -l, 0, ...) with l ones, normalized.
    const double norm = std::sqrt(static_cast<double>(l * (l + 1)));
    ComplexMatrix diag = ComplexMatrix::Zero(dim, dim);
    for (Index i = 0; i < l; ++i) diag(i, i) = 1.0 / norm;
    diag(l, l) = -static_cast<double>(l) / norm;
    basis.emplace_back(diag);
  }
  return basis;
}

ComplexMatrix identity_power(Index dim, std::size_t count) {
  Index n = 1;
  for (std::size_t i = 0; i < count; ++i) n *= dim;
  return ComplexMatrix::Identity(n, n);
}

ComplexMatrix embed(const ComplexMatrix& m, Index block, std::size_t before, std::size_t after) {
  ComplexMatrix out = m;
  if (before > 0) out = kron(identity_power(block, before), out);
  if (after > 0) out = kron(out, identity_power(block, after));
  return out;
}

double unitarity_defect(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  const ComplexMatrix d = u * u.adjoint() - ComplexMatrix::Identity(u.rows(), u.cols());
  return HermitianMatrix(ComplexMatrix(0.5 * (d + d.adjoint()))).operator_norm();
}

HermitianMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return HermitianMatrix(m);
}

HermitianMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return HermitianMatrix(m);
}

HermitianMatrix pauli_z() { return HermitianMatrix::diagonal({1.0, -1.0}); }

}  // namespace qwass
