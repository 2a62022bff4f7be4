#include "qwass/random.hpp"

#include <cmath>

namespace qwass {

ComplexMatrix random_ginibre(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

ComplexMatrix random_unitary(Index dim, Rng& rng) {
  const ComplexMatrix g = random_ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

HermitianMatrix random_hermitian(Index dim, Rng& rng) {
  const ComplexMatrix g = random_ginibre(dim, dim, rng);
  return HermitianMatrix(ComplexMatrix(0.5 * (g + g.adjoint())));
}

DensityMatrix random_density(Index dim, Rng& rng) {
  const ComplexMatrix g = random_ginibre(dim, dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(ComplexMatrix(0.5 * (rho + rho.adjoint())));
}

std::array<double, 3> random_bloch(Rng& rng, double max_radius) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::array<double, 3> v{normal(rng), normal(rng), normal(rng)};
  double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  if (norm == 0.0) {
    v = {0.0, 0.0, 1.0};
    norm = 1.0;
  }
  const double radius = max_radius * std::cbrt(uniform(rng, 0.0, 1.0));
  for (auto& c : v) c *= radius / norm;
  return v;
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace qwass
