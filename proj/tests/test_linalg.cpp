#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "qwass/closedform.hpp"
#include "qwass/errors.hpp"
#include "qwass/linalg.hpp"
#include "qwass/random.hpp"

using namespace qwass;
using qwass::testing::max_diff;
using qwass::testing::real_matrix;

TEST_SUITE("linalg") {

TEST_CASE("hermitian matrix construction") {
  SUBCASE("symmetrizes tiny asymmetry") {
    ComplexMatrix m = pauli_x().matrix();
    m(0, 1) += Complex(1e-14, 0.0);
    const HermitianMatrix h(m);
    CHECK(h(0, 1) == h(1, 0));
  }
  SUBCASE("rejects asymmetric input") {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(HermitianMatrix{m}, InvalidArgument);
  }
  SUBCASE("rejects imaginary diagonal") {
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(1, 1) = Complex(1.0, 1e-6);
    CHECK_THROWS_AS(HermitianMatrix{m}, InvalidArgument);
  }
  SUBCASE("rejects non-square and non-finite input") {
    CHECK_THROWS_AS(HermitianMatrix{ComplexMatrix::Zero(2, 3)}, InvalidArgument);
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m(0, 0) = std::nan("");
    CHECK_THROWS_AS(HermitianMatrix{m}, InvalidArgument);
  }
}

TEST_CASE("density matrix validation") {
  CHECK_NOTHROW(DensityMatrix::maximally_mixed(3));
  CHECK_THROWS_AS(DensityMatrix{ComplexMatrix(ComplexMatrix::Identity(2, 2))}, InvalidArgument);
  CHECK_THROWS_AS(DensityMatrix{HermitianMatrix::diagonal({1.5, -0.5})}, InvalidArgument);
  CHECK_NOTHROW(DensityMatrix{HermitianMatrix::diagonal({1.0 + 1e-11, -1e-11})});
}

TEST_CASE("kron") {
  CHECK(max_diff(kron(ComplexMatrix(ComplexMatrix::Identity(2, 2)),
                      ComplexMatrix(ComplexMatrix::Identity(2, 2))),
                 ComplexMatrix::Identity(4, 4)) == 0.0);
  CHECK(max_diff(kron(pauli_z(), pauli_z()), HermitianMatrix::diagonal({1, -1, -1, 1})) == 0.0);
  const ComplexMatrix anti = real_matrix({{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}});
  CHECK(max_diff(kron(pauli_x().matrix(), pauli_x().matrix()), anti) == 0.0);
}

TEST_CASE("partial trace examples") {
  const FactorShape shape({2, 2});
  CHECK(partial_trace(kron(pauli_x(), pauli_z()), shape, {1}).max_abs() == 0.0);

  const DensityMatrix rho = state_z(0.5);
  const DensityMatrix omega = state_x(-0.3);
  const HermitianMatrix product = kron(omega.hermitian(), transpose_entrywise(rho));
  CHECK(max_diff(partial_trace(product, shape, {0}), omega) < 1e-15);
  CHECK(max_diff(partial_trace(product, shape, {1}), transpose_entrywise(rho)) < 1e-15);

  const Coupling pi = coupling_symm_commuting(0.3, -0.2);
  CHECK(max_diff(partial_trace(pi.matrix, shape, {1}), transpose_entrywise(state_z(0.3))) < 1e-15);
  CHECK(max_diff(partial_trace(pi.matrix, shape, {0}), state_z(-0.2)) < 1e-15);
}

TEST_CASE("partial trace errors") {
  const HermitianMatrix m = HermitianMatrix::identity(4);
  const FactorShape shape({2, 2});
  CHECK_THROWS_AS(partial_trace(m, FactorShape({2, 3}), {0}), InvalidArgument);
  CHECK_THROWS_AS(partial_trace(m, shape, {}), InvalidArgument);
  CHECK_THROWS_AS(partial_trace(m, shape, {2}), InvalidArgument);
  CHECK_THROWS_AS(partial_trace(m, shape, {0, 0}), InvalidArgument);
}

TEST_CASE("partial trace keeps original order and composes") {
  Rng rng(11);
  const FactorShape shape({2, 3, 2});
  for (int trial = 0; trial < 20; ++trial) {
    const DensityMatrix a = random_density(2, rng);
    const DensityMatrix b = random_density(3, rng);
    const DensityMatrix c = random_density(2, rng);
    const HermitianMatrix abc = kron(kron(a.hermitian(), b.hermitian()), c.hermitian());
    CHECK(max_diff(partial_trace(abc, shape, {0, 2}), kron(a.hermitian(), c.hermitian())) <
          1e-14);
    CHECK(max_diff(partial_trace(abc, shape, {2, 0}), kron(a.hermitian(), c.hermitian())) <
          1e-14);

    const HermitianMatrix g(random_density(12, rng).matrix());
    const HermitianMatrix joint = partial_trace(g, shape, {1});
    const HermitianMatrix step_a = partial_trace(partial_trace(g, shape, {1, 2}), FactorShape({3, 2}), {0});
    const HermitianMatrix step_b = partial_trace(partial_trace(g, shape, {0, 1}), FactorShape({2, 3}), {1});
    CHECK(max_diff(joint, step_a) <= 1e-12);
    CHECK(max_diff(joint, step_b) <= 1e-12);
    CHECK(std::abs(joint.trace() - g.trace()) < 1e-12);
  }
}

TEST_CASE("transpose") {
  CHECK(max_diff(transpose_entrywise(pauli_z()), pauli_z()) == 0.0);
  CHECK(max_diff(transpose_entrywise(pauli_y()), -pauli_y()) == 0.0);
  CHECK(max_diff(transpose_entrywise(pauli_x()), pauli_x()) == 0.0);

  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const HermitianMatrix a = random_hermitian(3, rng);
    const HermitianMatrix b = random_hermitian(2, rng);
    CHECK(max_diff(transpose_entrywise(transpose_entrywise(a)), a) == 0.0);
    CHECK(max_diff(transpose_entrywise(kron(a, transpose_entrywise(b))),
                   kron(transpose_entrywise(a), b)) == 0.0);
  }
}

TEST_CASE("eigendecomposition examples") {
  const auto z = eig_hermitian(pauli_z());
  REQUIRE(z.size() == 2);
  CHECK(z.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(z.eigenvalues[1] == doctest::Approx(1.0));
  CHECK(max_diff(z.projectors[0], HermitianMatrix::diagonal({0, 1})) < 1e-15);
  CHECK(max_diff(z.projectors[1], HermitianMatrix::diagonal({1, 0})) < 1e-15);

  const auto id = eig_hermitian(HermitianMatrix::identity(2));
  REQUIRE(id.size() == 1);
  CHECK(id.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(max_diff(id.projectors[0], HermitianMatrix::identity(2)) < 1e-15);

  const auto x = eig_hermitian(pauli_x());
  REQUIRE(x.size() == 2);
  const HermitianMatrix half = 0.5 * HermitianMatrix::identity(2);
  CHECK(max_diff(x.projectors[0], half - 0.5 * pauli_x()) < 1e-14);
  CHECK(max_diff(x.projectors[1], half + 0.5 * pauli_x()) < 1e-14);
}

TEST_CASE("eigendecomposition invariants on random input") {
  Rng rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Index n = 1 + trial % 8;
    const HermitianMatrix h = random_hermitian(n, rng);
    const auto spec = eig_hermitian(h);
    worst = std::max(worst, max_diff(spec.reconstruct(), h));
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    for (std::size_t i = 0; i < spec.size(); ++i) {
      const ComplexMatrix& p = spec.projectors[i].matrix();
      CHECK(max_diff(p * p, p) <= 1e-10);
      for (std::size_t j = i + 1; j < spec.size(); ++j) {
        CHECK((p * spec.projectors[j].matrix()).cwiseAbs().maxCoeff() <= 1e-10);
      }
      if (i > 0) CHECK(spec.eigenvalues[i] > spec.eigenvalues[i - 1]);
      sum += p;
    }
    CHECK(max_diff(sum, ComplexMatrix::Identity(n, n)) <= 1e-10);
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("degenerate eigenvalues merge") {
  Rng rng(3);
  const ComplexMatrix u = random_unitary(4, rng);
  const ComplexMatrix d = real_matrix({{2, 0, 0, 0}, {0, 2 + 1e-12, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, 5}});
  const auto spec = eig_hermitian(HermitianMatrix(ComplexMatrix(u * d * u.adjoint())));
  REQUIRE(spec.size() == 3);
  CHECK(spec.projectors[1].trace() == doctest::Approx(2.0));
}

TEST_CASE("square root") {
  CHECK(max_diff(sqrt_psd(0.5 * HermitianMatrix::identity(2)),
                 HermitianMatrix::identity(2) * std::sqrt(0.5)) < 1e-15);
  for (double a : {-0.8, 0.0, 0.3, 1.0}) {
    const HermitianMatrix expected =
        HermitianMatrix::diagonal({std::sqrt((1 + a) / 2), std::sqrt((1 - a) / 2)});
    CHECK(max_diff(sqrt_psd(state_z(a)), expected) < 1e-15);
  }
  const HermitianMatrix proj = state_from_bloch({{0.6, 0.0, 0.8}});
  CHECK(max_diff(sqrt_psd(proj), proj) < 1e-12);
  CHECK_NOTHROW(sqrt_psd(HermitianMatrix::diagonal({1.0, -1e-11})));
  CHECK_THROWS_AS(sqrt_psd(HermitianMatrix::diagonal({1.0, -1e-6})), InvalidArgument);

  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = random_density(1 + trial % 5, rng);
    const HermitianMatrix r = sqrt_psd(rho);
    CHECK(max_diff(ComplexMatrix(r.matrix() * r.matrix()), rho.matrix()) <= 1e-9);
    CHECK(r.min_eigenvalue() >= -1e-12);
    const double c = uniform(rng, 0.1, 10.0);
    CHECK(max_diff(sqrt_psd(c * rho.hermitian()), std::sqrt(c) * r) <= 1e-9);
  }
}

TEST_CASE("vectorization") {
  const HermitianMatrix corners = 0.5 * outer_vec(ComplexMatrix::Identity(2, 2));
  CHECK(max_diff(corners.matrix(), real_matrix({{0.5, 0, 0, 0.5}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0.5, 0, 0, 0.5}})) == 0.0);

  const HermitianMatrix mm = outer_vec(sqrt_psd(0.5 * HermitianMatrix::identity(2)).matrix());
  const FactorShape shape({2, 2});
  CHECK(max_diff(partial_trace(mm, shape, {0}), 0.5 * HermitianMatrix::identity(2)) < 1e-15);
  CHECK(max_diff(partial_trace(mm, shape, {1}), 0.5 * HermitianMatrix::identity(2)) < 1e-15);

  for (double a : {-0.4, 0.0, 0.9}) {
    const ComplexMatrix r = sqrt_psd(state_z(a)).matrix();
    const Complex overlap = vectorize(ComplexMatrix::Identity(2, 2)).dot(vectorize(r));
    CHECK(overlap.real() == doctest::Approx(r.trace().real()).epsilon(1e-14));
  }

  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = random_ginibre(3, 3, rng);
    const ComplexMatrix b = random_ginibre(3, 3, rng);
    const ComplexMatrix x = random_ginibre(3, 3, rng);
    CHECK((kron(a, ComplexMatrix(b.transpose())) * vectorize(x) - vectorize(a * x * b))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    const HermitianMatrix o = outer_vec(x);
    CHECK(o.trace() == doctest::Approx(x.squaredNorm()).epsilon(1e-12));
    CHECK(o.min_eigenvalue() >= -1e-12);
    CHECK(eig_hermitian(o).size() == 2);

    const DensityMatrix rho = random_density(3, rng);
    const HermitianMatrix pur = outer_vec(sqrt_psd(rho).matrix());
    const FactorShape s3({3, 3});
    CHECK(max_diff(partial_trace(pur, s3, {0}), rho) < 1e-12);
    CHECK(max_diff(partial_trace(pur, s3, {1}), transpose_entrywise(rho)) < 1e-12);
  }
}

TEST_CASE("hermitian basis") {
  const auto b2 = hermitian_basis(2);
  REQUIRE(b2.size() == 4);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(max_diff(b2[0], s * HermitianMatrix::identity(2)) < 1e-15);
  CHECK(max_diff(b2[1], s * pauli_x()) < 1e-15);
  CHECK(max_diff(b2[2], s * pauli_y()) < 1e-15);
  CHECK(max_diff(b2[3], s * pauli_z()) < 1e-15);

  for (Index d : {1, 2, 3, 4}) {
    const auto basis = hermitian_basis(d);
    REQUIRE(basis.size() == static_cast<std::size_t>(d * d));
    CHECK(max_diff(basis[0], HermitianMatrix::identity(d) * (1.0 / std::sqrt(double(d)))) < 1e-15);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        CHECK(basis[i].inner(basis[j]) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("embedding and unitarity") {
  const ComplexMatrix e = embed(pauli_z().matrix(), 2, 1, 1);
  CHECK(e.rows() == 8);
  CHECK(max_diff(e, kron(kron(ComplexMatrix(ComplexMatrix::Identity(2, 2)), pauli_z().matrix()),
                         ComplexMatrix(ComplexMatrix::Identity(2, 2)))) == 0.0);
  CHECK(identity_power(2, 3).rows() == 8);
  Rng rng(1);
  CHECK(unitarity_defect(random_unitary(5, rng)) < 1e-13);
  CHECK(unitarity_defect(2.0 * ComplexMatrix::Identity(2, 2)) == doctest::Approx(3.0));
}

}  // TEST_SUITE
