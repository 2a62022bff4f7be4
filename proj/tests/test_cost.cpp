#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "qwass/cost.hpp"
#include "qwass/errors.hpp"
#include "qwass/random.hpp"

using namespace qwass;
using qwass::testing::max_diff;
using qwass::testing::real_matrix;

namespace {

ComplexMatrix hadamard() {
  ComplexMatrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

ComplexMatrix rotation_z(double phi) {
  ComplexMatrix u = ComplexMatrix::Zero(2, 2);
  u(0, 0) = std::exp(Complex(0.0, phi / 2));
  u(1, 1) = std::exp(Complex(0.0, -phi / 2));
  return u;
}

}  // namespace

TEST_SUITE("cost") {

TEST_CASE("general cost operator examples") {
  const HermitianMatrix cz = cost_operator_general(ObservableSet::sigma_z(), ClassicalCost::lp_power(1, 2.0));
  CHECK(max_diff(cz, HermitianMatrix::diagonal({0, 4, 4, 0})) < 1e-14);

  CHECK(cost_operator_general(ObservableSet::pauli_triple(), ClassicalCost::zero(3)).max_abs() == 0.0);

  const ObservableSet zz({pauli_z(), pauli_z()});
  const HermitianMatrix brute = cost_operator_general(zz, ClassicalCost::lp_power(2, 1.0));
  const HermitianMatrix one = cost_z(1.0);
  const HermitianMatrix i4 = HermitianMatrix::identity(4);
  CHECK(max_diff(brute, kron(one, i4) + kron(i4, one)) < 1e-13);
}

TEST_CASE("general cost operator errors") {
  CHECK_THROWS_AS(cost_operator_general(ObservableSet::sigma_z(), ClassicalCost::lp_power(2, 1.0)),
                  InvalidArgument);
  const ObservableSet many({pauli_x(), pauli_y(), pauli_z(), pauli_x(), pauli_z()});
  CHECK_THROWS_AS(cost_operator_general(many, ClassicalCost::lp_power(5, 1.0)), DimensionBudgetError);
  CHECK_THROWS_AS(ObservableSet({pauli_x(), HermitianMatrix::identity(3)}), InvalidArgument);
}

TEST_CASE("factorized cost operator examples") {
  const std::vector<PairCost> f{abs_diff_power(2.0)};
  CHECK(max_diff(cost_operator_factorized(ObservableSet::sigma_z(), f)[0], cost_z(2.0)) < 1e-14);

  const std::vector<PairCost> ones{[](double, double) { return 1.0; }};
  CHECK(max_diff(cost_operator_factorized(ObservableSet::sigma_z(), ones)[0],
                 HermitianMatrix::identity(4)) < 1e-14);

  const ObservableSet sx({pauli_x()});
  const ComplexMatrix h = hadamard();
  const ComplexMatrix w = kron(h, ComplexMatrix(h.transpose()));
  const ComplexMatrix expected = w * cost_z(2.0).matrix() * w.adjoint();
  CHECK(max_diff(cost_operator_factorized(sx, f)[0].matrix(), expected) < 1e-14);

  const std::vector<PairCost> two{abs_diff_power(1.0), abs_diff_power(1.0)};
  CHECK_THROWS_AS(cost_operator_factorized(ObservableSet::sigma_z(), two), InvalidArgument);
}

TEST_CASE("cost operators are PSD for nonnegative costs") {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = 1 + static_cast<std::size_t>(trial % 2);
    std::vector<HermitianMatrix> obs;
    for (std::size_t i = 0; i < k; ++i) obs.push_back(random_hermitian(2, rng));
    const double p = uniform(rng, 1.0, 3.0);
    const ObservableSet set(obs);
    CHECK(cost_operator_general(set, ClassicalCost::lp_power(k, p)).min_eigenvalue() >= -1e-10);
    CHECK(cost_operator_general(set, ClassicalCost::euclidean_power(k, p)).min_eigenvalue() >= -1e-10);
  }
}

TEST_CASE("factorized sum matches general builder") {
  Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = 1 + static_cast<std::size_t>(trial % 3);
    std::vector<HermitianMatrix> obs;
    for (std::size_t i = 0; i < k; ++i) obs.push_back(random_hermitian(2, rng));
    const double p = uniform(rng, 1.0, 3.0);
    const ObservableSet set(obs);
    const std::vector<PairCost> per(k, abs_diff_power(p));
    const auto factors = cost_operator_factorized(set, per);
    CHECK(max_diff(embed_factor_sum(factors), cost_operator_general(set, ClassicalCost::lp_power(k, p))) <=
          1e-10);
  }
}

TEST_CASE("symmetric cost") {
  CHECK(max_diff(cost_symm(2.0).matrix(),
                 real_matrix({{4, 0, 0, -4}, {0, 8, 0, 0}, {0, 0, 8, 0}, {-4, 0, 0, 4}})) == 0.0);
  CHECK(max_diff(cost_symm(1.0).matrix(),
                 real_matrix({{2, 0, 0, -2}, {0, 4, 0, 0}, {0, 0, 4, 0}, {-2, 0, 0, 2}})) == 0.0);
  const auto spec = eig_hermitian(cost_symm(2.0));
  REQUIRE(spec.size() == 2);
  CHECK(spec.eigenvalues[0] == doctest::Approx(0.0));
  CHECK(spec.eigenvalues[1] == doctest::Approx(8.0));
  CHECK(spec.projectors[1].trace() == doctest::Approx(3.0));
  CHECK_THROWS_AS(cost_symm(0.5), InvalidArgument);

  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    CAPTURE(p);
    CHECK(max_diff(cost_symm(p), cost_symm_by_calculus(p)) <= 1e-10);
    const std::vector<PairCost> per(3, abs_diff_power(p));
    CHECK(max_diff(sum_factors(cost_operator_factorized(ObservableSet::pauli_triple(), per)), cost_symm(p)) <=
          1e-10);
  }
}

TEST_CASE("single observable cost") {
  CHECK(max_diff(cost_z(1.0), HermitianMatrix::diagonal({0, 2, 2, 0})) == 0.0);
  CHECK(max_diff(cost_z(2.0), HermitianMatrix::diagonal({0, 4, 4, 0})) == 0.0);
  const ComplexVector id = vectorize(ComplexMatrix::Identity(2, 2));
  CHECK(std::abs(id.dot(cost_z(2.0).matrix() * id)) == 0.0);
  CHECK_THROWS_AS(cost_z(0.9), InvalidArgument);
}

TEST_CASE("unitary invariance") {
  Rng rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    CHECK(check_unitary_invariance(cost_symm(2.0), random_unitary(2, rng)) <= 1e-10);
    CHECK(check_unitary_invariance(cost_z(2.0), rotation_z(uniform(rng, 0.0, 6.3))) <= 1e-10);
  }
  CHECK(check_unitary_invariance(cost_z(2.0), hadamard()) == doctest::Approx(4.0));
  CHECK_THROWS_AS(check_unitary_invariance(cost_z(2.0), 2.0 * ComplexMatrix::Identity(2, 2)),
                  InvalidArgument);
}

TEST_CASE("swap transposition") {
  for (double p : {1.0, 1.5, 2.0}) {
    CHECK(max_diff(swap_transpose(cost_symm(p)), cost_symm(p)) < 1e-14);
    CHECK(max_diff(swap_transpose(cost_z(p)), cost_z(p)) < 1e-14);
  }
  Rng rng(3);
  const HermitianMatrix a = random_hermitian(2, rng);
  const HermitianMatrix b = random_hermitian(2, rng);
  CHECK(max_diff(swap_transpose(kron(a, transpose_entrywise(b))), kron(b, transpose_entrywise(a))) <
        1e-14);
  const HermitianMatrix m = random_hermitian(4, rng);
  CHECK(max_diff(swap_transpose(swap_transpose(m)), m) < 1e-14);
}

TEST_CASE("abs power") {
  CHECK(max_diff(abs_power(pauli_z(), 3.0), HermitianMatrix::identity(2)) < 1e-14);
  CHECK(max_diff(abs_power(HermitianMatrix::diagonal({-2, 0, 3}), 2.0),
                 HermitianMatrix::diagonal({4, 0, 9})) < 1e-13);
}

}  // TEST_SUITE
