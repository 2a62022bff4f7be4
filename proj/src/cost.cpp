#include "qwass/cost.hpp"

#include <cmath>
#include <string>

#include "qwass/errors.hpp"

namespace qwass {

namespace {

void require_exponent(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw InvalidArgument("cost exponent p must be a finite real >= 1, got " + std::to_string(p));
  }
}

Index checked_power(Index base, std::size_t count, Index max_dim) {
  Index n = 1;
  for (std::size_t i = 0; i < count; ++i) {
    if (n > max_dim / base) {
      throw DimensionBudgetError("cost operator dimension exceeds budget " +
                                 std::to_string(max_dim));
    }
    n *= base;
  }
  if (n > max_dim) {
    throw DimensionBudgetError("cost operator dimension " + std::to_string(n) +
                               " exceeds budget " + std::to_string(max_dim));
  }
  return n;
}

}  // namespace

ClassicalCost ClassicalCost::lp_power(std::size_t arity, double p) {
  require_exponent(p);
  return {arity, [p](std::span<const double> x, std::span<const double> y) {
            double sum = 0.0;
            for (std::size_t k = 0; k < x.size(); ++k) sum += std::pow(std::abs(x[k] - y[k]), p);
            return sum;
          }};
}

ClassicalCost ClassicalCost::euclidean_power(std::size_t arity, double p) {
  require_exponent(p);
  return {arity, [p](std::span<const double> x, std::span<const double> y) {
            double sq = 0.0;
            for (std::size_t k = 0; k < x.size(); ++k) sq += (x[k] - y[k]) * (x[k] - y[k]);
            return std::pow(sq, 0.5 * p);
          }};
}

ClassicalCost ClassicalCost::zero(std::size_t arity) {
  return {arity, [](std::span<const double>, std::span<const double>) { return 0.0; }};
}

PairCost abs_diff_power(double p) {
  require_exponent(p);
  return [p](double x, double y) { return std::pow(std::abs(x - y), p); };
}

ObservableSet::ObservableSet(std::vector<HermitianMatrix> observables)
    : observables_(std::move(observables)) {
  if (observables_.empty()) throw InvalidArgument("observable set must be nonempty");
  dim_ = observables_.front().dim();
  for (const auto& a : observables_) {
    if (a.dim() != dim_) throw InvalidArgument("observables must share one dimension");
    spectra_.push_back(eig_hermitian(a));
  }
}

ObservableSet ObservableSet::pauli_triple() {
  return ObservableSet({pauli_x(), pauli_y(), pauli_z()});
}

ObservableSet ObservableSet::sigma_z() { return ObservableSet({pauli_z()}); }

HermitianMatrix cost_operator_general(const ObservableSet& obs, const ClassicalCost& cost,
                                      Index max_dim) {
  const std::size_t K = obs.size();
  if (cost.arity != K) {
    throw InvalidArgument("classical cost arity " + std::to_string(cost.arity) +
                          " does not match " + std::to_string(K) + " observables");
  }
  const Index d = obs.dim();
  const Index n = checked_power(d * d, K, max_dim);

  // Pair blocks P_k(y) (x) P_k(x)^T for every factor, indexed by (iy, ix).
  std::vector<std::vector<ComplexMatrix>> blocks(K);
  std::vector<std::size_t> counts(K);
  for (std::size_t k = 0; k < K; ++k) {
    const auto& spec = obs.spectrum(k);
    counts[k] = spec.size();
    for (std::size_t iy = 0; iy < spec.size(); ++iy) {
      for (std::size_t ix = 0; ix < spec.size(); ++ix) {
        blocks[k].push_back(kron(spec.projectors[iy].matrix(),
                                 ComplexMatrix(spec.projectors[ix].matrix().transpose())));
      }
    }
  }

  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  std::vector<std::size_t> iy(K, 0), ix(K, 0);
  std::vector<double> x(K), y(K);
  while (true) {
    for (std::size_t k = 0; k < K; ++k) {
      x[k] = obs.spectrum(k).eigenvalues[ix[k]];
      y[k] = obs.spectrum(k).eigenvalues[iy[k]];
    }
    const double w = cost.evaluate(x, y);
    if (!(w >= 0.0)) throw InvalidArgument("classical cost must be nonnegative and finite");
    if (w != 0.0) {
      ComplexMatrix term = blocks[0][iy[0] * counts[0] + ix[0]];
      for (std::size_t k = 1; k < K; ++k) term = kron(term, blocks[k][iy[k] * counts[k] + ix[k]]);
      out += w * term;
    }
    // Odometer over (iy_k, ix_k) for all k.
    std::size_t k = K;
    while (k-- > 0) {
      if (++ix[k] < counts[k]) break;
      ix[k] = 0;
      if (++iy[k] < counts[k]) break;
      iy[k] = 0;
    }
    if (k == static_cast<std::size_t>(-1)) break;
  }
  return HermitianMatrix(out);
}

std::vector<HermitianMatrix> cost_operator_factorized(const ObservableSet& obs,
                                                      std::span<const PairCost> per_factor) {
  if (per_factor.size() != obs.size()) {
    throw InvalidArgument("factorized cost needs one pair cost per observable (" +
                          std::to_string(obs.size()) + "), got " +
                          std::to_string(per_factor.size()));
  }
  std::vector<HermitianMatrix> out;
  out.reserve(obs.size());
  const Index d = obs.dim();
  for (std::size_t k = 0; k < obs.size(); ++k) {
    const auto& spec = obs.spectrum(k);
    ComplexMatrix ck = ComplexMatrix::Zero(d * d, d * d);
    for (std::size_t iy = 0; iy < spec.size(); ++iy) {
      for (std::size_t ix = 0; ix < spec.size(); ++ix) {
        const double w = per_factor[k](spec.eigenvalues[ix], spec.eigenvalues[iy]);
        if (!(w >= 0.0)) throw InvalidArgument("pair cost must be nonnegative and finite");
        if (w == 0.0) continue;
        ck += w * kron(spec.projectors[iy].matrix(),
                       ComplexMatrix(spec.projectors[ix].matrix().transpose()));
      }
    }
    out.emplace_back(ck);
  }
  return out;
}

HermitianMatrix embed_factor_sum(std::span<const HermitianMatrix> factors, Index max_dim) {
  if (factors.empty()) throw InvalidArgument("embed_factor_sum needs at least one factor");
  const Index block = factors.front().dim();
  for (const auto& c : factors) {
    if (c.dim() != block) throw InvalidArgument("factor cost operators must share one dimension");
  }
  const std::size_t K = factors.size();
  const Index n = checked_power(block, K, max_dim);
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < K; ++k) out += embed(factors[k].matrix(), block, k, K - k - 1);
  return HermitianMatrix(out);
}

HermitianMatrix sum_factors(std::span<const HermitianMatrix> factors) {
  if (factors.empty()) throw InvalidArgument("sum_factors needs at least one factor");
  HermitianMatrix out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out += factors[k];
  return out;
}

HermitianMatrix abs_power(const HermitianMatrix& m, double p) {
  return apply_function(eig_hermitian(m), [p](double x) { return std::pow(std::abs(x), p); });
}

HermitianMatrix cost_symm(double p) {
  require_exponent(p);
  const double a = std::pow(2.0, p);
  ComplexMatrix c = ComplexMatrix::Zero(4, 4);
  c(0, 0) = a;
  c(0, 3) = -a;
  c(1, 1) = 2.0 * a;
  c(2, 2) = 2.0 * a;
  c(3, 0) = -a;
  c(3, 3) = a;
  return HermitianMatrix(c);
}

HermitianMatrix cost_symm_by_calculus(double p) {
  require_exponent(p);
  const auto id = HermitianMatrix::identity(2);
  HermitianMatrix out = HermitianMatrix::zero(4);
  for (const auto& s : {pauli_x(), pauli_y(), pauli_z()}) {
    out += abs_power(kron(s, id) - kron(id, transpose_entrywise(s)), p);
  }
  return out;
}

HermitianMatrix cost_z(double p) {
  require_exponent(p);
  const double a = std::pow(2.0, p);
  return HermitianMatrix::diagonal({0.0, a, a, 0.0});
}

double check_unitary_invariance(const HermitianMatrix& c, const ComplexMatrix& u) {
  if (unitarity_defect(u) > 1e-10) throw InvalidArgument("matrix is not unitary within 1e-10");
  if (c.dim() != u.rows() * u.rows()) {
    throw InvalidArgument("cost operator dimension does not match the unitary");
  }
  const ComplexMatrix v = kron(u, ComplexMatrix(u.conjugate()));
  const ComplexMatrix rotated = v * c.matrix() * v.adjoint();
  const ComplexMatrix diff = rotated - c.matrix();
  return HermitianMatrix(ComplexMatrix(0.5 * (diff + diff.adjoint()))).operator_norm();
}

HermitianMatrix swap_transpose(const HermitianMatrix& m) {
  const Index n = m.dim();
  const auto d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(n))));
  if (d * d != n) throw InvalidArgument("swap_transpose expects an operator on H (x) H*");
  // (A (x) B^T)[(i,j),(k,l)] = A_ik B_lj  maps to  (B (x) A^T)[(i,j),(k,l)] = B_ik A_lj.
  ComplexMatrix out(n, n);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      for (Index k = 0; k < d; ++k) {
        for (Index l = 0; l < d; ++l) out(i * d + j, k * d + l) = m(l * d + k, j * d + i);
      }
    }
  }
  return HermitianMatrix(out);
}

}  // namespace qwass
