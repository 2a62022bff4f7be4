#include "qwass/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "qwass/errors.hpp"

namespace qwass {

namespace {

constexpr double kRankTolerance = 1e-10;
constexpr double kStepFraction = 0.98;
constexpr double kMuFloor = 1e-12;
constexpr double kMaxSchurCondition = 1e14;
constexpr double kSchurBackwardError = 1e-10;
constexpr double kSchurShiftStart = 1e-14;
constexpr double kSchurShiftMax = 1e-8;
constexpr int kRefinementSteps = 2;
constexpr double kDivergenceBound = 1e12;
// A stalled solve still reports optimal when its best feasible iterate is
// within this factor of tol_gap, and never looser than kLooseGap.
constexpr double kStallGapFactor = 10.0;
constexpr double kLooseGap = 1e-7;

/// Orthonormal real coordinates of a Hermitian matrix: diagonal entries
/// followed by sqrt(2) Re and sqrt(2) Im of the strict upper triangle.
Eigen::VectorXd svec(const ComplexMatrix& a) {
  const Index n = a.rows();
  Eigen::VectorXd v(n * n);
  Index pos = 0;
  for (Index i = 0; i < n; ++i) v(pos++) = a(i, i).real();
  const double r2 = std::sqrt(2.0);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < j; ++i) {
      v(pos++) = r2 * a(i, j).real();
      v(pos++) = r2 * a(i, j).imag();
    }
  }
  return v;
}

double inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.array() * b.conjugate().array()).sum().real();
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double max_abs(const Eigen::VectorXd& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

/// Largest alpha with L L^* + alpha * d >= 0, capped at 1 / kStepFraction.
double max_step(const Eigen::LLT<ComplexMatrix>& chol, const ComplexMatrix& d) {
  const auto l = chol.matrixL();
  ComplexMatrix t = l.solve(d);
  t = l.solve(ComplexMatrix(t.adjoint()));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian_part(t), Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("step length eigensolve failed");
  const double lo = eig.eigenvalues()(0);
  if (lo >= 0.0) return std::numeric_limits<double>::infinity();
  return -1.0 / lo;
}

struct Direction {
  ComplexMatrix dx;
  Eigen::VectorXd dy;
  ComplexMatrix ds;
};

}  // namespace

std::string to_string(SdpStatus status) {
  switch (status) {
    case SdpStatus::optimal: return "optimal";
    case SdpStatus::max_iter: return "max_iter";
    case SdpStatus::infeasible: return "infeasible";
    case SdpStatus::numerical: return "numerical";
  }
  return "unknown";
}

void SdpProblem::validate() const {
  if (dim() == 0) throw InvalidArgument("SDP objective must be non-empty");
  if (constraints.empty()) throw InvalidArgument("SDP needs at least one equality constraint");
  for (const auto& c : constraints) {
    if (c.a.dim() != dim()) throw InvalidArgument("SDP constraint dimension mismatch");
    if (!std::isfinite(c.b)) throw InvalidArgument("SDP right-hand side must be finite");
  }
}

PreprocessResult preprocess(const SdpProblem& problem) {
  problem.validate();
  const std::size_t m = problem.constraints.size();
  const Index len = problem.dim() * problem.dim();

  PreprocessResult out;
  out.problem.objective = problem.objective;

  // Incremental modified Gram-Schmidt with one reorthogonalization pass:
  // kept rows = Q R, with R upper triangular.
  Eigen::MatrixXd q(len, 0);
  Eigen::MatrixXd r(0, 0);
  Eigen::VectorXd kept_b(0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& con = problem.constraints[i];
    const Eigen::VectorXd a = svec(con.a.matrix());
    const double norm = a.norm();
    const Index k = q.cols();
    Eigen::VectorXd coeff = Eigen::VectorXd::Zero(k);
    Eigen::VectorXd res = a;
    for (int pass = 0; pass < 2; ++pass) {
      for (Index j = 0; j < k; ++j) {
        const double t = q.col(j).dot(res);
        coeff(j) += t;
        res -= t * q.col(j);
      }
    }
    const double res_norm = res.norm();
    if (norm == 0.0 || res_norm <= kRankTolerance * norm) {
      out.report.removed.push_back(i);
      // a = Q coeff = K R^{-1} coeff, so b must match (R^{-1} coeff) . kept_b.
      double predicted = 0.0;
      if (k > 0) {
        const Eigen::VectorXd c = r.triangularView<Eigen::Upper>().solve(coeff);
        predicted = c.dot(kept_b);
      }
      const double scale = 1.0 + std::abs(con.b) + (k > 0 ? max_abs(kept_b) : 0.0);
      if (std::abs(predicted - con.b) > 1e-8 * scale) out.report.consistent = false;
      continue;
    }
    q.conservativeResize(Eigen::NoChange, k + 1);
    q.col(k) = res / res_norm;
    Eigen::MatrixXd r_new = Eigen::MatrixXd::Zero(k + 1, k + 1);
    r_new.topLeftCorner(k, k) = r;
    r_new.col(k).head(k) = coeff;
    r_new(k, k) = res_norm;
    r = std::move(r_new);
    kept_b.conservativeResize(k + 1);
    kept_b(k) = con.b;
    out.kept.push_back(i);
    out.problem.constraints.push_back(con);
  }
  out.report.rank = out.kept.size();
  return out;
}

SdpSolution solve(const SdpProblem& problem, const SdpOptions& options) {
  problem.validate();
  const Index n = problem.dim();
  if (n > kMaxSdpDimension) {
    throw InvalidArgument("SDP dimension " + std::to_string(n) + " exceeds " +
                          std::to_string(kMaxSdpDimension));
  }

  PreprocessResult pre = preprocess(problem);
  SdpSolution sol;
  sol.preprocess = pre.report;
  sol.y = Eigen::VectorXd::Zero(static_cast<Index>(problem.constraints.size()));
  if (!pre.report.consistent) {
    sol.status = SdpStatus::infeasible;
    sol.x = HermitianMatrix::zero(n);
    sol.s = HermitianMatrix::zero(n);
    return sol;
  }

  const auto m = static_cast<Index>(pre.problem.constraints.size());
  const ComplexMatrix& c = pre.problem.objective.matrix();
  std::vector<ComplexMatrix> a;
  a.reserve(static_cast<std::size_t>(m));
  Eigen::VectorXd b(m);
  for (Index i = 0; i < m; ++i) {
    a.push_back(pre.problem.constraints[static_cast<std::size_t>(i)].a.matrix());
    b(i) = pre.problem.constraints[static_cast<std::size_t>(i)].b;
  }
  auto apply_a = [&](const ComplexMatrix& x) {
    Eigen::VectorXd out(m);
    for (Index i = 0; i < m; ++i) out(i) = inner(a[static_cast<std::size_t>(i)], x);
    return out;
  };
  auto apply_at = [&](const Eigen::VectorXd& y) {
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (Index i = 0; i < m; ++i) out += y(i) * a[static_cast<std::size_t>(i)];
    return out;
  };

  const double tau = std::max(1.0, max_abs(c));
  ComplexMatrix x = tau * ComplexMatrix::Identity(n, n);
  ComplexMatrix s = tau * ComplexMatrix::Identity(n, n);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  const double dn = static_cast<double>(n);

  // Best iterate that is feasible within tol_feas, ranked by relative gap.
  struct Snapshot {
    ComplexMatrix x, s;
    Eigen::VectorXd y;
    double gap = std::numeric_limits<double>::infinity();
  } best;
  const double stall_gap = std::min(kLooseGap, kStallGapFactor * options.tol_gap);

  auto finish = [&](SdpStatus status, int iterations, const char* why = "") {
    std::string message = why;
    if ((status == SdpStatus::numerical || status == SdpStatus::max_iter) && best.gap <= stall_gap) {
      x = best.x;
      s = best.s;
      y = best.y;
      message = std::string("reduced accuracy after stall (") + why + ")";
      status = SdpStatus::optimal;
      why = message.c_str();
    }
    sol.status = status;
    sol.message = message;
    if (options.trace != nullptr && *why != '\0') *options.trace << "stop: " << why << '\n';
    sol.iterations = iterations;
    sol.x = HermitianMatrix(hermitian_part(x));
    sol.s = HermitianMatrix(hermitian_part(s));
    for (Index i = 0; i < m; ++i) sol.y(static_cast<Index>(pre.kept[static_cast<std::size_t>(i)])) = y(i);
    sol.primal_obj = inner(c, x);
    sol.dual_obj = b.dot(y);
    sol.gap = std::abs(sol.primal_obj - sol.dual_obj);
    return sol;
  };

  double last_ap = 0.0;
  double last_ad = 0.0;
  for (int iter = 0; iter <= options.max_iter; ++iter) {
    const Eigen::VectorXd rp = b - apply_a(x);
    const ComplexMatrix rd = c - s - apply_at(y);
    const double pobj = inner(c, x);
    const double dobj = b.dot(y);
    const double xs = inner(x, s);
    const double mu = xs / dn;
    const double pinf = max_abs(rp);
    const double dinf = max_abs(rd);
    const double scale = std::max(1.0, std::abs(pobj));
    const double rel_gap = std::abs(pobj - dobj) / scale;

    if (options.trace != nullptr) {
      char line[256];
      std::snprintf(line, sizeof line,
                    "iter=%3d mu=%.3e pinf=%.3e dinf=%.3e pobj=%.12g dobj=%.12g ap=%.3f ad=%.3f\n",
                    iter, mu, pinf, dinf, pobj, dobj, last_ap, last_ad);
      *options.trace << line;
    }

    if (pinf <= options.tol_feas && dinf <= options.tol_feas && rel_gap <= options.tol_gap &&
        xs / scale <= options.tol_gap) {
      return finish(SdpStatus::optimal, iter);
    }
    if (pinf <= options.tol_feas && dinf <= options.tol_feas) {
      const double worst = std::max(rel_gap, xs / scale);
      if (worst < best.gap) best = {x, s, y, worst};
    }
    if (iter == options.max_iter) return finish(SdpStatus::max_iter, iter);
    if (max_abs(x) > kDivergenceBound || max_abs(y) > kDivergenceBound) {
      return finish(SdpStatus::infeasible, iter);
    }

    // Nesterov-Todd scaling: W = G G^*, G^{-1} X G^{-*} = G^* S G = diag(lambda).
    Eigen::LLT<ComplexMatrix> chol_x(x);
    Eigen::LLT<ComplexMatrix> chol_s(s);
    if (chol_x.info() != Eigen::Success || chol_s.info() != Eigen::Success) {
      return finish(SdpStatus::numerical, iter, "Cholesky factorization of X or S failed");
    }
    const ComplexMatrix lx = chol_x.matrixL();
    const ComplexMatrix ls = chol_s.matrixL();
    Eigen::JacobiSVD<ComplexMatrix> svd(ls.adjoint() * lx, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd lambda = svd.singularValues();
    if (lambda.minCoeff() <= 0.0 || !lambda.allFinite()) return finish(SdpStatus::numerical, iter, "degenerate scaling point");
    const Eigen::VectorXd inv_sqrt = lambda.cwiseSqrt().cwiseInverse();
    const ComplexMatrix g = lx * svd.matrixV() * inv_sqrt.asDiagonal();
    const ComplexMatrix g_inv =
        lambda.cwiseSqrt().asDiagonal() *
        ComplexMatrix(svd.matrixV().adjoint() * chol_x.matrixL().solve(ComplexMatrix::Identity(n, n)));
    const ComplexMatrix w = hermitian_part(g * g.adjoint());

    // Schur complement M_ij = <A_i, W A_j W>.
    std::vector<ComplexMatrix> waw;
    waw.reserve(static_cast<std::size_t>(m));
    for (Index j = 0; j < m; ++j) waw.push_back(w * a[static_cast<std::size_t>(j)] * w);
    Eigen::MatrixXd schur(m, m);
    for (Index i = 0; i < m; ++i) {
      for (Index j = 0; j <= i; ++j) {
        const double v = inner(a[static_cast<std::size_t>(i)], waw[static_cast<std::size_t>(j)]);
        schur(i, j) = v;
        schur(j, i) = v;
      }
    }
    // Degenerate optimal faces drive cond(M) up like 1/mu^2 while the
    // Newton directions stay usable, so a large condition number switches
    // on iterative refinement and a backward-error test instead of stopping.
    const Eigen::VectorXd diag = schur.diagonal();
    if (!(diag.minCoeff() > 0.0)) {
      return finish(SdpStatus::numerical, iter, "Schur complement has a nonpositive diagonal");
    }
    const Eigen::VectorXd equil = diag.cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXd scaled = equil.asDiagonal() * schur * equil.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> schur_eig(scaled, Eigen::EigenvaluesOnly);
    const double ev_lo = schur_eig.eigenvalues()(0);
    sol.schur_condition = ev_lo > 0.0 ? schur_eig.eigenvalues()(m - 1) / ev_lo
                                      : std::numeric_limits<double>::infinity();
    // The equilibrated matrix has unit diagonal. If it is numerically
    // singular, retry with a growing diagonal shift; refinement against the
    // unshifted matrix then recovers accuracy on the well-determined part.
    Eigen::LLT<Eigen::MatrixXd> schur_llt(scaled);
    double shift = 0.0;
    while (schur_llt.info() != Eigen::Success) {
      shift = shift == 0.0 ? kSchurShiftStart : shift * 100.0;
      if (shift > kSchurShiftMax) {
        return finish(SdpStatus::numerical, iter, "Schur complement factorization failed");
      }
      schur_llt.compute(scaled + shift * Eigen::MatrixXd::Identity(m, m));
    }
    const bool check_solves = shift > 0.0 || sol.schur_condition > kMaxSchurCondition;
    auto schur_solve = [&](const Eigen::VectorXd& rhs) -> Eigen::VectorXd {
      return equil.cwiseProduct(schur_llt.solve(Eigen::VectorXd(equil.cwiseProduct(rhs))));
    };
    bool solve_failed = false;

    const ComplexMatrix wrdw = w * rd * w;
    auto direction = [&](const ComplexMatrix& rc) {
      Direction d;
      const ComplexMatrix h = rc - wrdw;
      const Eigen::VectorXd rhs = rp - apply_a(h);
      d.dy = schur_solve(rhs);
      if (check_solves) {
        // Iterative refinement, then the backward-error test.
        for (int k = 0; k < kRefinementSteps; ++k) {
          d.dy += schur_solve(Eigen::VectorXd(rhs - schur * d.dy));
        }
        const double err = (rhs - schur * d.dy).norm();
        if (!(err <= kSchurBackwardError * (schur.norm() * d.dy.norm() + rhs.norm()))) {
          solve_failed = true;
        }
      }
      d.ds = hermitian_part(rd - apply_at(d.dy));
      d.dx = hermitian_part(rc - w * d.ds * w);
      return d;
    };

    // Predictor (affine scaling): dX + W dS W = -X.
    const Direction pred = direction(-x);
    if (solve_failed) return finish(SdpStatus::numerical, iter, "inaccurate Schur complement solve");
    const double ap_aff = std::min(1.0, max_step(chol_x, pred.dx));
    const double ad_aff = std::min(1.0, max_step(chol_s, pred.ds));
    const double mu_aff = inner(x + ap_aff * pred.dx, s + ad_aff * pred.ds) / dn;
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);
    double target = sigma * mu;
    if (mu > kMuFloor) target = std::max(target, kMuFloor);

    // Corrector in the scaled space, where the complementarity map is
    // Z -> (V Z + Z V) / 2 with V = diag(lambda).
    const ComplexMatrix dx_scaled = g_inv * pred.dx * g_inv.adjoint();
    const ComplexMatrix ds_scaled = g.adjoint() * pred.ds * g;
    const ComplexMatrix second_order = 0.5 * (dx_scaled * ds_scaled + ds_scaled * dx_scaled);
    ComplexMatrix rc_scaled(n, n);
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) {
        Complex rhs = -second_order(i, j);
        if (i == j) rhs += target - lambda(i) * lambda(i);
        rc_scaled(i, j) = 2.0 * rhs / (lambda(i) + lambda(j));
      }
    }
    const Direction corr = direction(hermitian_part(g * rc_scaled * g.adjoint()));

    if (solve_failed) return finish(SdpStatus::numerical, iter, "inaccurate Schur complement solve");
    const double ap = std::min(1.0, kStepFraction * max_step(chol_x, corr.dx));
    const double ad = std::min(1.0, kStepFraction * max_step(chol_s, corr.ds));
    last_ap = ap;
    last_ad = ad;
    x = hermitian_part(x + ap * corr.dx);
    y += ad * corr.dy;
    s = hermitian_part(s + ad * corr.ds);
  }
  return finish(SdpStatus::max_iter, options.max_iter);
}

SdpCertificate certify(const SdpSolution& solution, const SdpProblem& problem,
                       const SdpTolerances& tol) {
  problem.validate();
  SdpCertificate cert;
  const ComplexMatrix& x = solution.x.matrix();
  if (solution.x.dim() != problem.dim() || solution.s.dim() != problem.dim() ||
      solution.y.size() != static_cast<Index>(problem.constraints.size())) {
    throw InvalidArgument("certify: solution does not match the problem dimensions");
  }
  ComplexMatrix dual_res = problem.objective.matrix() - solution.s.matrix();
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    const auto& con = problem.constraints[i];
    const double r = inner(con.a.matrix(), x) - con.b;
    cert.primal_residuals.push_back(r);
    cert.max_primal_residual = std::max(cert.max_primal_residual, std::abs(r));
    dual_res -= solution.y(static_cast<Index>(i)) * con.a.matrix();
    cert.dual_obj += solution.y(static_cast<Index>(i)) * con.b;
  }
  cert.dual_residual = HermitianMatrix(hermitian_part(dual_res)).operator_norm();
  cert.min_eig_x = solution.x.min_eigenvalue();
  cert.min_eig_s = solution.s.min_eigenvalue();
  cert.primal_obj = problem.objective.inner(solution.x);
  cert.relative_gap =
      std::abs(cert.primal_obj - cert.dual_obj) / std::max(1.0, std::abs(cert.primal_obj));
  cert.passed = solution.status == SdpStatus::optimal &&
                cert.max_primal_residual <= tol.primal_feas && cert.dual_residual <= tol.dual_feas &&
                cert.min_eig_x >= -tol.psd && cert.min_eig_s >= -tol.psd &&
                cert.relative_gap <= tol.relative_gap;
  return cert;
}

}  // namespace qwass
