#include "qwass/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qwass/errors.hpp"

namespace qwass {

namespace {

constexpr double kBlochTolerance = 1e-12;
constexpr double kCollinearTolerance = 1e-10;

void require_unit_interval(double a, const char* name) {
  if (!(std::abs(a) <= 1.0)) throw InvalidArgument(std::string(name) + " must lie in [-1, 1]");
}

void require_mixed(double a, const char* name) {
  if (!(std::abs(a) < 1.0)) {
    throw InvalidArgument(std::string(name) +
                          " must satisfy |.| < 1: no closed-form potentials for pure states");
  }
}

void require_exponent(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("p must be a finite real >= 1");
}

void require_collinear(const BlochVector& a, const BlochVector& b) {
  const auto& u = a.r;
  const auto& v = b.r;
  const double cx = u[1] * v[2] - u[2] * v[1];
  const double cy = u[2] * v[0] - u[0] * v[2];
  const double cz = u[0] * v[1] - u[1] * v[0];
  if (std::sqrt(cx * cx + cy * cy + cz * cz) > kCollinearTolerance) {
    throw InvalidArgument("Bloch vectors must be collinear");
  }
}

/// sqrt((1 + r1.r2 / max(|r1|,|r2|)) (1 - max(|r1|,|r2|))), with the ratio
/// taken as 0 when both vectors vanish.
double overlap_term(const BlochVector& r1, const BlochVector& r2) {
  const double m = std::max(r1.norm(), r2.norm());
  const double ratio = m > 0.0 ? r1.dot(r2) / m : 0.0;
  return std::sqrt(std::max(0.0, (1.0 + ratio) * (1.0 - m)));
}

double distance(const BlochVector& a, const BlochVector& b) {
  double sq = 0.0;
  for (int k = 0; k < 3; ++k) sq += (a.r[k] - b.r[k]) * (a.r[k] - b.r[k]);
  return std::sqrt(sq);
}

HermitianMatrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Index>(rows.size());
  ComplexMatrix m(n, n);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return HermitianMatrix(m);
}

Coupling make_coupling(HermitianMatrix m, DensityMatrix rho, DensityMatrix omega) {
  return {std::move(m), FactorShape::uniform(2, 2), std::move(rho), std::move(omega)};
}

}  // namespace

double BlochVector::norm() const { return std::sqrt(dot(*this)); }

double BlochVector::dot(const BlochVector& other) const {
  return r[0] * other.r[0] + r[1] * other.r[1] + r[2] * other.r[2];
}

DensityMatrix state_from_bloch(const BlochVector& v) {
  if (!(v.norm() <= 1.0 + kBlochTolerance)) {
    throw InvalidArgument("Bloch vector norm " + std::to_string(v.norm()) + " exceeds 1");
  }
  ComplexMatrix m = 0.5 * ComplexMatrix::Identity(2, 2);
  m += 0.5 * v.r[0] * pauli_x().matrix();
  m += 0.5 * v.r[1] * pauli_y().matrix();
  m += 0.5 * v.r[2] * pauli_z().matrix();
  return DensityMatrix(m);
}

DensityMatrix state_z(double a) { return state_from_bloch({{0.0, 0.0, a}}); }

DensityMatrix state_x(double a) { return state_from_bloch({{a, 0.0, 0.0}}); }

double d_symm_commuting(double alpha, double beta, double p) {
  require_exponent(p);
  require_unit_interval(alpha, "alpha");
  require_unit_interval(beta, "beta");
  const double lo = std::min(alpha, beta);
  const double hi = std::max(alpha, beta);
  return std::pow(2.0, p) *
         (1.0 + 0.5 * std::abs(alpha - beta) - std::sqrt((1.0 + lo) * (1.0 - hi)));
}

double d_symm_general(const BlochVector& r1, const BlochVector& r2, double p) {
  require_exponent(p);
  require_collinear(r1, r2);
  if (r1.norm() > 1.0 + kBlochTolerance || r2.norm() > 1.0 + kBlochTolerance) {
    throw InvalidArgument("Bloch vector norm exceeds 1");
  }
  return std::pow(2.0, p) * (1.0 + 0.5 * distance(r1, r2) - overlap_term(r1, r2));
}

Coupling coupling_symm_commuting(double alpha, double beta) {
  require_unit_interval(alpha, "alpha");
  require_unit_interval(beta, "beta");
  const double lo = std::min(alpha, beta);
  const double hi = std::max(alpha, beta);
  const double s = std::sqrt((1.0 + lo) * (1.0 - hi));
  HermitianMatrix m = 0.5 * real_matrix({{1.0 + lo, 0.0, 0.0, s},
                                         {0.0, std::max(beta - alpha, 0.0), 0.0, 0.0},
                                         {0.0, 0.0, std::max(alpha - beta, 0.0), 0.0},
                                         {s, 0.0, 0.0, 1.0 - hi}});
  return make_coupling(std::move(m), state_z(alpha), state_z(beta));
}

std::vector<DualPotentials> potentials_symm_commuting(double alpha, double beta, double p) {
  require_exponent(p);
  require_mixed(alpha, "alpha");
  require_mixed(beta, "beta");
  const double a = std::pow(2.0, p);
  DualPotentials first{{HermitianMatrix::diagonal({-a * std::sqrt((1.0 - beta) / (1.0 + alpha)) - a,
                                                   0.0})},
                       {HermitianMatrix::diagonal(
                           {2.0 * a, a - a * std::sqrt((1.0 + alpha) / (1.0 - beta))})}};
  DualPotentials second{{HermitianMatrix::diagonal(
                            {2.0 * a, a - a * std::sqrt((1.0 + beta) / (1.0 - alpha))})},
                        {HermitianMatrix::diagonal(
                            {-a * std::sqrt((1.0 - alpha) / (1.0 + beta)) - a, 0.0})}};
  return {first, second};
}

double divergence_symm_commuting(const BlochVector& r1, const BlochVector& r2) {
  require_collinear(r1, r2);
  const double n1 = r1.norm();
  const double n2 = r2.norm();
  if (n1 > 1.0 + kBlochTolerance || n2 > 1.0 + kBlochTolerance) {
    throw InvalidArgument("Bloch vector norm exceeds 1");
  }
  return 2.0 * (distance(r1, r2) + std::sqrt(std::max(0.0, 1.0 - n1 * n1)) +
                std::sqrt(std::max(0.0, 1.0 - n2 * n2)) - 2.0 * overlap_term(r1, r2));
}

double d_z_xy(double alpha, double beta, double p) {
  require_exponent(p);
  require_unit_interval(alpha, "alpha");
  require_unit_interval(beta, "beta");
  return std::pow(2.0, p - 1.0) * (1.0 - std::sqrt(1.0 - std::max(alpha * alpha, beta * beta)));
}

Coupling coupling_z_xy(double alpha, double beta) {
  require_unit_interval(alpha, "alpha");
  require_unit_interval(beta, "beta");
  if (alpha == 0.0 && beta == 0.0) {
    return make_coupling(HermitianMatrix::diagonal({0.5, 0.0, 0.0, 0.5}), state_x(alpha),
                         state_x(beta));
  }
  // Pi_+ scales by beta / alpha with s = sqrt(1 - alpha^2); Pi_- swaps the
  // roles of alpha and beta in s and in the ratio.
  const bool plus = std::abs(alpha) >= std::abs(beta);
  const double lead = plus ? alpha : beta;
  const double ratio = plus ? beta / alpha : alpha / beta;
  const double s = std::sqrt(1.0 - lead * lead);
  const double u = (1.0 + s) * ratio;
  const double v = (1.0 - s) * ratio;
  HermitianMatrix m = 0.25 * real_matrix({{1.0 + s, alpha, beta, u},
                                          {alpha, 1.0 - s, v, beta},
                                          {beta, v, 1.0 - s, alpha},
                                          {u, beta, alpha, 1.0 + s}});
  return make_coupling(std::move(m), state_x(alpha), state_x(beta));
}

std::vector<DualPotentials> potentials_z_xy(double alpha, double beta, double p) {
  require_exponent(p);
  const double m = std::max(std::abs(alpha), std::abs(beta));
  if (!(m < 1.0)) {
    throw InvalidArgument("potentials need max(|alpha|, |beta|) < 1: pure states have none in closed form");
  }
  const double scale = std::pow(2.0, p - 1.0);
  const double diag = scale * (1.0 - 1.0 / std::sqrt(1.0 - m * m));
  const double off = scale * std::sqrt(m * m / (1.0 - m * m));
  const HermitianMatrix plus = real_matrix({{diag, off}, {off, diag}});
  const HermitianMatrix minus = real_matrix({{diag, -off}, {-off, diag}});
  const HermitianMatrix zero = HermitianMatrix::zero(2);
  return {DualPotentials{{plus}, {zero}}, DualPotentials{{minus}, {zero}},
          DualPotentials{{zero}, {plus}}, DualPotentials{{zero}, {minus}}};
}

double divergence_z_xy(double r1, double r2) {
  if (!(r1 >= 0.0 && r1 <= 1.0 && r2 >= 0.0 && r2 <= 1.0)) {
    throw InvalidArgument("Bloch radii must lie in [0, 1]");
  }
  const double lo = std::min(r1, r2);
  const double hi = std::max(r1, r2);
  return std::sqrt(1.0 - lo * lo) - std::sqrt(1.0 - hi * hi);
}

double d_z_commuting(double alpha, double beta, double p) {
  require_exponent(p);
  require_unit_interval(alpha, "alpha");
  require_unit_interval(beta, "beta");
  return std::pow(2.0, p - 1.0) * std::abs(alpha - beta);
}

Coupling coupling_z_commuting(double alpha, double beta) {
  require_unit_interval(alpha, "alpha");
  require_unit_interval(beta, "beta");
  HermitianMatrix m = 0.5 * HermitianMatrix::diagonal({1.0 + std::min(alpha, beta),
                                                       std::max(beta - alpha, 0.0),
                                                       std::max(alpha - beta, 0.0),
                                                       1.0 - std::max(alpha, beta)});
  return make_coupling(std::move(m), state_z(alpha), state_z(beta));
}

std::vector<DualPotentials> potentials_z_commuting(double p) {
  require_exponent(p);
  const HermitianMatrix x = HermitianMatrix::diagonal({std::pow(2.0, p), 0.0});
  return {DualPotentials{{x}, {-x}}, DualPotentials{{-x}, {x}}};
}

double divergence_z_commuting(double alpha, double beta) {
  require_unit_interval(alpha, "alpha");
  require_unit_interval(beta, "beta");
  return 2.0 * std::abs(alpha - beta);
}

double best_dual_objective(const std::vector<DualPotentials>& candidates,
                           const DensityMatrix& rho, const DensityMatrix& omega) {
  if (candidates.empty()) throw InvalidArgument("no candidate potentials");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) best = std::max(best, dual_objective(c, rho, omega));
  return best;
}

double triangle_margin_symm(double alpha, double beta, double gamma) {
  auto d2 = [](double a, double b) {
    return divergence_symm_commuting({{0.0, 0.0, a}}, {{0.0, 0.0, b}});
  };
  return d2(alpha, beta) + d2(beta, gamma) - d2(alpha, gamma);
}

double triangle_margin_z(double r_rho, double r_sigma, double r_omega) {
  return divergence_z_xy(r_rho, r_sigma) + divergence_z_xy(r_sigma, r_omega) -
         divergence_z_xy(r_rho, r_omega);
}

}  // namespace qwass
