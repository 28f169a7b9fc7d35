#include "sprgeo/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sprgeo {

namespace {

void require_hurwitz(const Polynomial& a, const Tolerances& tol) {
  if (!hurwitz_stable(a, tol)) {
    throw std::invalid_argument("denominator " + a.to_string() + " is not Hurwitz");
  }
}

void require_monic_numerator(const Polynomial& x, int degree) {
  if (x.degree() != degree || std::abs(x.leading() - 1.0) > 1e-12) {
    throw std::invalid_argument("expected a monic numerator of degree " +
                                std::to_string(degree));
  }
}

Eigen::MatrixXd ehe_block(const Polynomial& a) {
  const StructuredMatrices m = build_matrices(a);
  return m.A.bottomRightCorner(a.degree(), a.degree());
}

Polynomial monic_from_tail(const Eigen::VectorXd& tail) {
  std::vector<double> c{1.0};
  c.insert(c.end(), tail.data(), tail.data() + tail.size());
  return Polynomial(std::move(c));
}

double condition_of(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu) {
  const double rc = lu.rcond();
  return rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
}

}  // namespace

bool BoxRegion::contains(std::span<const double> x) const {
  if (x.size() != upper.size()) return false;
  for (std::size_t l = 0; l < x.size(); ++l) {
    if (!(x[l] > lower[l])) return false;
    if (closed_upper[l] ? !(x[l] <= upper[l]) : !(x[l] < upper[l])) return false;
  }
  return true;
}

Witness unbounded_witness(const Polynomial& a, std::span<const double> d,
                          const Tolerances& tol) {
  const int n = a.degree();
  require_hurwitz(a, tol);
  if (d.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("direction vector must have one entry per coefficient");
  }
  if (!std::all_of(d.begin(), d.end(), [](double v) { return v > 0.0; })) {
    throw std::invalid_argument("direction vector entries must be positive");
  }
  const StructuredMatrices m = build_matrices(a);
  const Eigen::MatrixXd ehe = m.A.bottomRightCorner(n, n);
  const Eigen::VectorXd abar = m.A.col(0).tail(n);
  const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(d.data(), n) - abar;
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(ehe);
  return {monic_from_tail(lu.solve(rhs)), condition_of(lu)};
}

Witness wspr_construct_point(const Polynomial& a, const Tolerances& tol) {
  const int n = a.degree();
  if (n < 2) throw std::invalid_argument("weak SPR construction needs degree >= 2");
  require_hurwitz(a, tol);
  const Eigen::MatrixXd ehe = ehe_block(a);
  const Eigen::MatrixXd b = ehe.topRightCorner(n - 1, n - 1);
  const Eigen::VectorXd abar = ehe.col(0).head(n - 1);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
  return {monic_from_tail(-lu.solve(abar)), condition_of(lu)};
}

BoxRegion wspr_bounding_box(const Polynomial& a) {
  const int n = a.degree();
  if (n < 1) throw std::invalid_argument("bounding box needs degree >= 1");
  const Polynomial am = a.monic();
  BoxRegion box;
  box.lower.assign(static_cast<std::size_t>(n - 1), 0.0);
  for (int l = 1; l <= n - 1; ++l) box.upper.push_back(am[static_cast<std::size_t>(l)]);
  box.closed_upper.assign(static_cast<std::size_t>(n - 1), false);
  if (n >= 2) box.closed_upper[0] = true;
  return box;
}

Polynomial shift_down(const Polynomial& x, double eps) {
  std::vector<double> c(x.coeffs().begin(), x.coeffs().end());
  for (std::size_t i = 1; i < c.size(); ++i) c[i] -= eps;
  return Polynomial(std::move(c));
}

EpsilonCertificate shrink_epsilon(const Polynomial& a, const Polynomial& x,
                                  const Tolerances& tol) {
  require_monic_numerator(x, a.degree() - 1);
  if (x.degree() < 1) throw std::invalid_argument("nothing to shrink for degree-1 denominators");
  if (!wspr_member(x, a, tol)) throw std::invalid_argument("numerator is not weak SPR");

  const auto tail = x.coeffs().subspan(1);
  const double eps0 = *std::min_element(tail.begin(), tail.end()) / 2.0;
  EpsilonCertificate cert;
  double eps = eps0;
  for (int k = 0; k <= kMaxHalvings; ++k, eps /= 2.0) {
    cert.attempts = k + 1;
    cert.epsilon = eps;
    if (wspr_member(shift_down(x, eps), a, tol)) {
      cert.verified = true;
      return cert;
    }
  }
  return cert;
}

LiftResult lift_to_spr(std::span<const Polynomial> denominators, const Polynomial& x,
                       const Polynomial& alpha, const Tolerances& tol,
                       double epsilon_start) {
  if (denominators.empty()) throw std::invalid_argument("no denominators to lift against");
  if (!(epsilon_start > 0.0)) throw std::invalid_argument("epsilon_start must be positive");
  const int n = denominators.front().degree();
  require_monic_numerator(alpha, n);
  for (const auto& a : denominators) {
    if (a.degree() != n) throw std::invalid_argument("denominators differ in degree");
    if (!wspr_member(x, a, tol)) {
      throw std::invalid_argument("numerator is not weak SPR for " + a.to_string());
    }
  }

  LiftResult out;
  double estimate = std::numeric_limits<double>::infinity();
  for (const auto& a : denominators) {
    estimate = std::min(estimate, epsilon_estimate_mn(a, x, alpha));
  }
  out.certificate.estimate_mn = estimate;

  double eps = epsilon_start;
  for (int k = 0; k <= kMaxHalvings; ++k, eps /= 2.0) {
    out.certificate.attempts = k + 1;
    out.certificate.epsilon = eps;
    out.numerator = add(x, scale(alpha, eps), tol);
    const bool ok = std::all_of(denominators.begin(), denominators.end(),
                                [&](const Polynomial& a) {
                                  return spr_member(out.numerator, a, tol);
                                });
    if (ok) {
      out.certificate.verified = true;
      return out;
    }
  }
  return out;
}

LiftResult lift_to_spr(const Polynomial& a, const Polynomial& x, const Polynomial& alpha,
                       const Tolerances& tol, double epsilon_start) {
  return lift_to_spr(std::span<const Polynomial>(&a, 1), x, alpha, tol, epsilon_start);
}

double epsilon_estimate_mn(const Polynomial& a, const Polynomial& x,
                           const Polynomial& alpha, int samples) {
  const std::vector<double> grid = margin_grid(samples);
  std::vector<double> re_x(grid.size()), re_alpha(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::complex<double> jw(0.0, std::sqrt(grid[i]));
    const std::complex<double> av = a(jw);
    re_x[i] = std::real(x(jw) / av);
    re_alpha[i] = std::real(alpha(jw) / av);
  }
  std::size_t cutoff = grid.size();
  while (cutoff > 0 && re_alpha[cutoff - 1] >= 0.0) --cutoff;
  // cutoff is now one past the last negative sample; the window includes it.
  const std::size_t window = std::min(cutoff + 1, grid.size());
  double m = std::numeric_limits<double>::infinity();
  double nrm = 0.0;
  for (std::size_t i = 0; i < window; ++i) {
    m = std::min(m, re_x[i]);
    nrm = std::max(nrm, std::abs(re_alpha[i]));
  }
  if (nrm == 0.0) return std::numeric_limits<double>::infinity();
  return m / nrm;
}

}  // namespace sprgeo
