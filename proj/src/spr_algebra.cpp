#include "sprgeo/spr_algebra.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sprgeo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_monic(const Polynomial& a) {
  if (a.degree() < 1) throw std::invalid_argument("denominator must have degree >= 1");
  if (std::abs(a.leading() - 1.0) > 1e-12) {
    throw std::invalid_argument("denominator must be monic");
  }
}

// a_k of a monic polynomial indexed from the top: a_0 = 1 is the
// leading coefficient, zero outside 0..n.
double coeff_desc(const Polynomial& p, int k) {
  if (k < 0 || k > p.degree()) return 0.0;
  return p[static_cast<std::size_t>(k)];
}

double eval_c(const std::vector<double>& c, double u) {
  double acc = 0.0;
  for (double v : c) acc = acc * u + v;
  return acc;
}

struct Normalized {
  Polynomial a;
  Polynomial b;
};

Normalized normalize_pair(const Polynomial& b, const Polynomial& a) {
  const double lead = a.leading();
  return {scale(a, 1.0 / lead), scale(b, 1.0 / lead)};
}

MembershipVerdict decide(const Polynomial& b, const Polynomial& a,
                         int expected_degree_gap, const Tolerances& tol,
                         bool with_margin) {
  MembershipVerdict v;
  v.margin = kNaN;
  if (a.degree() < 1 || b.is_zero() ||
      b.degree() != a.degree() - expected_degree_gap) {
    v.failure_reason = FailureReason::DegreeMismatch;
    return v;
  }
  const Normalized z = normalize_pair(b, a);
  v.scale = z.b.leading();
  v.c = real_part_coeffs(z.a, z.b);
  if (!hurwitz_stable(z.a, tol)) {
    v.failure_reason = FailureReason::DenominatorNotHurwitz;
    return v;
  }
  if (with_margin) v.margin = spr_margin(z.b, z.a);
  if (!(v.scale > 0.0)) {
    v.failure_reason = FailureReason::RealPartNotPositive;
    return v;
  }
  const Polynomial phi = real_part_coeffs(z.a, scale(z.b, 1.0 / v.scale)).in_u(tol);
  if (phi.is_zero()) {
    v.failure_reason = FailureReason::RealPartNotPositive;
    return v;
  }
  v.halfline_roots =
      phi.degree() == 0
          ? 0
          : count_distinct_roots_in(phi, 0.0, std::numeric_limits<double>::infinity(),
                                    tol);
  v.member = positive_on_halfline(phi, tol);
  if (!v.member) v.failure_reason = FailureReason::RealPartNotPositive;
  return v;
}

}  // namespace

Polynomial RealPartForm::in_u(const Tolerances& tol) const {
  double m = 0.0;
  for (double x : c) m = std::max(m, std::abs(x));
  return Polynomial(trim_leading(c, tol.zero_eps * m));
}

std::string_view to_string(FailureReason reason) {
  switch (reason) {
    case FailureReason::DegreeMismatch:
      return "DegreeMismatch";
    case FailureReason::DenominatorNotHurwitz:
      return "DenominatorNotHurwitz";
    case FailureReason::RealPartNotPositive:
      return "RealPartNotPositive";
  }
  return "Unknown";
}

Eigen::MatrixXd hurwitz_matrix(const Polynomial& a) {
  const int n = a.degree();
  if (n < 1) throw std::invalid_argument("Hurwitz matrix needs degree >= 1");
  Eigen::MatrixXd h(n, n);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) h(i - 1, j - 1) = coeff_desc(a, 2 * i - j);
  }
  return h;
}

RealPartForm real_part_coeffs(const Polynomial& a, const Polynomial& b) {
  require_monic(a);
  const int n = a.degree();
  if (b.degree() > n) throw std::invalid_argument("numerator degree exceeds denominator");
  const std::vector<double> x = b.padded(static_cast<std::size_t>(n) + 1);
  auto xk = [&](int i) { return (i < 0 || i > n) ? 0.0 : x[static_cast<std::size_t>(i)]; };

  RealPartForm out;
  out.n = n;
  out.c.assign(static_cast<std::size_t>(n) + 1, 0.0);
  for (int l = 0; l <= n; ++l) {
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double term = coeff_desc(a, k) * xk(2 * l - k);
      acc += ((l + k) % 2 == 0) ? term : -term;
    }
    out.c[static_cast<std::size_t>(l)] = acc;
  }
  return out;
}

StructuredMatrices build_matrices(const Polynomial& a) {
  require_monic(a);
  const int n = a.degree();
  StructuredMatrices m;
  m.H = hurwitz_matrix(a);
  m.E = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) m.E(i, i) = (i % 2 == 0) ? 1.0 : -1.0;
  m.A = Eigen::MatrixXd::Zero(n + 1, n + 1);
  m.A(0, 0) = 1.0;
  for (int l = 1; l <= n; ++l) {
    const double a2l = coeff_desc(a, 2 * l);
    m.A(l, 0) = (l % 2 == 0) ? a2l : -a2l;
  }
  m.A.bottomRightCorner(n, n) = m.E * m.H * m.E;
  return m;
}

RealPartForm c_from_A(const Polynomial& a, const Polynomial& b) {
  const StructuredMatrices m = build_matrices(a);
  const int n = a.degree();
  if (b.degree() > n) throw std::invalid_argument("numerator degree exceeds denominator");
  const std::vector<double> x = b.padded(static_cast<std::size_t>(n) + 1);
  const Eigen::VectorXd c = m.A * Eigen::Map<const Eigen::VectorXd>(x.data(), n + 1);
  return RealPartForm{std::vector<double>(c.data(), c.data() + c.size()), n};
}

MembershipVerdict is_spr(const Polynomial& b, const Polynomial& a, const Tolerances& tol) {
  return decide(b, a, 0, tol, true);
}

MembershipVerdict is_wspr(const Polynomial& b, const Polynomial& a, const Tolerances& tol) {
  return decide(b, a, 1, tol, true);
}

bool spr_member(const Polynomial& b, const Polynomial& a, const Tolerances& tol) {
  return decide(b, a, 0, tol, false).member;
}

bool wspr_member(const Polynomial& b, const Polynomial& a, const Tolerances& tol) {
  return decide(b, a, 1, tol, false).member;
}

std::vector<double> margin_grid(int samples) {
  if (samples < 2) throw std::invalid_argument("margin grid needs >= 2 samples");
  std::vector<double> u;
  u.reserve(static_cast<std::size_t>(samples) + 1);
  u.push_back(0.0);
  const double lo = -6.0, hi = 6.0;
  for (int i = 0; i < samples; ++i) {
    u.push_back(std::pow(10.0, lo + (hi - lo) * i / (samples - 1)));
  }
  return u;
}

double spr_margin(const Polynomial& b, const Polynomial& a, int samples) {
  if (a.degree() < 1) throw std::invalid_argument("denominator must have degree >= 1");
  const Normalized z = normalize_pair(b, a);
  const std::vector<double> phi = real_part_coeffs(z.a, z.b).c;
  const std::vector<double> psi = real_part_coeffs(z.a, z.a).c;
  double best = std::numeric_limits<double>::infinity();
  for (double u : margin_grid(samples)) {
    best = std::min(best, eval_c(phi, u) / eval_c(psi, u));
  }
  return best;
}

bool phase_check(const Polynomial& b, const Polynomial& a, int samples) {
  if (b.is_zero() || a.is_zero()) throw std::invalid_argument("phase of the zero polynomial");
  constexpr double kPi = std::numbers::pi;
  for (double u : margin_grid(samples)) {
    const std::complex<double> jw(0.0, std::sqrt(u));
    const std::complex<double> bv = b(jw);
    const std::complex<double> av = a(jw);
    if (bv == 0.0 || av == 0.0) return false;
    const double diff = std::remainder(std::arg(bv) - std::arg(av), 2.0 * kPi);
    if (!(std::abs(diff) < kPi / 2)) return false;
  }
  return true;
}

}  // namespace sprgeo
