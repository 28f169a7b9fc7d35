#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "sprgeo/poly.hpp"

namespace sprgeo {

/// Coefficients of Re[b(jw) a(-jw)] = sum_{l=0}^{n} c_l w^{2(n-l)}.
///
/// Read with u = w^2, `c` is a descending coefficient vector of a polynomial
/// of degree <= n in u; positivity of that polynomial on u >= 0 is the SPR
/// criterion.
struct RealPartForm {
  std::vector<double> c;
  int n = 0;

  /// phi(u) with leading entries at or below zero_eps * max|c| removed.
  Polynomial in_u(const Tolerances& tol = {}) const;
};

/// Hurwitz-pattern matrix H of a monic a, the alternating sign matrix E, and
/// the (n+1)x(n+1) map A with c = A * (x_0, ..., x_n).
struct StructuredMatrices {
  Eigen::MatrixXd H;
  Eigen::MatrixXd E;
  Eigen::MatrixXd A;
};

enum class FailureReason { DegreeMismatch, DenominatorNotHurwitz, RealPartNotPositive };

std::string_view to_string(FailureReason reason);

struct MembershipVerdict {
  bool member = false;
  /// Sampled min of Re[b/a] over the standard u-grid; NaN when the shapes
  /// do not allow a ratio to be formed.
  double margin = 0.0;
  /// Real-part form of the numerator after dividing b and a by a's leading
  /// coefficient.
  RealPartForm c;
  std::optional<FailureReason> failure_reason;
  /// Leading coefficient of the numerator relative to a monic denominator.
  /// The exact test runs on the numerator divided by this value.
  double scale = 1.0;
  /// Distinct roots of phi on (0, +inf); -1 when the Sturm test was not
  /// reached.
  int halfline_roots = -1;
};

/// Hurwitz matrix of a monic polynomial: H(i, j) = a_{2i-j} (1-based), with
/// a_0 = 1 and a_k = 0 outside 0..n.
Eigen::MatrixXd hurwitz_matrix(const Polynomial& a);

/// Direct expansion c_l = sum_k a_k x_{2l-k} (-1)^{l+k}.
///
/// `a` must be monic of degree n >= 1 and `b` of degree <= n (it is padded
/// with leading zeros). Throws std::invalid_argument otherwise.
RealPartForm real_part_coeffs(const Polynomial& a, const Polynomial& b);

StructuredMatrices build_matrices(const Polynomial& a);

/// The same c-vector as real_part_coeffs, computed as A * x.
RealPartForm c_from_A(const Polynomial& a, const Polynomial& b);

/// b/a is SPR: deg b = deg a, positive leading ratio, a Hurwitz, and
/// phi(u) > 0 on u >= 0 decided by the Sturm test.
MembershipVerdict is_spr(const Polynomial& b, const Polynomial& a,
                         const Tolerances& tol = {});

/// b/a is weak SPR: deg b = deg a - 1, otherwise as is_spr.
MembershipVerdict is_wspr(const Polynomial& b, const Polynomial& a,
                          const Tolerances& tol = {});

/// Boolean forms of is_spr / is_wspr that skip the sampled margin.
bool spr_member(const Polynomial& b, const Polynomial& a, const Tolerances& tol = {});
bool wspr_member(const Polynomial& b, const Polynomial& a, const Tolerances& tol = {});

inline constexpr int kMarginSamples = 4096;

/// {0} followed by `samples` log-spaced points on [1e-6, 1e6] (u = w^2).
std::vector<double> margin_grid(int samples = kMarginSamples);

/// min over margin_grid of phi(u) / psi(u), psi being |a(jw)|^2 in u. Equal
/// to the sampled minimum of Re[b(jw)/a(jw)].
double spr_margin(const Polynomial& b, const Polynomial& a,
                  int samples = kMarginSamples);

/// |arg b(jw) - arg a(jw)| < pi/2 (mod 2 pi) at w = sqrt(u) for u on
/// margin_grid(samples). Diagnostic only.
bool phase_check(const Polynomial& b, const Polynomial& a,
                 int samples = kMarginSamples);

}  // namespace sprgeo
