#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sprgeo/poly.hpp"
#include "sprgeo/spr_algebra.hpp"

namespace sprgeo {

/// Axis-aligned box {lower_l < x_l < upper_l} in the non-leading coefficients
/// of a monic numerator. A coordinate with closed_upper set admits
/// x_l == upper_l.
struct BoxRegion {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<bool> closed_upper;

  std::size_t dimension() const { return upper.size(); }
  bool contains(std::span<const double> x) const;
};

struct EpsilonCertificate {
  double epsilon = 0.0;
  /// Set only when the shifted or lifted numerator passed the exact
  /// membership test.
  bool verified = false;
  int attempts = 0;
  /// Sampled M/N ratio bound, when computed.
  std::optional<double> estimate_mn;
};

/// A constructed polynomial together with the 1-norm condition estimate of
/// the linear system that produced it.
struct Witness {
  Polynomial numerator;
  double condition = 1.0;
};

inline constexpr double kConditionWarning = 1e12;
inline constexpr int kMaxHalvings = 60;

/// Monic degree-n numerator whose real-part form is (1, d_1, ..., d_n),
/// obtained from (E H E)^{-1} (d - abar). Every d_l must be positive and `a`
/// Hurwitz; otherwise std::invalid_argument.
Witness unbounded_witness(const Polynomial& a, std::span<const double> d,
                          const Tolerances& tol = {});

/// Monic degree n-1 numerator with real-part form (0, ..., 0, a_n b_{n-1}),
/// from the trailing (n-1)x(n-1) block B of E H E. Requires n >= 2 and `a`
/// Hurwitz.
Witness wspr_construct_point(const Polynomial& a, const Tolerances& tol = {});

/// 0 < x_1 <= a_1, 0 < x_l < a_l for l = 2..n-1.
BoxRegion wspr_bounding_box(const Polynomial& a);

/// Subtracts eps from every non-leading coefficient.
Polynomial shift_down(const Polynomial& x, double eps);

/// Largest eps of the form eps0 / 2^k (eps0 = min non-leading coefficient / 2)
/// keeping x - eps * (s^{n-2} + ... + 1) weak SPR. Throws
/// std::invalid_argument unless x is weak SPR for a. An unverified
/// certificate is returned when 60 halvings do not suffice.
EpsilonCertificate shrink_epsilon(const Polynomial& a, const Polynomial& x,
                                  const Tolerances& tol = {});

struct LiftResult {
  EpsilonCertificate certificate;
  Polynomial numerator;
};

/// Lifts a weak SPR numerator x to x + eps * alpha, alpha monic of degree n,
/// halving eps from `epsilon_start` until the lifted numerator is SPR for
/// every denominator. The certificate carries the smallest M/N estimate over
/// the denominators.
LiftResult lift_to_spr(std::span<const Polynomial> denominators, const Polynomial& x,
                       const Polynomial& alpha, const Tolerances& tol = {},
                       double epsilon_start = 1.0);

LiftResult lift_to_spr(const Polynomial& a, const Polynomial& x, const Polynomial& alpha,
                       const Tolerances& tol = {}, double epsilon_start = 1.0);

/// Sampled M/N estimate of an admissible lift size.
///
/// Works on the w-grid w = sqrt(u), u on margin_grid(samples). The cutoff w2
/// is the smallest grid frequency beyond which Re[alpha/a] stays
/// non-negative, so lifting cannot hurt there. M = min Re[x/a] and
/// N = max |Re[alpha/a]| over grid points w <= w2. Returns +inf when N is 0.
double epsilon_estimate_mn(const Polynomial& a, const Polynomial& x,
                           const Polynomial& alpha, int samples = kMarginSamples);

}  // namespace sprgeo
