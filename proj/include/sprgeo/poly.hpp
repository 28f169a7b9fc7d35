#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sprgeo {

/// Numerical thresholds shared by every exact-as-practical test.
///
/// `zero_eps` decides when a computed coefficient or pivot is zero (relative
/// to the scale of the quantity it came from); `margin_eps` is the smallest
/// accepted strict-positivity margin.
struct Tolerances {
  double zero_eps = 1e-10;
  double margin_eps = 1e-9;

  /// Throws std::invalid_argument unless 0 < zero_eps <= margin_eps.
  void validate() const;
};

/// Degree above which Routh and Sturm verdicts lose reliability in double
/// precision. Callers should warn, not refuse.
inline constexpr int kWellConditionedDegree = 20;

/// Real polynomial, coefficients stored in descending powers.
///
/// The zero polynomial is the single coefficient 0. Any other value has a
/// nonzero leading coefficient; the constructor strips exact leading zeros.
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}
  Polynomial(std::initializer_list<double> descending)
      : Polynomial(std::vector<double>(descending)) {}
  explicit Polynomial(std::vector<double> descending);

  static Polynomial from_ascending(std::span<const double> ascending);
  static Polynomial monomial(int degree, double coefficient = 1.0);
  static Polynomial constant(double value) { return Polynomial({value}); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
  double leading() const { return coeffs_.front(); }
  double constant_term() const { return coeffs_.back(); }

  /// Descending-order view: index 0 is the leading coefficient.
  std::span<const double> coeffs() const { return coeffs_; }
  double operator[](std::size_t i) const { return coeffs_[i]; }

  /// Coefficient of s^k, zero outside 0..degree.
  double coeff_of_power(int k) const;

  /// Largest coefficient magnitude.
  double max_abs() const;

  double operator()(double x) const;
  std::complex<double> operator()(std::complex<double> z) const;

  Polynomial derivative() const;
  Polynomial operator-() const;

  /// Same polynomial with its leading coefficient scaled to +1.
  Polynomial monic() const;

  /// Coefficients padded with leading zeros to `length` entries.
  std::vector<double> padded(std::size_t length) const;

  std::string to_string(const char* var = "s") const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<double> coeffs_;
};

/// Strips leading entries whose magnitude is <= threshold. Always leaves at
/// least one coefficient.
std::vector<double> trim_leading(std::vector<double> coeffs, double threshold);

double eval(const Polynomial& p, double x);

Polynomial add(const Polynomial& p, const Polynomial& q,
               const Tolerances& tol = {});
Polynomial sub(const Polynomial& p, const Polynomial& q,
               const Tolerances& tol = {});
Polynomial mul(const Polynomial& p, const Polynomial& q,
               const Tolerances& tol = {});
Polynomial scale(const Polynomial& p, double lambda);

/// Euclidean division; remainder coefficients below zero_eps times the
/// working scale are truncated to zero.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& p,
                                         const Polynomial& q,
                                         const Tolerances& tol = {});

/// Greatest common divisor, normalized to unit max-norm and positive leading
/// coefficient.
Polynomial gcd(const Polynomial& p, const Polynomial& q,
               const Tolerances& tol = {});

/// True iff every root lies strictly in the open left half plane.
///
/// Decided by the Routh array on the polynomial normalized to a positive
/// leading coefficient and unit max-norm; any first-column entry <= zero_eps
/// (including a vanishing pivot) means "not stable". A nonzero constant has no
/// roots and counts as stable. Throws std::invalid_argument on the zero
/// polynomial.
bool hurwitz_stable(const Polynomial& p, const Tolerances& tol = {});

/// First column of the Routh array of `p` after normalization, stopping at
/// the first non-positive pivot. Exposed for diagnostics and tests.
std::vector<double> routh_first_column(const Polynomial& p,
                                       const Tolerances& tol = {});

/// Sturm chain of the square-free part of a polynomial.
class SturmChain {
 public:
  explicit SturmChain(const Polynomial& p, const Tolerances& tol = {});

  const std::vector<Polynomial>& chain() const { return chain_; }
  const Polynomial& square_free_part() const { return chain_.front(); }

  int sign_changes_at(double x) const;
  int sign_changes_at_pos_inf() const;
  int sign_changes_at_neg_inf() const;

 private:
  std::vector<Polynomial> chain_;
  double zero_eps_ = 0.0;
};

SturmChain sturm_chain(const Polynomial& p, const Tolerances& tol = {});

/// Number of distinct real roots in the half-open interval (lo, hi]. Either
/// end may be infinite. Throws std::invalid_argument on the zero polynomial
/// or when lo > hi.
int count_distinct_roots_in(const Polynomial& p, double lo, double hi,
                            const Tolerances& tol = {});

/// True iff p(u) > 0 for every u >= 0: p(0) > margin_eps, positive leading
/// coefficient, and no distinct root on (0, +inf). Throws on the zero
/// polynomial.
bool positive_on_halfline(const Polynomial& p, const Tolerances& tol = {});

/// Parses "1, 3.3, 2.24" (commas and/or whitespace) into descending
/// coefficients. Throws std::invalid_argument on malformed input.
std::vector<double> parse_coefficients(const std::string& text);

}  // namespace sprgeo
