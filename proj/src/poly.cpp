#include "sprgeo/poly.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sprgeo {

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

double max_abs_of(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Positive rescaling to unit max-norm. Sign patterns, roots and Sturm counts
// are unaffected.
Polynomial unit_norm(const Polynomial& p) {
  const double m = p.max_abs();
  return m > 0.0 ? scale(p, 1.0 / m) : p;
}

int count_sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

void Tolerances::validate() const {
  if (!(zero_eps > 0.0) || !(margin_eps > 0.0) || zero_eps > margin_eps) {
    throw std::invalid_argument(
        "tolerances must satisfy 0 < zero_eps <= margin_eps");
  }
}

Polynomial::Polynomial(std::vector<double> descending)
    : coeffs_(std::move(descending)) {
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(),
                            [](double c) { return c != 0.0; });
  if (first == coeffs_.end()) {
    coeffs_.assign(1, 0.0);
  } else {
    coeffs_.erase(coeffs_.begin(), first);
  }
}

Polynomial Polynomial::from_ascending(std::span<const double> ascending) {
  return Polynomial(std::vector<double>(ascending.rbegin(), ascending.rend()));
}

Polynomial Polynomial::monomial(int degree, double coefficient) {
  if (degree < 0) throw std::invalid_argument("negative monomial degree");
  std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
  c[0] = coefficient;
  return Polynomial(std::move(c));
}

double Polynomial::coeff_of_power(int k) const {
  if (k < 0 || k > degree()) return 0.0;
  return coeffs_[static_cast<std::size_t>(degree() - k)];
}

double Polynomial::max_abs() const { return max_abs_of(coeffs_); }

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (double c : coeffs_) acc = acc * x + c;
  return acc;
}

std::complex<double> Polynomial::operator()(std::complex<double> z) const {
  std::complex<double> acc = 0.0;
  for (double c : coeffs_) acc = acc * z + c;
  return acc;
}

Polynomial Polynomial::derivative() const {
  const int n = degree();
  if (n == 0) return Polynomial();
  std::vector<double> d(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    d[static_cast<std::size_t>(i)] = coeffs_[static_cast<std::size_t>(i)] * (n - i);
  }
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator-() const { return scale(*this, -1.0); }

Polynomial Polynomial::monic() const {
  if (is_zero()) throw std::invalid_argument("zero polynomial has no monic form");
  return scale(*this, 1.0 / leading());
}

std::vector<double> Polynomial::padded(std::size_t length) const {
  if (length < coeffs_.size()) {
    throw std::invalid_argument("polynomial does not fit in requested length");
  }
  std::vector<double> out(length - coeffs_.size(), 0.0);
  out.insert(out.end(), coeffs_.begin(), coeffs_.end());
  return out;
}

std::string Polynomial::to_string(const char* var) const {
  if (is_zero()) return "0";
  std::string out;
  const int n = degree();
  for (int i = 0; i <= n; ++i) {
    const double c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0.0) continue;
    const int power = n - i;
    const double mag = std::abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1.0 || power == 0) {
      out += format_double(mag);
      if (power > 0) out += "*";
    }
    if (power >= 1) out += var;
    if (power >= 2) out += "^" + std::to_string(power);
  }
  return out;
}

std::vector<double> trim_leading(std::vector<double> coeffs, double threshold) {
  std::size_t k = 0;
  while (k + 1 < coeffs.size() && std::abs(coeffs[k]) <= threshold) ++k;
  coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(k));
  if (coeffs.size() == 1 && std::abs(coeffs[0]) <= threshold) coeffs[0] = 0.0;
  return coeffs;
}

double eval(const Polynomial& p, double x) { return p(x); }

Polynomial add(const Polynomial& p, const Polynomial& q, const Tolerances& tol) {
  const std::size_t len = std::max(p.coeffs().size(), q.coeffs().size());
  std::vector<double> a = p.padded(len);
  const std::vector<double> b = q.padded(len);
  for (std::size_t i = 0; i < len; ++i) a[i] += b[i];
  const double scale_ref = std::max(p.max_abs(), q.max_abs());
  return Polynomial(trim_leading(std::move(a), tol.zero_eps * scale_ref));
}

Polynomial sub(const Polynomial& p, const Polynomial& q, const Tolerances& tol) {
  return add(p, -q, tol);
}

Polynomial mul(const Polynomial& p, const Polynomial& q, const Tolerances& tol) {
  if (p.is_zero() || q.is_zero()) return Polynomial();
  const auto a = p.coeffs();
  const auto b = q.coeffs();
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return Polynomial(
      trim_leading(std::move(out), tol.zero_eps * p.max_abs() * q.max_abs()));
}

Polynomial scale(const Polynomial& p, double lambda) {
  std::vector<double> c(p.coeffs().begin(), p.coeffs().end());
  for (double& x : c) x *= lambda;
  return Polynomial(std::move(c));
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& p, const Polynomial& q,
                                         const Tolerances& tol) {
  if (q.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  const int pd = p.degree();
  const int qd = q.degree();
  if (pd < qd || p.is_zero()) return {Polynomial(), p};

  std::vector<double> r(p.coeffs().begin(), p.coeffs().end());
  const auto d = q.coeffs();
  std::vector<double> quot(static_cast<std::size_t>(pd - qd) + 1, 0.0);
  double work_scale = p.max_abs();
  const double q_scale = q.max_abs();
  for (std::size_t i = 0; i < quot.size(); ++i) {
    const double f = r[i] / d[0];
    quot[i] = f;
    for (std::size_t j = 0; j < d.size(); ++j) r[i + j] -= f * d[j];
    work_scale = std::max(work_scale, std::abs(f) * q_scale);
  }
  std::vector<double> rem(r.begin() + static_cast<std::ptrdiff_t>(quot.size()),
                          r.end());
  if (rem.empty()) rem.push_back(0.0);
  const double threshold = tol.zero_eps * work_scale;
  for (double& x : rem) {
    if (std::abs(x) <= threshold) x = 0.0;
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(const Polynomial& p, const Polynomial& q, const Tolerances& tol) {
  if (p.is_zero() && q.is_zero()) {
    throw std::invalid_argument("gcd of two zero polynomials");
  }
  Polynomial a = p.is_zero() ? q : unit_norm(p);
  Polynomial b = p.is_zero() ? Polynomial() : (q.is_zero() ? q : unit_norm(q));
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b, tol).second;
    a = std::move(b);
    b = r.is_zero() ? r : unit_norm(r);
  }
  a = unit_norm(a);
  return a.leading() < 0 ? -a : a;
}

std::vector<double> routh_first_column(const Polynomial& p, const Tolerances& tol) {
  if (p.is_zero()) throw std::invalid_argument("Routh test of the zero polynomial");
  Polynomial q = unit_norm(p.leading() < 0 ? -p : p);
  const int n = q.degree();
  const auto c = q.coeffs();
  const std::size_t width = static_cast<std::size_t>(n) / 2 + 2;

  std::vector<double> prev(width, 0.0), cur(width, 0.0);
  for (int i = 0; i <= n; ++i) {
    auto& row = (i % 2 == 0) ? prev : cur;
    row[static_cast<std::size_t>(i / 2)] = c[static_cast<std::size_t>(i)];
  }

  std::vector<double> column{prev[0]};
  if (n == 0) return column;
  for (int k = 1; k <= n; ++k) {
    column.push_back(cur[0]);
    if (cur[0] <= tol.zero_eps) break;
    std::vector<double> next(width, 0.0);
    for (std::size_t i = 0; i + 1 < width; ++i) {
      next[i] = (cur[0] * prev[i + 1] - prev[0] * cur[i + 1]) / cur[0];
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return column;
}

bool hurwitz_stable(const Polynomial& p, const Tolerances& tol) {
  const std::vector<double> column = routh_first_column(p, tol);
  if (column.size() != static_cast<std::size_t>(p.degree()) + 1) return false;
  return std::all_of(column.begin(), column.end(),
                     [&](double v) { return v > tol.zero_eps; });
}

SturmChain::SturmChain(const Polynomial& p, const Tolerances& tol) : zero_eps_(tol.zero_eps) {
  if (p.is_zero()) throw std::invalid_argument("Sturm chain of the zero polynomial");
  Polynomial base = unit_norm(p);
  if (base.degree() >= 1) {
    const Polynomial g = gcd(base, base.derivative(), tol);
    if (g.degree() >= 1) base = unit_norm(divmod(base, g, tol).first);
  }
  chain_.push_back(base);
  if (base.degree() == 0) return;
  chain_.push_back(unit_norm(base.derivative()));
  while (chain_.back().degree() > 0) {
    const Polynomial& a = chain_[chain_.size() - 2];
    const Polynomial& b = chain_.back();
    Polynomial r = divmod(a, b, tol).second;
    if (r.is_zero()) break;
    chain_.push_back(unit_norm(-r));
  }
}

int SturmChain::sign_changes_at(double x) const {
  std::vector<int> signs;
  signs.reserve(chain_.size());
  // Values lost in evaluation round-off count as exact zeros, so a root
  // sitting on x is seen as one.
  for (const auto& q : chain_) {
    double mag = 0.0;
    for (double c : q.coeffs()) mag = mag * std::abs(x) + std::abs(c);
    const double v = q(x);
    signs.push_back(std::abs(v) <= zero_eps_ * mag ? 0 : sign_of(v));
  }
  return count_sign_changes(signs);
}

int SturmChain::sign_changes_at_pos_inf() const {
  std::vector<int> signs;
  for (const auto& q : chain_) signs.push_back(sign_of(q.leading()));
  return count_sign_changes(signs);
}

int SturmChain::sign_changes_at_neg_inf() const {
  std::vector<int> signs;
  for (const auto& q : chain_) {
    signs.push_back(sign_of(q.leading()) * (q.degree() % 2 == 0 ? 1 : -1));
  }
  return count_sign_changes(signs);
}

SturmChain sturm_chain(const Polynomial& p, const Tolerances& tol) {
  return SturmChain(p, tol);
}

int count_distinct_roots_in(const Polynomial& p, double lo, double hi,
                            const Tolerances& tol) {
  if (p.is_zero()) throw std::invalid_argument("root count of the zero polynomial");
  if (lo > hi) throw std::invalid_argument("empty interval");
  if (lo == hi) return 0;
  const SturmChain chain(p, tol);
  const double inf = std::numeric_limits<double>::infinity();
  const int v_lo = lo == -inf ? chain.sign_changes_at_neg_inf()
                              : chain.sign_changes_at(lo);
  const int v_hi = hi == inf ? chain.sign_changes_at_pos_inf()
                             : chain.sign_changes_at(hi);
  return v_lo - v_hi;
}

bool positive_on_halfline(const Polynomial& p, const Tolerances& tol) {
  if (p.is_zero()) throw std::invalid_argument("positivity of the zero polynomial");
  if (!(p.constant_term() > tol.margin_eps)) return false;
  if (!(p.leading() > 0.0)) return false;
  if (p.degree() == 0) return true;
  return count_distinct_roots_in(p, 0.0, std::numeric_limits<double>::infinity(),
                                 tol) == 0;
}

std::vector<double> parse_coefficients(const std::string& text) {
  std::vector<double> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto is_sep = [](char ch) {
    return ch == ',' || ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r';
  };
  while (i < n) {
    while (i < n && is_sep(text[i])) ++i;
    if (i >= n) break;
    std::size_t j = i;
    while (j < n && !is_sep(text[j])) ++j;
    const char* first = text.data() + i;
    const char* last = text.data() + j;
    if (*first == '+') ++first;
    double v = 0.0;
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
      throw std::invalid_argument("malformed coefficient '" +
                                  text.substr(i, j - i) + "'");
    }
    out.push_back(v);
    i = j;
  }
  if (out.empty()) throw std::invalid_argument("no coefficients given");
  return out;
}

}  // namespace sprgeo
