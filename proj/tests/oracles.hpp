#pragma once

// Test-only reference computations. Each oracle takes a different route from
// the library code it checks: eigenvalues instead of Routh/Sturm, complex
// evaluation instead of the c-vector, polynomial products instead of the
// index formula.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "sprgeo/poly.hpp"

namespace sprgeo::oracle {

inline Eigen::VectorXcd roots(const Polynomial& p) {
  const int n = p.degree();
  if (n < 1) return {};
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) comp(0, j) = -p[static_cast<std::size_t>(j + 1)] / p.leading();
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  return Eigen::EigenSolver<Eigen::MatrixXd>(comp, false).eigenvalues();
}

/// Largest real part over all roots; -inf for constants.
inline double max_real_part(const Polynomial& p) {
  const Eigen::VectorXcd r = roots(p);
  double m = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < r.size(); ++i) m = std::max(m, r[i].real());
  return m;
}

/// Distinct real roots in (lo, hi), clustering roots closer than `merge`.
inline int real_roots_in(const Polynomial& p, double lo, double hi, double imag_tol = 1e-7,
                         double merge = 1e-5) {
  const Eigen::VectorXcd r = roots(p);
  std::vector<double> re;
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    if (std::abs(r[i].imag()) <= imag_tol * std::max(1.0, std::abs(r[i])) &&
        r[i].real() > lo && r[i].real() < hi) {
      re.push_back(r[i].real());
    }
  }
  std::sort(re.begin(), re.end());
  int count = 0;
  for (std::size_t i = 0; i < re.size(); ++i) {
    if (i == 0 || re[i] - re[i - 1] > merge * std::max(1.0, std::abs(re[i]))) ++count;
  }
  return count;
}

/// {0} + `count` log-spaced points on [1e-6, 1e6] in u = w^2.
inline std::vector<double> log_u_grid(int count) {
  std::vector<double> u{0.0};
  for (int i = 0; i < count; ++i) u.push_back(std::pow(10.0, -6.0 + 12.0 * i / (count - 1)));
  return u;
}

/// min over the grid of Re[b(jw)/a(jw)] by direct complex evaluation.
inline double sampled_re_min(const Polynomial& b, const Polynomial& a, int count = 10000) {
  double m = std::numeric_limits<double>::infinity();
  for (double u : log_u_grid(count)) {
    const std::complex<double> jw(0.0, std::sqrt(u));
    m = std::min(m, std::real(b(jw) / a(jw)));
  }
  return m;
}

/// c-vector via the product b(s) a(-s): its even-power coefficients, signed
/// by j^{2k} = (-1)^k, are the coefficients of Re[b(jw) a(-jw)] in w^2.
inline std::vector<double> c_by_product(const Polynomial& a, const Polynomial& b) {
  const int n = a.degree();
  std::vector<double> a_neg(a.coeffs().begin(), a.coeffs().end());
  for (int i = 0; i <= n; ++i) {
    if ((n - i) % 2 == 1) a_neg[static_cast<std::size_t>(i)] = -a_neg[static_cast<std::size_t>(i)];
  }
  std::vector<double> prod(static_cast<std::size_t>(2 * n) + 1, 0.0);
  const std::vector<double> bp = b.padded(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      prod[static_cast<std::size_t>(i + j)] += bp[static_cast<std::size_t>(i)] * a_neg[static_cast<std::size_t>(j)];
    }
  }
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int l = 0; l <= n; ++l) {
    const int power = 2 * (n - l);  // coefficient of s^power sits at index 2n - power
    const double v = prod[static_cast<std::size_t>(2 * n - power)];
    c[static_cast<std::size_t>(l)] = ((power / 2) % 2 == 0) ? v : -v;
  }
  return c;
}

struct SegmentGridVerdict {
  bool stable = true;
  double min_pivot = std::numeric_limits<double>::infinity();
};

/// Routh verdicts on `samples` equally spaced points of the segment, plus the
/// smallest Routh first-column magnitude seen (normalized polynomials).
inline SegmentGridVerdict segment_grid_oracle(const Polynomial& a, const Polynomial& b,
                                              int samples = 1025) {
  SegmentGridVerdict v;
  for (int i = 0; i < samples; ++i) {
    const double lambda = static_cast<double>(i) / (samples - 1);
    const Polynomial p = add(scale(a, lambda), scale(b, 1.0 - lambda));
    const std::vector<double> col = routh_first_column(p);
    const bool ok = col.size() == static_cast<std::size_t>(p.degree()) + 1 &&
                    std::all_of(col.begin(), col.end(), [](double x) { return x > 1e-10; });
    v.stable = v.stable && ok;
    for (double x : col) v.min_pivot = std::min(v.min_pivot, std::abs(x));
  }
  return v;
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(std::log(lo), std::log(hi));
  return std::exp(d(rng));
}

/// Monic polynomial with coefficients log-uniform in [lo, hi].
inline Polynomial random_monic(std::mt19937_64& rng, int degree, double lo = 0.1,
                               double hi = 100.0) {
  std::vector<double> c{1.0};
  for (int i = 0; i < degree; ++i) c.push_back(log_uniform(rng, lo, hi));
  return Polynomial(std::move(c));
}

/// Monic Hurwitz polynomial from random left-half-plane roots.
inline Polynomial random_hurwitz_from_roots(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> re(0.2, 5.0), im(0.1, 5.0);
  Polynomial p = Polynomial::constant(1.0);
  int left = degree;
  while (left > 0) {
    if (left >= 2 && std::bernoulli_distribution(0.5)(rng)) {
      const double x = re(rng), y = im(rng);
      p = mul(p, Polynomial{1.0, 2 * x, x * x + y * y});
      left -= 2;
    } else {
      p = mul(p, Polynomial{1.0, re(rng)});
      left -= 1;
    }
  }
  return p;
}

}  // namespace sprgeo::oracle
