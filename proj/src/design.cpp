#include "sprgeo/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sprgeo {

namespace {

constexpr int kNearMissSamples = 256;

bool is_monic(const Polynomial& p) { return std::abs(p.leading() - 1.0) <= 1e-12; }

// (a_1 - x_1) s^{n-1} + ... + (a_{n-1} - x_{n-1}) s + a_n must be Hurwitz of
// degree n-1 or n-2 for x to be weak SPR against a.
bool difference_filter(const Polynomial& a, std::span<const double> x,
                       const Tolerances& tol) {
  const int n = a.degree();
  std::vector<double> c(static_cast<std::size_t>(n));
  for (int l = 1; l <= n - 1; ++l) {
    c[static_cast<std::size_t>(l - 1)] = a[static_cast<std::size_t>(l)] - x[static_cast<std::size_t>(l - 1)];
  }
  c[static_cast<std::size_t>(n - 1)] = a[static_cast<std::size_t>(n)];
  const Polynomial diff(std::move(c));
  if (diff.is_zero() || diff.degree() < n - 2) return false;
  return hurwitz_stable(diff, tol);
}

Polynomial monic_candidate(std::span<const double> x) {
  std::vector<double> c{1.0};
  c.insert(c.end(), x.begin(), x.end());
  return Polynomial(std::move(c));
}

double min_margin(const Polynomial& b, const PolynomialFamily& family, int samples) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& a : family.vertices()) m = std::min(m, spr_margin(b, a, samples));
  return m;
}

struct ScanOutcome {
  std::optional<std::vector<double>> survivor;
  std::optional<std::vector<double>> near_miss;
};

ScanOutcome scan_level(const PolynomialFamily& family, const DesignConfig& cfg,
                       const std::vector<double>& lo, const std::vector<double>& hi,
                       GridStats& stats) {
  const std::size_t dims = lo.size();
  const int per_axis = cfg.grid_points_per_axis;
  std::vector<int> k(dims, 1);
  std::vector<double> x(dims);

  ScanOutcome out;
  double best_survivor_margin = -std::numeric_limits<double>::infinity();
  double best_near_miss = -std::numeric_limits<double>::infinity();

  while (true) {
    for (std::size_t l = 0; l < dims; ++l) {
      x[l] = lo[l] + (k[l] * (hi[l] - lo[l])) / (per_axis + 1);
    }
    ++stats.tested;
    const Polynomial b = monic_candidate(x);
    bool pass = hurwitz_stable(b, cfg.tol);
    if (pass) {
      ++stats.passed_numerator_stability;
      pass = std::all_of(family.vertices().begin(), family.vertices().end(),
                         [&](const Polynomial& a) { return difference_filter(a, x, cfg.tol); });
      if (pass) ++stats.passed_difference_stability;
      if (pass) {
        pass = std::all_of(family.vertices().begin(), family.vertices().end(),
                           [&](const Polynomial& a) { return wspr_member(b, a, cfg.tol); });
      }
      if (pass) {
        ++stats.passed;
        if (cfg.objective == Objective::FirstFound) {
          out.survivor = x;
          return out;
        }
        const double m = min_margin(b, family, kMarginSamples);
        if (m > best_survivor_margin) {
          best_survivor_margin = m;
          out.survivor = x;
        }
      } else if (!out.survivor) {
        const double m = min_margin(b, family, kNearMissSamples);
        if (m > best_near_miss) {
          best_near_miss = m;
          out.near_miss = x;
        }
      }
    }

    // Odometer over the lattice, last coordinate fastest.
    std::size_t axis = dims;
    while (axis > 0) {
      --axis;
      if (k[axis] < per_axis) {
        ++k[axis];
        break;
      }
      k[axis] = 1;
      if (axis == 0) return out;
    }
    if (dims == 0) return out;
  }
}

}  // namespace

PolynomialFamily::PolynomialFamily(std::vector<Polynomial> vertices)
    : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw std::invalid_argument("family needs at least one vertex");
  const int n = vertices_.front().degree();
  if (n < 1) throw std::invalid_argument("family vertices must have degree >= 1");
  for (const auto& v : vertices_) {
    if (v.degree() != n) throw std::invalid_argument("family vertices differ in degree");
    if (!is_monic(v)) throw std::invalid_argument("family vertex " + v.to_string() + " is not monic");
  }
}

void DesignConfig::validate() const {
  if (grid_points_per_axis < 2) throw std::invalid_argument("grid needs >= 2 points per axis");
  if (refine_levels < 0) throw std::invalid_argument("refine levels must be >= 0");
  if (!(epsilon_start > 0.0)) throw std::invalid_argument("epsilon_start must be positive");
  tol.validate();
}

std::string_view to_string(DesignStatus status) {
  switch (status) {
    case DesignStatus::Found:
      return "Found";
    case DesignStatus::HullUnstable:
      return "HullUnstable";
    case DesignStatus::GridExhausted:
      return "GridExhausted";
    case DesignStatus::LiftFailed:
      return "LiftFailed";
  }
  return "Unknown";
}

std::array<Polynomial, 4> kharitonov_vertices(std::span<const double> lower,
                                              std::span<const double> upper) {
  if (lower.size() != upper.size() || lower.size() < 2) {
    throw std::invalid_argument("interval bounds must have equal length >= 2");
  }
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (lower[i] > upper[i]) {
      throw std::invalid_argument("lower bound exceeds upper bound at coefficient " +
                                  std::to_string(i));
    }
  }
  if (lower[0] != 1.0 || upper[0] != 1.0) {
    throw std::invalid_argument("leading interval must be [1, 1]");
  }
  // true = upper bound, indexed by ascending power mod 4.
  static constexpr std::array<std::array<bool, 4>, 4> kPattern{{
      {false, false, true, true},
      {true, true, false, false},
      {false, true, true, false},
      {true, false, false, true},
  }};
  const std::size_t len = lower.size();
  std::array<Polynomial, 4> out;
  for (std::size_t v = 0; v < 4; ++v) {
    std::vector<double> c(len);
    for (std::size_t i = 0; i < len; ++i) {
      const std::size_t power = len - 1 - i;
      c[i] = kPattern[v][power % 4] ? upper[i] : lower[i];
    }
    out[v] = Polynomial(std::move(c));
  }
  return out;
}

Polynomial characteristic_polynomial(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("characteristic polynomial of a non-square matrix");
  std::vector<double> asc(static_cast<std::size_t>(n) + 1, 0.0);
  asc[static_cast<std::size_t>(n)] = 1.0;
  Eigen::MatrixXd mk = Eigen::MatrixXd::Zero(n, n);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = m * mk + asc[static_cast<std::size_t>(n - k + 1)] * id;
    asc[static_cast<std::size_t>(n - k)] = -(m * mk).trace() / static_cast<double>(k);
  }
  return Polynomial::from_ascending(asc);
}

bool segment_stable(const Polynomial& a, const Polynomial& b, const Tolerances& tol) {
  if (a.degree() != b.degree() || a.degree() < 1 || !is_monic(a) || !is_monic(b)) {
    throw std::invalid_argument("segment endpoints must be monic of equal degree");
  }
  if (!hurwitz_stable(a, tol) || !hurwitz_stable(b, tol)) return false;

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(hurwitz_matrix(b));
  const Eigen::MatrixXd m = lu.solve(hurwitz_matrix(a));
  const Polynomial p = characteristic_polynomial(m);

  // Real eigenvalues in (-inf, 0] of m are the roots of p(-mu) in [0, inf).
  if (std::abs(p.constant_term()) <= tol.zero_eps * p.max_abs()) return false;
  std::vector<double> flipped(p.coeffs().begin(), p.coeffs().end());
  const int n = p.degree();
  for (int i = 0; i <= n; ++i) {
    if ((n - i) % 2 == 1) flipped[static_cast<std::size_t>(i)] = -flipped[static_cast<std::size_t>(i)];
  }
  return count_distinct_roots_in(Polynomial(std::move(flipped)), 0.0,
                                 std::numeric_limits<double>::infinity(), tol) == 0;
}

bool hull_robustly_stable(const PolynomialFamily& family, const Tolerances& tol) {
  const auto& v = family.vertices();
  for (const auto& p : v) {
    if (!hurwitz_stable(p, tol)) return false;
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (!segment_stable(v[i], v[j], tol)) return false;
    }
  }
  return true;
}

BoxRegion family_box(const PolynomialFamily& family) {
  const int n = family.degree();
  BoxRegion box;
  box.lower.assign(static_cast<std::size_t>(n - 1), 0.0);
  box.closed_upper.assign(static_cast<std::size_t>(n - 1), false);
  for (int l = 1; l <= n - 1; ++l) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& a : family.vertices()) m = std::min(m, a[static_cast<std::size_t>(l)]);
    box.upper.push_back(m);
  }
  return box;
}

std::vector<BoxRegion> per_vertex_boxes(const PolynomialFamily& family) {
  std::vector<BoxRegion> out;
  for (const auto& a : family.vertices()) out.push_back(wspr_bounding_box(a));
  return out;
}

std::vector<MembershipVerdict> intersection_membership(const Polynomial& b,
                                                       const PolynomialFamily& family,
                                                       const Tolerances& tol) {
  std::vector<MembershipVerdict> out;
  const bool weak = b.degree() == family.degree() - 1;
  for (const auto& a : family.vertices()) {
    out.push_back(weak ? is_wspr(b, a, tol) : is_spr(b, a, tol));
  }
  return out;
}

DesignOutcome grid_design(const PolynomialFamily& family, const DesignConfig& cfg) {
  cfg.validate();
  const int n = family.degree();
  const Polynomial alpha = cfg.lift_direction.value_or(Polynomial::monomial(n));
  if (alpha.degree() != n || !is_monic(alpha)) {
    throw std::invalid_argument("lift direction must be monic of the family degree");
  }

  DesignOutcome out;
  if (!hull_robustly_stable(family, cfg.tol)) {
    out.status = DesignStatus::HullUnstable;
    out.message = "there does not exist such a b(s)";
    return out;
  }

  const BoxRegion box = family_box(family);
  std::vector<double> lo = box.lower;
  std::vector<double> hi = box.upper;
  std::optional<std::vector<double>> chosen;
  for (int level = 0; level <= cfg.refine_levels; ++level) {
    ++out.stats.levels_scanned;
    const ScanOutcome scan = scan_level(family, cfg, lo, hi, out.stats);
    if (scan.survivor) {
      chosen = scan.survivor;
      break;
    }
    if (!scan.near_miss) break;
    for (std::size_t l = 0; l < lo.size(); ++l) {
      const double step = (hi[l] - lo[l]) / (cfg.grid_points_per_axis + 1);
      const double centre = (*scan.near_miss)[l];
      lo[l] = std::max(box.lower[l], centre - step);
      hi[l] = std::min(box.upper[l], centre + step);
    }
  }

  if (!chosen) {
    out.status = DesignStatus::GridExhausted;
    out.message = "there does not exist such a b in the intersection of the weak SPR "
                  "regions with the given precision";
    return out;
  }

  const Polynomial x = monic_candidate(*chosen);
  const LiftResult lift =
      lift_to_spr(family.vertices(), x, alpha, cfg.tol, cfg.epsilon_start);
  if (!lift.certificate.verified) {
    out.status = DesignStatus::LiftFailed;
    out.message = "no verified lift found for " + x.to_string();
    return out;
  }

  DesignResult result;
  result.wspr_point = x;
  result.epsilon = lift.certificate.epsilon;
  result.spr_numerator = lift.numerator;
  result.lift = lift.certificate;
  result.grid_stats = out.stats;
  for (const auto& a : family.vertices()) {
    result.per_vertex.push_back(is_spr(lift.numerator, a, cfg.tol));
  }
  out.status = DesignStatus::Found;
  out.result = std::move(result);
  return out;
}

}  // namespace sprgeo
