#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sprgeo/poly.hpp"
#include "sprgeo/region.hpp"
#include "sprgeo/spr_algebra.hpp"

namespace sprgeo {

/// Finite set of monic denominators of a common degree n >= 1.
class PolynomialFamily {
 public:
  /// Throws std::invalid_argument if empty, non-monic or of mixed degree.
  explicit PolynomialFamily(std::vector<Polynomial> vertices);

  const std::vector<Polynomial>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  int degree() const { return vertices_.front().degree(); }

 private:
  std::vector<Polynomial> vertices_;
};

enum class Objective { FirstFound, BestMargin };

struct DesignConfig {
  int grid_points_per_axis = 32;
  int refine_levels = 0;
  Tolerances tol;
  Objective objective = Objective::FirstFound;
  double epsilon_start = 1.0;
  /// Monic degree-n lift direction; s^n when unset.
  std::optional<Polynomial> lift_direction;

  void validate() const;
};

struct GridStats {
  long long tested = 0;
  long long passed_numerator_stability = 0;
  long long passed_difference_stability = 0;
  long long passed = 0;
  int levels_scanned = 0;
};

struct DesignResult {
  Polynomial wspr_point;
  double epsilon = 0.0;
  Polynomial spr_numerator;
  std::vector<MembershipVerdict> per_vertex;
  GridStats grid_stats;
  EpsilonCertificate lift;
};

enum class DesignStatus { Found, HullUnstable, GridExhausted, LiftFailed };

std::string_view to_string(DesignStatus status);

struct DesignOutcome {
  DesignStatus status = DesignStatus::GridExhausted;
  std::optional<DesignResult> result;
  GridStats stats;
  std::string message;
};

/// The four Kharitonov polynomials of an interval family given by descending
/// coefficient bounds. The leading interval must be [1, 1]. Vertex k follows
/// the ascending-power bound pattern
///   K1: l l u u, K2: u u l l, K3: l u u l, K4: u l l u  (repeating).
std::array<Polynomial, 4> kharitonov_vertices(std::span<const double> lower,
                                              std::span<const double> upper);

/// lambda a + (1 - lambda) b is Hurwitz for every lambda in [0, 1].
///
/// Both endpoints must be Hurwitz, and H(b)^{-1} H(a) must have no real
/// eigenvalue in (-inf, 0]. The characteristic polynomial comes from the
/// Leverrier-Faddeev recursion and its roots are located by Sturm counts.
/// Throws std::invalid_argument when the polynomials are not monic of equal
/// degree.
bool segment_stable(const Polynomial& a, const Polynomial& b, const Tolerances& tol = {});

/// Characteristic polynomial of a square matrix, descending, by
/// Leverrier-Faddeev.
Polynomial characteristic_polynomial(const Eigen::MatrixXd& m);

/// Every vertex Hurwitz and every pairwise segment stable.
bool hull_robustly_stable(const PolynomialFamily& family, const Tolerances& tol = {});

/// Open box 0 < x_l < min_i a_l^(i), l = 1..n-1.
BoxRegion family_box(const PolynomialFamily& family);

/// Each vertex's own weak SPR bounding box.
std::vector<BoxRegion> per_vertex_boxes(const PolynomialFamily& family);

/// One verdict per vertex: SPR when deg b = n, weak SPR when deg b = n - 1.
std::vector<MembershipVerdict> intersection_membership(const Polynomial& b,
                                                       const PolynomialFamily& family,
                                                       const Tolerances& tol = {});

/// Hull gate, lattice scan of the family box with the three filters, then a
/// verified lift of the chosen weak SPR point.
DesignOutcome grid_design(const PolynomialFamily& family, const DesignConfig& cfg);

}  // namespace sprgeo
