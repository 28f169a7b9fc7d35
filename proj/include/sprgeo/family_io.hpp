#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sprgeo/design.hpp"

namespace sprgeo {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Malformed or ill-shaped input document.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IntervalBounds {
  std::vector<double> lower;
  std::vector<double> upper;

  friend bool operator==(const IntervalBounds&, const IntervalBounds&) = default;
};

/// JSON family document:
///
///   {"degree": 4, "vertices": [[1, 11, 56, 88, 1], ...]}
///   {"degree": 4, "intervals": {"lower": [...], "upper": [...]}}
///
/// Coefficients are descending; vertices must be monic of length degree+1.
/// Exactly one of "vertices" / "intervals" is present.
struct FamilyFile {
  int degree = 0;
  std::vector<std::vector<double>> vertices;
  std::optional<IntervalBounds> intervals;

  /// Vertices as given, or the four Kharitonov vertices of the intervals.
  PolynomialFamily to_family() const;

  friend bool operator==(const FamilyFile&, const FamilyFile&) = default;
};

FamilyFile parse_family_file(std::string_view text);
std::string serialize_family_file(const FamilyFile& file);
FamilyFile load_family_file(const std::string& path);

FamilyFile family_file_from(const PolynomialFamily& family);

/// Certificate document for a successful design run. Deterministic for
/// fixed inputs.
std::string certificate_json(const FamilyFile& input, const DesignConfig& cfg,
                             const DesignResult& result);

/// The numerator and vertex list recorded in a certificate.
struct CertificateSummary {
  std::vector<double> spr_numerator;
  std::vector<std::vector<double>> vertices;
  double epsilon = 0.0;
};

CertificateSummary parse_certificate(std::string_view text);

}  // namespace sprgeo
