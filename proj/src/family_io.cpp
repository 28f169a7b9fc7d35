#include "sprgeo/family_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sprgeo {

namespace {

using json = nlohmann::ordered_json;

std::vector<double> coeff_array(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw InputError(what + " must be a non-empty array");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw InputError(what + " must contain only numbers");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw InputError(what + " contains a non-finite value");
    out.push_back(x);
  }
  return out;
}

bool is_flat_numeric(const json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const json& v) {
           return v.is_number() || v.is_null();
         });
}

// Indented JSON with numeric arrays kept on one line.
void write_json(std::string& out, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const std::string inner(static_cast<std::size_t>(indent + 2), ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t i = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++i) {
      out += inner + json(it.key()).dump() + ": ";
      write_json(out, it.value(), indent + 2);
      out += (i + 1 < j.size()) ? ",\n" : "\n";
    }
    out += pad + "}";
  } else if (j.is_array() && !j.empty() && !is_flat_numeric(j)) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += inner;
      write_json(out, j[i], indent + 2);
      out += (i + 1 < j.size()) ? ",\n" : "\n";
    }
    out += pad + "]";
  } else if (j.is_array()) {
    out += "[";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ", ";
      out += j[i].dump();
    }
    out += "]";
  } else {
    out += j.dump();
  }
}

std::string pretty(const json& j) {
  std::string out;
  write_json(out, j, 0);
  return out + "\n";
}

json to_json(std::span<const double> c) { return json(std::vector<double>(c.begin(), c.end())); }

json verdict_json(const Polynomial& vertex, const MembershipVerdict& v) {
  json j;
  j["vertex"] = to_json(vertex.coeffs());
  j["member"] = v.member;
  j["c"] = v.c.c;
  j["halfline_roots"] = v.halfline_roots;
  j["margin"] = std::isfinite(v.margin) ? json(v.margin) : json(nullptr);
  if (v.failure_reason) j["failure_reason"] = std::string(to_string(*v.failure_reason));
  return j;
}

json family_json(const FamilyFile& f) {
  json j;
  j["degree"] = f.degree;
  if (f.intervals) {
    j["intervals"] = {{"lower", f.intervals->lower}, {"upper", f.intervals->upper}};
  } else {
    j["vertices"] = f.vertices;
  }
  return j;
}

}  // namespace

PolynomialFamily FamilyFile::to_family() const {
  if (intervals) {
    const auto k = kharitonov_vertices(intervals->lower, intervals->upper);
    return PolynomialFamily(std::vector<Polynomial>(k.begin(), k.end()));
  }
  std::vector<Polynomial> v;
  for (const auto& c : vertices) v.emplace_back(c);
  return PolynomialFamily(std::move(v));
}

FamilyFile parse_family_file(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("family file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("family file must be a JSON object");
  if (!j.contains("degree") || !j["degree"].is_number_integer()) {
    throw InputError("family file needs an integer \"degree\"");
  }
  FamilyFile f;
  f.degree = j["degree"].get<int>();
  if (f.degree < 1) throw InputError("degree must be >= 1");
  const std::size_t len = static_cast<std::size_t>(f.degree) + 1;

  const bool has_vertices = j.contains("vertices");
  const bool has_intervals = j.contains("intervals");
  if (has_vertices == has_intervals) {
    throw InputError("family file needs exactly one of \"vertices\" or \"intervals\"");
  }
  if (has_vertices) {
    const json& vs = j["vertices"];
    if (!vs.is_array() || vs.empty()) throw InputError("\"vertices\" must be a non-empty array");
    for (const auto& v : vs) {
      auto c = coeff_array(v, "vertex");
      if (c.size() != len) throw InputError("vertex length does not match degree");
      if (c[0] != 1.0) throw InputError("vertex leading coefficient must be 1");
      f.vertices.push_back(std::move(c));
    }
  } else {
    const json& iv = j["intervals"];
    if (!iv.is_object() || !iv.contains("lower") || !iv.contains("upper")) {
      throw InputError("\"intervals\" needs \"lower\" and \"upper\"");
    }
    IntervalBounds b{coeff_array(iv["lower"], "lower"), coeff_array(iv["upper"], "upper")};
    if (b.lower.size() != len || b.upper.size() != len) {
      throw InputError("interval bound length does not match degree");
    }
    f.intervals = std::move(b);
  }
  return f;
}

std::string serialize_family_file(const FamilyFile& file) {
  return pretty(family_json(file));
}

FamilyFile load_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_family_file(ss.str());
}

FamilyFile family_file_from(const PolynomialFamily& family) {
  FamilyFile f;
  f.degree = family.degree();
  for (const auto& v : family.vertices()) {
    f.vertices.emplace_back(v.coeffs().begin(), v.coeffs().end());
  }
  return f;
}

std::string certificate_json(const FamilyFile& input, const DesignConfig& cfg,
                             const DesignResult& result) {
  json j;
  j["tool"] = "sprgeo";
  j["version"] = std::string(kToolVersion);
  j["input"] = family_json(input);
  j["config"] = {
      {"grid", cfg.grid_points_per_axis},
      {"refine", cfg.refine_levels},
      {"objective", cfg.objective == Objective::BestMargin ? "best-margin" : "first-found"},
      {"eps_start", cfg.epsilon_start},
      {"zero_eps", cfg.tol.zero_eps},
      {"margin_eps", cfg.tol.margin_eps},
  };
  j["wspr_point"] = to_json(result.wspr_point.coeffs());
  j["epsilon"] = result.epsilon;
  j["spr_numerator"] = to_json(result.spr_numerator.coeffs());
  j["lift"] = {
      {"attempts", result.lift.attempts},
      {"estimate_mn", result.lift.estimate_mn && std::isfinite(*result.lift.estimate_mn)
                          ? json(*result.lift.estimate_mn)
                          : json(nullptr)},
  };
  j["grid_stats"] = {
      {"tested", result.grid_stats.tested},
      {"passed_numerator_stability", result.grid_stats.passed_numerator_stability},
      {"passed_difference_stability", result.grid_stats.passed_difference_stability},
      {"passed", result.grid_stats.passed},
      {"levels_scanned", result.grid_stats.levels_scanned},
  };
  const PolynomialFamily family = input.to_family();
  json pv = json::array();
  for (std::size_t i = 0; i < family.size(); ++i) {
    pv.push_back(verdict_json(family.vertices()[i], result.per_vertex[i]));
  }
  j["per_vertex"] = std::move(pv);
  return pretty(j);
}

CertificateSummary parse_certificate(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("certificate is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("spr_numerator") || !j.contains("per_vertex")) {
    throw InputError("certificate lacks spr_numerator or per_vertex");
  }
  CertificateSummary s;
  s.spr_numerator = coeff_array(j["spr_numerator"], "spr_numerator");
  for (const auto& v : j["per_vertex"]) {
    if (!v.contains("vertex")) throw InputError("certificate vertex entry lacks \"vertex\"");
    s.vertices.push_back(coeff_array(v["vertex"], "vertex"));
  }
  if (j.contains("epsilon") && j["epsilon"].is_number()) s.epsilon = j["epsilon"].get<double>();
  return s;
}

}  // namespace sprgeo
