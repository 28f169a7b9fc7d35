#include "sprgeo/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>

#include "CLI11.hpp"
#include "sprgeo/design.hpp"
#include "sprgeo/family_io.hpp"
#include "sprgeo/region.hpp"

namespace sprgeo {

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string vec(std::span<const double> v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += num(v[i]);
  }
  return s + "]";
}

Tolerances tolerances_from(std::optional<double> tol) {
  Tolerances t;
  if (tol) {
    if (!(*tol > 0.0)) throw InputError("--tol must be positive");
    t.margin_eps = *tol;
    t.zero_eps = std::min(t.zero_eps, *tol);
  }
  return t;
}

void warn_degree(int degree, std::ostream& err) {
  if (degree > kWellConditionedDegree) {
    err << "warning: degree " << degree << " exceeds " << kWellConditionedDegree
        << "; Routh and Sturm verdicts may be unreliable\n";
  }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

void print_verdict(std::ostream& out, const MembershipVerdict& v) {
  out << "  member: " << (v.member ? "yes" : "no");
  if (v.failure_reason) out << " (" << to_string(*v.failure_reason) << ")";
  out << "  margin: " << num(v.margin) << "  halfline roots: " << v.halfline_roots << "\n";
  out << "  c: " << vec(v.c.c) << "\n";
}

struct CommonOpts {
  std::optional<double> tol;
};

int cmd_check(bool spr, const std::string& numerator, const std::string& family_path,
              const CommonOpts& common, std::ostream& out, std::ostream& err) {
  const Tolerances tol = tolerances_from(common.tol);
  const Polynomial b(parse_coefficients(numerator));
  const PolynomialFamily family = load_family_file(family_path).to_family();
  warn_degree(family.degree(), err);
  const int expected = spr ? family.degree() : family.degree() - 1;
  if (b.degree() != expected) {
    err << "error: numerator has degree " << b.degree() << ", expected " << expected << "\n";
    return kExitInputError;
  }
  const auto verdicts = intersection_membership(b, family, tol);
  out << (spr ? "SPR" : "weak SPR") << " check of " << b.to_string() << "\n";
  std::size_t members = 0;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    out << "vertex " << i + 1 << ": " << family.vertices()[i].to_string() << "\n";
    print_verdict(out, verdicts[i]);
    if (verdicts[i].member) ++members;
  }
  const bool all = members == verdicts.size();
  out << "result: " << (all ? "member" : "not a member") << " for " << members << " of "
      << verdicts.size() << " vertices\n";
  return all ? kExitOk : kExitNotMember;
}

struct DesignOpts {
  std::string family;
  std::optional<int> grid;
  std::optional<int> refine;
  bool best = false;
  double eps_start = 1.0;
  std::string out_path;
};

int cmd_design(const DesignOpts& o, const CommonOpts& common, std::ostream& out,
               std::ostream& err) {
  const FamilyFile file = load_family_file(o.family);
  const PolynomialFamily family = file.to_family();
  warn_degree(family.degree(), err);
  const int dims = family.degree() - 1;

  DesignConfig cfg;
  cfg.tol = tolerances_from(common.tol);
  cfg.grid_points_per_axis = o.grid.value_or(dims <= 3 ? 32 : (dims == 4 ? 16 : 8));
  cfg.refine_levels = o.refine.value_or(dims >= 5 ? 1 : 0);
  cfg.objective = o.best ? Objective::BestMargin : Objective::FirstFound;
  cfg.epsilon_start = o.eps_start;

  const DesignOutcome outcome = grid_design(family, cfg);
  // With the certificate on stdout the human-readable summary moves to stderr.
  std::ostream& log = o.out_path.empty() ? err : out;
  const GridStats& st = outcome.stats;
  log << "grid: " << st.tested << " points tested, " << st.passed_numerator_stability
      << " stable numerators, " << st.passed_difference_stability
      << " passed difference test, " << st.passed << " weak SPR for all vertices ("
      << st.levels_scanned << " level(s))\n";
  switch (outcome.status) {
    case DesignStatus::HullUnstable:
      log << outcome.message << "\n";
      return kExitHullUnstable;
    case DesignStatus::GridExhausted:
    case DesignStatus::LiftFailed:
      log << outcome.message << "\n";
      return kExitGridExhausted;
    case DesignStatus::Found:
      break;
  }
  const DesignResult& r = *outcome.result;
  log << "weak SPR point: " << r.wspr_point.to_string() << "\n";
  log << "epsilon: " << num(r.epsilon) << " (M/N estimate "
      << num(r.lift.estimate_mn.value_or(std::nan(""))) << ")\n";
  log << "SPR numerator: " << r.spr_numerator.to_string() << "\n";
  const std::string cert = certificate_json(file, cfg, r);
  emit(cert, o.out_path, out);
  if (!o.out_path.empty()) out << "certificate written to " << o.out_path << "\n";
  return kExitOk;
}

struct SliceOpts {
  std::string family;
  std::string axes;
  std::string fixed;
  int resolution = 50;
  std::string out_path;
};

int cmd_slice(const SliceOpts& o, const CommonOpts& common, std::ostream& out,
              std::ostream& err) {
  const Tolerances tol = tolerances_from(common.tol);
  const PolynomialFamily family = load_family_file(o.family).to_family();
  warn_degree(family.degree(), err);
  const int dims = family.degree() - 1;
  if (dims < 1) throw InputError("slices need degree >= 2");
  if (o.resolution < 1) throw InputError("--resolution must be >= 1");

  std::vector<int> axes;
  for (double v : parse_coefficients(o.axes)) {
    const int ax = static_cast<int>(v);
    if (ax != v || ax < 1 || ax > dims) {
      throw InputError("slice axis " + num(v) + " out of range 1.." + std::to_string(dims));
    }
    axes.push_back(ax);
  }
  if (axes.empty() || axes.size() > 2 || (axes.size() == 2 && axes[0] == axes[1])) {
    throw InputError("--slice-axes takes one or two distinct indices");
  }
  std::vector<double> fixed;
  if (!o.fixed.empty()) fixed = parse_coefficients(o.fixed);
  if (fixed.size() + axes.size() != static_cast<std::size_t>(dims)) {
    throw InputError("--slice-fixed must give " + std::to_string(dims - axes.size()) +
                     " value(s) for the remaining coordinates");
  }

  const BoxRegion box = family_box(family);
  std::vector<double> x(static_cast<std::size_t>(dims));
  {
    std::size_t fi = 0;
    for (int l = 1; l <= dims; ++l) {
      if (std::find(axes.begin(), axes.end(), l) == axes.end()) {
        x[static_cast<std::size_t>(l - 1)] = fixed[fi++];
      }
    }
  }
  auto axis_value = [&](int axis, int k) {
    return (k * box.upper[static_cast<std::size_t>(axis - 1)]) / o.resolution;
  };

  std::string csv = "x" + std::to_string(axes[0]);
  if (axes.size() == 2) csv += ",x" + std::to_string(axes[1]);
  csv += ",member,margin\n";
  const int inner = axes.size() == 2 ? o.resolution : 1;
  for (int i = 1; i <= o.resolution; ++i) {
    x[static_cast<std::size_t>(axes[0] - 1)] = axis_value(axes[0], i);
    for (int j = 1; j <= inner; ++j) {
      if (axes.size() == 2) x[static_cast<std::size_t>(axes[1] - 1)] = axis_value(axes[1], j);
      std::vector<double> c{1.0};
      c.insert(c.end(), x.begin(), x.end());
      const Polynomial b(std::move(c));
      bool member = true;
      double margin = std::numeric_limits<double>::infinity();
      for (const auto& a : family.vertices()) {
        member = member && wspr_member(b, a, tol);
        margin = std::min(margin, spr_margin(b, a));
      }
      csv += num(x[static_cast<std::size_t>(axes[0] - 1)]);
      if (axes.size() == 2) csv += "," + num(x[static_cast<std::size_t>(axes[1] - 1)]);
      csv += std::string(",") + (member ? "1" : "0") + "," + num(margin) + "\n";
    }
  }
  emit(csv, o.out_path, out);
  return kExitOk;
}

struct WitnessOpts {
  std::string kind;
  std::string den;
  std::string d;
  std::string numerator;
  std::string alpha;
  double eps_start = 1.0;
};

int cmd_witness(const WitnessOpts& o, const CommonOpts& common, std::ostream& out,
                std::ostream& err) {
  const Tolerances tol = tolerances_from(common.tol);
  if (o.den.empty()) throw InputError("--den is required");
  const Polynomial a0(parse_coefficients(o.den));
  if (a0.degree() < 1) throw InputError("denominator must have degree >= 1");
  const Polynomial a = a0.monic();
  warn_degree(a.degree(), err);
  if (!hurwitz_stable(a, tol)) {
    err << "error: denominator " << a.to_string() << " is not Hurwitz\n";
    return kExitInputError;
  }
  auto warn_condition = [&](const Witness& w) {
    if (w.condition > kConditionWarning) {
      err << "warning: condition estimate " << num(w.condition) << " exceeds "
          << num(kConditionWarning) << "\n";
    }
  };

  if (o.kind == "unbounded") {
    if (o.d.empty()) throw InputError("--d is required for unbounded witnesses");
    const std::vector<double> d = parse_coefficients(o.d);
    const Witness w = unbounded_witness(a, d, tol);
    warn_condition(w);
    const MembershipVerdict v = is_spr(w.numerator, a, tol);
    out << "witness: " << w.numerator.to_string() << "\n";
    out << "coefficients: " << vec(w.numerator.coeffs()) << "\n";
    out << "SPR: " << (v.member ? "verified" : "FAILED") << "\n";
    print_verdict(out, v);
    return v.member ? kExitOk : kExitNotMember;
  }
  if (o.kind == "wspr-point") {
    const Witness w = wspr_construct_point(a, tol);
    warn_condition(w);
    const MembershipVerdict v = is_wspr(w.numerator, a, tol);
    out << "witness: " << w.numerator.to_string() << "\n";
    out << "coefficients: " << vec(w.numerator.coeffs()) << "\n";
    out << "weak SPR: " << (v.member ? "verified" : "FAILED") << "\n";
    print_verdict(out, v);
    return v.member ? kExitOk : kExitNotMember;
  }
  if (o.kind == "lift") {
    if (o.numerator.empty()) throw InputError("--num is required for lift");
    Polynomial x(parse_coefficients(o.numerator));
    if (x.degree() != a.degree() - 1) throw InputError("lift numerator must have degree n-1");
    x = x.monic();
    const Polynomial alpha = o.alpha.empty() ? Polynomial::monomial(a.degree())
                                             : Polynomial(parse_coefficients(o.alpha));
    const LiftResult lift = lift_to_spr(a, x, alpha, tol, o.eps_start);
    if (!lift.certificate.verified) {
      out << "no verified lift within " << kMaxHalvings << " halvings\n";
      return kExitNotMember;
    }
    const MembershipVerdict v = is_spr(lift.numerator, a, tol);
    out << "epsilon: " << num(lift.certificate.epsilon) << " (M/N estimate "
        << num(lift.certificate.estimate_mn.value_or(std::nan(""))) << ", "
        << lift.certificate.attempts << " attempt(s))\n";
    out << "witness: " << lift.numerator.to_string() << "\n";
    out << "coefficients: " << vec(lift.numerator.coeffs()) << "\n";
    out << "SPR: " << (v.member ? "verified" : "FAILED") << "\n";
    print_verdict(out, v);
    return v.member ? kExitOk : kExitNotMember;
  }
  throw InputError("unknown witness kind '" + o.kind + "'");
}

int cmd_kharitonov(const std::string& path, const std::string& out_path, std::ostream& out) {
  const FamilyFile file = load_family_file(path);
  if (!file.intervals) throw InputError("kharitonov needs an \"intervals\" family file");
  const FamilyFile vertices = family_file_from(file.to_family());
  emit(serialize_family_file(vertices), out_path, out);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Strictly positive real regions and robust SPR numerator design", "sprgeo"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  CommonOpts common;
  std::function<int()> action;

  std::string check_num, check_family;
  for (const bool spr : {true, false}) {
    auto* sub = app.add_subcommand(spr ? "check-spr" : "check-wspr",
                                   spr ? "Check that num/a is SPR for every family vertex"
                                       : "Check that num/a is weak SPR for every family vertex");
    sub->add_option("--num", check_num, "Numerator coefficients, descending")->required();
    sub->add_option("family", check_family, "Family file")->required();
    sub->add_option("--tol", common.tol, "Strict-positivity margin");
    sub->callback([&, spr] {
      action = [&, spr] { return cmd_check(spr, check_num, check_family, common, out, err); };
    });
  }

  DesignOpts design;
  auto* dsub = app.add_subcommand("design", "Grid search for a common SPR numerator");
  dsub->add_option("family", design.family, "Family file")->required();
  dsub->add_option("--grid", design.grid, "Interior lattice points per axis");
  dsub->add_option("--refine", design.refine, "Refinement levels around the best near-miss");
  dsub->add_flag("--best", design.best, "Pick the survivor with the largest margin");
  dsub->add_option("--eps-start", design.eps_start, "First lift size tried");
  dsub->add_option("--tol", common.tol, "Strict-positivity margin");
  dsub->add_option("--out", design.out_path, "Certificate output path");
  dsub->callback([&] { action = [&] { return cmd_design(design, common, out, err); }; });

  SliceOpts slice;
  auto* ssub = app.add_subcommand("slice", "CSV slice of the weak SPR intersection");
  ssub->add_option("family", slice.family, "Family file")->required();
  ssub->add_option("--slice-axes", slice.axes, "One or two 1-based coordinate indices")->required();
  ssub->add_option("--slice-fixed", slice.fixed, "Values of the remaining coordinates");
  ssub->add_option("--resolution", slice.resolution, "Samples per axis");
  ssub->add_option("--tol", common.tol, "Strict-positivity margin");
  ssub->add_option("--out", slice.out_path, "CSV output path");
  ssub->callback([&] { action = [&] { return cmd_slice(slice, common, out, err); }; });

  WitnessOpts witness;
  auto* wsub = app.add_subcommand("witness", "Construct region witnesses for one denominator");
  wsub->add_option("kind", witness.kind, "unbounded | wspr-point | lift")
      ->required()
      ->check(CLI::IsMember({"unbounded", "wspr-point", "lift"}));
  wsub->add_option("--den", witness.den, "Denominator coefficients")->required();
  wsub->add_option("--d", witness.d, "Positive real-part targets (unbounded)");
  wsub->add_option("--num", witness.numerator, "Weak SPR numerator (lift)");
  wsub->add_option("--alpha", witness.alpha, "Monic lift direction (lift)");
  wsub->add_option("--eps-start", witness.eps_start, "First lift size tried (lift)");
  wsub->add_option("--tol", common.tol, "Strict-positivity margin");
  wsub->callback([&] { action = [&] { return cmd_witness(witness, common, out, err); }; });

  std::string kh_file, kh_out;
  auto* ksub = app.add_subcommand("kharitonov", "Expand interval bounds into Kharitonov vertices");
  ksub->add_option("intervals", kh_file, "Interval family file")->required();
  ksub->add_option("--out", kh_out, "Vertex family output path");
  ksub->callback([&] { action = [&] { return cmd_kharitonov(kh_file, kh_out, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    return action ? action() : kExitInputError;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitInputError;
}

}  // namespace sprgeo
