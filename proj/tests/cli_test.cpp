#include <gtest/gtest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sprgeo/cli.hpp"
#include "sprgeo/family_io.hpp"

namespace sprgeo {
namespace {

namespace fs = std::filesystem;

const std::string kFixtures = SPRGEO_FIXTURES;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const char* name) { return kFixtures + "/" + name; }

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("sprgeo_cli_test_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(file(name)) << text;
    return file(name);
  }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Check, KnownNumerators) {
  const CliRun w = run({"check-wspr", "--num", "1,3.3,2.24,1.76", fixture("interval_quartic.json")});
  EXPECT_EQ(w.code, kExitOk) << w.err;
  EXPECT_NE(w.out.find("member for 4 of 4 vertices"), std::string::npos);

  const CliRun s = run({"check-spr", "--num", "0.3,1,3.3,2.24,1.76", fixture("interval_quartic.json")});
  EXPECT_EQ(s.code, kExitOk) << s.err;

  const CliRun s2 = run({"check-spr", "--num", "0.1 1 7.2 18.6 42.6 44.4 43.6 15.2",
                      fixture("septic_family.json")});
  EXPECT_EQ(s2.code, kExitOk) << s2.err;
}

TEST(Check, NonMemberAndErrors) {
  const CliRun bad = run({"check-wspr", "--num", "1,3.001", fixture("second_order.json")});
  EXPECT_EQ(bad.code, kExitNotMember);
  EXPECT_NE(bad.out.find("RealPartNotPositive"), std::string::npos);

  EXPECT_EQ(run({"check-spr", "--num", "1,3.3,2.24,1.76", fixture("interval_quartic.json")}).code,
            kExitInputError);
  EXPECT_EQ(run({"check-spr", "--num", "1,x", fixture("second_order.json")}).code, kExitInputError);
  EXPECT_EQ(run({"check-spr", "--num", "1,3,2", fixture("missing.json")}).code, kExitInputError);
  EXPECT_EQ(run({"check-spr", fixture("second_order.json")}).code, kExitInputError);
  EXPECT_EQ(run({"check-spr", "--num", "1,3,2", "--tol", "-1", fixture("second_order.json")}).code,
            kExitInputError);
  EXPECT_EQ(run({"frobnicate"}).code, kExitInputError);
  EXPECT_EQ(run({}).code, kExitInputError);
}

TEST(Check, HelpAndVersion) {
  EXPECT_EQ(run({"--help"}).code, kExitOk);
  const CliRun v = run({"--version"});
  EXPECT_EQ(v.code, kExitOk);
  EXPECT_NE(v.out.find("0.1.0"), std::string::npos);
}

TEST(Design, IntervalQuarticCertificateReverifies) {
  TempDir tmp;
  const std::string cert = tmp.file("cert.json");
  const CliRun r = run({"design", fixture("interval_quartic.json"), "--grid", "32", "--out", cert});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const CertificateSummary s = parse_certificate(slurp(cert));
  std::ostringstream exact;
  exact.precision(17);
  for (std::size_t i = 0; i < s.spr_numerator.size(); ++i) {
    exact << (i ? "," : "") << s.spr_numerator[i];
  }
  for (const auto& v : s.vertices) {
    FamilyFile single;
    single.degree = static_cast<int>(v.size()) - 1;
    single.vertices = {v};
    const std::string path = tmp.write("vertex.json", serialize_family_file(single));
    EXPECT_EQ(run({"check-spr", "--num", exact.str(), path}).code, kExitOk);
  }
}

TEST(Design, CertificateOnStdoutIsPureJson) {
  const CliRun r = run({"design", fixture("second_order.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NO_THROW(parse_certificate(r.out));
  EXPECT_NE(r.err.find("weak SPR point"), std::string::npos);
}

TEST(Design, SepticWithRefinement) {
  const CliRun r = run({"design", fixture("septic_family.json"), "--grid", "8", "--refine", "1"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
}

TEST(Design, UnstableFamily) {
  const CliRun r = run({"design", fixture("unstable_family.json")});
  EXPECT_EQ(r.code, kExitHullUnstable);
  EXPECT_NE((r.out + r.err).find("there does not exist such a b(s)"), std::string::npos);
}

TEST(Design, GridExhausted) {
  TempDir tmp;
  const std::string fam = tmp.write(
      "narrow.json", R"({"degree": 3, "vertices": [[1, 5.34, 26.47, 63.78], [1, 1.81, 0.646, 0.099]]})");
  const CliRun r = run({"design", fam, "--grid", "4"});
  EXPECT_EQ(r.code, kExitGridExhausted);
}

TEST(Design, ByteDeterministic) {
  const std::vector<std::string> args{"design", fixture("interval_quartic.json"), "--grid", "16",
                                      "--best"};
  const CliRun a = run(args), b = run(args);
  EXPECT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.err, b.err);
}

TEST(Slice, SecondOrderInterval) {
  const CliRun r = run({"slice", fixture("second_order.json"), "--slice-axes", "1", "--resolution", "6"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "x1,member,margin");
  // Samples k*3/6 for k = 1..6 all lie in (0, 3].
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    EXPECT_NE(line.find(",1,"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 6);
}

TEST(Slice, KnownPointIsMember) {
  const CliRun r = run({"slice", fixture("interval_quartic.json"), "--slice-axes", "1,2",
                     "--slice-fixed", "1.76", "--resolution", "100"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("\n3.3,2.24,1,"), std::string::npos);
}

TEST(Slice, ResolutionOneAndErrors) {
  const CliRun r = run({"slice", fixture("second_order.json"), "--slice-axes", "1", "--resolution", "1"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 2);
  EXPECT_EQ(run({"slice", fixture("second_order.json"), "--slice-axes", "2"}).code, kExitInputError);
  EXPECT_EQ(run({"slice", fixture("interval_quartic.json"), "--slice-axes", "1,2"}).code,
            kExitInputError);
  EXPECT_EQ(run({"slice", fixture("second_order.json"), "--slice-axes", "1", "--resolution", "0"}).code,
            kExitInputError);
}

TEST(Witness, Unbounded) {
  const CliRun r = run({"witness", "unbounded", "--den", "1,3,2", "--d", "1,2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("s^2 + 1.3333333333333333*s + 1"), std::string::npos);
  EXPECT_NE(r.out.find("SPR: verified"), std::string::npos);
  EXPECT_EQ(run({"witness", "unbounded", "--den", "1,3,2", "--d", "1,-2"}).code, kExitInputError);
  EXPECT_EQ(run({"witness", "unbounded", "--den", "1,3,2"}).code, kExitInputError);
}

TEST(Witness, WsprPoint) {
  const CliRun r = run({"witness", "wspr-point", "--den", "1,3,2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("witness: s + 3\n"), std::string::npos);
  EXPECT_NE(r.out.find("weak SPR: verified"), std::string::npos);
  EXPECT_EQ(run({"witness", "wspr-point", "--den", "1,0,-1"}).code, kExitInputError);
}

TEST(Witness, Lift) {
  const CliRun r = run({"witness", "lift", "--den", "1,89,56,88,1", "--num", "1,3.3,2.24,1.76",
                     "--alpha", "1,0,0,0,0"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("epsilon: "), std::string::npos);
  EXPECT_NE(r.out.find("SPR: verified"), std::string::npos);
  EXPECT_EQ(run({"witness", "lift", "--den", "1,3,2", "--num", "1,3,2"}).code, kExitInputError);
  EXPECT_EQ(run({"witness", "lift", "--den", "1,3,2", "--num", "1,4"}).code, kExitInputError);
  EXPECT_EQ(run({"witness", "bogus", "--den", "1,3,2"}).code, kExitInputError);
}

TEST(Kharitonov, IntervalQuartic) {
  const CliRun r = run({"kharitonov", fixture("interval_quartic_bounds.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const FamilyFile got = parse_family_file(r.out);
  const FamilyFile want = load_family_file(fixture("interval_quartic.json"));
  EXPECT_EQ(got.degree, 4);
  ASSERT_EQ(got.vertices.size(), 4u);
  for (const auto& v : want.vertices) {
    EXPECT_NE(std::find(got.vertices.begin(), got.vertices.end(), v), got.vertices.end());
  }
}

TEST(Kharitonov, DegenerateAndInverted) {
  TempDir tmp;
  const std::string same = tmp.write(
      "same.json", R"({"degree": 2, "intervals": {"lower": [1, 3, 2], "upper": [1, 3, 2]}})");
  const CliRun r = run({"kharitonov", same, "--out", tmp.file("v.json")});
  ASSERT_EQ(r.code, kExitOk);
  const FamilyFile f = load_family_file(tmp.file("v.json"));
  for (const auto& v : f.vertices) EXPECT_EQ(v, (std::vector<double>{1, 3, 2}));

  const std::string inv = tmp.write(
      "inv.json", R"({"degree": 2, "intervals": {"lower": [1, 4, 2], "upper": [1, 3, 2]}})");
  EXPECT_EQ(run({"kharitonov", inv}).code, kExitInputError);
  EXPECT_EQ(run({"kharitonov", fixture("second_order.json")}).code, kExitInputError);
}

}  // namespace
}  // namespace sprgeo
