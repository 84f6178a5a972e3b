#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "keller/cli.hpp"

using namespace keller;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result lab(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("keller_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string slurp(const std::string& name) const {
    std::ifstream in(path(name));
    return std::string(std::istreambuf_iterator<char>(in), {});
  }

  void put(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  fs::path dir_;
};

const Field Q = Field::rationals();

}  // namespace

TEST_F(Cli, GenN4) {
  const Result r = lab({"gen", "--family", "n4", "--degree", "3", "-o", path("h.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "family=n4 d=3 n=4 nonzero=2 field=Q\n");
  const PolyMap h = json::map_from_json(json::read_file(path("h.json")));
  EXPECT_EQ(h.n_out(), 4u);
  EXPECT_EQ(h, make_family({FamilyKind::n4, 3, std::nullopt, std::nullopt}));
}

TEST_F(Cli, GenToStdout) {
  const Result r = lab({"gen", "--family", "small2", "--degree", "3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::map_from_json(nlohmann::json::parse(r.out)),
            make_family({FamilyKind::small2, 3, std::nullopt, std::nullopt}));
}

TEST_F(Cli, GenF667NuZeroOverCubeRootsOfUnity) {
  const Result r = lab({"gen", "--family", "f667", "--degree", "3", "--nu", "0", "-o", path("h.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::read_file(path("h.json"));
  EXPECT_EQ(j["field"]["min_poly"], nlohmann::json({"1", "1", "1"}));
  EXPECT_NE(r.out.find("n=8"), std::string::npos);
}

TEST_F(Cli, GenRejections) {
  EXPECT_EQ(lab({"gen", "--family", "n4", "--degree", "2", "-o", path("h.json")}).code, 2);
  EXPECT_EQ(lab({"gen", "--family", "n9", "--degree", "3"}).code, 2);
  EXPECT_EQ(lab({"gen", "--family", "n4"}).code, 2);
  EXPECT_EQ(lab({"gen", "--family", "n4", "--degree", "3", "--bogus"}).code, 2);
  EXPECT_EQ(lab({}).code, 2);
  EXPECT_EQ(lab({"frobnicate"}).code, 2);
}

TEST_F(Cli, AnalyzeN4) {
  ASSERT_EQ(lab({"gen", "--family", "n4", "--degree", "3", "-o", path("h.json")}).code, 0);
  const Result r = lab({"analyze", path("h.json"), "--checks", "quasi,jc", "--report", path("r.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("quasi: holds"), std::string::npos);
  EXPECT_NE(r.out.find("jc: fails"), std::string::npos);
  const auto rep = json::read_file(path("r.json"));
  EXPECT_EQ(rep["schema"], "report/1");
  EXPECT_EQ(rep["conditions"]["jc"], "fails");
  EXPECT_EQ(rep["conditions"]["quasi"], "holds");
  EXPECT_TRUE(rep["witnesses"]["jc"].contains("points"));
}

TEST_F(Cli, AnalyzeN5) {
  ASSERT_EQ(lab({"gen", "--family", "n5", "--degree", "2", "-o", path("h.json")}).code, 0);
  const Result r = lab({"analyze", path("h.json"), "--checks", "jc-plus,star"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("jc-plus: holds"), std::string::npos);
  EXPECT_NE(r.out.find("star: fails"), std::string::npos);
}

TEST_F(Cli, AnalyzeZeroMapHolds) {
  put("h.json", R"({"field":{"min_poly":["0","1"]},"nvars":2,"components":[{"nvars":2,"terms":[]},{"nvars":2,"terms":[]}]})");
  const Result r = lab({"analyze", path("h.json"), "--checks", "keller,quasi,jc,jc-plus,strong-nilpotent"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

TEST_F(Cli, AnalyzeErrors) {
  put("bad.json", "{not json");
  EXPECT_EQ(lab({"analyze", path("bad.json")}).code, 2);
  EXPECT_EQ(lab({"analyze", path("missing.json")}).code, 2);
  put("h.json", R"({"nvars":2,"components":[{"nvars":2,"terms":[]}]})");
  EXPECT_EQ(lab({"analyze", path("h.json")}).code, 2);
  put("h2.json", R"({"nvars":2,"components":[{"nvars":2,"terms":[]},{"nvars":2,"terms":[]}]})");
  EXPECT_EQ(lab({"analyze", path("h2.json"), "--checks", "nope"}).code, 2);
}

TEST_F(Cli, ReportsAreDeterministic) {
  ASSERT_EQ(lab({"gen", "--family", "f666", "--degree", "2", "-o", path("h.json")}).code, 0);
  // quasi fails for f666, so the exit code is 1
  ASSERT_EQ(lab({"analyze", path("h.json"), "--report", path("a.json")}).code, 1);
  ASSERT_EQ(lab({"analyze", path("h.json"), "--report", path("b.json")}).code, 1);
  EXPECT_EQ(slurp("a.json"), slurp("b.json"));
  EXPECT_FALSE(slurp("a.json").empty());
}

TEST_F(Cli, CertifyF666) {
  const FamilySpec s{FamilyKind::f666, 2, std::nullopt, std::nullopt};
  json::write_file(path("h.json"), json::map_to_json(make_family(s)));
  StarCertificate cert = family_certificate(s);
  json::write_file(path("c.json"), json::certificate_to_json(cert));
  Result r = lab({"certify", path("h.json"), "--cert", path("c.json"), "--level", "triplestar"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(r.out, "certificate verifies at level triplestar\n");

  StarCertificate bad = cert;
  bad.triples[0].b[bad.triples[0].b.size() - 1] += Q.one();
  json::write_file(path("bad.json"), json::certificate_to_json(bad));
  r = lab({"certify", path("h.json"), "--cert", path("bad.json"), "--level", "triplestar"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("sum mismatch"), std::string::npos);
  EXPECT_EQ(lab({"certify", path("h.json"), "--cert", path("c.json"), "--level", "quadstar"}).code, 2);
}

TEST_F(Cli, CertifyOrthogonalityClause) {
  // H = (x1 + x2)^2 e1, with c = (1,1) and b = e1 not orthogonal
  put("h.json", R"({"nvars":2,"components":[
      {"nvars":2,"terms":[{"exps":[2,0],"coeff":"1"},{"exps":[1,1],"coeff":"2"},{"exps":[0,2],"coeff":"1"}]},
      {"nvars":2,"terms":[]}]})");
  put("c.json", R"({"level":"star","triples":[{"c":["1","1"],"d":2,"b":["1","0"]}]})");
  const Result r = lab({"certify", path("h.json"), "--cert", path("c.json"), "--level", "star"});
  EXPECT_EQ(r.code, 1) << r.err;
  EXPECT_EQ(r.out, "certificate rejected: orthogonality (1,1)\n");
}

TEST_F(Cli, VerifyIdentityAndGz) {
  Result r = lab({"verify-identity", "--name", "all", "--degree", "4"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(lab({"verify-identity", "--name", "eq667h", "--degree", "2"}).code, 0);
  EXPECT_EQ(lab({"verify-identity", "--name", "nope", "--degree", "2"}).code, 2);
  r = lab({"gz-verify"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("gz-verify: holds"), std::string::npos);
}

TEST_F(Cli, RoundTripBuiltInFamilies) {
  for (auto k : {FamilyKind::n4, FamilyKind::n5, FamilyKind::f666, FamilyKind::f667, FamilyKind::nonhomog_n4,
                 FamilyKind::nonhomog_n5, FamilyKind::small2, FamilyKind::small3})
    for (unsigned d = 2; d <= 4; ++d) {
      if (d < 3 && (k == FamilyKind::n4 || k == FamilyKind::nonhomog_n4)) continue;
      const Result g = lab({"gen", "--family", to_string(k), "--degree", std::to_string(d), "-o", path("h.json")});
      ASSERT_EQ(g.code, 0) << to_string(k) << " " << g.err;
      const PolyMap h = json::map_from_json(json::read_file(path("h.json")));
      EXPECT_EQ(h, make_family({k, d, std::nullopt, std::nullopt}));
      const Result a = lab({"analyze", path("h.json"), "--checks", "keller"});
      EXPECT_EQ(a.code, 0) << to_string(k) << " d=" << d << " " << a.out << a.err;
    }
}

TEST_F(Cli, Executable) {
  const std::string cmd = std::string(KELLER_LAB_PATH) + " gz-verify > " + path("out.txt");
  const int status = std::system(cmd.c_str());
  EXPECT_EQ(status, 0);
  EXPECT_NE(slurp("out.txt").find("gz-verify: holds"), std::string::npos);
  const std::string bad = std::string(KELLER_LAB_PATH) + " gen --family n4 --degree 2 > /dev/null 2>&1";
  const int s2 = std::system(bad.c_str());
  ASSERT_TRUE(WIFEXITED(s2));
  EXPECT_EQ(WEXITSTATUS(s2), 2);
}
