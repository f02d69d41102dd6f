#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qrep/cli.hpp"
#include "support.hpp"

using namespace qrep;

namespace {

const FieldSpec F2 = FieldSpec::prime(2);

// Same arrow id as data/a2.qv.
QuiverPtr qa() { return fx::quiver_from("vertices 2\narrow a 1 2\n", "A2"); }

std::string data(const std::string& name) { return std::string(QREP_DATA_DIR) + "/" + name; }

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);)
    if (l == line) return true;
  return false;
}

}  // namespace

TEST(ParseRepFile, SimpleWithOmittedMatrix) {
  Representation s1 = parse_rep_file("field F 2\ndim 1 0\n", qa(), F2);
  EXPECT_EQ(s1, Representation::simple(qa(), F2, 1));
}

TEST(ParseRepFile, InlineMatrix) {
  Representation p1 = parse_rep_file("field F 2\ndim 1 1\nmat a [[1]]\n", qa(), F2);
  EXPECT_EQ(p1, fx::rep(qa(), F2, {1, 1}, {{{1}}}));
  Representation rows = parse_rep_file("field F 2\ndim 1 1\nmat a\nrow 1\n", qa(), F2);
  EXPECT_EQ(rows, p1);
}

TEST(ParseRepFile, ShapeErrorNamesArrowAndLine) {
  try {
    parse_rep_file("field F 2\ndim 1 1\nmat a\nrow 1 0\n", qa(), F2);
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_NE(std::string(e.what()).find("arrow a"), std::string::npos) << e.what();
  }
  try {
    parse_rep_file("field F 2\ndim 1 2\nmat a\nrow 1\n", qa(), F2);
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("arrow a"), std::string::npos) << e.what();
  }
}

TEST(ParseRepFile, Rejections) {
  auto q = qa();
  EXPECT_THROW(parse_rep_file("dim 1 1\n", q, F2), ParseError);
  EXPECT_THROW(parse_rep_file("field F 3\ndim 1 1\n", q, F2), ParseError);
  EXPECT_THROW(parse_rep_file("field F 2\ndim 1\n", q, F2), ParseError);
  EXPECT_THROW(parse_rep_file("field F 2\ndim 1 1\nmat z\nrow 1\n", q, F2), ParseError);
  EXPECT_THROW(parse_rep_file("field F 2\ndim 1 0\nmat a\n", q, F2), ParseError);
  EXPECT_THROW(parse_rep_file("field F 2\ndim 1 1\nrow 1\n", q, F2), ParseError);
  EXPECT_THROW(parse_rep_file("field F 2\ndim 1 1\nmat a\nrow x\n", q, F2), ParseError);
  EXPECT_THROW(parse_rep_file("field F 2\ndim 1 1\nbogus\n", q, F2), ParseError);
}

TEST(ParseRepFile, RoundTrip) {
  Rng rng(1);
  for (auto q : {fx::a3(), quivers::kronecker(), fx::four_vertex()})
    for (auto f : {F2, FieldSpec::prime(101), FieldSpec::rationals()})
      for (int t = 0; t < 10; ++t) {
        Representation m = random_rep(q, fx::random_dims(q->vertex_count(), 3, rng), f, rng);
        if (!f.is_prime_field() && !m.mat(0).empty()) {
          Matrix a = m.mat(0);
          a(0, 0) = Scalar::parse("-7/3", f);
          std::vector<Matrix> mats;
          for (std::size_t k = 0; k < q->arrows().size(); ++k) mats.push_back(k ? m.mat(k) : a);
          m = Representation(q, f, m.dims(), mats);
        }
        std::string text = emit_rep(m);
        Representation back = parse_rep_file(text, q, f);
        EXPECT_EQ(back, m);
        EXPECT_EQ(emit_rep(back), text);
      }
}

TEST(Cli, HomExample) {
  Outcome o = call({"hom", "-q", data("a2.qv"), data("P1.rep"), data("S1.rep")});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(has_line(o.out, "dim 1")) << o.out;
  EXPECT_NE(o.out.find("basis 1"), std::string::npos);
}

TEST(Cli, BijectionExample) {
  Outcome o = call({"verify", "bijection", "-q", data("a2.qv"), "--bricks", data("S1.rep") + "," + data("S2.rep")});
  EXPECT_EQ(o.code, 0) << o.err << o.out;
  EXPECT_NE(o.out.find("verdict: pass"), std::string::npos) << o.out;
}

TEST(Cli, KroneckerExample) {
  Outcome o = call({"kronecker", "--p", "5", "--maxlen", "4"});
  EXPECT_EQ(o.code, 0) << o.err << o.out;
  EXPECT_TRUE(has_line(o.out, "regular simples 6")) << o.out;
  EXPECT_TRUE(has_line(o.out, "verdict: pass")) << o.out;
  EXPECT_EQ(o.out.find("FAIL"), std::string::npos) << o.out;
}

TEST(Cli, HeaderCarriesSeed) {
  Outcome o = call({"rigid", "-q", data("a2.qv"), "--dim", "1,1", "--seed", "77"});
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("seed=77"), std::string::npos) << o.out;
}

TEST(Cli, SameSeedSameBytes) {
  std::vector<std::vector<std::string>> cmds = {
      {"decompose", "-q", data("a2.qv"), "--field", "F2", data("P1.rep")},
      {"verify", "krull-schmidt", "-q", data("kronecker.qv"), "--samples", "5", "--max-dim", "2", "--seed", "4"},
      {"closure", "-q", data("a2.qv"), data("S1.rep"), data("S2.rep"), "--seed", "9"},
      {"perp", "-q", data("kronecker.qv"), data("R0.rep"), "--dim", "1,1", "--seed", "3"},
      {"projgen", "-q", data("a3.qv"), "--seed", "2"},
  };
  for (const auto& c : cmds) {
    Outcome a = call(c), b = call(c);
    EXPECT_EQ(a.code, 0) << c[0] << a.err;
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out) << c[0];
  }
}

TEST(Cli, EveryCommandRuns) {
  std::string s1 = data("S1.rep"), s2 = data("S2.rep"), p1 = data("P1.rep"), a2 = data("a2.qv");
  std::vector<std::vector<std::string>> cmds = {
      {"ext", "-q", a2, s1, s2},
      {"decompose", "-q", a2, p1},
      {"compseries", "-q", a2, p1},
      {"brick", "-q", a2, p1},
      {"closure", "-q", a2, s1, s2, "--mode", "generic"},
      {"simples", "-q", a2, s1, s2},
      {"thick", "-q", a2, s1, s2, p1},
      {"verify", "euler", "-q", data("d4m.qv"), "--field", "Q", "--samples", "10", "--max-dim", "2"},
      {"verify", "jordan-holder", "-q", data("a3.qv"), "--samples", "10"},
      {"verify", "generator", "-q", data("a3.qv")},
      {"tower", "-q", a2, s1},
      {"projgen", "-q", a2},
      {"perp", "-q", data("kronecker.qv"), data("R0.rep"), "--dim", "1,1"},
      {"rigid", "-q", a2, "--dim", "1,1"},
  };
  for (const auto& c : cmds) {
    Outcome o = call(c);
    EXPECT_EQ(o.code, 0) << c[0] << " " << c[1] << "\n" << o.err << o.out;
    EXPECT_EQ(o.out.rfind("# qrep ", 0), 0u) << o.out;
  }
}

TEST(Cli, ReportValues) {
  Outcome ext = call({"ext", "-q", data("a2.qv"), data("S1.rep"), data("S2.rep")});
  EXPECT_TRUE(has_line(ext.out, "dim 1")) << ext.out;
  Outcome comp = call({"compseries", "-q", data("a2.qv"), data("P1.rep")});
  EXPECT_TRUE(has_line(comp.out, "length 2")) << comp.out;
  Outcome thick = call({"thick", "-q", data("a2.qv"), data("S1.rep"), data("S2.rep")});
  EXPECT_TRUE(has_line(thick.out, "thick: no")) << thick.out;
  Outcome tower = call({"tower", "-q", data("a2.qv"), data("S1.rep")});
  EXPECT_TRUE(has_line(tower.out, "outcome: projective_reached")) << tower.out;
  Outcome rigid = call({"rigid", "-q", data("kronecker.qv"), "--dim", "1,1", "--samples", "200"});
  EXPECT_TRUE(has_line(rigid.out, "rigid: none in 200 samples")) << rigid.out;
}

TEST(Cli, UsageAndParseErrorsExitOne) {
  EXPECT_EQ(call({}).code, 1);
  EXPECT_EQ(call({"frobnicate"}).code, 1);
  EXPECT_EQ(call({"hom", "-q", data("a2.qv"), data("P1.rep")}).code, 1);
  EXPECT_EQ(call({"hom", "-q", data("a2.qv"), data("P1.rep"), "/nonexistent.rep"}).code, 1);
  EXPECT_EQ(call({"hom", "-q", data("a3.qv"), data("P1.rep"), data("S1.rep")}).code, 1);
  EXPECT_EQ(call({"hom", "-q", data("a2.qv"), "--field", "F4", data("P1.rep"), data("S1.rep")}).code, 1);
  Outcome o = call({"verify", "bijection", "-q", data("a2.qv"), "--bricks", data("S1.rep") + "," + data("P1.rep")});
  EXPECT_EQ(o.code, 1);
  EXPECT_FALSE(o.err.empty());
}

TEST(Cli, IncompleteUniverseExitsThree) {
  Outcome o = call({"verify", "generator", "-q", data("kronecker.qv"), "--bricks", data("R0.rep"), "--field", "F5",
                    "--maxlen", "4"});
  EXPECT_EQ(o.code, 3) << o.out << o.err;
  EXPECT_NE(o.out.find("not issued"), std::string::npos);
}

TEST(Cli, OutDirGetsACopy) {
  auto dir = std::filesystem::temp_directory_path() / "qrep_cli_test_out";
  std::filesystem::remove_all(dir);
  Outcome o = call({"hom", "-q", data("a2.qv"), data("P1.rep"), data("S1.rep"), "--out", dir.string()});
  ASSERT_EQ(o.code, 0);
  std::ifstream in(dir / "hom.txt");
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), o.out);
  std::filesystem::remove_all(dir);
}
