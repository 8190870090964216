#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <pellwalnut/session.hpp>

namespace pw = pellwalnut;

namespace {

pw::session_options options() {
  pw::session_options o;
  o.adder = [] { return pw::reference_adder(); };
  return o;
}

struct run_result {
  int status;
  std::string out;
};

run_result run(const std::string& script, pw::session_options o = options()) {
  std::ostringstream out;
  pw::session s(out, std::move(o));
  std::istringstream in(script);
  int status = s.run(in);
  return {status, out.str()};
}

}  // namespace

TEST(Session, EvaluatesAndDefines) {
  auto r = run(
      "def succ \"?msd_pell x < y & (Az (z <= x) | (z >= y))\"; eval \"$succ(4, 5)\"\n"
      "eval check \"?msd_pell Ax Ey $succ(x, y)\"\n");
  EXPECT_EQ(r.status, pw::ok);
  EXPECT_NE(r.out.find("succ: defined over (x, y)"), std::string::npos);
  EXPECT_NE(r.out.find("\nTRUE\n"), std::string::npos);
  EXPECT_NE(r.out.find("check: TRUE"), std::string::npos);
}

TEST(Session, MultiLineQuotesAndComments) {
  auto r = run(
      "# comment line\n"
      "eval big \"?msd_pell Ei\n"
      "    X[i] = @4 & i > 100\"  # trailing comment\n");
  EXPECT_EQ(r.status, pw::ok);
  EXPECT_NE(r.out.find("big: TRUE"), std::string::npos);
}

TEST(Session, Expectations) {
  EXPECT_EQ(run("expect TRUE; eval \"1 < 2\"").status, pw::ok);
  auto bad = run("expect FALSE\neval \"1 < 2\"\neval \"2 < 1\"");
  EXPECT_EQ(bad.status, pw::proof_failure);
  EXPECT_NE(bad.out.find("TRUE (expected FALSE)"), std::string::npos);
  // The script continues after a failed expectation.
  EXPECT_NE(bad.out.find("\nFALSE\n"), std::string::npos);
  EXPECT_EQ(run("expect TRUE; eval \"x < 2\"").status, pw::usage_error);
  EXPECT_EQ(run("expect maybe").status, pw::usage_error);
}

TEST(Session, OpenPredicatesAreStoredUnderTheirName) {
  auto r = run("eval near \"?msd_pell x + 1 = y\"\nexpect TRUE\neval \"$near(6, 7)\"\ndump near");
  EXPECT_EQ(r.status, pw::ok);
  EXPECT_NE(r.out.find("near: automaton over (x, y)"), std::string::npos);
  EXPECT_NE(r.out.find("msd_pell 2\n# tracks: x y"), std::string::npos);
}

TEST(Session, RegAndBind) {
  auto r = run(
      "reg pows msd_pell \"0*110000*\"\n"
      "bind X x3\n"
      "expect TRUE; eval \"X[0] = @0 & X[1] = @2 & $pows(41)\"\n"
      "bind Y c_alpha\n"
      "expect TRUE; eval \"Y[1] = @0 & Y[2] = @1\"\n");
  EXPECT_EQ(r.status, pw::ok) << r.out;
  EXPECT_NE(r.out.find("X := x3"), std::string::npos);
  EXPECT_EQ(run("bind X nothing").status, pw::usage_error);
  EXPECT_EQ(run("reg p msd_fib \"1\"").status, pw::usage_error);
}

TEST(Session, UsageErrorsStopTheScript) {
  auto r = run("eval \"x <\"\neval \"1 < 2\"");
  EXPECT_EQ(r.status, pw::usage_error);
  EXPECT_NE(r.out.find("parse error: line 1"), std::string::npos);
  EXPECT_EQ(r.out.find("TRUE"), std::string::npos);
  EXPECT_EQ(run("frobnicate").status, pw::usage_error);
  EXPECT_EQ(run("eval \"1 < 2\" extra words").status, pw::usage_error);
  EXPECT_EQ(run("eval \"unterminated\n").status, pw::usage_error);
  EXPECT_EQ(run("def a \"x = 1\"; def a \"x = 2\"").status, pw::usage_error);
  EXPECT_EQ(run("dump nothing").status, pw::usage_error);
}

TEST(Session, EmitsAutomata) {
  auto dir = std::filesystem::temp_directory_path() / "pellwalnut_session_emit";
  std::filesystem::remove_all(dir);
  auto o = options();
  o.emit_dir = dir;
  EXPECT_EQ(run("def near \"x + 1 = y\"", o).status, pw::ok);
  EXPECT_TRUE(std::filesystem::exists(dir / "near.txt"));
  o.format = "dot";
  EXPECT_EQ(run("def far \"x + 9 = y\"", o).status, pw::ok);
  EXPECT_TRUE(std::filesystem::exists(dir / "far.dot"));
  std::filesystem::remove_all(dir);
}

TEST(Session, AdderCache) {
  auto dir = std::filesystem::temp_directory_path() / "pellwalnut_adder_cache";
  std::filesystem::remove_all(dir);
  auto learned = pw::load_or_learn_adder(dir);
  EXPECT_TRUE(std::filesystem::exists(dir / "adder.txt"));
  EXPECT_EQ(pw::load_or_learn_adder(dir), learned);
  EXPECT_EQ(learned, pw::reference_adder());
  std::filesystem::remove_all(dir);
}

TEST(Session, BuiltinSequences) {
  EXPECT_TRUE(pw::builtin_sequence("x5").has_value());
  EXPECT_TRUE(pw::builtin_sequence("C").has_value());
  EXPECT_FALSE(pw::builtin_sequence("x7").has_value());
}
