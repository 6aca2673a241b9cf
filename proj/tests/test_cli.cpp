#include <gtest/gtest.h>

#include <filesystem>

#include "qav/cli/golden.hpp"
#include "support.hpp"

using namespace qav;
using namespace qav::cli;

namespace {

const std::filesystem::path kScenarios = std::filesystem::path(QAV_SOURCE_DIR) / "scenarios";

std::string scenario_text(const std::string& file) { return read_file(kScenarios / file); }

template <typename F>
ParseError parse_error(F f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error raised";
  return ParseError(ErrorKind::InternalInconsistency, 0, 0, "none");
}

}  // namespace

TEST(Parse, ExampleMatrixFile) {
  const Document d = parse_document(scenario_text("threefold.tor"));
  ASSERT_EQ(d.matrices.size(), 2u);
  const NamedMatrix& x = d.matrices[0];
  EXPECT_EQ(x.value.rows(), 3u);
  EXPECT_EQ(x.value.cols(), 5u);
  EXPECT_EQ(to_string(x.value(0, 3), *d.symbols), "i*r1^3");
  EXPECT_EQ(x.value(0, 3), parse_scalar("i*r1^3", *d.symbols));
  EXPECT_EQ(d.symbols->names(), (std::vector<std::string>{"r1", "r2"}));
  ASSERT_EQ(d.witnesses.size(), 1u);
  EXPECT_EQ(d.witnesses[0].values[0].second, Rational(3, 2));
  EXPECT_EQ(d.witnesses[0].values[1].second, Rational(5, 7));
}

TEST(Parse, OneByOneZeroMatrix) {
  const Document d = parse_document("matrix P 1 x 1 [ 0 ]");
  ASSERT_EQ(d.matrices.size(), 1u);
  EXPECT_EQ(d.matrices[0].value.rows(), 1u);
  EXPECT_TRUE(d.matrices[0].value(0, 0).is_zero());
}

TEST(Parse, DanglingOperatorReportsPosition) {
  const auto e = parse_error([] { parse_document("matrix P 1 x 1 [ 1 + ]"); });
  EXPECT_EQ(e.kind(), ErrorKind::SyntaxError);
  EXPECT_EQ(e.line(), 1u);
  EXPECT_EQ(e.column(), 22u);
  EXPECT_TRUE(e.expected().count("integer"));
}

TEST(Parse, MultiLinePosition) {
  const auto e = parse_error([] { parse_document("matrix P 1 x 2 [\n  [1, 2 *]\n]"); });
  EXPECT_EQ(e.kind(), ErrorKind::SyntaxError);
  EXPECT_EQ(e.line(), 2u);
  EXPECT_EQ(e.column(), 10u);
}

TEST(Parse, Errors) {
  EXPECT_EQ(parse_error([] { parse_document("matrix P 1 x 1 [0]\nmatrix P 1 x 1 [1]"); }).kind(), ErrorKind::DuplicateName);
  EXPECT_EQ(parse_error([] { parse_document("symbols r\nmatrix r 1 x 1 [0]"); }).kind(), ErrorKind::DuplicateName);
  EXPECT_EQ(parse_error([] { parse_document("matrix P 1 x 1 [s]"); }).kind(), ErrorKind::UnknownSymbol);
  EXPECT_EQ(parse_error([] { parse_document("matrix P 2 x 2 [[1, 0]]"); }).kind(), ErrorKind::DimensionMismatch);
  EXPECT_EQ(parse_error([] { parse_document("matrix P 1 x 2 [[1, 0, 3]]"); }).kind(), ErrorKind::DimensionMismatch);
  EXPECT_EQ(parse_error([] { parse_document("symbols r s\nwitness W r = 1"); }).kind(), ErrorKind::InvalidArgument);
  EXPECT_EQ(parse_error([] { parse_document("symbols r\nwitness W q = 1"); }).kind(), ErrorKind::UnknownSymbol);
  EXPECT_EQ(parse_error([] { parse_document("vector v gamma Q [1]"); }).kind(), ErrorKind::UnknownName);
  EXPECT_EQ(parse_error([] { parse_document("matrix P 1 x 1 [1]\nsymbols r"); }).kind(), ErrorKind::SyntaxError);
}

TEST(Parse, FlatRowMajorList) {
  const Document a = parse_document("matrix P 2 x 2 [1, 2, 3, i]");
  const Document b = parse_document("matrix P 2 x 2 [[1, 2], [3, i]]");
  EXPECT_EQ(a, b);
}

TEST(Parse, RoundTripOfEveryScenario) {
  for (const auto& entry : std::filesystem::directory_iterator(kScenarios)) {
    if (entry.path().extension() != ".tor" || entry.path().filename() == "malformed.tor") continue;
    SCOPED_TRACE(entry.path().filename().string());
    const Document d = parse_document(read_file(entry.path()));
    const std::string printed = print_document(d);
    const Document again = parse_document(printed);
    EXPECT_EQ(again, d);
    EXPECT_EQ(print_document(again), printed);
  }
}

TEST(Parse, RoundTripOfRandomMatrices) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coeff(-4, 4), pick(0, 5);
  const char* atoms[] = {"r", "s", "i", "r^2", "1/3", "i*s"};
  for (int trial = 0; trial < 50; ++trial) {
    std::string text = "symbols r s\nmatrix P 2 x 3 [";
    for (int k = 0; k < 6; ++k) {
      text += k ? ", " : "";
      text += std::to_string(coeff(rng)) + "*" + atoms[pick(rng)] + " + " + atoms[pick(rng)];
    }
    text += "]\nwitness W r = " + std::to_string(coeff(rng)) + "/7 s = 2\n";
    const Document d = parse_document(text);
    EXPECT_EQ(parse_document(print_document(d)), d) << text;
  }
}

TEST(Run, ToroidalOnExampleIsTrue) {
  const Outcome o = run_text("toroidal", scenario_text("threefold.tor"), {});
  EXPECT_EQ(o.exit_code, 0);
  EXPECT_EQ(o.report["verdict"], true);
  EXPECT_TRUE(o.report.contains("assumptions"));
  EXPECT_EQ(o.report["assumptions"]["symbols"], Json::array({"r1", "r2"}));
}

TEST(Run, NegativeVerdictStillExitsZero) {
  const Outcome o = run_text("toroidal", scenario_text("threefold_r2zero.tor"), {});
  EXPECT_EQ(o.exit_code, 0);
  EXPECT_EQ(o.report["verdict"], false);
  EXPECT_EQ(o.report["character"]["sigma"], Json::array({1, 0, 0, 0, 0}));
}

TEST(Run, SimpleCertificateListsNonClosedSubgroup) {
  Options opt;
  opt.height = 3;
  const Outcome o = run_text("simple-cert", scenario_text("threefold.tor"), opt);
  EXPECT_EQ(o.exit_code, 0);
  EXPECT_EQ(o.report["verdict"], "no_closed_toroidal_subgroup_up_to_H");
  ASSERT_EQ(o.report["witness_subgroup_nonclosed"].size(), 1u);
  const Json& y = o.report["witness_subgroup_nonclosed"][0];
  EXPECT_EQ(y["complex_dim"], 2);
  EXPECT_EQ(y["rank"], 3);
  EXPECT_EQ(y["toroidal"], true);
  EXPECT_EQ(y["closed"], false);
  EXPECT_EQ(o.report["assumptions"]["height_bound"], 3);
}

TEST(Run, MalformedFileExitsOne) {
  const Outcome o = run_text("toroidal", scenario_text("malformed.tor"), {});
  EXPECT_EQ(o.exit_code, 1);
  EXPECT_EQ(o.report["error"]["kind"], "SyntaxError");
  EXPECT_EQ(o.report["error"]["line"], 2);
}

TEST(Run, InputErrorsExitOne) {
  Options opt;
  opt.matrix = "Nope";
  EXPECT_EQ(run_text("toroidal", scenario_text("threefold.tor"), opt).exit_code, 1);
  EXPECT_EQ(run_text("frobnicate", scenario_text("threefold.tor"), {}).exit_code, 1);
  Options bad_height;
  bad_height.height = 0;
  EXPECT_EQ(run_text("simple-cert", scenario_text("threefold.tor"), bad_height).exit_code, 1);
  // Not closed: the maximal complex subspace of the example.
  Options cm;
  cm.subspace = "CM";
  const Outcome o = run_text("isogeny-order", scenario_text("threefold.tor"), cm);
  EXPECT_EQ(o.exit_code, 1);
  EXPECT_EQ(o.report["error"]["kind"], "NotClosedSubvariety");
}

TEST(Run, FailedProofObligationExitsTwo) {
  // Periods spanning only a line of C^2: the endomorphism construction needs a spanning block.
  const std::string text = "matrix P 2 x 2 [[1, i], [0, 0]]\nintmatrix C 2 x 2 [[1, 0], [0, 1]]";
  const Outcome o = run_text("endo", text, {});
  EXPECT_EQ(o.exit_code, 2);
  EXPECT_EQ(o.report["error"]["kind"], "DegenerateSpan");
  EXPECT_EQ(exit_code_for(ErrorKind::NoValidSelection), 2);
  EXPECT_EQ(exit_code_for(ErrorKind::InternalInconsistency), 2);
  EXPECT_EQ(exit_code_for(ErrorKind::NotToroidal), 1);
}

TEST(Run, NonAmpleFormIsAnInputError) {
  const std::string text = "matrix P 2 x 4 [[1, i, 0, 0], [0, 0, 1, i]]\nform H 2 x 2 [[1, 0], [0, 0]]\nsubspace V ambient P [[1, 0]]";
  const Outcome o = run_text("isogeny-order", text, {});
  EXPECT_EQ(o.exit_code, 1);
  EXPECT_EQ(o.report["error"]["kind"], "NotPositiveOnCm");
}

TEST(Run, MaxComplexComparesWithReference) {
  Options opt;
  opt.compare = "Y";
  const Outcome o = run_text("max-cx", scenario_text("threefold.tor"), opt);
  EXPECT_EQ(o.exit_code, 0);
  EXPECT_EQ(o.report["compare"]["column_equivalent"], true);
  EXPECT_EQ(o.report["inclusion"]["ok"], true);
}

TEST(Run, LineIntersectSingleVector) {
  const Outcome o = run_text("line-intersect", scenario_text("surface.tor"), {});
  EXPECT_EQ(o.exit_code, 0);
  EXPECT_EQ(o.report["rank"], 1);
  EXPECT_EQ(o.report["lattice"]["basis"], Json::parse("[[1, 0, 0, 2]]"));
}

TEST(Run, ReportsAreStableAcrossRuns) {
  Options opt;
  opt.height = 3;
  const std::string a = dump(run_text("simple-cert", scenario_text("threefold.tor"), opt).report);
  const std::string b = dump(run_text("simple-cert", scenario_text("threefold.tor"), opt).report);
  EXPECT_EQ(a, b);
}

TEST(Golden, DivergenceLocatesFirstField) {
  const Json a = Json::parse(R"({"x": 1, "y": [1, 2, {"z": "a"}]})");
  const Json b = Json::parse(R"({"x": 1, "y": [1, 2, {"z": "b"}]})");
  EXPECT_EQ(first_divergence(a, a), "");
  EXPECT_EQ(first_divergence(a, b), "/y/2/z");
  EXPECT_EQ(first_divergence(a, Json::parse(R"({"x": 1})")), "/y");
}

TEST(Golden, ManifestCoversEveryScenarioFile) {
  std::set<std::string> used;
  for (const auto& s : load_manifest(kScenarios)) used.insert(s.file);
  for (const auto& entry : std::filesystem::directory_iterator(kScenarios)) {
    if (entry.path().extension() == ".tor") {
      EXPECT_TRUE(used.count(entry.path().filename().string())) << entry.path();
    }
  }
}

TEST(Golden, ExpectedFailScenarioFailsItsClaim) {
  for (const auto& s : load_manifest(kScenarios)) {
    if (!s.expected_fail) continue;
    const Json got = Json::parse(render(run_scenario(s, kScenarios)));
    EXPECT_FALSE(violated_expectation(s, got).empty()) << s.name;
  }
}
