#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "sobrep/config.hpp"
#include "sobrep/report_io.hpp"
#include "sobrep/runner.hpp"

using namespace sobrep;
using nlohmann::json;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST(Config, Defaults) {
  const RunConfig c = parse_config(json::object());
  EXPECT_EQ(c.representation.kind, "torus_regular");
  EXPECT_EQ(c.output.format, "both");
  EXPECT_EQ(build_representation(c).dim(), 33);
  EXPECT_EQ(build_representation(c, 4).dim(), 9);
}

TEST(Config, Rejections) {
  EXPECT_EQ(code_of([] { parse_config(json{{"bogus", 1}}); }), ErrorCode::config);
  EXPECT_EQ(code_of([] { parse_config(json{{"output", {{"format", "xml"}}}}); }), ErrorCode::config);
  EXPECT_EQ(code_of([] { parse_config(json{{"representation", {{"kind", "moebius"}}}}); }), ErrorCode::config);
  EXPECT_EQ(code_of([] {
              parse_config(json{{"group", {{"model", "su2"}}}, {"representation", {{"kind", "torus_regular"}}}});
            }),
            ErrorCode::config);
  const RunConfig c = parse_config(json{{"experiment", {{"R", -1.0}}}});
  EXPECT_EQ(code_of([&] { validate(c, "gap"); }), ErrorCode::config);
  EXPECT_EQ(code_of([&] { validate(c, "launch"); }), ErrorCode::config);
  const RunConfig s = parse_config(json{{"representation", {{"kind", "su2_irrep"}}}, {"experiment", {{"m", 1}}}});
  EXPECT_EQ(code_of([&] { validate(s, "factorize"); }), ErrorCode::config);
}

TEST(Config, JacobiViolationNamesTriple) {
  const json j = json::parse(R"({"group": {"algebra": {"dim": 3,
      "structure_constants": [[0, 1, 0, 1.0], [1, 2, 1, 1.0]]}}})");
  try {
    parse_config(j);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_algebra);
    EXPECT_NE(std::string(e.what()).find("(0,1,2)"), std::string::npos);
  }
}

TEST(Config, AlgebraMustMatchModel) {
  const RunConfig ok = parse_config(json::parse(R"({"group": {"algebra": {"preset": "su2"}},
      "representation": {"kind": "su2_irrep", "spin": 0.5}})"));
  EXPECT_EQ(build_representation(ok).dim(), 2);
  const RunConfig bad = parse_config(json::parse(R"({"group": {"algebra": {"preset": "axb"}}})"));
  EXPECT_EQ(code_of([&] { build_representation(bad); }), ErrorCode::config);
}

TEST(Config, MatricesNormAndVector) {
  const RunConfig c = parse_config(json::parse(R"({
      "representation": {"kind": "euclidean_matrix", "matrices": [[[0.5, [0, 1]], [0, 0.5]]],
                         "norm": {"kind": "hermitian", "gram": [[2, 0], [0, 1]]}},
      "experiment": {"vector": [1, [0, -1]]}})"));
  ASSERT_EQ(c.representation.matrices.size(), 1u);
  EXPECT_EQ(c.representation.matrices[0](0, 1), Complex(0, 1));
  EXPECT_EQ(c.representation.norm.kind(), NormKind::hermitian);
  EXPECT_EQ((*c.experiment.vector)(1), Complex(0, -1));
  EXPECT_NEAR(c.representation.norm(*c.experiment.vector), std::sqrt(3.0), 1e-15);
}

TEST(ReportIo, NumberFormat) {
  EXPECT_EQ(format_number(0.1), "1.0000000000000001e-01");
  EXPECT_EQ(format_number(-2.0), "-2.0000000000000000e+00");
  EXPECT_EQ(format_number(1.0 / 0.0), "inf");
  const std::string text = dump_json(json{{"b", 1.5}, {"a", json::array({1, 2})}, {"c", "x"}, {"d", 1.0 / 0.0}});
  EXPECT_EQ(text, "{\n  \"a\": [1, 2],\n  \"b\": 1.5000000000000000e+00,\n  \"c\": \"x\",\n  \"d\": \"inf\"\n}\n");
}

TEST(ReportIo, CsvQuoting) {
  CsvTable t{{"a", "b"}, {{"x,y", "plain"}, {"say \"hi\"", "2"}}};
  EXPECT_EQ(dump_csv(t), "a,b\n\"x,y\",plain\n\"say \"\"hi\"\"\",2\n");
}

TEST(Runner, GapOnTorus) {
  const RunConfig c = parse_config(json::parse(R"({"representation": {"N": 16}, "experiment": {"R": 1.0}})"));
  const RunResult r = execute(c, "gap");
  ASSERT_EQ(r.artifacts.size(), 1u);
  const json& rep = (*r.artifacts[0].json)["reports"][0];
  EXPECT_EQ(rep["sigma_min"].get<double>(), 1.0);
  EXPECT_TRUE(rep["invertible"].get<bool>());
}

TEST(Runner, DeterministicOutput) {
  const RunConfig c = parse_config(json::parse(R"({"experiment": {"seed": 3, "k": 1, "s": 0.5}})"));
  const auto a = execute(c, "norms"), b = execute(c, "norms");
  EXPECT_EQ(dump_json(*a.artifacts[0].json), dump_json(*b.artifacts[0].json));
  const auto dir = std::filesystem::temp_directory_path() / "sobrep_runner_test";
  std::filesystem::remove_all(dir);
  const auto paths = write_artifacts(a.artifacts, dir.string(), "both");
  EXPECT_EQ(paths.size(), 2u);
  std::ifstream in(paths[0]);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(text, dump_json(*a.artifacts[0].json));
}

TEST(Runner, ReportAllSubset) {
  const RunConfig c = parse_config(json::parse(R"({"experiment": {"criteria": [2, 6]}})"));
  const RunResult r = execute(c, "report-all");
  EXPECT_TRUE(r.ok);
  EXPECT_EQ((*r.artifacts[0].json)["passed"].get<int>(), 2);
}

TEST(Runner, ErrorJson) {
  const json j = error_json(Error(ErrorCode::config, "bad"));
  EXPECT_EQ(j["error"]["code"], "config");
  EXPECT_EQ(j["error"]["message"], "bad");
}
