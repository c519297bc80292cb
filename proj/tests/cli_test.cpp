#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "problem_document.hpp"
#include "support/generators.hpp"

namespace foresight::cli {
namespace {

namespace fs = std::filesystem;

const std::string kSamples = FORESIGHT_SAMPLES_DIR;

class TempFile {
 public:
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("foresight_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".json");
    std::ofstream(path_) << contents;
  }
  ~TempFile() { fs::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  fs::path path_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CommandResult {
  int status;
  std::string out;
  std::string err;
};

template <typename Options, typename Command>
CommandResult run(Command command, const Options& options) {
  std::ostringstream out, err;
  const int status = command(options, out, err);
  return {status, out.str(), err.str()};
}

// Paper space with an assessment whose masses are replaced by `masses_json`.
std::string three_focal_with(const std::string& masses_json) {
  auto doc = nlohmann::json::parse(read_file(kSamples + "/three_focal.json"));
  doc["assessment"]["masses"] = nlohmann::json::parse(masses_json);
  return doc.dump();
}

std::string ranking_section(const std::string& report) {
  const auto start = report.find("ranking:\n");
  const auto end = report.find("\n\n", start);
  return report.substr(start, end - start);
}

TEST(ValidateCommandTest, ValidDocument) {
  const CommandResult r = run(run_validate, ValidateOptions{kSamples + "/three_focal.json"});
  EXPECT_EQ(r.status, kExitOk);
  const auto report = nlohmann::json::parse(r.out);
  EXPECT_TRUE(report["valid"].get<bool>());
  EXPECT_TRUE(report["diagnostics"].empty());
}

TEST(ValidateCommandTest, NotNormalizedNamesSection) {
  TempFile doc(three_focal_with(R"([{"subset":["a"],"mass":0.5},{"subset":["b"],"mass":0.4}])"));
  const CommandResult r = run(run_validate, ValidateOptions{doc.path()});
  EXPECT_EQ(r.status, kExitInvalid);
  const auto diags = nlohmann::json::parse(r.out)["diagnostics"];
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_EQ(diags[0]["code"], "NotNormalized");
  EXPECT_EQ(diags[0]["section"], "assessment.masses");
}

TEST(ValidateCommandTest, ReferentialIntegrity) {
  TempFile doc(three_focal_with(R"([{"subset":["a","zz"],"mass":1.0}])"));
  const CommandResult r = run(run_validate, ValidateOptions{doc.path()});
  EXPECT_EQ(r.status, kExitInvalid);
  const auto diags = nlohmann::json::parse(r.out)["diagnostics"];
  ASSERT_FALSE(diags.empty());
  EXPECT_EQ(diags[0]["code"], "UnknownAtom");
  EXPECT_NE(diags[0]["message"].get<std::string>().find("zz"), std::string::npos);
}

TEST(ValidateCommandTest, MissingUtilityRow) {
  auto doc = nlohmann::json::parse(read_file(kSamples + "/three_focal.json"));
  doc["utilities"]["decisions"][1]["utilities"].erase("c");
  TempFile file(doc.dump());
  const CommandResult r = run(run_validate, ValidateOptions{file.path()});
  EXPECT_EQ(r.status, kExitInvalid);
  EXPECT_EQ(nlohmann::json::parse(r.out)["diagnostics"][0]["code"], "MissingUtility");
}

TEST(ValidateCommandTest, ParseErrorReportsPosition) {
  TempFile doc("{\n  \"schema\": {\n    oops\n}");
  const CommandResult r = run(run_validate, ValidateOptions{doc.path()});
  EXPECT_EQ(r.status, kExitParse);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST(ValidateCommandTest, MissingFileIsIoFailure) {
  EXPECT_EQ(run(run_validate, ValidateOptions{"/nonexistent/doc.json"}).status, kExitParse);
}

TEST(ValidateCommandTest, EchoRoundTrips) {
  for (const char* name : {"/three_focal.json", "/unforeseen_labelling.json"}) {
    const ProblemModel original = load_document_file(kSamples + name);
    const CommandResult r = run(run_validate, ValidateOptions{kSamples + name, true});
    ASSERT_EQ(r.status, kExitOk);
    const ProblemModel again = load_document(r.out);
    ASSERT_TRUE(again.valid());
    EXPECT_EQ(*again.space, *original.space);
    EXPECT_EQ(*again.utilities, *original.utilities);
    EXPECT_EQ(to_document(again), to_document(original));
  }
}

TEST(ValidateCommandTest, RandomModelsRoundTrip) {
  testing::Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = testing::uniform_size(rng, 1, 8);
    const std::size_t m = testing::uniform_size(rng, 1, 4);
    ProblemModel model;
    model.space.emplace(testing::random_space(rng, n, m, 3));
    model.mass.emplace(testing::random_mass(rng, n));
    model.utilities.emplace(testing::random_utilities(rng, n, testing::uniform_size(rng, 1, 4)));
    model.unforeseen.push_back({"x", testing::random_profile(rng, m)});

    const ProblemModel again = load_document(to_document(model).dump());
    ASSERT_TRUE(again.valid());
    EXPECT_EQ(*again.space, *model.space);
    EXPECT_EQ(*again.utilities, *model.utilities);
    ASSERT_EQ(again.mass->focal_count(), model.mass->focal_count());
    for (const auto& f : model.mass->focal_elements()) EXPECT_EQ(again.mass->mass_of(f.subset), f.mass);
    EXPECT_EQ(again.unforeseen[0].profile.values, model.unforeseen[0].profile.values);
  }
}

TEST(ValidateCommandTest, ImportanceComputedFromUtilities) {
  // No explicit order: c2 moves utility more than c1 around the reference.
  TempFile doc(R"({
    "schema": {"characteristics": [{"name": "c1", "reference": 0}, {"name": "c2", "reference": 0}]},
    "atoms": [{"id": "a", "profile": [0, 0]}, {"id": "b", "profile": [1, 0]}, {"id": "c", "profile": [0, 1]}],
    "utilities": {"u0": 0, "decisions": [{"id": "d", "utilities": {"a": 0, "b": 2, "c": 9}}]}
  })");
  const ProblemModel model = load_document_file(doc.path());
  ASSERT_TRUE(model.valid());
  EXPECT_EQ(model.space->importance_order(), (std::vector<std::size_t>{1, 0}));
  ASSERT_TRUE(model.computed_importance.has_value());
}

TEST(LabelCommandTest, WorkedExample) {
  LabelOptions options{kSamples + "/unforeseen_labelling.json"};
  options.format = OutputFormat::json;
  const CommandResult r = run(run_label, options);
  ASSERT_EQ(r.status, kExitOk) << r.err;
  const auto labels = nlohmann::json::parse(r.out)["labels"];
  ASSERT_EQ(labels.size(), 3u);
  EXPECT_EQ(labels[0]["subset"], nlohmann::json({"e111", "e110"}));
  EXPECT_EQ(labels[0]["depth"], 1);
  EXPECT_EQ(labels[1]["subset"], nlohmann::json({"e110"}));
  EXPECT_EQ(labels[1]["depth"], 3);
  EXPECT_EQ(labels[2]["subset"], nlohmann::json::array());
  EXPECT_EQ(labels[2]["depth"], 0);
  EXPECT_TRUE(labels[2]["empty_label"].get<bool>());
}

TEST(LabelCommandTest, ProfileOverride) {
  LabelOptions options{kSamples + "/unforeseen_labelling.json"};
  options.profile = "0,0,5";
  const CommandResult r = run(run_label, options);
  ASSERT_EQ(r.status, kExitOk);
  EXPECT_NE(r.out.find("{e001}  2"), std::string::npos) << r.out;

  options.profile = "1,0";
  EXPECT_EQ(run(run_label, options).status, kExitInvalid);
}

TEST(RankCommandTest, ThreeFocal) {
  RankOptions options{kSamples + "/three_focal.json"};
  options.format = OutputFormat::json;
  const CommandResult r = run(run_rank, options);
  ASSERT_EQ(r.status, kExitOk) << r.err;
  const auto ranking = nlohmann::json::parse(r.out)["ranking"];
  EXPECT_EQ(ranking[0]["decision"], "d1");
  EXPECT_NEAR(ranking[0]["expected_utility"].get<double>(), 43.0 / 60.0, 1e-12);
  EXPECT_EQ(ranking[1]["decision"], "d2");
  EXPECT_NEAR(ranking[1]["expected_utility"].get<double>(), 17.0 / 60.0, 1e-12);
}

TEST(RankCommandTest, MethodsGiveIdenticalRankingSections) {
  for (const char* name : {"/three_focal.json", "/unforeseen_labelling.json"}) {
    RankOptions eq2{kSamples + name};
    RankOptions commonality{kSamples + name, "commonality"};
    const CommandResult a = run(run_rank, eq2);
    const CommandResult b = run(run_rank, commonality);
    ASSERT_EQ(a.status, kExitOk);
    ASSERT_EQ(b.status, kExitOk);
    EXPECT_EQ(ranking_section(a.out), ranking_section(b.out));
    EXPECT_NE(a.out, b.out);  // the method line differs
  }
}

TEST(RankCommandTest, SingleDecision) {
  auto doc = nlohmann::json::parse(read_file(kSamples + "/three_focal.json"));
  doc["utilities"]["decisions"].erase(1);
  TempFile file(doc.dump());
  RankOptions options{file.path()};
  options.format = OutputFormat::csv;
  const CommandResult r = run(run_rank, options);
  ASSERT_EQ(r.status, kExitOk);
  EXPECT_EQ(r.out.substr(0, r.out.find("\n\n")),
            "rank,decision,expected_utility,tie_group\n1,d1,0.71666666666666667,1");
}

TEST(RankCommandTest, BaselineMethod) {
  RankOptions options{kSamples + "/three_focal.json", "eq1-baseline"};
  options.format = OutputFormat::json;
  const CommandResult r = run(run_rank, options);
  ASSERT_EQ(r.status, kExitOk);
  const auto ranking = nlohmann::json::parse(r.out)["ranking"];
  EXPECT_NEAR(ranking[0]["expected_utility"].get<double>(), 0.5, 1e-12);

  RankOptions missing{kSamples + "/unforeseen_labelling.json", "eq1-baseline"};
  EXPECT_EQ(run(run_rank, missing).status, kExitInvalid);
}

TEST(RankCommandTest, EpsilonFromEnvironment) {
  auto doc = nlohmann::json::parse(read_file(kSamples + "/three_focal.json"));
  TempFile file(doc.dump());
  RankOptions options{file.path()};
  options.format = OutputFormat::json;

  ::setenv(kEpsilonEnv, "0.5", 1);
  auto report = nlohmann::json::parse(run(run_rank, options).out);
  EXPECT_EQ(report["tie_groups"].size(), 1u);
  EXPECT_EQ(report["ranking"][1]["rank"], 1);

  options.epsilon = 1e-9;  // flag wins over the environment
  report = nlohmann::json::parse(run(run_rank, options).out);
  EXPECT_EQ(report["tie_groups"].size(), 2u);

  options.epsilon.reset();
  ::setenv(kEpsilonEnv, "abc", 1);
  EXPECT_EQ(run(run_rank, options).status, kExitParse);
  ::unsetenv(kEpsilonEnv);
}

TEST(BoundsCommandTest, Examples) {
  BoundsOptions options{kSamples + "/three_focal.json", "b+c", OutputFormat::json};
  auto report = nlohmann::json::parse(run(run_bounds, options).out);
  EXPECT_NEAR(report["belief"].get<double>(), 0.0, 1e-12);
  EXPECT_NEAR(report["additive_probability"].get<double>(), 17.0 / 60.0, 1e-12);
  EXPECT_NEAR(report["plausibility"].get<double>(), 0.5, 1e-12);
  EXPECT_TRUE(report["sandwich_holds"].get<bool>());

  for (const char* full : {"a+b+c", "*"}) {
    options.subset = full;
    report = nlohmann::json::parse(run(run_bounds, options).out);
    EXPECT_NEAR(report["belief"].get<double>(), 1.0, 1e-12);
    EXPECT_NEAR(report["additive_probability"].get<double>(), 1.0, 1e-12);
    EXPECT_NEAR(report["plausibility"].get<double>(), 1.0, 1e-12);
  }

  options.subset = "";
  report = nlohmann::json::parse(run(run_bounds, options).out);
  EXPECT_EQ(report["belief"], 0.0);
  EXPECT_EQ(report["additive_probability"], 0.0);
  EXPECT_EQ(report["plausibility"], 0.0);
}

TEST(BoundsCommandTest, BadExpressions) {
  BoundsOptions options{kSamples + "/three_focal.json", "a++b"};
  EXPECT_EQ(run(run_bounds, options).status, kExitParse);
  options.subset = "a+zz";
  EXPECT_EQ(run(run_bounds, options).status, kExitInvalid);
}

TEST(CommonalitiesCommandTest, SparseAndDenseAgree) {
  CommonalitiesOptions sparse{kSamples + "/three_focal.json", LatticeAlgorithm::sparse, OutputFormat::csv};
  CommonalitiesOptions dense{kSamples + "/three_focal.json", LatticeAlgorithm::dense, OutputFormat::csv};
  const CommandResult a = run(run_commonalities, sparse);
  const CommandResult b = run(run_commonalities, dense);
  ASSERT_EQ(a.status, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("a,0.71666666666666667,1\n"), std::string::npos) << a.out;
}

}  // namespace
}  // namespace foresight::cli
