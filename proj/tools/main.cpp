#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace foresight::cli;

namespace {

const std::map<std::string, OutputFormat> kFormats{
    {"table", OutputFormat::table}, {"json", OutputFormat::json}, {"csv", OutputFormat::csv}};

const std::map<std::string, foresight::LatticeAlgorithm> kAlgorithms{
    {"auto", foresight::LatticeAlgorithm::automatic},
    {"sparse", foresight::LatticeAlgorithm::sparse},
    {"dense", foresight::LatticeAlgorithm::dense}};

// Runs `command` against stdout or, when `path` is set, against that file.
int with_output(const std::string& path, const std::function<int(std::ostream&)>& command) {
  if (path.empty()) return command(std::cout);
  std::ofstream file(path);
  if (!file) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return kExitParse;
  }
  return command(file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Expected-utility analysis with unforeseen events mapped onto foreseen ones"};
  app.require_subcommand(1);
  std::string output;

  ValidateOptions validate;
  auto* validate_cmd = app.add_subcommand("validate", "Check a problem document");
  validate_cmd->add_option("input", validate.input, "Problem document")->required();
  validate_cmd->add_option("-o,--output", output, "Write the report to this file instead of stdout");
  validate_cmd->add_flag("--echo", validate.echo, "Print the canonical form of a valid document");

  LabelOptions label;
  std::string label_profile;
  auto* label_cmd = app.add_subcommand("label", "Map unforeseen events onto foreseen atoms");
  label_cmd->add_option("input", label.input, "Problem document")->required();
  label_cmd->add_option("-o,--output", output, "Write the report to this file instead of stdout");
  label_cmd->add_option("--profile", label_profile, "Comma-separated profile to label instead of the document's");
  label_cmd->add_flag("--atoms", label.include_atoms, "Also relabel every foreseen atom by its profile block");
  label_cmd->add_option("--format", label.format, "Output format")->transform(CLI::CheckedTransformer(kFormats));

  RankOptions rank;
  double rank_epsilon = 0.0;
  auto* rank_cmd = app.add_subcommand("rank", "Rank decisions by expected utility");
  rank_cmd->add_option("input", rank.input, "Problem document")->required();
  rank_cmd->add_option("-o,--output", output, "Write the report to this file instead of stdout");
  rank_cmd->add_option("--method", rank.method, "eq2, commonality or eq1-baseline")
      ->check(CLI::IsMember({"eq2", "commonality", "eq1-baseline"}));
  auto* epsilon_opt = rank_cmd->add_option("--epsilon", rank_epsilon, "Tie tolerance for expected utilities");
  rank_cmd->add_option("--format", rank.format, "Output format")->transform(CLI::CheckedTransformer(kFormats));

  BoundsOptions bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Belief, additive probability and plausibility of a subset");
  bounds_cmd->add_option("input", bounds.input, "Problem document")->required();
  bounds_cmd->add_option("-o,--output", output, "Write the report to this file instead of stdout");
  bounds_cmd->add_option("subset", bounds.subset, "Atom ids joined by '+', e.g. b+c; '*' is every atom")
      ->required();
  bounds_cmd->add_option("--format", bounds.format, "Output format")->transform(CLI::CheckedTransformer(kFormats));

  CommonalitiesOptions commonalities;
  auto* commonalities_cmd = app.add_subcommand("commonalities", "Per-atom normalized and Shafer commonalities");
  commonalities_cmd->add_option("input", commonalities.input, "Problem document")->required();
  commonalities_cmd->add_option("-o,--output", output, "Write the report to this file instead of stdout");
  commonalities_cmd->add_option("--algorithm", commonalities.algorithm, "auto, sparse or dense")
      ->transform(CLI::CheckedTransformer(kAlgorithms));
  commonalities_cmd->add_option("--format", commonalities.format, "Output format")
      ->transform(CLI::CheckedTransformer(kFormats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  if (*validate_cmd) {
    return with_output(output, [&](std::ostream& out) { return run_validate(validate, out, std::cerr); });
  }
  if (*label_cmd) {
    if (!label_profile.empty()) label.profile = label_profile;
    return with_output(output, [&](std::ostream& out) { return run_label(label, out, std::cerr); });
  }
  if (*rank_cmd) {
    if (epsilon_opt->count() > 0) rank.epsilon = rank_epsilon;
    return with_output(output, [&](std::ostream& out) { return run_rank(rank, out, std::cerr); });
  }
  if (*bounds_cmd) {
    return with_output(output, [&](std::ostream& out) { return run_bounds(bounds, out, std::cerr); });
  }
  return with_output(output, [&](std::ostream& out) { return run_commonalities(commonalities, out, std::cerr); });
}
