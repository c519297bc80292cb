#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "foresight/belief.hpp"

namespace foresight::cli {

/// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitParse = 2;

enum class OutputFormat { table, json, csv };

/// Environment variable that overrides the default tie tolerance of `rank`.
inline constexpr const char* kEpsilonEnv = "FORESIGHT_EPSILON";

struct ValidateOptions {
  std::string input;
  bool echo = false;
};

struct LabelOptions {
  std::string input;
  std::optional<std::string> profile;
  bool include_atoms = false;
  OutputFormat format = OutputFormat::table;
};

struct RankOptions {
  std::string input;
  std::string method = "eq2";
  std::optional<double> epsilon;
  OutputFormat format = OutputFormat::table;
};

struct BoundsOptions {
  std::string input;
  std::string subset;
  OutputFormat format = OutputFormat::table;
};

struct CommonalitiesOptions {
  std::string input;
  LatticeAlgorithm algorithm = LatticeAlgorithm::automatic;
  OutputFormat format = OutputFormat::table;
};

// Each command writes its report to `out` and problems to `err`, and returns
// the process exit status.
int run_validate(const ValidateOptions& options, std::ostream& out, std::ostream& err);
int run_label(const LabelOptions& options, std::ostream& out, std::ostream& err);
int run_rank(const RankOptions& options, std::ostream& out, std::ostream& err);
int run_bounds(const BoundsOptions& options, std::ostream& out, std::ostream& err);
int run_commonalities(const CommonalitiesOptions& options, std::ostream& out, std::ostream& err);

}  // namespace foresight::cli
