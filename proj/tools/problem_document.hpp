#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "foresight/foresight.hpp"

namespace foresight::cli {

struct Diagnostic {
  enum class Severity { error, warning };

  Severity severity = Severity::error;
  std::string code;
  std::string section;
  std::string message;
};

struct NamedProfile {
  std::string id;
  UnforeseenProfile profile;
};

/// Everything a problem document describes, validated. Sections that were
/// absent or invalid are left empty; `diagnostics` says why.
struct ProblemModel {
  std::optional<EventSpace> space;
  std::optional<RawAssessment> raw;
  std::optional<MassFunction> mass;
  std::optional<BaselineAssessment> baseline;
  std::optional<UtilityTable> utilities;
  std::vector<NamedProfile> unforeseen;
  /// Set when the importance order was computed from the utilities rather
  /// than given in the document.
  std::optional<CharacteristicRanking> computed_importance;
  std::vector<Diagnostic> diagnostics;

  bool valid() const;
};

/// Raised when the input is not well-formed JSON or cannot be read.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses document text. Throws ParseError on malformed JSON; every other
/// problem becomes a diagnostic.
ProblemModel load_document(const std::string& text);

ProblemModel load_document_file(const std::string& path);

/// Canonical document for a valid model; loading it again gives an
/// equivalent model.
nlohmann::ordered_json to_document(const ProblemModel& model);

nlohmann::ordered_json diagnostics_json(const std::vector<Diagnostic>& diagnostics);

/// "a+b+c" style atom lists; "" and "{}" denote the empty set, "*" the full
/// set. Throws ParseError on malformed expressions and foresight::Error on
/// unknown atoms.
Subset parse_subset_expression(const EventSpace& space, const std::string& expression);

/// Profile override written as comma-separated values.
UnforeseenProfile parse_profile_list(const std::string& text);

std::string format_subset(const EventSpace& space, const Subset& subset);

}  // namespace foresight::cli
