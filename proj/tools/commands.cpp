#include "commands.hpp"

#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

#include "problem_document.hpp"

namespace foresight::cli {

namespace {

using ojson = nlohmann::ordered_json;

std::string sig6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string full_precision(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Left-aligned columns separated by two spaces.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : rows_{std::move(header)} {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& out) const {
    std::vector<std::size_t> width;
    for (const auto& row : rows_) {
      width.resize(std::max(width.size(), row.size()), 0);
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    for (const auto& row : rows_) {
      std::string line;
      for (std::size_t c = 0; c < row.size(); ++c) {
        line += row[c];
        if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
      }
      out << line << '\n';
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

struct Loaded {
  std::optional<ProblemModel> model;
  int status = kExitOk;
};

Loaded load(const std::string& input, std::ostream& err) {
  Loaded loaded;
  try {
    loaded.model = load_document_file(input);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    loaded.status = kExitParse;
    return loaded;
  }
  if (!loaded.model->valid()) {
    err << diagnostics_json(loaded.model->diagnostics).dump(2) << '\n';
    loaded.status = kExitInvalid;
    loaded.model.reset();
  }
  return loaded;
}

int missing_section(std::ostream& err, const std::string& section, const std::string& why) {
  err << diagnostics_json({{Diagnostic::Severity::error, "MissingSection", section, why}}).dump(2) << '\n';
  return kExitInvalid;
}

int report_error(std::ostream& err, const Error& e) {
  err << "error: " << e.what() << '\n';
  return kExitInvalid;
}

}  // namespace

int run_validate(const ValidateOptions& options, std::ostream& out, std::ostream& err) {
  ProblemModel model;
  try {
    model = load_document_file(options.input);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }
  const bool valid = model.valid();
  if (options.echo && valid) {
    if (!model.diagnostics.empty()) err << diagnostics_json(model.diagnostics).dump(2) << '\n';
    out << to_document(model).dump(2) << '\n';
  } else {
    ojson report;
    report["valid"] = valid;
    report["diagnostics"] = diagnostics_json(model.diagnostics);
    out << report.dump(2) << '\n';
  }
  return valid ? kExitOk : kExitInvalid;
}

int run_label(const LabelOptions& options, std::ostream& out, std::ostream& err) {
  Loaded loaded = load(options.input, err);
  if (!loaded.model) return loaded.status;
  const ProblemModel& model = *loaded.model;
  const EventSpace& space = *model.space;

  std::vector<NamedProfile> profiles = model.unforeseen;
  if (options.profile) profiles = {{"profile", parse_profile_list(*options.profile)}};

  struct Row {
    const NamedProfile* event;
    Label label;
  };
  std::vector<Row> rows;
  try {
    for (const auto& p : profiles) rows.push_back({&p, label_unforeseen(space, p.profile)});
  } catch (const Error& e) {
    return report_error(err, e);
  }

  if (options.format == OutputFormat::json) {
    ojson report;
    report["labels"] = ojson::array();
    for (const auto& r : rows) {
      report["labels"].push_back({{"event", r.event->id},
                                  {"profile", r.event->profile.values},
                                  {"subset", space.ids_of(r.label.subset)},
                                  {"depth", r.label.depth},
                                  {"empty_label", r.label.is_empty_label()}});
    }
    if (options.include_atoms) {
      report["atoms"] = ojson::array();
      for (const auto& a : space.atoms()) {
        report["atoms"].push_back({{"atom", a.id}, {"subset", space.ids_of(relabel_atomic(space, a.id))}});
      }
    }
    out << report.dump(2) << '\n';
    return kExitOk;
  }

  if (options.format == OutputFormat::csv) {
    out << "event,subset,depth,empty_label\n";
    for (const auto& r : rows) {
      std::string ids;
      for (const auto& id : space.ids_of(r.label.subset)) ids += (ids.empty() ? "" : "+") + id;
      out << csv_field(r.event->id) << ',' << csv_field(ids) << ',' << r.label.depth << ','
          << (r.label.is_empty_label() ? "true" : "false") << '\n';
    }
    return kExitOk;
  }

  Table table({"event", "label", "depth", "empty_label"});
  for (const auto& r : rows) {
    table.add({r.event->id, format_subset(space, r.label.subset), std::to_string(r.label.depth),
               r.label.is_empty_label() ? "yes" : "no"});
  }
  table.print(out);
  if (options.include_atoms) {
    out << '\n';
    Table atoms({"atom", "label"});
    for (const auto& a : space.atoms()) atoms.add({a.id, format_subset(space, relabel_atomic(space, a.id))});
    atoms.print(out);
  }
  return kExitOk;
}

int run_rank(const RankOptions& options, std::ostream& out, std::ostream& err) {
  double epsilon = kTieTolerance;
  if (options.epsilon) {
    epsilon = *options.epsilon;
  } else if (const char* env = std::getenv(kEpsilonEnv); env != nullptr && *env != '\0') {
    char* end = nullptr;
    epsilon = std::strtod(env, &end);
    if (end == env || *end != '\0') {
      err << "error: " << kEpsilonEnv << "='" << env << "' is not a number\n";
      return kExitParse;
    }
  }
  if (!(epsilon >= 0.0)) {
    err << "error: tie tolerance must be nonnegative\n";
    return kExitParse;
  }
  if (options.method != "eq2" && options.method != "commonality" && options.method != "eq1-baseline") {
    err << "error: unknown method '" << options.method << "'\n";
    return kExitParse;
  }

  Loaded loaded = load(options.input, err);
  if (!loaded.model) return loaded.status;
  const ProblemModel& model = *loaded.model;
  const EventSpace& space = *model.space;
  if (!model.utilities) return missing_section(err, "utilities", "ranking needs a utilities section");

  DecisionRanking ranking;
  std::optional<CommonalityVector> cn;
  try {
    if (options.method == "eq1-baseline") {
      if (!model.baseline) {
        return missing_section(err, "assessment.baseline", "eq1-baseline needs assessment.baseline");
      }
      ranking = rank_decisions(*model.baseline, *model.utilities, epsilon);
    } else {
      if (!model.mass) return missing_section(err, "assessment", "ranking needs an assessment section");
      const auto method = options.method == "eq2" ? RankingMethod::eq2 : RankingMethod::commonality;
      ranking = rank_decisions(*model.mass, *model.utilities, method, epsilon);
    }
    if (model.mass) cn = atom_normalized_commonalities(*model.mass);
  } catch (const Error& e) {
    return report_error(err, e);
  }

  auto group_of = [&](std::size_t entry) {
    std::size_t seen = 0;
    for (std::size_t g = 0; g < ranking.tie_groups.size(); ++g) {
      seen += ranking.tie_groups[g].size();
      if (entry < seen) return g + 1;
    }
    return ranking.tie_groups.size();
  };

  if (options.format == OutputFormat::json) {
    ojson report;
    report["method"] = options.method;
    report["tie_tolerance"] = epsilon;
    report["ranking"] = ojson::array();
    for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
      const auto& e = ranking.entries[i];
      report["ranking"].push_back({{"rank", e.rank},
                                   {"decision", e.decision},
                                   {"expected_utility", e.expected_utility},
                                   {"tie_group", group_of(i)}});
    }
    report["tie_groups"] = ranking.tie_groups;
    if (cn) {
      report["normalized_commonalities"] = ojson::array();
      for (std::size_t a = 0; a < space.atom_count(); ++a) {
        report["normalized_commonalities"].push_back(
            {{"atom", space.atoms()[a].id}, {"value", (*cn)[static_cast<AtomIndex>(a)]}});
      }
    }
    out << report.dump(2) << '\n';
    return kExitOk;
  }

  if (options.format == OutputFormat::csv) {
    out << "rank,decision,expected_utility,tie_group\n";
    for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
      const auto& e = ranking.entries[i];
      out << e.rank << ',' << csv_field(e.decision) << ',' << full_precision(e.expected_utility) << ','
          << group_of(i) << '\n';
    }
    if (cn) {
      out << "\natom,normalized_commonality\n";
      for (std::size_t a = 0; a < space.atom_count(); ++a) {
        out << csv_field(space.atoms()[a].id) << ',' << full_precision((*cn)[static_cast<AtomIndex>(a)]) << '\n';
      }
    }
    return kExitOk;
  }

  out << "method: " << options.method << '\n';
  out << "tie_tolerance: " << sig6(epsilon) << "\n\n";
  out << "ranking:\n";
  Table table({"rank", "decision", "expected_utility", "tie_group"});
  for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
    const auto& e = ranking.entries[i];
    table.add({std::to_string(e.rank), e.decision, sig6(e.expected_utility), std::to_string(group_of(i))});
  }
  table.print(out);
  if (cn) {
    out << "\nnormalized_commonalities:\n";
    Table atoms({"atom", "C^N"});
    for (std::size_t a = 0; a < space.atom_count(); ++a) {
      atoms.add({space.atoms()[a].id, sig6((*cn)[static_cast<AtomIndex>(a)])});
    }
    atoms.print(out);
  }
  return kExitOk;
}

int run_bounds(const BoundsOptions& options, std::ostream& out, std::ostream& err) {
  Loaded loaded = load(options.input, err);
  if (!loaded.model) return loaded.status;
  const ProblemModel& model = *loaded.model;
  const EventSpace& space = *model.space;
  if (!model.mass) return missing_section(err, "assessment", "bounds need an assessment section");

  Subset subset;
  try {
    subset = parse_subset_expression(space, options.subset);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const Error& e) {
    return report_error(err, e);
  }

  const double bel = belief(*model.mass, subset);
  const double pr = additive_probability(*model.mass, subset);
  const double pl = plausibility(*model.mass, subset);
  const bool ordered = bel <= pr + kNumericTolerance && pr <= pl + kNumericTolerance;

  if (options.format == OutputFormat::json) {
    ojson report{{"subset", space.ids_of(subset)},
                 {"belief", bel},
                 {"additive_probability", pr},
                 {"plausibility", pl},
                 {"sandwich_holds", ordered}};
    out << report.dump(2) << '\n';
  } else if (options.format == OutputFormat::csv) {
    out << "belief,additive_probability,plausibility,sandwich_holds\n";
    out << full_precision(bel) << ',' << full_precision(pr) << ',' << full_precision(pl) << ','
        << (ordered ? "true" : "false") << '\n';
  } else {
    Table table({"subset", format_subset(space, subset)});
    table.add({"belief", sig6(bel)});
    table.add({"additive_probability", sig6(pr)});
    table.add({"plausibility", sig6(pl)});
    table.add({"sandwich_holds", ordered ? "yes" : "no"});
    table.print(out);
  }
  return ordered ? kExitOk : kExitInvalid;
}

int run_commonalities(const CommonalitiesOptions& options, std::ostream& out, std::ostream& err) {
  Loaded loaded = load(options.input, err);
  if (!loaded.model) return loaded.status;
  const ProblemModel& model = *loaded.model;
  const EventSpace& space = *model.space;
  if (!model.mass) return missing_section(err, "assessment", "commonalities need an assessment section");

  const LatticeOptions lattice{options.algorithm};
  std::optional<CommonalityVector> cn;
  std::optional<CommonalityVector> c;
  try {
    cn = atom_normalized_commonalities(*model.mass, lattice);
    c = atom_commonalities(*model.mass, lattice);
  } catch (const Error& e) {
    return report_error(err, e);
  }
  const char* algorithm = resolve_algorithm(*model.mass, lattice) == LatticeAlgorithm::dense ? "dense" : "sparse";

  if (options.format == OutputFormat::json) {
    ojson report;
    report["algorithm"] = algorithm;
    report["atoms"] = ojson::array();
    for (std::size_t a = 0; a < space.atom_count(); ++a) {
      const auto i = static_cast<AtomIndex>(a);
      report["atoms"].push_back({{"atom", space.atoms()[a].id}, {"normalized", (*cn)[i]}, {"shafer", (*c)[i]}});
    }
    out << report.dump(2) << '\n';
  } else if (options.format == OutputFormat::csv) {
    out << "atom,normalized,shafer\n";
    for (std::size_t a = 0; a < space.atom_count(); ++a) {
      const auto i = static_cast<AtomIndex>(a);
      out << csv_field(space.atoms()[a].id) << ',' << full_precision((*cn)[i]) << ',' << full_precision((*c)[i])
          << '\n';
    }
  } else {
    out << "algorithm: " << algorithm << "\n\n";
    Table table({"atom", "C^N", "C"});
    for (std::size_t a = 0; a < space.atom_count(); ++a) {
      const auto i = static_cast<AtomIndex>(a);
      table.add({space.atoms()[a].id, sig6((*cn)[i]), sig6((*c)[i])});
    }
    table.print(out);
  }
  return kExitOk;
}

}  // namespace foresight::cli
