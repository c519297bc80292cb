#include "problem_document.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace foresight::cli {

namespace {

using json = nlohmann::json;

std::optional<Value> as_value(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number() || j.is_boolean()) return j.dump();
  return std::nullopt;
}

std::string section_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidSchema: return "schema";
    case ErrorCode::MissingUtility:
    case ErrorCode::InvalidUtility: return "utilities";
    case ErrorCode::NegativeMass:
    case ErrorCode::EmptyFocalSet:
    case ErrorCode::NotNormalized:
    case ErrorCode::AllMassUnforeseeable: return "assessment";
    default: return "atoms";
  }
}

class Loader {
 public:
  ProblemModel run(const json& root) {
    if (!root.is_object()) {
      error("document", "InvalidDocument", "top level must be an object");
      return std::move(model_);
    }
    load_space(root);
    if (model_.space) {
      load_utilities(root);
      apply_importance(root);
      load_assessment(root);
      load_baseline(root);
      load_unforeseen(root);
    }
    return std::move(model_);
  }

 private:
  void error(std::string section, std::string code, std::string message) {
    model_.diagnostics.push_back(
        {Diagnostic::Severity::error, std::move(code), std::move(section), std::move(message)});
  }

  void warning(std::string section, std::string code, std::string message) {
    model_.diagnostics.push_back(
        {Diagnostic::Severity::warning, std::move(code), std::move(section), std::move(message)});
  }

  void error(const std::string& section, const Error& e) { error(section, std::string(to_string(e.code())), e.what()); }

  std::optional<Profile> read_profile(const json& j, const std::string& section, const std::string& owner) {
    if (!j.is_array()) {
      error(section, "InvalidDocument", owner + ": profile must be an array");
      return std::nullopt;
    }
    Profile p;
    for (const auto& v : j) {
      auto value = as_value(v);
      if (!value) {
        error(section, "InvalidDocument", owner + ": profile values must be strings, numbers or booleans");
        return std::nullopt;
      }
      p.push_back(std::move(*value));
    }
    return p;
  }

  void load_space(const json& root) {
    if (!root.contains("schema") || !root["schema"].is_object()) {
      error("schema", "MissingSection", "a 'schema' object is required");
      return;
    }
    if (!root.contains("atoms") || !root["atoms"].is_array()) {
      error("atoms", "MissingSection", "an 'atoms' array is required");
      return;
    }
    const json& schema = root["schema"];
    if (!schema.contains("characteristics") || !schema["characteristics"].is_array()) {
      error("schema", "InvalidDocument", "'schema.characteristics' must be an array");
      return;
    }

    std::vector<Atom> atoms;
    for (const auto& a : root["atoms"]) {
      if (!a.is_object() || !a.contains("id") || !a["id"].is_string() || !a.contains("profile")) {
        error("atoms", "InvalidDocument", "each atom needs a string 'id' and a 'profile'");
        return;
      }
      auto profile = read_profile(a["profile"], "atoms", "atom '" + a["id"].get<std::string>() + "'");
      if (!profile) return;
      atoms.push_back({a["id"].get<std::string>(), std::move(*profile)});
    }

    std::vector<Characteristic> chars;
    for (const auto& c : schema["characteristics"]) {
      if (!c.is_object() || !c.contains("name") || !c["name"].is_string() || !c.contains("reference")) {
        error("schema", "InvalidDocument", "each characteristic needs a string 'name' and a 'reference'");
        return;
      }
      Characteristic ch;
      ch.name = c["name"].get<std::string>();
      auto reference = as_value(c["reference"]);
      if (!reference) {
        error("schema", "InvalidDocument", "reference of '" + ch.name + "' must be a scalar");
        return;
      }
      ch.reference = std::move(*reference);
      if (c.contains("range")) {
        auto range = read_profile(c["range"], "schema", "characteristic '" + ch.name + "'");
        if (!range) return;
        ch.range = std::move(*range);
      } else {
        // Range defaults to the values the foreseen atoms take.
        const std::size_t k = chars.size();
        std::set<Value> seen;
        for (const auto& atom : atoms) {
          if (k < atom.profile.size() && seen.insert(atom.profile[k]).second) ch.range.push_back(atom.profile[k]);
        }
      }
      chars.push_back(std::move(ch));
    }

    try {
      CharacteristicSchema built(std::move(chars));
      model_.space.emplace(std::move(built), std::move(atoms));
    } catch (const Error& e) {
      error(section_for(e.code()), e);
    }
  }

  void load_utilities(const json& root) {
    if (!root.contains("utilities")) return;
    const json& u = root["utilities"];
    const EventSpace& space = *model_.space;
    if (!u.is_object() || !u.contains("decisions") || !u["decisions"].is_array()) {
      error("utilities", "InvalidDocument", "'utilities.decisions' must be an array");
      return;
    }
    if (!u.contains("u0") || !u["u0"].is_number()) {
      error("utilities", "MissingUtility", "'utilities.u0' is required");
      return;
    }
    std::vector<std::string> ids;
    std::vector<double> values;
    bool ok = true;
    for (const auto& d : u["decisions"]) {
      if (!d.is_object() || !d.contains("id") || !d["id"].is_string() || !d.contains("utilities") ||
          !d["utilities"].is_object()) {
        error("utilities", "InvalidDocument", "each decision needs a string 'id' and a 'utilities' object");
        return;
      }
      const std::string id = d["id"].get<std::string>();
      ids.push_back(id);
      const json& row = d["utilities"];
      for (const auto& [atom_id, value] : row.items()) {
        if (!space.find(atom_id)) {
          error("utilities", "UnknownAtom", "decision '" + id + "' cites unknown atom '" + atom_id + "'");
          ok = false;
        }
        if (!value.is_number()) {
          error("utilities", "InvalidUtility", "utility of '" + id + "' at '" + atom_id + "' is not a number");
          ok = false;
        }
      }
      for (const auto& atom : space.atoms()) {
        if (!row.contains(atom.id)) {
          error("utilities", "MissingUtility", "decision '" + id + "' has no utility for atom '" + atom.id + "'");
          ok = false;
        } else if (row[atom.id].is_number()) {
          values.push_back(row[atom.id].get<double>());
        }
      }
    }
    if (!ok) return;
    try {
      model_.utilities.emplace(std::move(ids), space.atom_count(), std::move(values), u["u0"].get<double>());
    } catch (const Error& e) {
      error("utilities", e);
    }
  }

  void apply_importance(const json& root) {
    const json& schema = root["schema"];
    EventSpace& space = *model_.space;
    if (schema.contains("importance_order")) {
      const json& order = schema["importance_order"];
      std::vector<std::size_t> indices;
      if (!order.is_array()) {
        error("schema", "InvalidSchema", "'importance_order' must be an array of characteristic names");
        return;
      }
      for (const auto& entry : order) {
        std::optional<std::size_t> k;
        if (entry.is_string()) k = space.schema().index_of(entry.get<std::string>());
        if (!k) {
          error("schema", "InvalidSchema", "importance order cites unknown characteristic " + entry.dump());
          return;
        }
        indices.push_back(*k);
      }
      try {
        space = space.with_importance_order(std::move(indices));
      } catch (const Error& e) {
        error("schema", e);
      }
      return;
    }
    if (!model_.utilities) return;
    CharacteristicRanking ranking = rank_characteristics(space, *model_.utilities);
    for (std::size_t k : ranking.missing_sweeps) {
      warning("schema", "NoReferenceSweep",
              "no foreseen atom varies only '" + space.schema()[k].name + "' from the reference; importance taken as 0");
    }
    space = space.with_importance_order(ranking.order);
    model_.computed_importance = std::move(ranking);
  }

  // Resolves one assessment entry to a subset. Profile entries are run
  // through the labelling algorithm and may resolve to the empty label.
  std::optional<Subset> resolve_label(const json& entry, const std::string& section) {
    const EventSpace& space = *model_.space;
    try {
      if (entry.contains("subset")) {
        if (!entry["subset"].is_array()) {
          error(section, "InvalidDocument", "'subset' must be an array of atom ids");
          return std::nullopt;
        }
        std::vector<std::string> ids;
        for (const auto& id : entry["subset"]) {
          if (!id.is_string()) {
            error(section, "InvalidDocument", "'subset' must be an array of atom ids");
            return std::nullopt;
          }
          if (!space.find(id.get<std::string>())) {
            error(section, "UnknownAtom", "subset cites unknown atom '" + id.get<std::string>() + "'");
            return std::nullopt;
          }
          ids.push_back(id.get<std::string>());
        }
        return space.subset_of(ids);
      }
      if (entry.contains("atom") && entry["atom"].is_string()) {
        const std::string id = entry["atom"].get<std::string>();
        if (!space.find(id)) {
          error(section, "UnknownAtom", "entry cites unknown atom '" + id + "'");
          return std::nullopt;
        }
        return relabel_atomic(space, id);
      }
      if (entry.contains("profile")) {
        auto profile = read_profile(entry["profile"], section, "assessment entry");
        if (!profile) return std::nullopt;
        return label_unforeseen(space, UnforeseenProfile{std::move(*profile)}).subset;
      }
    } catch (const Error& e) {
      error(section, e);
      return std::nullopt;
    }
    error(section, "InvalidDocument", "each entry needs one of 'subset', 'atom' or 'profile'");
    return std::nullopt;
  }

  void load_assessment(const json& root) {
    if (!root.contains("assessment")) return;
    const json& a = root["assessment"];
    const std::size_t n = model_.space->atom_count();
    if (!a.is_object()) {
      error("assessment", "InvalidDocument", "'assessment' must be an object");
      return;
    }
    const bool has_masses = a.contains("masses");
    const bool has_labelled = a.contains("labelled");
    if (has_masses == has_labelled) {
      error("assessment", "InvalidDocument", "give exactly one of 'assessment.labelled' or 'assessment.masses'");
      return;
    }
    const char* key = has_masses ? "masses" : "labelled";
    const char* weight_key = has_masses ? "mass" : "probability";
    const std::string section = std::string("assessment.") + key;
    if (!a[key].is_array()) {
      error(section, "InvalidDocument", "must be an array");
      return;
    }

    double empty_probability = 0.0;
    if (has_labelled && a.contains("unforeseen_probability")) {
      if (!a["unforeseen_probability"].is_number()) {
        error("assessment", "InvalidDocument", "'unforeseen_probability' must be a number");
        return;
      }
      empty_probability = a["unforeseen_probability"].get<double>();
    }

    std::vector<LabelledProbability> entries;
    bool ok = true;
    for (const auto& entry : a[key]) {
      if (!entry.is_object() || !entry.contains(weight_key) || !entry[weight_key].is_number()) {
        error(section, "InvalidDocument", std::string("each entry needs a numeric '") + weight_key + "'");
        ok = false;
        continue;
      }
      auto label = resolve_label(entry, section);
      if (!label) {
        ok = false;
        continue;
      }
      const double p = entry[weight_key].get<double>();
      if (label->empty()) {
        if (has_masses) {
          error(section, "EmptyFocalSet", "mass assigned to the empty set");
          ok = false;
        } else {
          empty_probability += p;
        }
        continue;
      }
      entries.push_back({std::move(*label), p});
    }
    if (!ok) return;

    try {
      if (has_masses) {
        std::vector<FocalElement> focal;
        for (auto& e : entries) focal.push_back({std::move(e.label), e.probability});
        model_.mass.emplace(n, std::move(focal));
      } else {
        model_.raw.emplace(n, std::move(entries), empty_probability);
        model_.mass.emplace(condition_on_foreseeable(*model_.raw));
      }
    } catch (const Error& e) {
      error(section, e);
    }
  }

  void load_baseline(const json& root) {
    if (!root.contains("assessment") || !root["assessment"].is_object() ||
        !root["assessment"].contains("baseline")) {
      return;
    }
    const json& b = root["assessment"]["baseline"];
    const EventSpace& space = *model_.space;
    if (!b.is_object() || !b.contains("atom_probabilities") || !b["atom_probabilities"].is_object()) {
      error("assessment.baseline", "InvalidDocument", "'atom_probabilities' must be an object keyed by atom id");
      return;
    }
    std::vector<double> probabilities(space.atom_count(), 0.0);
    for (const auto& [id, p] : b["atom_probabilities"].items()) {
      auto idx = space.find(id);
      if (!idx) {
        error("assessment.baseline", "UnknownAtom", "baseline cites unknown atom '" + id + "'");
        return;
      }
      if (!p.is_number()) {
        error("assessment.baseline", "InvalidDocument", "probability of '" + id + "' is not a number");
        return;
      }
      probabilities[*idx] = p.get<double>();
    }
    const double unforeseen =
        b.contains("unforeseen_probability") && b["unforeseen_probability"].is_number()
            ? b["unforeseen_probability"].get<double>()
            : 0.0;
    try {
      model_.baseline.emplace(std::move(probabilities), unforeseen);
    } catch (const Error& e) {
      error("assessment.baseline", e);
    }
  }

  void load_unforeseen(const json& root) {
    if (!root.contains("unforeseen")) return;
    const json& list = root["unforeseen"];
    if (!list.is_array()) {
      error("unforeseen", "InvalidDocument", "'unforeseen' must be an array");
      return;
    }
    const std::size_t m = model_.space->characteristic_count();
    for (std::size_t i = 0; i < list.size(); ++i) {
      const json& entry = list[i];
      if (!entry.is_object() || !entry.contains("profile")) {
        error("unforeseen", "InvalidDocument", "each unforeseen event needs a 'profile'");
        continue;
      }
      std::string id = entry.contains("id") && entry["id"].is_string() ? entry["id"].get<std::string>()
                                                                       : "u" + std::to_string(i + 1);
      auto profile = read_profile(entry["profile"], "unforeseen", "unforeseen event '" + id + "'");
      if (!profile) continue;
      if (profile->size() != m) {
        error("unforeseen", "ProfileLengthMismatch",
              "unforeseen event '" + id + "' has " + std::to_string(profile->size()) + " values, expected " +
                  std::to_string(m));
        continue;
      }
      model_.unforeseen.push_back({std::move(id), UnforeseenProfile{std::move(*profile)}});
    }
  }

  ProblemModel model_;
};

std::pair<std::size_t, std::size_t> line_and_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

bool ProblemModel::valid() const {
  return std::none_of(diagnostics.begin(), diagnostics.end(),
                      [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::error; });
}

ProblemModel load_document(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_and_column(text, e.byte);
    throw ParseError("parse error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                     e.what());
  }
  return Loader{}.run(root);
}

ProblemModel load_document_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_document(buffer.str());
}

nlohmann::ordered_json to_document(const ProblemModel& model) {
  using ojson = nlohmann::ordered_json;
  ojson doc;
  if (!model.space) return doc;
  const EventSpace& space = *model.space;

  ojson characteristics = ojson::array();
  for (const auto& c : space.schema().characteristics()) {
    characteristics.push_back({{"name", c.name}, {"range", c.range}, {"reference", c.reference}});
  }
  ojson order = ojson::array();
  for (std::size_t k : space.importance_order()) order.push_back(space.schema()[k].name);
  doc["schema"] = {{"characteristics", characteristics}, {"importance_order", order}};

  ojson atoms = ojson::array();
  for (const auto& a : space.atoms()) atoms.push_back({{"id", a.id}, {"profile", a.profile}});
  doc["atoms"] = atoms;

  if (model.mass) {
    ojson assessment;
    if (model.raw) {
      ojson labelled = ojson::array();
      for (const auto& l : model.raw->labelled()) {
        labelled.push_back({{"subset", space.ids_of(l.label)}, {"probability", l.probability}});
      }
      assessment["labelled"] = labelled;
      assessment["unforeseen_probability"] = model.raw->empty_probability();
    } else {
      ojson masses = ojson::array();
      for (const auto& f : model.mass->focal_elements()) {
        masses.push_back({{"subset", space.ids_of(f.subset)}, {"mass", f.mass}});
      }
      assessment["masses"] = masses;
    }
    if (model.baseline) {
      ojson probs = ojson::object();
      for (std::size_t a = 0; a < space.atom_count(); ++a) {
        probs[space.atoms()[a].id] = model.baseline->atom_probabilities()[a];
      }
      assessment["baseline"] = {{"atom_probabilities", probs},
                                {"unforeseen_probability", model.baseline->unforeseen_probability()}};
    }
    doc["assessment"] = assessment;
  }

  if (model.utilities) {
    const UtilityTable& u = *model.utilities;
    ojson decisions = ojson::array();
    for (std::size_t d = 0; d < u.decision_count(); ++d) {
      ojson row = ojson::object();
      for (std::size_t a = 0; a < space.atom_count(); ++a) {
        row[space.atoms()[a].id] = u(d, static_cast<AtomIndex>(a));
      }
      decisions.push_back({{"id", u.decisions()[d]}, {"utilities", row}});
    }
    doc["utilities"] = {{"u0", u.u0()}, {"decisions", decisions}};
  }

  if (!model.unforeseen.empty()) {
    ojson list = ojson::array();
    for (const auto& p : model.unforeseen) list.push_back({{"id", p.id}, {"profile", p.profile.values}});
    doc["unforeseen"] = list;
  }
  return doc;
}

nlohmann::ordered_json diagnostics_json(const std::vector<Diagnostic>& diagnostics) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& d : diagnostics) {
    out.push_back({{"severity", d.severity == Diagnostic::Severity::error ? "error" : "warning"},
                   {"code", d.code},
                   {"section", d.section},
                   {"message", d.message}});
  }
  return out;
}

Subset parse_subset_expression(const EventSpace& space, const std::string& expression) {
  auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return std::string();
    return s.substr(first, s.find_last_not_of(" \t") - first + 1);
  };
  const std::string expr = trim(expression);
  if (expr.empty() || expr == "{}") return Subset(space.atom_count());
  if (expr == "*") return space.full();

  std::vector<std::string> ids;
  std::size_t start = 0;
  while (true) {
    const std::size_t plus = expr.find('+', start);
    std::string token = trim(expr.substr(start, plus == std::string::npos ? std::string::npos : plus - start));
    if (token.empty()) throw ParseError("empty atom id in subset expression '" + expression + "'");
    ids.push_back(std::move(token));
    if (plus == std::string::npos) break;
    start = plus + 1;
  }
  return space.subset_of(ids);
}

UnforeseenProfile parse_profile_list(const std::string& text) {
  UnforeseenProfile profile;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) profile.values.push_back(item);
  if (!text.empty() && text.back() == ',') profile.values.emplace_back();
  return profile;
}

std::string format_subset(const EventSpace& space, const Subset& subset) {
  std::string out = "{";
  bool first = true;
  for (const auto& id : space.ids_of(subset)) {
    if (!first) out += ", ";
    out += id;
    first = false;
  }
  return out + "}";
}

}  // namespace foresight::cli
