#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "foresight/error.hpp"
#include "foresight/subset.hpp"

namespace foresight {

using Value = std::string;
using Profile = std::vector<Value>;

struct Characteristic {
  std::string name;
  std::vector<Value> range;
  Value reference;

  friend bool operator==(const Characteristic&, const Characteristic&) = default;
};

/// The m characteristics describing events, plus their importance order
/// (most important first, as indices into `characteristics()`).
class CharacteristicSchema {
 public:
  CharacteristicSchema() = default;

  explicit CharacteristicSchema(std::vector<Characteristic> characteristics,
                                std::optional<std::vector<std::size_t>> importance_order = std::nullopt)
      : characteristics_(std::move(characteristics)) {
    if (characteristics_.empty()) {
      throw Error(ErrorCode::InvalidSchema, "at least one characteristic is required");
    }
    std::set<std::string> names;
    for (const auto& c : characteristics_) {
      if (!names.insert(c.name).second) {
        throw Error(ErrorCode::InvalidSchema, "duplicate characteristic name '" + c.name + "'");
      }
      if (c.range.empty()) {
        throw Error(ErrorCode::InvalidSchema, "characteristic '" + c.name + "' has an empty range");
      }
      std::set<Value> distinct(c.range.begin(), c.range.end());
      if (distinct.size() != c.range.size()) {
        throw Error(ErrorCode::InvalidSchema, "characteristic '" + c.name + "' lists a value twice");
      }
      if (!distinct.contains(c.reference)) {
        throw Error(ErrorCode::InvalidSchema,
                    "reference '" + c.reference + "' of characteristic '" + c.name + "' is not in its range");
      }
    }
    if (importance_order) {
      set_importance_order(std::move(*importance_order));
    } else {
      importance_.resize(characteristics_.size());
      std::iota(importance_.begin(), importance_.end(), std::size_t{0});
    }
  }

  std::size_t size() const noexcept { return characteristics_.size(); }
  const std::vector<Characteristic>& characteristics() const noexcept { return characteristics_; }
  const Characteristic& operator[](std::size_t k) const { return characteristics_.at(k); }
  const std::vector<std::size_t>& importance_order() const noexcept { return importance_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t k = 0; k < characteristics_.size(); ++k) {
      if (characteristics_[k].name == name) return k;
    }
    return std::nullopt;
  }

  Profile reference_profile() const {
    Profile p;
    p.reserve(size());
    for (const auto& c : characteristics_) p.push_back(c.reference);
    return p;
  }

  CharacteristicSchema with_importance_order(std::vector<std::size_t> order) const {
    CharacteristicSchema copy = *this;
    copy.set_importance_order(std::move(order));
    return copy;
  }

  friend bool operator==(const CharacteristicSchema&, const CharacteristicSchema&) = default;

 private:
  void set_importance_order(std::vector<std::size_t> order) {
    std::vector<bool> seen(characteristics_.size(), false);
    if (order.size() != characteristics_.size()) {
      throw Error(ErrorCode::InvalidSchema, "importance order must list every characteristic exactly once");
    }
    for (std::size_t k : order) {
      if (k >= characteristics_.size() || seen[k]) {
        throw Error(ErrorCode::InvalidSchema, "importance order is not a permutation");
      }
      seen[k] = true;
    }
    importance_ = std::move(order);
  }

  std::vector<Characteristic> characteristics_;
  std::vector<std::size_t> importance_;
};

struct Atom {
  std::string id;
  Profile profile;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// The foreseen atomic events together with their schema.
///
/// Each characteristic's range must be exactly the set of values that the
/// atoms take on it. Profiles are also stored as per-characteristic value
/// codes so matching never compares strings.
class EventSpace {
 public:
  static constexpr std::uint32_t kNoCode = ~std::uint32_t{0};

  EventSpace(CharacteristicSchema schema, std::vector<Atom> atoms)
      : schema_(std::move(schema)), atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw Error(ErrorCode::InvalidSpace, "an event space needs at least one atom");
    if (atoms_.size() > std::size_t{0xFFFFFFFE}) throw Error(ErrorCode::InvalidSpace, "too many atoms");
    const std::size_t m = schema_.size();
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      const Atom& atom = atoms_[i];
      if (!index_.emplace(atom.id, static_cast<AtomIndex>(i)).second) {
        throw Error(ErrorCode::InvalidSpace, "duplicate atom id '" + atom.id + "'");
      }
      if (atom.profile.size() != m) {
        throw Error(ErrorCode::ProfileLengthMismatch, "atom '" + atom.id + "' has " +
                                                          std::to_string(atom.profile.size()) + " values, expected " +
                                                          std::to_string(m));
      }
    }
    value_codes_.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      const auto& range = schema_[k].range;
      for (std::size_t v = 0; v < range.size(); ++v) {
        value_codes_[k].emplace(range[v], static_cast<std::uint32_t>(v));
      }
    }
    codes_.resize(atoms_.size() * m);
    for (std::size_t k = 0; k < m; ++k) {
      const auto& range = schema_[k].range;
      std::vector<bool> used(range.size(), false);
      for (std::size_t i = 0; i < atoms_.size(); ++i) {
        const std::uint32_t code = encode(k, atoms_[i].profile[k]);
        if (code == kNoCode) {
          throw Error(ErrorCode::RangeMismatch, "atom '" + atoms_[i].id + "' takes value '" + atoms_[i].profile[k] +
                                                    "' outside the range of '" + schema_[k].name + "'");
        }
        used[code] = true;
        codes_[i * m + k] = code;
      }
      for (std::size_t v = 0; v < range.size(); ++v) {
        if (!used[v]) {
          throw Error(ErrorCode::RangeMismatch, "value '" + range[v] + "' of '" + schema_[k].name +
                                                    "' is not taken by any foreseen atom");
        }
      }
    }
  }

  /// Builds the schema from the atoms: each range is the values taken, in
  /// order of first appearance.
  static EventSpace from_atoms(const std::vector<std::string>& names, const Profile& references,
                               std::vector<Atom> atoms,
                               std::optional<std::vector<std::size_t>> importance_order = std::nullopt) {
    if (references.size() != names.size()) {
      throw Error(ErrorCode::ProfileLengthMismatch, "one reference value per characteristic is required");
    }
    std::vector<Characteristic> chars(names.size());
    for (std::size_t k = 0; k < names.size(); ++k) {
      chars[k].name = names[k];
      chars[k].reference = references[k];
      std::set<Value> seen;
      for (const auto& atom : atoms) {
        if (atom.profile.size() != names.size()) {
          throw Error(ErrorCode::ProfileLengthMismatch, "atom '" + atom.id + "' has the wrong profile length");
        }
        if (seen.insert(atom.profile[k]).second) chars[k].range.push_back(atom.profile[k]);
      }
    }
    return EventSpace(CharacteristicSchema(std::move(chars), std::move(importance_order)), std::move(atoms));
  }

  const CharacteristicSchema& schema() const noexcept { return schema_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t atom_count() const noexcept { return atoms_.size(); }
  std::size_t characteristic_count() const noexcept { return schema_.size(); }
  const std::vector<std::size_t>& importance_order() const noexcept { return schema_.importance_order(); }

  std::optional<AtomIndex> find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  AtomIndex index_of(std::string_view id) const {
    if (auto idx = find(id)) return *idx;
    throw Error(ErrorCode::UnknownAtom, "no atom with id '" + std::string(id) + "'");
  }

  /// Value code of atom `atom` on characteristic `k`.
  std::uint32_t code(AtomIndex atom, std::size_t k) const { return codes_[atom * schema_.size() + k]; }

  /// Value code of `value` on characteristic `k`, or kNoCode when the value
  /// is outside the range.
  std::uint32_t encode(std::size_t k, const Value& value) const {
    const auto& codes = value_codes_.at(k);
    auto it = codes.find(value);
    return it == codes.end() ? kNoCode : it->second;
  }

  Subset subset_of(std::span<const std::string> ids) const {
    std::vector<AtomIndex> members;
    members.reserve(ids.size());
    for (const auto& id : ids) members.push_back(index_of(id));
    return Subset(atom_count(), std::move(members));
  }

  std::vector<std::string> ids_of(const Subset& s) const {
    std::vector<std::string> ids;
    ids.reserve(s.cardinality());
    for (AtomIndex a : s.members()) ids.push_back(atoms_.at(a).id);
    return ids;
  }

  Subset full() const { return Subset::full(atom_count()); }

  EventSpace with_importance_order(std::vector<std::size_t> order) const {
    return EventSpace(schema_.with_importance_order(std::move(order)), atoms_);
  }

  friend bool operator==(const EventSpace& a, const EventSpace& b) {
    return a.schema_ == b.schema_ && a.atoms_ == b.atoms_;
  }

 private:
  CharacteristicSchema schema_;
  std::vector<Atom> atoms_;
  std::unordered_map<std::string, AtomIndex> index_;
  std::vector<std::unordered_map<Value, std::uint32_t>> value_codes_;
  std::vector<std::uint32_t> codes_;
};

/// Physically reorders the characteristics so that `order[0]` becomes the
/// first one. The resulting importance order is the identity.
inline EventSpace reorder_characteristics(const EventSpace& space, std::span<const std::size_t> order) {
  const auto& schema = space.schema();
  if (order.size() != schema.size()) {
    throw Error(ErrorCode::InvalidSchema, "reordering must list every characteristic exactly once");
  }
  std::vector<Characteristic> chars;
  chars.reserve(order.size());
  for (std::size_t k : order) chars.push_back(schema[k]);
  std::vector<Atom> atoms = space.atoms();
  for (auto& atom : atoms) {
    Profile p;
    p.reserve(order.size());
    for (std::size_t k : order) p.push_back(atom.profile[k]);
    atom.profile = std::move(p);
  }
  return EventSpace(CharacteristicSchema(std::move(chars)), std::move(atoms));
}

/// Largest r such that every atom of `subset` agrees on the r most
/// important characteristics.
inline std::size_t shared_prefix_length(const EventSpace& space, const Subset& subset) {
  if (subset.empty()) throw Error(ErrorCode::EmptySubset, "shared prefix of an empty subset");
  if (subset.universe_size() != space.atom_count()) {
    throw Error(ErrorCode::UniverseMismatch, "subset does not belong to this event space");
  }
  const auto members = subset.members();
  const AtomIndex first = members.front();
  std::size_t r = 0;
  for (std::size_t k : space.importance_order()) {
    const std::uint32_t code = space.code(first, k);
    for (AtomIndex a : members.subspan(1)) {
      if (space.code(a, k) != code) return r;
    }
    ++r;
  }
  return r;
}

/// Partition of the atoms by full profile. Blocks appear in order of their
/// first atom; a singleton block is an atom with a unique profile.
inline std::vector<Subset> group_atoms_by_profile(const EventSpace& space) {
  const std::size_t n = space.atom_count();
  const std::size_t m = space.characteristic_count();
  std::map<std::vector<std::uint32_t>, std::size_t> block_of;
  std::vector<std::vector<AtomIndex>> blocks;
  std::vector<std::uint32_t> key(m);
  for (AtomIndex a = 0; a < n; ++a) {
    for (std::size_t k = 0; k < m; ++k) key[k] = space.code(a, k);
    auto [it, inserted] = block_of.try_emplace(key, blocks.size());
    if (inserted) blocks.emplace_back();
    blocks[it->second].push_back(a);
  }
  std::vector<Subset> out;
  out.reserve(blocks.size());
  for (auto& b : blocks) out.emplace_back(n, std::move(b));
  return out;
}

}  // namespace foresight
