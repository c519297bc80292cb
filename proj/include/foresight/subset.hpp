#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "foresight/error.hpp"

namespace foresight {

using AtomIndex = std::uint32_t;

/// A set of atoms of a fixed universe {0, ..., universe_size - 1}.
///
/// Members are kept as a sorted, duplicate-free list of atom indices, so two
/// subsets holding the same atoms compare equal regardless of how they were
/// built. A sorted index list rather than a packed bit vector keeps sparse
/// subsets of very large universes cheap; `mask()` recovers the packed form
/// for universes of at most 64 atoms.
class Subset {
 public:
  Subset() = default;

  explicit Subset(std::size_t universe_size) : universe_(universe_size) {}

  Subset(std::size_t universe_size, std::vector<AtomIndex> members)
      : universe_(universe_size), members_(std::move(members)) {
    if (!std::is_sorted(members_.begin(), members_.end())) {
      std::sort(members_.begin(), members_.end());
    }
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!members_.empty() && members_.back() >= universe_) {
      throw Error(ErrorCode::UnknownAtom, "atom index " + std::to_string(members_.back()) +
                                              " outside universe of size " + std::to_string(universe_));
    }
  }

  static Subset singleton(std::size_t universe_size, AtomIndex atom) {
    return Subset(universe_size, std::vector<AtomIndex>{atom});
  }

  static Subset full(std::size_t universe_size) {
    Subset s(universe_size);
    s.members_.resize(universe_size);
    for (std::size_t i = 0; i < universe_size; ++i) s.members_[i] = static_cast<AtomIndex>(i);
    return s;
  }

  static Subset from_mask(std::size_t universe_size, std::uint64_t mask) {
    if (universe_size < 64 && (mask >> universe_size) != 0) {
      throw Error(ErrorCode::UnknownAtom, "mask has bits outside universe");
    }
    Subset s(universe_size);
    s.members_.reserve(static_cast<std::size_t>(std::popcount(mask)));
    while (mask != 0) {
      s.members_.push_back(static_cast<AtomIndex>(std::countr_zero(mask)));
      mask &= mask - 1;
    }
    return s;
  }

  std::size_t universe_size() const noexcept { return universe_; }
  std::size_t cardinality() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  std::span<const AtomIndex> members() const noexcept { return members_; }

  bool contains(AtomIndex atom) const {
    return std::binary_search(members_.begin(), members_.end(), atom);
  }

  std::uint64_t mask() const {
    if (universe_ > 64) {
      throw Error(ErrorCode::LatticeTooLarge, "bit mask needs a universe of at most 64 atoms");
    }
    std::uint64_t bits = 0;
    for (AtomIndex a : members_) bits |= std::uint64_t{1} << a;
    return bits;
  }

  bool is_subset_of(const Subset& other) const {
    check_same_universe(other);
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(), members_.end());
  }

  bool is_superset_of(const Subset& other) const { return other.is_subset_of(*this); }

  std::size_t intersection_size(const Subset& other) const {
    check_same_universe(other);
    std::size_t count = 0;
    auto i = members_.begin();
    auto j = other.members_.begin();
    while (i != members_.end() && j != other.members_.end()) {
      if (*i < *j) {
        ++i;
      } else if (*j < *i) {
        ++j;
      } else {
        ++count;
        ++i;
        ++j;
      }
    }
    return count;
  }

  bool intersects(const Subset& other) const { return intersection_size(other) != 0; }

  Subset unite(const Subset& other) const {
    check_same_universe(other);
    Subset out(universe_);
    std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                   std::back_inserter(out.members_));
    return out;
  }

  Subset intersect(const Subset& other) const {
    check_same_universe(other);
    Subset out(universe_);
    std::set_intersection(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                          std::back_inserter(out.members_));
    return out;
  }

  Subset complement() const {
    Subset out(universe_);
    out.members_.reserve(universe_ - members_.size());
    auto it = members_.begin();
    for (std::size_t a = 0; a < universe_; ++a) {
      if (it != members_.end() && *it == a) {
        ++it;
      } else {
        out.members_.push_back(static_cast<AtomIndex>(a));
      }
    }
    return out;
  }

  friend bool operator==(const Subset&, const Subset&) = default;
  friend auto operator<=>(const Subset&, const Subset&) = default;

 private:
  void check_same_universe(const Subset& other) const {
    if (universe_ != other.universe_) {
      throw Error(ErrorCode::UniverseMismatch, "subsets over universes of size " + std::to_string(universe_) +
                                                   " and " + std::to_string(other.universe_));
    }
  }

  std::size_t universe_ = 0;
  std::vector<AtomIndex> members_;
};

}  // namespace foresight
