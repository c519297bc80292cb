#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "foresight/belief.hpp"
#include "foresight/error.hpp"
#include "foresight/event_space.hpp"
#include "foresight/subset.hpp"
#include "foresight/tolerances.hpp"

namespace foresight {

/// How an unforeseen event rates on each characteristic. Values outside the
/// foreseen ranges are allowed.
struct UnforeseenProfile {
  Profile values;
};

struct Label {
  /// Foreseen atoms the event is mapped to; empty means the event resembles
  /// nothing foreseen.
  Subset subset;
  /// Number of leading (importance-ordered) characteristics matched.
  std::size_t depth = 0;

  bool is_empty_label() const noexcept { return subset.empty(); }

  friend bool operator==(const Label&, const Label&) = default;
};

/// Maps an unforeseen event onto the foreseen atoms it resembles.
///
/// Starting from all m characteristics and dropping the least important one
/// at a time, the label is the union of the events that share the profile's
/// values on the r most important characteristics, for the largest r at which
/// that union is nonempty. An event shares those r values exactly when every
/// one of its atoms does, so the union is the set of matching atoms. When not
/// even the most important characteristic matches, the label is empty and
/// the depth is 0.
inline Label label_unforeseen(const EventSpace& space, const UnforeseenProfile& profile) {
  const std::size_t m = space.characteristic_count();
  if (profile.values.size() != m) {
    throw Error(ErrorCode::ProfileLengthMismatch, "profile has " + std::to_string(profile.values.size()) +
                                                      " values, expected " + std::to_string(m));
  }
  const auto& order = space.importance_order();
  std::vector<std::uint32_t> wanted(m);
  for (std::size_t r = 0; r < m; ++r) wanted[r] = space.encode(order[r], profile.values[order[r]]);

  // Matched-prefix length per atom; the label is the set of atoms attaining
  // the maximum.
  std::size_t best = 0;
  std::vector<AtomIndex> matches;
  for (AtomIndex a = 0; a < space.atom_count(); ++a) {
    std::size_t r = 0;
    while (r < m && wanted[r] != EventSpace::kNoCode && space.code(a, order[r]) == wanted[r]) ++r;
    if (r == 0 || r < best) continue;
    if (r > best) {
      best = r;
      matches.clear();
    }
    matches.push_back(a);
  }
  return Label{Subset(space.atom_count(), std::move(matches)), best};
}

/// The block of atoms sharing `atom`'s full profile.
inline Subset relabel_atomic(const EventSpace& space, std::string_view atom_id) {
  const AtomIndex atom = space.index_of(atom_id);
  const std::size_t m = space.characteristic_count();
  std::vector<AtomIndex> block;
  for (AtomIndex a = 0; a < space.atom_count(); ++a) {
    bool same = true;
    for (std::size_t k = 0; k < m && same; ++k) same = space.code(a, k) == space.code(atom, k);
    if (same) block.push_back(a);
  }
  return Subset(space.atom_count(), std::move(block));
}

struct LabelledProbability {
  Subset label;
  double probability;
};

/// Assessed probabilities of the labels I_A, plus the probability of the
/// empty label (an event resembling nothing foreseen).
class RawAssessment {
 public:
  RawAssessment(std::size_t atom_count, std::vector<LabelledProbability> labelled, double empty_probability,
                double tolerance = kNormTolerance)
      : atoms_(atom_count), labelled_(std::move(labelled)), empty_(empty_probability) {
    double total = empty_;
    if (!(empty_ >= 0.0) || !std::isfinite(empty_)) {
      throw Error(ErrorCode::NegativeMass, "probability of the empty label must be nonnegative");
    }
    for (const auto& l : labelled_) {
      if (l.label.universe_size() != atoms_) {
        throw Error(ErrorCode::UniverseMismatch, "label over the wrong universe");
      }
      if (l.label.empty()) {
        throw Error(ErrorCode::EmptyFocalSet, "the empty label is given by empty_probability, not as a subset");
      }
      if (!(l.probability >= 0.0) || !std::isfinite(l.probability)) {
        throw Error(ErrorCode::NegativeMass, "label probabilities must be nonnegative");
      }
      total += l.probability;
    }
    if (std::abs(total - 1.0) > tolerance) {
      throw Error(ErrorCode::NotNormalized, "assessed probabilities sum to " + std::to_string(total));
    }
  }

  std::size_t atom_count() const noexcept { return atoms_; }
  const std::vector<LabelledProbability>& labelled() const noexcept { return labelled_; }
  double empty_probability() const noexcept { return empty_; }

 private:
  std::size_t atoms_;
  std::vector<LabelledProbability> labelled_;
  double empty_;
};

/// m(A) = Pr(I_A | not I_empty).
inline MassFunction condition_on_foreseeable(const RawAssessment& raw) {
  const double foreseeable = 1.0 - raw.empty_probability();
  if (foreseeable <= kNormTolerance) {
    throw Error(ErrorCode::AllMassUnforeseeable, "every assessed event resembles nothing foreseen");
  }
  std::vector<FocalElement> entries;
  entries.reserve(raw.labelled().size());
  for (const auto& l : raw.labelled()) entries.push_back({l.label, l.probability / foreseeable});
  return MassFunction(raw.atom_count(), std::move(entries));
}

}  // namespace foresight
