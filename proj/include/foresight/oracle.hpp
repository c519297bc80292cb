#pragma once

// Brute-force reference implementations. Everything here enumerates the
// whole power set of the atoms and is only meant for small spaces; none of it
// reuses the traversal code of the optimized routines it is compared with.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "foresight/belief.hpp"
#include "foresight/error.hpp"
#include "foresight/event_space.hpp"
#include "foresight/subset.hpp"
#include "foresight/unforeseen.hpp"
#include "foresight/utility.hpp"

namespace foresight::oracle {

inline constexpr std::size_t kMaxAtoms = 12;

namespace detail {

inline void require_small(std::size_t n) {
  if (n > kMaxAtoms) {
    throw Error(ErrorCode::SpaceTooLarge,
                std::to_string(n) + " atoms exceeds the oracle limit of " + std::to_string(kMaxAtoms));
  }
}

inline std::uint32_t to_bits(const Subset& s) {
  std::uint32_t bits = 0;
  for (std::size_t a = 0; a < s.universe_size(); ++a) {
    if (s.contains(static_cast<AtomIndex>(a))) bits |= std::uint32_t{1} << a;
  }
  return bits;
}

inline int count_bits(std::uint32_t bits) {
  int c = 0;
  for (; bits != 0; bits >>= 1) c += static_cast<int>(bits & 1u);
  return c;
}

/// Mass of every one of the 2^n subsets, indexed by bit pattern.
inline std::vector<double> mass_table(const MassFunction& mf) {
  require_small(mf.atom_count());
  std::vector<double> table(std::size_t{1} << mf.atom_count(), 0.0);
  for (const auto& f : mf.focal_elements()) table[to_bits(f.subset)] += f.mass;
  return table;
}

}  // namespace detail

inline double oracle_commonality(const MassFunction& mf, const Subset& event) {
  if (event.empty()) throw Error(ErrorCode::EmptySubset, "commonality of the empty set");
  const auto table = detail::mass_table(mf);
  const std::uint32_t e = detail::to_bits(event);
  double total = 0.0;
  for (std::uint32_t a = 1; a < table.size(); ++a) {
    if ((a & e) == e) total += table[a];
  }
  return total;
}

inline double oracle_normalized_commonality(const MassFunction& mf, const Subset& event) {
  if (event.empty()) throw Error(ErrorCode::EmptySubset, "normalized commonality of the empty set");
  const auto table = detail::mass_table(mf);
  const std::uint32_t e = detail::to_bits(event);
  double total = 0.0;
  for (std::uint32_t a = 1; a < table.size(); ++a) {
    if ((a & e) == e) total += table[a] / detail::count_bits(a);
  }
  return total;
}

/// Runs the labelling procedure literally: for r = m down to 1, every
/// nonempty set of atoms is a candidate event; it is eligible when its atoms
/// agree with each other on the r most important characteristics and those
/// shared values equal the profile's. The label is the union of the eligible
/// events at the first r where any exist.
inline Label oracle_label(const EventSpace& space, const UnforeseenProfile& profile) {
  const std::size_t n = space.atom_count();
  detail::require_small(n);
  const std::size_t m = space.characteristic_count();
  if (profile.values.size() != m) throw Error(ErrorCode::ProfileLengthMismatch, "profile length differs from m");
  const auto& order = space.importance_order();
  const auto& atoms = space.atoms();

  for (std::size_t r = m; r >= 1; --r) {
    std::uint32_t united = 0;
    for (std::uint32_t event = 1; event < (std::uint32_t{1} << n); ++event) {
      // Characteristics shared by every atom of the event.
      std::size_t first = 0;
      while (((event >> first) & 1u) == 0) ++first;
      std::size_t shared = 0;
      for (std::size_t k = 0; k < m; ++k) {
        bool agree = true;
        for (std::size_t a = 0; a < n; ++a) {
          if (((event >> a) & 1u) && atoms[a].profile[order[k]] != atoms[first].profile[order[k]]) agree = false;
        }
        if (!agree) break;
        ++shared;
      }
      if (shared < r) continue;
      bool eligible = true;
      for (std::size_t k = 0; k < r; ++k) {
        if (atoms[first].profile[order[k]] != profile.values[order[k]]) eligible = false;
      }
      if (eligible) united |= event;
    }
    if (united != 0) return Label{Subset::from_mask(n, united), r};
  }
  return Label{Subset(n), 0};
}

/// Sum over focal A of m(A) times the mean utility over A.
inline double oracle_expected_utility(const MassFunction& mf, const UtilityTable& u, std::size_t d) {
  const auto table = detail::mass_table(mf);
  const std::size_t n = mf.atom_count();
  if (u.atom_count() != n) throw Error(ErrorCode::MissingUtility, "utility table does not match the space");
  double total = 0.0;
  for (std::uint32_t a = 1; a < table.size(); ++a) {
    if (table[a] == 0.0) continue;
    double sum = 0.0;
    int count = 0;
    for (std::size_t e = 0; e < n; ++e) {
      if ((a >> e) & 1u) {
        sum += u(d, static_cast<AtomIndex>(e));
        ++count;
      }
    }
    total += table[a] * sum / count;
  }
  return total;
}

}  // namespace foresight::oracle
