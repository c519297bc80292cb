#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "foresight/error.hpp"
#include "foresight/event_space.hpp"
#include "foresight/utility.hpp"

namespace foresight {

struct CharacteristicRanking {
  /// Characteristic indices, most important first.
  std::vector<std::size_t> order;
  /// Importance of each characteristic, by original index.
  std::vector<double> importance;
  /// Characteristics for which no foreseen atom matched the reference
  /// profile off that characteristic; their importance is 0.
  std::vector<std::size_t> missing_sweeps;
};

/// Orders characteristics by how much utility varies when only that
/// characteristic moves away from its reference level.
///
/// The sweep for characteristic j covers every foreseen atom that equals the
/// reference profile everywhere except possibly at j, and every decision;
/// importance is the spread (max - min) of u(d|E) over that sweep. Ties keep
/// the original characteristic order.
inline CharacteristicRanking rank_characteristics(const EventSpace& space, const UtilityTable& utilities) {
  if (utilities.atom_count() != space.atom_count()) {
    throw Error(ErrorCode::MissingUtility, "utility table does not cover the atoms of the space");
  }
  const std::size_t m = space.characteristic_count();
  const std::size_t n = space.atom_count();

  std::vector<std::uint32_t> reference(m);
  for (std::size_t k = 0; k < m; ++k) reference[k] = space.encode(k, space.schema()[k].reference);

  CharacteristicRanking out;
  out.importance.assign(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    bool any = false;
    for (AtomIndex a = 0; a < n; ++a) {
      bool in_sweep = true;
      for (std::size_t k = 0; k < m && in_sweep; ++k) {
        in_sweep = k == j || space.code(a, k) == reference[k];
      }
      if (!in_sweep) continue;
      any = true;
      for (std::size_t d = 0; d < utilities.decision_count(); ++d) {
        lo = std::min(lo, utilities(d, a));
        hi = std::max(hi, utilities(d, a));
      }
    }
    if (any) {
      out.importance[j] = hi - lo;
    } else {
      out.missing_sweeps.push_back(j);
    }
  }

  out.order.resize(m);
  std::iota(out.order.begin(), out.order.end(), std::size_t{0});
  std::stable_sort(out.order.begin(), out.order.end(),
                   [&](std::size_t a, std::size_t b) { return out.importance[a] > out.importance[b]; });
  return out;
}

}  // namespace foresight
