#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "foresight/belief.hpp"
#include "foresight/error.hpp"
#include "foresight/subset.hpp"
#include "foresight/tolerances.hpp"
#include "foresight/utility.hpp"

namespace foresight {

namespace detail {

inline void require_coverage(const UtilityTable& u, std::size_t atom_count) {
  if (u.atom_count() != atom_count) {
    throw Error(ErrorCode::MissingUtility, "utility table covers " + std::to_string(u.atom_count()) +
                                               " atoms, expected " + std::to_string(atom_count));
  }
}

}  // namespace detail

/// Utility of decision `d` given label I_A: the mean of u(d|E) over E in A.
/// When every atom of A has the same utility this is that common value.
inline double compound_utility(const UtilityTable& u, std::size_t d, const Subset& label) {
  if (label.empty()) throw Error(ErrorCode::EmptySubset, "compound utility of the empty label");
  detail::require_coverage(u, label.universe_size());
  const auto row = u.row(d);
  double total = 0.0;
  for (AtomIndex a : label.members()) total += row[a];
  return total / static_cast<double>(label.cardinality());
}

inline double compound_utility(const UtilityTable& u, std::string_view d, const Subset& label) {
  return compound_utility(u, u.index_of(d), label);
}

/// Sum over focal sets A of m(A) u(d|I_A).
inline double expected_utility_eq2(const MassFunction& mf, const UtilityTable& u, std::size_t d) {
  detail::require_coverage(u, mf.atom_count());
  double total = 0.0;
  for (const auto& f : mf.focal_elements()) total += f.mass * compound_utility(u, d, f.subset);
  return total;
}

inline double expected_utility_eq2(const MassFunction& mf, const UtilityTable& u, std::string_view d) {
  return expected_utility_eq2(mf, u, u.index_of(d));
}

/// Sum over atoms E of C^N(E) u(d|E).
inline double expected_utility_commonality(const CommonalityVector& cn, const UtilityTable& u, std::size_t d) {
  if (cn.kind() != CommonalityKind::normalized) {
    throw Error(ErrorCode::KindMismatch, "expected utility needs normalized commonalities");
  }
  detail::require_coverage(u, cn.size());
  const auto row = u.row(d);
  const auto values = cn.values();
  double total = 0.0;
  for (std::size_t a = 0; a < values.size(); ++a) total += values[a] * row[a];
  return total;
}

inline double expected_utility_commonality(const CommonalityVector& cn, const UtilityTable& u, std::string_view d) {
  return expected_utility_commonality(cn, u, u.index_of(d));
}

/// Probabilities over the foreseen atoms plus a single lumped unforeseen
/// event, for the classical evaluation where that event has utility u0 under
/// every decision.
class BaselineAssessment {
 public:
  BaselineAssessment(std::vector<double> atom_probabilities, double unforeseen_probability,
                     double tolerance = kNormTolerance)
      : atoms_(std::move(atom_probabilities)), unforeseen_(unforeseen_probability) {
    double total = unforeseen_;
    if (!(unforeseen_ >= 0.0) || !std::isfinite(unforeseen_)) {
      throw Error(ErrorCode::NegativeMass, "unforeseen probability must be nonnegative");
    }
    for (double p : atoms_) {
      if (!(p >= 0.0) || !std::isfinite(p)) throw Error(ErrorCode::NegativeMass, "atom probabilities must be nonnegative");
      total += p;
    }
    if (std::abs(total - 1.0) > tolerance) {
      throw Error(ErrorCode::NotNormalized, "baseline probabilities sum to " + std::to_string(total));
    }
  }

  const std::vector<double>& atom_probabilities() const noexcept { return atoms_; }
  double unforeseen_probability() const noexcept { return unforeseen_; }

 private:
  std::vector<double> atoms_;
  double unforeseen_;
};

/// Sum over E of Pr(E) u(d|E), plus Pr(unforeseen) u0.
inline double expected_utility_eq1(const BaselineAssessment& p, const UtilityTable& u, std::size_t d) {
  detail::require_coverage(u, p.atom_probabilities().size());
  const auto row = u.row(d);
  double total = p.unforeseen_probability() * u.u0();
  for (std::size_t a = 0; a < row.size(); ++a) total += p.atom_probabilities()[a] * row[a];
  return total;
}

inline double expected_utility_eq1(const BaselineAssessment& p, const UtilityTable& u, std::string_view d) {
  return expected_utility_eq1(p, u, u.index_of(d));
}

struct RankedDecision {
  std::string decision;
  std::size_t input_index = 0;
  double expected_utility = 0.0;
  /// 1-based competition rank; all members of a tie group share one rank.
  std::size_t rank = 0;
};

struct DecisionRanking {
  std::vector<RankedDecision> entries;
  std::vector<std::vector<std::string>> tie_groups;

  /// Same order, ranks and tie groups; expected utilities are not compared.
  bool same_ranking(const DecisionRanking& other) const {
    if (entries.size() != other.entries.size() || tie_groups != other.tie_groups) return false;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].decision != other.entries[i].decision || entries[i].rank != other.entries[i].rank) return false;
    }
    return true;
  }

  std::vector<std::string> order() const {
    std::vector<std::string> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.decision);
    return out;
  }
};

/// Sorts decisions by decreasing value. A tie group collects the decisions
/// within `tie_tolerance` of the group's best value; inside a group decisions
/// keep their input order.
inline DecisionRanking rank_by_values(const std::vector<std::string>& decisions, const std::vector<double>& values,
                                      double tie_tolerance = kTieTolerance) {
  std::vector<std::size_t> idx(decisions.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });

  DecisionRanking out;
  out.entries.reserve(idx.size());
  std::size_t start = 0;
  while (start < idx.size()) {
    const double top = values[idx[start]];
    std::size_t end = start + 1;
    while (end < idx.size() && top - values[idx[end]] < tie_tolerance) ++end;
    std::sort(idx.begin() + static_cast<std::ptrdiff_t>(start), idx.begin() + static_cast<std::ptrdiff_t>(end));
    std::vector<std::string> group;
    for (std::size_t i = start; i < end; ++i) {
      out.entries.push_back({decisions[idx[i]], idx[i], values[idx[i]], start + 1});
      group.push_back(decisions[idx[i]]);
    }
    out.tie_groups.push_back(std::move(group));
    start = end;
  }
  return out;
}

enum class RankingMethod { eq2, commonality };

inline DecisionRanking rank_decisions(const MassFunction& mf, const UtilityTable& u, RankingMethod method,
                                      double tie_tolerance = kTieTolerance) {
  detail::require_coverage(u, mf.atom_count());
  std::vector<double> values(u.decision_count());
  if (method == RankingMethod::eq2) {
    for (std::size_t d = 0; d < values.size(); ++d) values[d] = expected_utility_eq2(mf, u, d);
  } else {
    const CommonalityVector cn = atom_normalized_commonalities(mf);
    for (std::size_t d = 0; d < values.size(); ++d) values[d] = expected_utility_commonality(cn, u, d);
  }
  return rank_by_values(u.decisions(), values, tie_tolerance);
}

inline DecisionRanking rank_decisions(const BaselineAssessment& p, const UtilityTable& u,
                                      double tie_tolerance = kTieTolerance) {
  std::vector<double> values(u.decision_count());
  for (std::size_t d = 0; d < values.size(); ++d) values[d] = expected_utility_eq1(p, u, d);
  return rank_by_values(u.decisions(), values, tie_tolerance);
}

}  // namespace foresight
