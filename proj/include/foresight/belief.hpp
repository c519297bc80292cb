#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "foresight/error.hpp"
#include "foresight/event_space.hpp"
#include "foresight/subset.hpp"
#include "foresight/tolerances.hpp"

namespace foresight {

struct FocalElement {
  Subset subset;
  double mass;
};

/// Basic probability assignment over the nonempty subsets of the atoms.
///
/// Focal elements are stored once each, in canonical subset order, and carry
/// strictly positive mass summing to one.
class MassFunction {
 public:
  MassFunction(std::size_t atom_count, std::vector<FocalElement> entries, double tolerance = kNormTolerance)
      : atoms_(atom_count) {
    if (entries.empty()) throw Error(ErrorCode::NotNormalized, "no mass entries given");
    for (const auto& e : entries) {
      if (e.subset.universe_size() != atoms_) {
        throw Error(ErrorCode::UniverseMismatch, "focal set over a universe of size " +
                                                     std::to_string(e.subset.universe_size()) + ", expected " +
                                                     std::to_string(atoms_));
      }
      if (e.subset.empty()) throw Error(ErrorCode::EmptyFocalSet, "mass assigned to the empty set");
      if (!(e.mass >= 0.0) || !std::isfinite(e.mass)) {
        throw Error(ErrorCode::NegativeMass, "mass " + std::to_string(e.mass) + " is not a nonnegative number");
      }
    }
    std::sort(entries.begin(), entries.end(),
              [](const FocalElement& a, const FocalElement& b) { return a.subset < b.subset; });
    double total = 0.0;
    for (auto& e : entries) {
      total += e.mass;
      if (!focal_.empty() && focal_.back().subset == e.subset) {
        focal_.back().mass += e.mass;
      } else {
        focal_.push_back(std::move(e));
      }
    }
    if (std::abs(total - 1.0) > tolerance) {
      throw Error(ErrorCode::NotNormalized, "masses sum to " + std::to_string(total));
    }
    std::erase_if(focal_, [](const FocalElement& e) { return e.mass == 0.0; });
  }

  std::size_t atom_count() const noexcept { return atoms_; }
  std::span<const FocalElement> focal_elements() const noexcept { return focal_; }
  std::size_t focal_count() const noexcept { return focal_.size(); }

  /// m(A); zero for subsets that are not focal.
  double mass_of(const Subset& subset) const {
    auto it = std::lower_bound(focal_.begin(), focal_.end(), subset,
                               [](const FocalElement& e, const Subset& s) { return e.subset < s; });
    return it != focal_.end() && it->subset == subset ? it->mass : 0.0;
  }

  bool all_singletons() const {
    return std::all_of(focal_.begin(), focal_.end(), [](const FocalElement& e) { return e.subset.cardinality() == 1; });
  }

 private:
  std::size_t atoms_;
  std::vector<FocalElement> focal_;
};

/// Validates and merges `entries` into a mass function over `space`.
inline MassFunction make_mass(const EventSpace& space, std::vector<FocalElement> entries) {
  return MassFunction(space.atom_count(), std::move(entries));
}

inline MassFunction make_mass(std::size_t atom_count, std::vector<FocalElement> entries) {
  return MassFunction(atom_count, std::move(entries));
}

enum class CommonalityKind { shafer, normalized };

/// Per-atom commonality values, either Shafer's C or the normalized C^N.
class CommonalityVector {
 public:
  CommonalityVector(std::vector<double> values, CommonalityKind kind, double tolerance = kNormTolerance)
      : values_(std::move(values)), kind_(kind) {
    double total = 0.0;
    for (double v : values_) {
      if (!(v >= -tolerance && v <= 1.0 + tolerance)) {
        throw Error(ErrorCode::NotNormalized, "commonality " + std::to_string(v) + " outside [0, 1]");
      }
      total += v;
    }
    if (kind_ == CommonalityKind::normalized && std::abs(total - 1.0) > tolerance) {
      throw Error(ErrorCode::NotNormalized, "normalized commonalities sum to " + std::to_string(total));
    }
  }

  CommonalityKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](AtomIndex atom) const { return values_.at(atom); }

 private:
  std::vector<double> values_;
  CommonalityKind kind_;
};

namespace detail {

inline void require_universe(const MassFunction& mf, const Subset& s) {
  if (s.universe_size() != mf.atom_count()) {
    throw Error(ErrorCode::UniverseMismatch, "subset and mass function live on different spaces");
  }
}

}  // namespace detail

/// Shafer's commonality C(E): total mass of the focal sets containing E.
inline double commonality(const MassFunction& mf, const Subset& event) {
  if (event.empty()) throw Error(ErrorCode::EmptySubset, "commonality of the empty set");
  detail::require_universe(mf, event);
  double total = 0.0;
  for (const auto& f : mf.focal_elements()) {
    if (event.is_subset_of(f.subset)) total += f.mass;
  }
  return total;
}

/// C^N(E): like C(E), but each containing focal set A contributes m(A)/|A|.
inline double normalized_commonality(const MassFunction& mf, const Subset& event) {
  if (event.empty()) throw Error(ErrorCode::EmptySubset, "normalized commonality of the empty set");
  detail::require_universe(mf, event);
  double total = 0.0;
  for (const auto& f : mf.focal_elements()) {
    if (event.is_subset_of(f.subset)) total += f.mass / static_cast<double>(f.subset.cardinality());
  }
  return total;
}

enum class LatticeAlgorithm { automatic, sparse, dense };

struct LatticeOptions {
  LatticeAlgorithm algorithm = LatticeAlgorithm::automatic;
  /// Largest atom count for which the dense lattice may be allocated.
  std::size_t dense_atom_cap = 24;
};

/// Algorithm `automatic` resolves to for `mf`: dense when the focal count
/// exceeds 2^n / n and n is within the cap.
inline LatticeAlgorithm resolve_algorithm(const MassFunction& mf, const LatticeOptions& options = {}) {
  if (options.algorithm != LatticeAlgorithm::automatic) return options.algorithm;
  const std::size_t n = mf.atom_count();
  if (n == 0 || n > options.dense_atom_cap || n >= 63) return LatticeAlgorithm::sparse;
  const double crossover = std::ldexp(1.0, static_cast<int>(n)) / static_cast<double>(n);
  return static_cast<double>(mf.focal_count()) > crossover ? LatticeAlgorithm::dense : LatticeAlgorithm::sparse;
}

namespace detail {

/// Per-atom sums of weight(A) * m(A) over focal sets A containing the atom.
template <typename Weight>
std::vector<double> atom_superset_sums(const MassFunction& mf, const LatticeOptions& options, Weight weight) {
  const std::size_t n = mf.atom_count();
  std::vector<double> out(n, 0.0);

  if (resolve_algorithm(mf, options) == LatticeAlgorithm::sparse) {
    for (const auto& f : mf.focal_elements()) {
      const double w = f.mass * weight(f.subset.cardinality());
      for (AtomIndex a : f.subset.members()) out[a] += w;
    }
    return out;
  }

  if (n > options.dense_atom_cap || n >= 63) {
    throw Error(ErrorCode::LatticeTooLarge, "dense lattice over " + std::to_string(n) + " atoms exceeds the cap of " +
                                                std::to_string(options.dense_atom_cap));
  }
  // Superset-sum (zeta) transform over the full lattice.
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<double> lattice(size, 0.0);
  for (const auto& f : mf.focal_elements()) lattice[f.subset.mask()] += f.mass * weight(f.subset.cardinality());
  for (std::size_t bit = 0; bit < n; ++bit) {
    const std::uint64_t b = std::uint64_t{1} << bit;
    for (std::uint64_t s = 0; s < size; ++s) {
      if ((s & b) == 0) lattice[s] += lattice[s | b];
    }
  }
  for (std::size_t a = 0; a < n; ++a) out[a] = lattice[std::uint64_t{1} << a];
  return out;
}

}  // namespace detail

/// C^N at every atom. These sum to one for any valid mass function.
inline CommonalityVector atom_normalized_commonalities(const MassFunction& mf, const LatticeOptions& options = {}) {
  auto values = detail::atom_superset_sums(mf, options, [](std::size_t k) { return 1.0 / static_cast<double>(k); });
  return CommonalityVector(std::move(values), CommonalityKind::normalized);
}

/// Shafer's C at every atom.
inline CommonalityVector atom_commonalities(const MassFunction& mf, const LatticeOptions& options = {}) {
  auto values = detail::atom_superset_sums(mf, options, [](std::size_t) { return 1.0; });
  return CommonalityVector(std::move(values), CommonalityKind::shafer);
}

/// Lower probability: mass of the focal sets inside `event`.
inline double belief(const MassFunction& mf, const Subset& event) {
  detail::require_universe(mf, event);
  double total = 0.0;
  for (const auto& f : mf.focal_elements()) {
    if (f.subset.is_subset_of(event)) total += f.mass;
  }
  return total;
}

/// Upper probability: mass of the focal sets meeting `event`.
inline double plausibility(const MassFunction& mf, const Subset& event) {
  detail::require_universe(mf, event);
  double total = 0.0;
  for (const auto& f : mf.focal_elements()) {
    if (f.subset.intersects(event)) total += f.mass;
  }
  return total;
}

/// Additive measure obtained by spreading each focal mass evenly over its
/// atoms: sum over A of m(A) |A n B| / |A|. Equals the sum of the atom C^N
/// values over B.
inline double additive_probability(const MassFunction& mf, const Subset& event) {
  detail::require_universe(mf, event);
  double total = 0.0;
  for (const auto& f : mf.focal_elements()) {
    const std::size_t common = f.subset.intersection_size(event);
    if (common != 0) {
      total += f.mass * static_cast<double>(common) / static_cast<double>(f.subset.cardinality());
    }
  }
  return total;
}

}  // namespace foresight
