#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "foresight/error.hpp"
#include "foresight/subset.hpp"

namespace foresight {

/// u(d|E) for every decision d and atom E, plus the utility u0 of an event
/// that resembles no foreseen atom.
class UtilityTable {
 public:
  /// `values` is row-major: one row of `atom_count` utilities per decision.
  UtilityTable(std::vector<std::string> decisions, std::size_t atom_count, std::vector<double> values, double u0)
      : decisions_(std::move(decisions)), atoms_(atom_count), values_(std::move(values)), u0_(u0) {
    if (decisions_.empty()) throw Error(ErrorCode::InvalidUtility, "at least one decision is required");
    if (atoms_ == 0) throw Error(ErrorCode::InvalidUtility, "utility table over zero atoms");
    std::set<std::string_view> seen;
    for (const auto& d : decisions_) {
      if (!seen.insert(d).second) throw Error(ErrorCode::InvalidUtility, "duplicate decision '" + d + "'");
    }
    if (values_.size() != decisions_.size() * atoms_) {
      throw Error(ErrorCode::MissingUtility, "expected " + std::to_string(decisions_.size() * atoms_) +
                                                 " utilities, got " + std::to_string(values_.size()));
    }
    for (double v : values_) {
      if (!std::isfinite(v)) throw Error(ErrorCode::InvalidUtility, "utilities must be finite");
    }
    if (!std::isfinite(u0_)) throw Error(ErrorCode::InvalidUtility, "u0 must be finite");
  }

  std::size_t decision_count() const noexcept { return decisions_.size(); }
  std::size_t atom_count() const noexcept { return atoms_; }
  const std::vector<std::string>& decisions() const noexcept { return decisions_; }
  double u0() const noexcept { return u0_; }

  std::optional<std::size_t> find(std::string_view decision) const {
    for (std::size_t d = 0; d < decisions_.size(); ++d) {
      if (decisions_[d] == decision) return d;
    }
    return std::nullopt;
  }

  std::size_t index_of(std::string_view decision) const {
    if (auto d = find(decision)) return *d;
    throw Error(ErrorCode::MissingUtility, "no utilities for decision '" + std::string(decision) + "'");
  }

  double operator()(std::size_t decision, AtomIndex atom) const { return values_[decision * atoms_ + atom]; }

  std::span<const double> row(std::size_t decision) const {
    if (decision >= decisions_.size()) {
      throw Error(ErrorCode::MissingUtility, "decision index " + std::to_string(decision) + " out of range");
    }
    return std::span<const double>(values_).subspan(decision * atoms_, atoms_);
  }

  /// a*u + b applied to every utility and to u0.
  UtilityTable affine(double scale, double shift) const {
    std::vector<double> v = values_;
    for (double& x : v) x = scale * x + shift;
    return UtilityTable(decisions_, atoms_, std::move(v), scale * u0_ + shift);
  }

  friend bool operator==(const UtilityTable&, const UtilityTable&) = default;

 private:
  std::vector<std::string> decisions_;
  std::size_t atoms_;
  std::vector<double> values_;
  double u0_;
};

}  // namespace foresight
