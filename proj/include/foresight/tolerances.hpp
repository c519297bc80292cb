#pragma once

namespace foresight {

/// Tolerance on input normalization (masses, probabilities summing to one).
inline constexpr double kNormTolerance = 1e-9;

/// Tolerance for internal algebraic identities.
inline constexpr double kNumericTolerance = 1e-12;

/// Expected utilities closer than this are reported as ties.
inline constexpr double kTieTolerance = 1e-9;

}  // namespace foresight
