#pragma once

namespace fbcalc::constants {

// sup over the closed sector |arg z| <= pi/6 of |e^{-z} - e^{-2z}|.
// Brute force: 2001 angles x 20001 radii on r in (0, 6], then golden-section
// refinement of the best ray; the maximum sits on the boundary ray at
// r = 0.790020... with value 0.286821828256004. Re-derived in the tests by an
// independent grid oracle.
inline constexpr double kRem37SectorSup = 0.28682183;
inline constexpr double kRem37SectorSupTolerance = 1e-8;

// Smallest n with ||u A T(u)|| > 1/e for the surrogate A = -lambda0 I + n N
// (N the nilpotent shift) at u = 0.1. Computed by SVD of the closed-form
// Toeplitz matrix for n = 1..64: the norm first exceeds 1/e at n = 4 for both
// lambda0 = 0 (0.5302) and lambda0 = 1 (0.3958); n = 3 gives 0.348 and 0.275.
inline constexpr int kHilleCrossingDimension = 4;
inline constexpr double kHilleU = 0.1;

}  // namespace fbcalc::constants
