#pragma once

#include <complex>
#include <numbers>

namespace ptwell {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

/// coth z, evaluated through e^{-2|Re z|} once |Re z| > 20 so that
/// large arguments never overflow sinh/cosh.
cplx stable_coth(cplx z);

/// cosech^2 z with the same large-argument treatment as stable_coth.
cplx stable_csch2(cplx z);

/// z coth z - 1 and z^2 cosech^2 z - 1, summed from their Taylor series
/// for |z| < 1 where the direct forms lose digits to cancellation.
cplx zcoth_minus_one(cplx z);
cplx z2csch2_minus_one(cplx z);

/// Principal square root; Re >= 0, and Im carries the sign of Im(w).
inline cplx principal_sqrt(cplx w) { return std::sqrt(w); }

}  // namespace ptwell
