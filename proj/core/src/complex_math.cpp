#include "ptwell/complex_math.hpp"

#include <array>
#include <cmath>

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>

namespace ptwell {

namespace {
constexpr double kLargeArgument = 20.0;
constexpr double kSeriesRadius = 1.0;
constexpr std::size_t kSeriesTerms = 24;  // (1/pi)^48 is far below rounding

// z coth z = sum_n c_n z^{2n},  c_n = 4^n B_{2n} / (2n)!
const std::array<double, kSeriesTerms + 1>& coth_coefficients() {
  static const auto c = [] {
    std::array<double, kSeriesTerms + 1> out{};
    for (std::size_t n = 0; n <= kSeriesTerms; ++n) {
      const auto k = static_cast<unsigned>(n);
      out[n] = std::ldexp(boost::math::bernoulli_b2n<double>(static_cast<int>(n)), static_cast<int>(2 * n)) /
               boost::math::factorial<double>(2 * k);
    }
    return out;
  }();
  return c;
}

// sum_{n>=1} w_n c_n z^{2n}, highest power first.
template <class Weight>
cplx series(cplx z, Weight weight) {
  const auto& c = coth_coefficients();
  const cplx z2 = z * z;
  cplx acc = 0.0;
  for (std::size_t n = kSeriesTerms; n >= 1; --n) acc = (acc + weight(n) * c[n]) * z2;
  return acc;
}
}  // namespace

cplx stable_coth(cplx z) {
  if (std::abs(z.real()) > kLargeArgument) {
    const double sign = z.real() > 0.0 ? 1.0 : -1.0;
    const cplx q = std::exp(-2.0 * sign * z);
    return sign * (1.0 + 2.0 * q / (1.0 - q));
  }
  return std::cosh(z) / std::sinh(z);
}

cplx stable_csch2(cplx z) {
  if (std::abs(z.real()) > kLargeArgument) {
    const double sign = z.real() > 0.0 ? 1.0 : -1.0;
    const cplx q = std::exp(-2.0 * sign * z);
    // cosech z = 2 e^{-z} / (1 - e^{-2z}) for Re z > 0
    const cplx c = 2.0 * std::exp(-sign * z) / (1.0 - q);
    return c * c;
  }
  const cplx s = std::sinh(z);
  return 1.0 / (s * s);
}

cplx zcoth_minus_one(cplx z) {
  if (std::abs(z) < kSeriesRadius) return series(z, [](std::size_t) { return 1.0; });
  return z * stable_coth(z) - 1.0;
}

// z^2 cosech^2 z = z coth z - z d/dz(z coth z)  =>  weights 1 - 2n.
cplx z2csch2_minus_one(cplx z) {
  if (std::abs(z) < kSeriesRadius) {
    return series(z, [](std::size_t n) { return 1.0 - 2.0 * static_cast<double>(n); });
  }
  return z * z * stable_csch2(z) - 1.0;
}

}  // namespace ptwell
