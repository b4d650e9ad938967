#include <cmath>
#include <string>

#include "ptwell/errors.hpp"
#include "ptwell/wavefunctions.hpp"

namespace ptwell {

double gegenbauer(int n, int m, double x) {
  if (n < 0 || m < 1) {
    throw DomainError("gegenbauer: need n >= 0 and m >= 1 (got n=" + std::to_string(n) +
                      ", m=" + std::to_string(m) + ")");
  }
  if (n == 0) return 1.0;
  double prev = 1.0;
  double curr = 2.0 * m * x;
  for (int k = 2; k <= n; ++k) {
    const double next = (2.0 * x * (k + m - 1) * curr - (k + 2 * m - 2) * prev) / k;
    prev = curr;
    curr = next;
  }
  return curr;
}

double limit_form(int m, int n, double x) {
  if (m < 1 || m > 3) throw DomainError("limit_form: m must lie in [1, 3]");
  if (!(std::abs(x) < 1.0)) throw DomainError("limit_form: |x| must be below 1");
  const double theta = 0.5 * kPi * x;
  return std::pow(std::cos(theta), m) * gegenbauer(n, m, std::sin(theta));
}

}  // namespace ptwell
