#pragma once

#include <functional>

#include "ptwell/complex_math.hpp"
#include "ptwell/spectral.hpp"

namespace ptwell {

using ComplexFunction = std::function<cplx(double)>;

/// Complex potential on (-1,0) u (0,1).  Near either wall it behaves as
/// p(p-1)/(1 -+ x)^2 with p = endpoint_exponent; p = 1 is the bare well.
struct PiecewisePotential {
  ComplexFunction right;
  ComplexFunction left;
  int endpoint_exponent = 1;
  bool pt_symmetric = true;  // claimed V(x) = conj V(-x); tests verify it

  /// x >= 0 evaluates the right branch.
  cplx operator()(double x) const { return x >= 0.0 ? right(x) : left(x); }
};

/// V_R = -iZ, V_L = +iZ.
PiecewisePotential square_well_potential(Coupling z);

}  // namespace ptwell
