#pragma once

// One-sided closed forms written in u = distance from the wall (u = 1 - x on
// the right, u = 1 + x on the left) with side wavenumbers k and the side's
// constant potential c (-iZ right, +iZ left).  Every hierarchy formula has
// the same shape on both sides; only the wavenumbers differ.
//
// With s_k = sinh(k u), c_k = cosh(k u) and M_k = k c_k s_a - k_a c_a s_k
// (the Wronskian of s_a and s_k), the Darboux chain reads
//   member 2:  psi ~ M_c / s_a
//   member 3:  psi ~ D_c s_c - D_b M_c s_b / M_b,   D_k = k^2 - k_a^2.

#include "ptwell/complex_math.hpp"

namespace ptwell::canonical {

struct Jet {
  cplx value;
  cplx du;
};

/// W-hat = -phi_u/phi for phi = sinh(k_a u).
inline Jet w1(cplx ka, double u) {
  return {-ka * stable_coth(ka * u), ka * ka * stable_csch2(ka * u)};
}

inline cplx v2(cplx c, cplx ka, double u) { return c + 2.0 * ka * ka * stable_csch2(ka * u); }

// Near the wall k coth(ku) and k^2 cosech^2(ku) share the leading 1/u and
// 1/u^2, which cancel in every difference below.  Writing
//   k coth(ku) = (1 + h)/u,   k^2 cosech^2(ku) = (1 + g)/u^2
// with h, g from their series keeps those differences accurate.

/// W-hat of the second member after eliminating a then b.
inline Jet w2(cplx ka, cplx kb, double u) {
  const cplx ha = zcoth_minus_one(ka * u), hb = zcoth_minus_one(kb * u);
  const cplx ga = z2csch2_minus_one(ka * u), gb = z2csch2_minus_one(kb * u);
  const cplx delta = kb * kb - ka * ka;
  const cplx dh = hb - ha;
  return {(1.0 + ha) / u - delta * u / dh, -(1.0 + ga) / (u * u) - delta * (gb - ga) / (dh * dh)};
}

inline cplx v3(cplx c, cplx ka, cplx kb, double u) {
  const cplx dh = zcoth_minus_one(kb * u) - zcoth_minus_one(ka * u);
  const cplx dg = z2csch2_minus_one(kb * u) - z2csch2_minus_one(ka * u);
  return c - 2.0 * (kb * kb - ka * ka) * dg / (dh * dh);
}

inline Jet psi1(cplx kc, double u) { return {std::sinh(kc * u), kc * std::cosh(kc * u)}; }

/// M_c / s_a and its u-derivative.
inline Jet psi2(cplx ka, cplx kc, double u) {
  const cplx sa = std::sinh(ka * u), ca = std::cosh(ka * u);
  const cplx sc = std::sinh(kc * u), cc = std::cosh(kc * u);
  const cplx m = kc * cc * sa - ka * ca * sc;
  const cplx dc = kc * kc - ka * ka;
  return {m / sa, dc * sc - ka * ca * m / (sa * sa)};
}

/// D_c s_c - D_b M_c s_b / M_b and its u-derivative.
inline Jet psi3(cplx ka, cplx kb, cplx kc, double u) {
  const cplx sa = std::sinh(ka * u), ca = std::cosh(ka * u);
  const cplx sb = std::sinh(kb * u), cb = std::cosh(kb * u);
  const cplx sc = std::sinh(kc * u), cc = std::cosh(kc * u);
  const cplx db = kb * kb - ka * ka;
  const cplx dc = kc * kc - ka * ka;
  const cplx mb = kb * cb * sa - ka * ca * sb;
  const cplx mc = kc * cc * sa - ka * ca * sc;
  const cplx value = dc * sc - db * mc * sb / mb;
  const cplx du = dc * kc * cc -
                  db * ((dc * sa * sc * sb + mc * kb * cb) / mb - db * mc * sa * sb * sb / (mb * mb));
  return {value, du};
}

}  // namespace ptwell::canonical
