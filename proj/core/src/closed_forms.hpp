#pragma once

#include <vector>

#include "ptwell/hierarchy.hpp"

namespace ptwell::detail {

/// Closed-form W of the second member, after `first`, factorized at `second`.
Superpotential superpotential_w2(const SpectralLevel& first, const SpectralLevel& second, Coupling z);

/// A potential stays PT-symmetric iff no complex pair is split.
bool preserves_pt(const std::vector<SpectralLevel>& removed);

}  // namespace ptwell::detail
