#pragma once

// Rank-2 pictures. Everything outside [-extent, extent]^2 is clipped.

#include "fanikit/amoeba.hpp"
#include "fanikit/dual_space.hpp"
#include "fanikit/fan.hpp"
#include "fanikit/tropical.hpp"

#include <string>

namespace fanikit {

std::string svg_fan(const Fan& fan, double extent = 3.0);
std::string svg_dual_complex(const DualComplex& psi, double extent = 3.0);
// Optional amoeba overlay, drawn as Log(z)/log t.
std::string svg_tropical(const TropicalComplex& pi, const SampleCloud* cloud = nullptr, double extent = 3.0);

}  // namespace fanikit
