#pragma once

#include "fanikit/fanifold.hpp"

#include <string>
#include <vector>

namespace fanikit {

// sigma-perp x sigma, with the subtorus recorded by its tangent lattice in
// the dual lattice and a finite component count.
struct FltzStratum {
  std::size_t cone_index = 0;
  Cone cone;
  Sublattice annihilator;
  Integer component_order = 1;
};

std::vector<FltzStratum> fltz_skeleton(const Fan& fan);
// Strata indexed by the cones of the downstairs fan.
std::vector<FltzStratum> fltz_skeleton(const StackyFan& fan);

struct FactorizationEntry {
  std::size_t tau = 0;
  bool ok = false;
};

struct FactorizationReport {
  std::size_t sigma = 0;
  std::vector<FactorizationEntry> entries;
  bool ok() const;
};

// For each tau containing sigma, compares ann(tau) in the dual of M with
// the annihilator of tau/sigma pulled back along M -> M/<sigma>.
FactorizationReport local_factorization(const Fan& fan, std::size_t sigma);

struct ChartDescriptor {
  std::size_t stratum = 0;
  std::size_t codim = 0;
  std::vector<FltzStratum> skeleton;
};

ChartDescriptor chart_data(const FanifoldData& phi, std::size_t stratum);

}  // namespace fanikit
