#include "fanikit/fltz.hpp"

#include <algorithm>

namespace fanikit {

std::vector<FltzStratum> fltz_skeleton(const Fan& fan) {
  std::vector<FltzStratum> out;
  for (std::size_t c = 0; c < fan.size(); ++c) {
    FltzStratum s;
    s.cone_index = c;
    s.cone = fan.cone(c);
    s.annihilator = annihilator(fan.rank(), s.cone.rays);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<FltzStratum> fltz_skeleton(const StackyFan& sf) {
  const StackyReport rep = validate_stacky(sf);
  if (!rep.valid()) throw std::invalid_argument("fltz_skeleton: invalid stacky fan: " + rep.failures.front());
  std::vector<FltzStratum> out = fltz_skeleton(sf.fan);
  for (std::size_t i = 0; i < sf.fan_tilde.size(); ++i) {
    // M_sigma = M / beta(saturated span of the upstairs rays).
    const Sublattice up = saturate(span(sf.fan_tilde.rank(), sf.fan_tilde.cone(i).rays));
    const IntMatrix image = sf.beta * up.basis;
    out[sf.cone_bijection[i]].component_order = cokernel(image).torsion_order;
  }
  return out;
}

bool FactorizationReport::ok() const {
  return std::all_of(entries.begin(), entries.end(), [](const FactorizationEntry& e) { return e.ok; });
}

FactorizationReport local_factorization(const Fan& fan, std::size_t sigma) {
  FactorizationReport rep;
  rep.sigma = sigma;
  const QuotientFan q = quotient_fan(fan, sigma);
  const IntMatrix pullback = q.lattice.projection.transposed();
  for (std::size_t t = 0; t < fan.size(); ++t) {
    if (!q.cone_map[t]) continue;
    const Sublattice direct = annihilator(fan.rank(), fan.cone(t).rays);
    const Sublattice down = annihilator(q.fan.rank(), q.fan.cone(*q.cone_map[t]).rays);
    Sublattice pulled;
    pulled.ambient_rank = fan.rank();
    pulled.basis = pullback * down.basis;
    rep.entries.push_back({t, same_lattice(direct, pulled)});
  }
  return rep;
}

ChartDescriptor chart_data(const FanifoldData& phi, std::size_t stratum) {
  if (stratum >= phi.strata.size()) throw std::out_of_range("chart_data: unknown stratum");
  ChartDescriptor c;
  c.stratum = stratum;
  c.codim = phi.strata[stratum].lattice_rank();
  c.skeleton = fltz_skeleton(phi.strata[stratum].fan);
  return c;
}

}  // namespace fanikit
