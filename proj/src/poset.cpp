#include "fanikit/poset.hpp"

namespace fanikit {

bool Poset::is_partial_order() const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!leq[i][i]) return false;
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && leq[i][j] && leq[j][i]) return false;
      if (!leq[i][j]) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (leq[j][k] && !leq[i][k]) return false;
    }
  }
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> Poset::hasse_edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !leq[i][j]) continue;
      bool cover = true;
      for (std::size_t k = 0; k < n && cover; ++k)
        if (k != i && k != j && leq[i][k] && leq[k][j]) cover = false;
      if (cover) out.emplace_back(i, j);
    }
  return out;
}

Poset Poset::opposite() const {
  Poset p(size());
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) p.leq[i][j] = leq[j][i];
  return p;
}

bool is_order_isomorphism(const Poset& a, const Poset& b, const std::vector<std::size_t>& map) {
  if (a.size() != b.size() || map.size() != a.size()) return false;
  std::vector<bool> hit(b.size(), false);
  for (auto m : map) {
    if (m >= b.size() || hit[m]) return false;
    hit[m] = true;
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a.leq[i][j] != b.leq[map[i]][map[j]]) return false;
  return true;
}

}  // namespace fanikit
