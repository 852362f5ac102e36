#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace fanikit {

// A finite relation stored as a dense boolean matrix, leq[i][j] meaning i <= j.
struct Poset {
  std::vector<std::vector<bool>> leq;

  explicit Poset(std::size_t n = 0) : leq(n, std::vector<bool>(n, false)) {}
  std::size_t size() const { return leq.size(); }

  bool is_partial_order() const;
  // Cover relations (i, j): i < j with nothing strictly between.
  std::vector<std::pair<std::size_t, std::size_t>> hasse_edges() const;
  Poset opposite() const;
};

// map[i] is the image of element i of a. Checks bijectivity and that
// i <= j in a exactly when map[i] <= map[j] in b.
bool is_order_isomorphism(const Poset& a, const Poset& b, const std::vector<std::size_t>& map);

}  // namespace fanikit
