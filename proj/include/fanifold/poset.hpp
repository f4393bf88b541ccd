// Small finite-poset utility: labels, order matrix, Hasse covers.

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fanifold {

struct Poset {
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> leq;  // leq[i][j] ⇔ element i ≤ element j

  int size() const { return int(labels.size()); }

  bool le(int i, int j) const { return leq[i][j]; }

  /// Hasse edges (i, j): i < j with nothing strictly between.
  std::vector<std::pair<int, int>> cover_edges() const {
    std::vector<std::pair<int, int>> out;
    const int n = size();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j || !leq[i][j]) continue;
        bool covered = true;
        for (int k = 0; k < n && covered; ++k)
          if (k != i && k != j && leq[i][k] && leq[k][j]) covered = false;
        if (covered) out.emplace_back(i, j);
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<int> minimal_elements() const {
    std::vector<int> out;
    for (int j = 0; j < size(); ++j) {
      bool minimal = true;
      for (int i = 0; i < size() && minimal; ++i)
        if (i != j && leq[i][j]) minimal = false;
      if (minimal) out.push_back(j);
    }
    return out;
  }

  /// Indices sorted so that i ≤ j implies i comes first.
  std::vector<int> linear_extension() const {
    std::vector<int> order(size());
    for (int i = 0; i < size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      int da = 0, db = 0;
      for (int k = 0; k < size(); ++k) {
        if (k != a && leq[k][a]) ++da;
        if (k != b && leq[k][b]) ++db;
      }
      return da < db;
    });
    return order;
  }

  /// Does `map` (ours -> other's indices) define an order isomorphism?
  bool is_order_iso(const Poset& other, const std::vector<int>& map) const {
    if (size() != other.size() || int(map.size()) != size()) return false;
    std::vector<bool> hit(size(), false);
    for (int m : map) {
      if (m < 0 || m >= size() || hit[m]) return false;
      hit[m] = true;
    }
    for (int i = 0; i < size(); ++i)
      for (int j = 0; j < size(); ++j)
        if (leq[i][j] != other.leq[map[i]][map[j]]) return false;
    return true;
  }
};

}  // namespace fanifold
