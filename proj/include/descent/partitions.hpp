#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

// Integer partitions, used as orbit labels for intersection-lattice orbits
// and as quiver vertex names.

namespace descent {

struct Partition {
  std::vector<int> parts;  // weakly decreasing, all positive; empty = ()

  int sum() const { return std::accumulate(parts.begin(), parts.end(), 0); }
  int size() const { return static_cast<int>(parts.size()); }

  static Partition of(std::vector<int> p) {
    std::sort(p.begin(), p.end(), std::greater<int>());
    while (!p.empty() && p.back() == 0) p.pop_back();
    return Partition{std::move(p)};
  }

  // "3211" when all parts are single digits, "12,3,1" otherwise, "0" for the
  // empty partition.
  std::string label() const {
    if (parts.empty()) return "0";
    const bool digits = std::all_of(parts.begin(), parts.end(),
                                    [](int p) { return p <= 9; });
    std::string s;
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i && !digits) s += ',';
      s += std::to_string(parts[i]);
    }
    return s;
  }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.parts == b.parts;
  }
  // Total order: by sum, then lexicographic on parts.  Any fixed total order
  // works; this one groups partitions of the same integer together, which
  // keeps type-B vertex listings readable.
  friend bool operator<(const Partition& a, const Partition& b) {
    if (a.sum() != b.sum()) return a.sum() < b.sum();
    return a.parts < b.parts;
  }
};

inline std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  // Descending recursive generation: next part at most the previous one.
  auto rec = [&](auto&& self, int rest, int maxPart) -> void {
    if (rest == 0) {
      out.push_back(Partition{cur});
      return;
    }
    for (int p = std::min(rest, maxPart); p >= 1; --p) {
      cur.push_back(p);
      self(self, rest - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Partition> partitions_up_to(int n) {
  std::vector<Partition> out;
  for (int m = 0; m <= n; ++m) {
    auto pm = partitions_of(m);
    out.insert(out.end(), pm.begin(), pm.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Removes one occurrence of each requested part; returns false if absent.
inline bool remove_parts(std::vector<int>& parts, std::initializer_list<int> remove) {
  for (int r : remove) {
    auto it = std::find(parts.begin(), parts.end(), r);
    if (it == parts.end()) return false;
    parts.erase(it);
  }
  return true;
}

}  // namespace descent
