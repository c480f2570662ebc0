#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

#include "descent/rational.hpp"

// Incremental integer row spans for the radical filtration.
//
// Rows are sparse integer vectors kept in fully reduced (pseudo-RREF) form:
// leading positions strictly increase, every row is zero at the leading
// position of every other row, entries are coprime as a set with positive
// lead.  Elimination is fraction-free: v <- (lead_r/g) v - (v_c/g) r, followed
// by a content strip, so entries stay small on the structured inputs this is
// used for.  Scaling a row by a positive rational does not change the span,
// which is what lets rational inputs be cleared to integers up front.

namespace descent {

// Sparse integer row: (position, value) with positions strictly increasing
// and no zero values.
using IntRow = std::vector<std::pair<int, mpz_class>>;

// Divides all entries by their gcd and makes the leading entry positive.
inline void normalize_row(IntRow& v) {
  if (v.empty()) return;
  mpz_class g = 0;
  for (const auto& [pos, val] : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), val.get_mpz_t());
    if (g == 1) break;
  }
  if (v.front().second < 0) g = -g;
  if (g != 1)
    for (auto& [pos, val] : v) val /= g;
}

// Clears denominators of a sparse rational vector and strips content.
inline IntRow int_row_from(const std::vector<std::pair<int, Rational>>& terms) {
  mpz_class lcm = 1;
  for (const auto& [pos, c] : terms)
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.den().get_mpz_t());
  IntRow v;
  v.reserve(terms.size());
  for (const auto& [pos, c] : terms) {
    if (c.is_zero()) continue;
    v.emplace_back(pos, c.num() * (lcm / c.den()));
  }
  normalize_row(v);
  return v;
}

class IntRowSpan {
 public:
  IntRowSpan() = default;
  explicit IntRowSpan(int cols) : cols_(cols) {}

  int cols() const { return cols_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<IntRow>& rows() const { return rows_; }

  // Eliminates v at every leading position of the span.  Afterwards v is
  // either empty (it was in the span) or leads at a fresh position.
  void reduce(IntRow& v) const {
    size_t k = 0;
    size_t idx = 0;
    while (idx < v.size()) {
      const int pos = v[idx].first;
      while (k < rows_.size() && rows_[k].front().first < pos) ++k;
      if (k < rows_.size() && rows_[k].front().first == pos) {
        combine(v, rows_[k]);
        // entries merged in from the row sit at non-leading positions, so the
        // scan can resume just past pos
        idx = static_cast<size_t>(
            std::lower_bound(v.begin(), v.end(), pos + 1,
                             [](const auto& t, int p) { return t.first < p; }) -
            v.begin());
      } else {
        ++idx;
      }
    }
  }

  bool contains(IntRow v) const {
    reduce(v);
    return v.empty();
  }

  // Returns whether the rank grew.
  bool insert(IntRow v) {
    reduce(v);
    if (v.empty()) return false;
    normalize_row(v);
    const int lead = v.front().first;
    // keep the span fully reduced: clear the new leading position everywhere
    for (auto& row : rows_) {
      const auto it = std::lower_bound(
          row.begin(), row.end(), lead,
          [](const auto& t, int p) { return t.first < p; });
      if (it == row.end() || it->first != lead) continue;
      eliminate_at(row, v, it - row.begin());
    }
    const auto at = std::lower_bound(
        rows_.begin(), rows_.end(), lead,
        [](const IntRow& r, int p) { return r.front().first < p; });
    rows_.insert(at, std::move(v));
    return true;
  }

 private:
  // v <- (r_lead/g) v - (v_at_lead/g) r, merging sorted terms.
  static void combine(IntRow& v, const IntRow& r) {
    const auto it = std::lower_bound(
        v.begin(), v.end(), r.front().first,
        [](const auto& t, int p) { return t.first < p; });
    eliminate_at(v, r, it - v.begin());
  }

  static void eliminate_at(IntRow& v, const IntRow& r, std::ptrdiff_t idx) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), v[static_cast<size_t>(idx)].second.get_mpz_t(),
            r.front().second.get_mpz_t());
    const mpz_class a = r.front().second / g;   // multiplies v
    const mpz_class b = v[static_cast<size_t>(idx)].second / g;  // multiplies r
    IntRow out;
    out.reserve(v.size() + r.size());
    size_t i = 0, j = 0;
    while (i < v.size() || j < r.size()) {
      if (j >= r.size() || (i < v.size() && v[i].first < r[j].first)) {
        out.emplace_back(v[i].first, a * v[i].second);
        ++i;
      } else if (i >= v.size() || r[j].first < v[i].first) {
        out.emplace_back(r[j].first, -b * r[j].second);
        ++j;
      } else {
        mpz_class c = a * v[i].second - b * r[j].second;
        if (c != 0) out.emplace_back(v[i].first, std::move(c));
        ++i;
        ++j;
      }
    }
    v = std::move(out);
    normalize_row(v);
  }

  int cols_ = 0;
  std::vector<IntRow> rows_;
};

}  // namespace descent
