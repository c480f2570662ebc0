#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "descent/rational.hpp"

// Sparse exact vectors indexed by small nonnegative ids (faces, flats, group
// elements).  Terms are kept sorted by index with no explicit zeros, which
// makes equality structural and iteration deterministic.

namespace descent {

class SparseVec {
 public:
  using Term = std::pair<int, Rational>;

  SparseVec() = default;
  static SparseVec unit(int index, Rational coeff = Rational(1)) {
    SparseVec v;
    if (!coeff.is_zero()) v.terms_.emplace_back(index, std::move(coeff));
    return v;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  Rational coeff(int index) const {
    for (const auto& [i, c] : terms_)
      if (i == index) return c;
      else if (i > index) break;
    return Rational(0);
  }

  void add_term(int index, const Rational& c) {
    if (c.is_zero()) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), index,
                               [](const Term& t, int v) { return t.first < v; });
    if (it != terms_.end() && it->first == index) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    } else {
      terms_.insert(it, {index, c});
    }
  }

  SparseVec& operator+=(const SparseVec& o) {
    if (o.empty()) return *this;
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    size_t a = 0, b = 0;
    while (a < terms_.size() || b < o.terms_.size()) {
      if (b >= o.terms_.size() ||
          (a < terms_.size() && terms_[a].first < o.terms_[b].first)) {
        merged.push_back(terms_[a++]);
      } else if (a >= terms_.size() || o.terms_[b].first < terms_[a].first) {
        merged.push_back(o.terms_[b++]);
      } else {
        Rational c = terms_[a].second + o.terms_[b].second;
        if (!c.is_zero()) merged.emplace_back(terms_[a].first, std::move(c));
        ++a;
        ++b;
      }
    }
    terms_ = std::move(merged);
    return *this;
  }

  SparseVec& operator-=(const SparseVec& o) {
    *this += o * Rational(-1);
    return *this;
  }

  friend SparseVec operator+(SparseVec a, const SparseVec& b) { a += b; return a; }
  friend SparseVec operator-(SparseVec a, const SparseVec& b) { a -= b; return a; }

  friend SparseVec operator*(const SparseVec& v, const Rational& c) {
    SparseVec out;
    if (c.is_zero()) return out;
    out.terms_.reserve(v.terms_.size());
    for (const auto& [i, x] : v.terms_) out.terms_.emplace_back(i, x * c);
    return out;
  }
  friend SparseVec operator*(const Rational& c, const SparseVec& v) { return v * c; }

  friend bool operator==(const SparseVec& a, const SparseVec& b) {
    return a.terms_ == b.terms_;
  }
  friend bool operator!=(const SparseVec& a, const SparseVec& b) { return !(a == b); }

  // Builds from an unsorted term list, combining duplicates.
  static SparseVec from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    SparseVec v;
    for (auto& [i, c] : terms) {
      if (!v.terms_.empty() && v.terms_.back().first == i)
        v.terms_.back().second += c;
      else
        v.terms_.emplace_back(i, std::move(c));
    }
    std::erase_if(v.terms_, [](const Term& t) { return t.second.is_zero(); });
    return v;
  }

 private:
  std::vector<Term> terms_;
};

}  // namespace descent
