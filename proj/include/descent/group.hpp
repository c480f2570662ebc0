#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "descent/linalg.hpp"

// Finite reflection groups of types A and B in their standard reflection
// representations on R^n.
//
//   type A, rank n: the symmetric group S_n permuting coordinates
//                   (|W| = n!, n-1 simple generators);
//   type B, rank n: signed permutations (|W| = 2^n n!, n simple generators).
//
// Elements are stored as signed permutation tables: img[i] is the image of
// i+1, a value in {±1, ..., ±n}; type A tables are all-positive.  The action
// on vectors moves the value in slot i to slot |w(i)|, negating it when w(i)
// is negative; the matrix of the action is derived from the table on demand.

namespace descent {

enum class CoxType { A, B };

inline std::string type_name(CoxType t) { return t == CoxType::A ? "A" : "B"; }

struct SignedPerm {
  std::vector<int> img;

  int degree() const { return static_cast<int>(img.size()); }

  // Image of a signed letter k in {±1..±n}; tables are odd: w(-k) = -w(k).
  int apply(int k) const {
    return k > 0 ? img[static_cast<size_t>(k - 1)]
                 : -img[static_cast<size_t>(-k - 1)];
  }

  static SignedPerm identity(int n) {
    SignedPerm w;
    w.img.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) w.img[static_cast<size_t>(i)] = i + 1;
    return w;
  }

  // Composition acting on the left: (a*b)(k) = a(b(k)).
  friend SignedPerm operator*(const SignedPerm& a, const SignedPerm& b) {
    SignedPerm c;
    c.img.resize(b.img.size());
    for (size_t i = 0; i < b.img.size(); ++i) c.img[i] = a.apply(b.img[i]);
    return c;
  }

  SignedPerm inverse() const {
    SignedPerm w;
    w.img.resize(img.size());
    for (size_t i = 0; i < img.size(); ++i) {
      const int v = img[i];
      if (v > 0)
        w.img[static_cast<size_t>(v - 1)] = static_cast<int>(i) + 1;
      else
        w.img[static_cast<size_t>(-v - 1)] = -(static_cast<int>(i) + 1);
    }
    return w;
  }

  friend bool operator==(const SignedPerm& a, const SignedPerm& b) { return a.img == b.img; }
  friend bool operator<(const SignedPerm& a, const SignedPerm& b) { return a.img < b.img; }
};

// A subset of the simple generators, as a bitmask over positions 0..s-1.
using GenSet = std::uint32_t;

class CoxeterSystem {
 public:
  // Builds the full group by closure from the simple generators and fixes the
  // canonical element order (lexicographic on tables).  Throws on rank < 1.
  static CoxeterSystem build(CoxType type, int rank);

  CoxType type() const { return type_; }
  int rank() const { return rank_; }                 // the n of A_n / B_n above
  int num_simple() const { return static_cast<int>(simple_.size()); }
  int order() const { return static_cast<int>(elements_.size()); }

  const std::vector<SignedPerm>& elements() const { return elements_; }
  const SignedPerm& element(int i) const { return elements_[static_cast<size_t>(i)]; }
  int identity() const { return identity_; }
  int simple(int j) const { return simple_[static_cast<size_t>(j)]; }

  int index_of(const SignedPerm& w) const;
  int mult(int a, int b) const;      // index of element(a) * element(b)
  int inverse(int a) const { return inverse_[static_cast<size_t>(a)]; }
  int length(int a) const { return length_[static_cast<size_t>(a)]; }

  // Base point off every reflection hyperplane: (1, 2, ..., n).
  const QVector& base_point() const { return p0_; }

  QVector act(int w, const QVector& v) const;
  QMatrix matrix(int w) const;
  int det(int w) const;              // determinant of matrix(w): +1 or -1

  // Elements of the standard parabolic subgroup W_J, sorted by index.
  std::vector<int> subgroup(GenSet J) const;

  // Minimal-length representatives of the cosets w W_J, sorted by index.
  // Each coset has a unique representative of minimal length; violations
  // would signal a broken group table and throw.
  std::vector<int> minimal_coset_reps(GenSet J) const;

  GenSet full_gen_set() const { return (num_simple() >= 32) ? ~GenSet(0) : ((GenSet(1) << num_simple()) - 1); }

 private:
  CoxType type_ = CoxType::A;
  int rank_ = 0;
  std::vector<SignedPerm> elements_;
  std::map<std::vector<int>, int> index_;
  std::vector<int> simple_;
  std::vector<int> inverse_;
  std::vector<int> length_;
  std::vector<int> mult_table_;      // row-major, only when the group is small
  int identity_ = -1;
  QVector p0_;
};

}  // namespace descent
