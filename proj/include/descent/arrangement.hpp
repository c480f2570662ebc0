#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "descent/group.hpp"
#include "descent/linalg.hpp"

// The reflection arrangement of a finite reflection group and its semigroup
// of faces.
//
// A face is stored as its sign vector over the hyperplanes (one of 0, +, -
// per hyperplane) together with one exact rational witness point in its
// relative interior.  Sign vectors are packed two bits per hyperplane with
// hyperplane 0 in the most significant field and field codes 0 -> 00,
// + -> 01, - -> 10, so that ascending packed keys realize the canonical face
// order (entrywise lexicographic with 0 < + < -).
//
// The semigroup product takes, on every hyperplane, the sign of x unless it
// is zero, in which case the sign of y.  Geometrically: move a small step
// from x toward y.  On packed keys this is three bit operations.

namespace descent {

struct SetComposition {
  std::vector<std::vector<int>> blocks;  // ordered blocks of {1..n}, each sorted
};

struct SignedComposition {
  std::vector<int> zero;                 // absolute values i with v_i = 0, sorted
  std::vector<std::vector<int>> blocks;  // ordered blocks of signed letters, each sorted
};

class Arrangement {
 public:
  static Arrangement build(const CoxeterSystem& W);

  const CoxeterSystem& group() const { return *W_; }

  // --- hyperplanes ---------------------------------------------------------
  int num_hyperplanes() const { return static_cast<int>(normals_.size()); }
  const QVector& normal(int h) const { return normals_[static_cast<size_t>(h)]; }

  // Signed action on hyperplanes: w(normal(h)) = hyp_sign(w,h) * normal(hyp_perm(w,h)).
  int hyp_perm(int w, int h) const {
    return hyp_perm_[static_cast<size_t>(w)][static_cast<size_t>(h)];
  }
  int hyp_sign(int w, int h) const {
    return hyp_sign_[static_cast<size_t>(w)][static_cast<size_t>(h)];
  }

  // --- faces ---------------------------------------------------------------
  int num_faces() const { return static_cast<int>(keys_.size()); }
  std::uint64_t key(int f) const { return keys_[static_cast<size_t>(f)]; }
  int face_by_key(std::uint64_t k) const;
  int sign_of(int f, int h) const { return sign_in_key(key(f), h); }
  std::string signs_string(int f) const;
  const QVector& witness(int f) const { return witnesses_[static_cast<size_t>(f)]; }
  std::uint32_t zero_mask(int f) const { return zero_masks_[static_cast<size_t>(f)]; }

  int identity_face() const { return identity_face_; }  // all signs zero
  const std::vector<int>& chambers() const { return chambers_; }

  int product(int x, int y) const {
    const std::uint64_t k = key_product(key(x), key(y));
    const auto it = index_.find(k);
    if (it == index_.end())
      throw std::logic_error("Arrangement::product: result not an enumerated face");
    return it->second;
  }
  bool leq(int x, int y) const { return key_product(key(x), key(y)) == key(y); }

  // --- group action on faces ----------------------------------------------
  int act_on_face(int w, int f) const {
    return face_act_[static_cast<size_t>(w)][static_cast<size_t>(f)];
  }
  // The W-orbit of every face contains exactly one face of the base chamber;
  // orbit_genset names that face's generator subset J (the face is c_J).
  GenSet orbit_genset(int f) const { return face_orbit_[static_cast<size_t>(f)]; }
  const std::vector<int>& orbit_faces(GenSet J) const {
    return orbit_members_[static_cast<size_t>(J)];
  }

  // Fundamental face c_J: the face of the base chamber fixed pointwise by
  // W_J, with witness the W_J-average of the base point.
  int fundamental_face(GenSet J) const;

  // --- codecs (type-specific human-readable coordinates) -------------------
  SetComposition face_to_composition(int f) const;      // type A
  int composition_to_face(const SetComposition& sc) const;
  SignedComposition face_to_signed_composition(int f) const;  // type B
  int signed_composition_to_face(const SignedComposition& sc) const;

  // Witness interpolation: x.witness + t * (y.witness - x.witness) with t the
  // largest power of 1/2 that preserves every strict sign of x.  The result
  // lies in the relative interior of the product face; used as an independent
  // consistency check on the sign-rule product.
  QVector interpolated_witness(int x, int y) const;

  // --- key helpers ----------------------------------------------------------
  static int sign_in_key(std::uint64_t key, int h_from_msb_count, int h);
  int sign_in_key(std::uint64_t k, int h) const {
    return sign_in_key(k, num_hyperplanes(), h);
  }
  std::uint64_t key_product(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t m2 = (a | (a >> 1)) & odd_bits_;
    const std::uint64_t M = m2 | (m2 << 1);
    return (a & M) | (b & ~M);
  }
  std::uint64_t transform_key(int w, std::uint64_t k) const;
  std::uint64_t key_from_point(const QVector& v) const;

 private:
  const CoxeterSystem* W_ = nullptr;
  std::vector<QVector> normals_;
  std::vector<std::vector<int>> hyp_perm_;
  std::vector<std::vector<int8_t>> hyp_sign_;

  std::vector<std::uint64_t> keys_;  // ascending; face id = position
  std::vector<QVector> witnesses_;
  std::vector<std::uint32_t> zero_masks_;
  std::unordered_map<std::uint64_t, int> index_;
  std::vector<GenSet> face_orbit_;
  std::vector<std::vector<int>> orbit_members_;
  std::vector<int> cJ_;  // face id of c_J per generator subset J
  std::vector<std::vector<int>> face_act_;
  std::vector<int> chambers_;
  int identity_face_ = -1;
  std::uint64_t odd_bits_ = 0;
};

// Product of set compositions (type A face product in codec coordinates):
// refine the blocks of a by those of b, grouping a-major.
SetComposition compose_product(const SetComposition& a, const SetComposition& b);

}  // namespace descent
