#pragma once

#include <map>
#include <string>
#include <vector>

#include "descent/int_span.hpp"
#include "descent/lattice.hpp"
#include "descent/sparse.hpp"

// The semigroup algebra of the faces (kF), the algebra of the lattice (kL),
// the normalized face sums, the complete systems of primitive orthogonal
// idempotents, and the radical filtration of kF.

namespace descent {

// Element of kF: sparse face-index -> coefficient, no explicit zeros.
using AlgebraElement = SparseVec;
// Element of kL: sparse flat-index -> coefficient.
using LatticeElement = SparseVec;

// Which family of normalized face sums seeds the idempotent recursion:
// First  - uniform average over all faces of the flat;
// Second - average over the part of one face orbit lying on the flat.
enum class EllFamily { First, Second };

inline std::string family_name(EllFamily f) {
  return f == EllFamily::First ? "first" : "second";
}

struct SystemChecks {
  bool idempotent = false;    // e_X e_X = e_X for every flat
  bool orthogonal = false;    // e_X e_Y = 0 for X != Y
  bool sums_to_one = false;   // sum over flats = identity
  bool equivariant = false;   // w(e_X) = e_{w X} for all w
  bool all() const { return idempotent && orthogonal && sums_to_one && equivariant; }
};

// A complete system of primitive orthogonal idempotents of kF, one per flat.
struct IdempotentSystem {
  std::vector<AlgebraElement> e;     // indexed by flat id
  std::vector<AlgebraElement> ells;  // the generating family, same indexing
  EllFamily family = EllFamily::First;
  SystemChecks checks;
};

class FaceAlgebra {
 public:
  static FaceAlgebra build(const Lattice& lat, const OrbitPoset& orbits);

  const Lattice& lattice() const { return *lat_; }
  const Arrangement& arrangement() const { return lat_->arrangement(); }
  const CoxeterSystem& group() const { return arrangement().group(); }
  const OrbitPoset& orbits() const { return *orbits_; }
  int dim() const { return arrangement().num_faces(); }

  AlgebraElement unit() const {
    return AlgebraElement::unit(arrangement().identity_face());
  }

  // Bilinear extension of the face product.
  AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) const;
  // Coefficient-permuting group action.
  AlgebraElement act(int w, const AlgebraElement& a) const;
  // The support homomorphism kF -> kL (coefficients accumulate on supports).
  LatticeElement supp_hom(const AlgebraElement& a) const;
  // Product in kL: bilinear extension of the lattice join.
  LatticeElement lattice_multiply(const LatticeElement& a,
                                  const LatticeElement& b) const;
  // Dense coordinate vector over all faces.
  QVector to_dense(const AlgebraElement& a) const;

  // First family: the uniform average of the faces with support X.
  AlgebraElement ell_first(int X) const;
  // Second family: reps[o] names one face per flat orbit o; the element
  // averages the members of that face's orbit whose support is exactly X.
  // Throws when the representative's orbit misses X entirely.
  AlgebraElement ell_second(int X, const std::vector<int>& reps) const;

  // Default representatives: the least face supported on each flat orbit.
  std::vector<int> least_face_reps() const;
  // Fundamental representatives: the face of the base chamber fixed by the
  // least generator subset hitting the orbit (ties broken by the sorted
  // index list of the subset, not its bitmask).
  std::vector<int> fundamental_reps() const;
  GenSet least_genset(int orbit) const;

  // Runs the top-down recursion e_X = ell_X - sum_{Y > X} ell_X e_Y and, when
  // verify is set, checks all four system axioms, throwing on failure (a
  // failure means the supplied family does not satisfy the hypotheses).
  // reps is only consulted for the second family; null means least faces.
  IdempotentSystem build_idempotents(EllFamily family,
                                     const std::vector<int>* reps = nullptr,
                                     bool verify = true) const;
  // Same recursion from an externally supplied family (one element per flat).
  IdempotentSystem build_from_ells(const std::vector<AlgebraElement>& ells,
                                   EllFamily tag, bool verify) const;

  // The complete orthogonal system of kL: E_X = X - sum_{Y > X} E_Y.
  std::vector<LatticeElement> lattice_idempotents() const;

 private:
  SystemChecks verify_system(const std::vector<AlgebraElement>& e) const;

  const Lattice* lat_ = nullptr;
  const OrbitPoset* orbits_ = nullptr;
};

// Bases of the powers of the Jacobson radical of kF.  rad(kF) is the kernel
// of the support homomorphism, spanned by differences of faces with equal
// support; higher powers are generated incrementally by multiplying the
// previous basis by the first one.  Every generator is homogeneous (all its
// faces share one support), so elimination runs independently per flat in
// fraction-free integer arithmetic.
class RadicalFiltration {
 public:
  // Computes bases for rad^1 .. rad^up_to, stopping early once a power
  // vanishes.  workers parallelizes product generation; results are
  // independent of the worker count.
  static RadicalFiltration build(const FaceAlgebra& A, int up_to, int workers = 1);

  // Largest power with a stored basis.
  int max_power() const { return static_cast<int>(powers_.size()); }
  // Least p with rad^p = 0, or -1 if it lies beyond max_power().
  int loewy_length() const { return loewy_; }

  Index dim(int p) const;
  const std::vector<AlgebraElement>& basis(int p) const;
  // Exact membership test a in rad^p (decomposes by support).
  bool contains(int p, const AlgebraElement& a) const;
  // Linear residue of a modulo rad^p: the remainder after eliminating each
  // support-homogeneous component against the stored echelon rows.  Zero
  // exactly when a lies in rad^p; linear in a, which makes ranks of residue
  // matrices meaningful (used to intersect subspaces with radical powers).
  AlgebraElement residue(int p, const AlgebraElement& a) const;

 private:
  struct Power {
    std::vector<AlgebraElement> basis;
    std::map<int, IntRowSpan> blocks;  // flat id -> span in local coordinates
  };
  const Power& power(int p) const;

  const FaceAlgebra* algebra_ = nullptr;
  std::vector<Power> powers_;  // powers_[p-1] describes rad^p
  int loewy_ = -1;
};

}  // namespace descent
