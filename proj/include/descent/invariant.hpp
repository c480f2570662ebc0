#pragma once

#include <vector>

#include "descent/algebra.hpp"
#include "descent/linalg.hpp"

// The subalgebra of kF fixed by the group action.  Its basis is the family of
// face-orbit sums, one per subset of the simple generators, so every
// computation here runs in that small coordinate space once the structure
// constants are tabulated.

namespace descent {

class InvariantAlgebra {
 public:
  // Tabulates the orbit sums and their multiplication table.  workers splits
  // the table rows; the result is independent of the worker count.
  static InvariantAlgebra build(const FaceAlgebra& A, int workers = 1);

  const FaceAlgebra& face_algebra() const { return *A_; }
  const OrbitPoset& orbits() const { return A_->orbits(); }
  // Dimension of the invariant subalgebra: one basis element per subset of
  // the simple generators.
  int dim() const { return static_cast<int>(sums_.size()); }

  // The basis element indexed by a generator subset: the sum of the orbit of
  // the fundamental face fixed by that subset.
  const AlgebraElement& orbit_sum(GenSet J) const {
    return sums_[static_cast<size_t>(J)];
  }

  // Coordinates of an invariant element over the orbit-sum basis.  Throws
  // when the element's coefficients are not constant on some face orbit.
  QVector to_coords(const AlgebraElement& a) const;
  AlgebraElement from_coords(const QVector& c) const;
  // Coordinates of the identity element.
  QVector unit_coords() const;

  // Group-averaging projection onto the invariants, straight to coordinates.
  QVector reynolds_coords(const AlgebraElement& a) const;

  // Product in coordinates via the precomputed table.
  QVector multiply(const QVector& a, const QVector& b) const;
  // Row of the table: coordinates of orbit_sum(J) * orbit_sum(K).
  const QVector& table(GenSet J, GenSet K) const {
    return tab_[static_cast<size_t>(J)][static_cast<size_t>(K)];
  }

  // Bases of rad^1 .. rad^up_to as canonically reduced row matrices, stopping
  // early once a power vanishes (the vanished power is included as an empty
  // matrix).  rad^1 is the kernel of the trace form of the left regular
  // representation, which identifies the radical exactly in characteristic
  // zero; higher powers multiply the previous basis by the first.
  std::vector<QMatrix> radical_filtration(int up_to) const;
  // Least p with rad^p = 0 (computed via the filtration).
  int loewy_length() const;

  // Per flat orbit O: the least generator subset whose fundamental face is
  // supported on O, and the number of faces in that face's orbit sharing the
  // fundamental face's support.
  GenSet orbit_genset(int o) const { return jo_[static_cast<size_t>(o)]; }
  long orbit_face_count(int o) const { return lo_[static_cast<size_t>(o)]; }

  // Primitive orthogonal idempotents of the invariant algebra, one per flat
  // orbit, by the intrinsic top-down recursion in coordinates.  Verifies
  // idempotency, orthogonality, and completeness; throws on failure.
  std::vector<QVector> idempotents_recursive() const;
  // The same idempotents obtained by orbit-summing a face-side system (which
  // must be equivariant).  Throws if some orbit sum fails to be invariant.
  std::vector<QVector> idempotents_via_sum(const IdempotentSystem& sys) const;

 private:
  const FaceAlgebra* A_ = nullptr;
  std::vector<AlgebraElement> sums_;       // indexed by generator subset
  std::vector<std::vector<QVector>> tab_;  // [J][K] -> coords of the product
  std::vector<GenSet> jo_;                 // per flat orbit
  std::vector<long> lo_;                   // per flat orbit
};

}  // namespace descent
