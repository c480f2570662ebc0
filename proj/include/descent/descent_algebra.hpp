#pragma once

#include <vector>

#include "descent/group.hpp"
#include "descent/invariant.hpp"
#include "descent/linalg.hpp"
#include "descent/sparse.hpp"

// The subalgebra of the group algebra kW spanned by the sums x_J of
// minimal-length coset representatives, one per subset J of the simple
// generators.  Multiplying orbit sums of faces mirrors multiplying these
// elements in the opposite order, which is checked in the tests and keeps
// the two sides of the computation independent.

namespace descent {

class DescentAlgebra {
 public:
  static DescentAlgebra build(const CoxeterSystem& W);

  const CoxeterSystem& group() const { return *W_; }
  // Number of basis elements: one per subset of the simple generators.
  int dim() const { return static_cast<int>(x_.size()); }

  // x_J: the sum of the minimal-length representatives of the cosets w W_J.
  const SparseVec& basis_element(GenSet J) const {
    return x_[static_cast<size_t>(J)];
  }
  // Identity of the group algebra.
  SparseVec unit() const { return SparseVec::unit(W_->identity()); }

  // Product in the group algebra (sparse over element indices).
  SparseVec multiply(const SparseVec& a, const SparseVec& b) const;

  // Expansion of a group-algebra element over the x_J basis; throws when the
  // element lies outside their span.
  QVector expand(const SparseVec& a) const;

  // Generator subsets grouped by conjugacy of their parabolic subgroups.
  const std::vector<std::vector<GenSet>>& genset_classes() const {
    return classes_;
  }
  int class_of(GenSet J) const { return class_of_[static_cast<size_t>(J)]; }
  // Index of the parabolic subgroup of J inside its normalizer.
  long normalizer_index(GenSet J) const;

  // The complete orthogonal idempotent family of the descent algebra via the
  // mirrored top-down recursion, one per flat orbit of the matching
  // arrangement (which supplies the subset and count per orbit).  Verifies
  // idempotency, orthogonality, and completeness; throws on failure.
  std::vector<SparseVec> idempotents(const InvariantAlgebra& inv) const;

 private:
  const CoxeterSystem* W_ = nullptr;
  std::vector<SparseVec> x_;
  std::vector<std::vector<GenSet>> classes_;
  std::vector<int> class_of_;
};

}  // namespace descent
