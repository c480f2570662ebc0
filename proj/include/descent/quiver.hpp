#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "descent/algebra.hpp"
#include "descent/invariant.hpp"
#include "descent/partitions.hpp"

// Quivers of the face algebra and of its invariant subalgebra.
//
// The quiver of the face algebra has the flats as vertices and one arrow
// X -> Y for every cover Y of X from below.  The quiver of the invariant
// subalgebra has one vertex per flat orbit; its arrow multiplicities are
// computed numerically as corner dimensions of the radical modulo its square,
// and in types A and B they are also given by closed-form rules on the
// partition labels.  The bridge between the two is a multiplicative map from
// paths of the cover quiver onto the face algebra, built from incidence and
// orientation signs; the group acts on signed paths and the map intertwines
// the actions.

namespace descent {

// A finite directed multigraph.  Vertices carry unique display names in a
// fixed order; arrows store positive multiplicities.  Equality is exact
// (same names in the same order, same multiplicities), so two construction
// routes can be compared only when they agree on the vertex order; every
// builder here lists partition-labeled vertices in ascending partition order
// and flat-labeled vertices in ascending flat id order.
struct QuiverGraph {
  std::vector<std::string> vertices;
  std::map<std::pair<int, int>, int> arrows;  // (from, to) -> multiplicity >= 1

  int index_of(const std::string& name) const;
  int multiplicity(int from, int to) const;
  // Total number of arrows, multiplicities included.
  long arrow_count() const;
  std::vector<int> out_neighbors(int v) const;
  std::vector<int> in_neighbors(int v) const;

  QuiverGraph reversed() const;
  bool is_acyclic() const;

  friend bool operator==(const QuiverGraph&, const QuiverGraph&) = default;
};

// Closed-form quiver of the invariant subalgebra in type A, rank n: one
// vertex per partition of n, and one arrow p -> q exactly when q arises from
// p by replacing two parts of different sizes by their sum.
QuiverGraph closed_form_quiver_A(int n);

// Closed-form quiver in type B, rank n: one vertex per partition of each
// m <= n.  Arrow multiplicities p -> q: two when q arises by replacing three
// pairwise-distinct parts by their sum, one when the three merged parts take
// exactly two values, one when q arises by deleting two parts of different
// sizes, zero otherwise.
QuiverGraph closed_form_quiver_B(int n);

// The cover quiver of the face algebra: vertices are the flats, one arrow
// X -> Y for every lower cover Y of X.
QuiverGraph kf_cover_quiver(const Lattice& lat);

// A path in the cover quiver, stored as the visited flats; consecutive
// entries descend by covers, a single entry is the trivial path at a vertex.
using Path = std::vector<int>;

// Formal rational combination of paths.
struct PathElement {
  std::map<Path, Rational> terms;  // zero coefficients never stored

  static PathElement single(Path p, Rational c = Rational(1));
  void add(const Path& p, const Rational& c);
  PathElement& operator+=(const PathElement& other);
  PathElement& operator-=(const PathElement& other);
  PathElement scaled(const Rational& c) const;
  bool zero() const { return terms.empty(); }

  friend bool operator==(const PathElement&, const PathElement&) = default;
};

// Concatenation product: late * early is supported on the pairs where the
// early path ends at the vertex where the late path starts.
PathElement path_product(const PathElement& late, const PathElement& early);

// The multiplicative map from paths onto the face algebra determined by an
// idempotent system.  A vertex maps to its idempotent; an arrow X -> Y maps
// to ell_Y ([y:x] x + [y:x'] x') e_X, where y is any face with support Y and
// x, x' are the two faces of support X having y as a face; longer paths
// multiply their arrow images with later arrows on the left.
class QuiverMap {
 public:
  // The system must carry its generating family (ells) alongside the
  // idempotents; both referenced objects must outlive the map.
  QuiverMap(const FaceAlgebra& A, const IdempotentSystem& sys);

  const FaceAlgebra& algebra() const { return *A_; }
  const IdempotentSystem& system() const { return *sys_; }

  // Incidence sign [y:x] for a face y of codimension one in x: the canonical
  // basis of supp(y), extended by a point of x, evaluated against the
  // canonical orientation of supp(x).
  int incidence(int y, int x) const;

  // Orientation sign of a group element on a flat: the image of the
  // canonical basis of X evaluated against the canonical orientation of wX.
  int orientation(int w, int X) const;

  AlgebraElement vertex_image(int X) const;
  // Arrow image with an explicit witness face of support Y; the result is
  // independent of that choice.
  AlgebraElement arrow_image(int X, int Y, int yface) const;
  // Arrow image with the least face of support Y as witness.
  AlgebraElement arrow_image(int X, int Y) const;
  AlgebraElement path_image(const Path& p) const;
  AlgebraElement image(const PathElement& a) const;

 private:
  // Coordinates of v in the canonical basis of the flat; throws when v does
  // not lie in the flat's subspace.
  QVector flat_coords(int X, const QVector& v) const;

  const FaceAlgebra* A_ = nullptr;
  const IdempotentSystem* sys_ = nullptr;
};

// Signed action of a group element on a path: the image path weighted by the
// orientation signs of the two endpoint flats.
PathElement act_on_path(const QuiverMap& M, int w, const Path& p);
// Sum of the signed action over the whole group.
PathElement norm_sum(const QuiverMap& M, const Path& p);

// All descending cover paths starting at X0 of length <= max_len, the
// trivial path included, in lexicographic order of the flat sequence.
std::vector<Path> cover_paths_from(const Lattice& lat, int X0, int max_len);

// Rank of the span of the images of all paths; the map is onto exactly when
// this equals the face count.
Index path_image_rank(const QuiverMap& M);

// Per length-two interval of the lattice: the number of paths through it,
// the rank of their images, and whether the sum of the images vanishes.  The
// sum always lies in the kernel of the path map, and the image rank equals
// the absolute Moebius value of the interval.
struct IntervalReport {
  int bottom = -1;
  int top = -1;
  int paths = 0;
  Index image_rank = 0;
  bool sum_vanishes = false;
};
std::vector<IntervalReport> verify_kernel_relations(const QuiverMap& M,
                                                    int workers = 1);

// Numeric quiver of the face algebra: multiplicity of X -> Y computed as
// dim(e_Y rad e_X) - dim(e_Y rad^2 e_X).  Expected to coincide with the
// cover quiver.
QuiverGraph quiver_of_kf_numeric(const FaceAlgebra& A,
                                 const IdempotentSystem& sys, int workers = 1);

// Numeric quiver of the invariant subalgebra: one vertex per flat orbit in
// ascending partition order, multiplicity of O' -> O computed as
// dim(eps_O rad eps_O') - dim(eps_O rad^2 eps_O') in orbit-sum coordinates.
QuiverGraph quiver_of_invariant_numeric(const InvariantAlgebra& inv);

}  // namespace descent
