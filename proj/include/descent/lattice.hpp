#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "descent/arrangement.hpp"
#include "descent/partitions.hpp"

// The intersection lattice L of the arrangement, ordered by inclusion of the
// intersection subspaces (bigger subspace = higher), and its quotient poset
// L/W of group orbits.
//
// A flat is identified by its zero set: the set of hyperplanes containing the
// subspace.  Since faces are relatively open cells, the zero set of any face
// is already saturated, so the flats are exactly the distinct face zero sets.
// Order is reverse inclusion of zero sets; the join of two flats is the
// intersection of their zero sets (saturation is automatic: any hyperplane
// containing X + Y is a zero of both), and the meet is the kernel-saturated
// union.

namespace descent {

struct Flat {
  std::uint32_t zeros = 0;           // hyperplane mask
  int dim = 0;                       // dimension of the subspace
  std::vector<QVector> basis;        // canonical kernel basis of the zero normals
  std::vector<Index> free_positions; // coordinates that parametrize the basis
};

class Lattice {
 public:
  static Lattice build(const Arrangement& arr);

  const Arrangement& arrangement() const { return *arr_; }

  int num_flats() const { return static_cast<int>(flats_.size()); }
  const Flat& flat(int X) const { return flats_[static_cast<size_t>(X)]; }
  int flat_by_zeros(std::uint32_t zeros) const;

  int support(int face) const { return face_flat_[static_cast<size_t>(face)]; }
  const std::vector<int>& faces_of(int X) const {
    return faces_of_flat_[static_cast<size_t>(X)];
  }
  // Position of a face within faces_of(support(face)).
  int local_index(int face) const { return face_local_[static_cast<size_t>(face)]; }

  int min_flat() const { return min_flat_; }
  int top_flat() const { return top_flat_; }
  int rank_of(int X) const { return flat(X).dim - flat(min_flat_).dim; }

  bool leq(int X, int Y) const {  // X <= Y: subspace containment
    const auto zx = flat(X).zeros, zy = flat(Y).zeros;
    return (zy & ~zx) == 0;
  }
  bool covers(int Y, int X) const {  // Y is covered by X
    return leq(Y, X) && flat(X).dim == flat(Y).dim + 1;
  }
  int join(int X, int Y) const;
  int meet(int X, int Y) const;
  long mobius(int Y, int X) const;  // requires Y <= X

  // Upward and downward neighborhoods, ascending flat ids.
  std::vector<int> upper_covers(int X) const;  // flats covering X
  std::vector<int> lower_covers(int X) const;  // flats covered by X

  int act(int w, int X) const {
    return flat_act_[static_cast<size_t>(w)][static_cast<size_t>(X)];
  }

 private:
  const Arrangement* arr_ = nullptr;
  std::vector<Flat> flats_;
  std::map<std::uint32_t, int> zeros_index_;
  std::vector<int> face_flat_;
  std::vector<int> face_local_;
  std::vector<std::vector<int>> faces_of_flat_;
  std::vector<std::vector<int>> flat_act_;
  std::vector<std::vector<long>> mobius_;  // [X][Y] for Y <= X, else 0
  int min_flat_ = -1;
  int top_flat_ = -1;
};

// Orbits of flats under W, labeled by integer partitions:
//   type A: block sizes of the set partition of {1..n} (a partition of n);
//   type B: sizes of the nonzero blocks (a partition of m <= n).
class OrbitPoset {
 public:
  static OrbitPoset build(const Lattice& lat);

  const Lattice& lattice() const { return *lat_; }

  int num_orbits() const { return static_cast<int>(members_.size()); }
  int orbit_of(int X) const { return orbit_of_[static_cast<size_t>(X)]; }
  const std::vector<int>& members(int o) const { return members_[static_cast<size_t>(o)]; }
  int representative(int o) const { return members_[static_cast<size_t>(o)].front(); }
  const Partition& label(int o) const { return labels_[static_cast<size_t>(o)]; }
  int rank_of(int o) const { return lat_->rank_of(representative(o)); }

  // o <= o' iff some member of o lies below the representative of o'.
  bool leq(int o, int p) const { return leq_[static_cast<size_t>(o)][static_cast<size_t>(p)]; }
  bool covers(int o, int p) const;  // o covered by p

  int orbit_by_label(const Partition& p) const;

 private:
  const Lattice* lat_ = nullptr;
  std::vector<int> orbit_of_;
  std::vector<std::vector<int>> members_;
  std::vector<Partition> labels_;
  std::vector<std::vector<char>> leq_;
};

// Partition label of a single flat (type read from the group).
Partition flat_label(const Lattice& lat, int X);

}  // namespace descent
