#include "descent/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace descent {

namespace {

// Lexicographic order on zero sets viewed as ascending index lists.
bool zeros_lex_less(std::uint32_t a, std::uint32_t b, int H) {
  for (int h = 0; h < H; ++h) {
    const bool ia = a & (1u << h), ib = b & (1u << h);
    if (ia != ib) return ia;  // the set containing the smaller index is smaller
  }
  return false;
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(static_cast<size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

}  // namespace

Lattice Lattice::build(const Arrangement& arr) {
  Lattice L;
  L.arr_ = &arr;
  const int F = arr.num_faces();
  const int H = arr.num_hyperplanes();
  const int n = arr.group().rank();

  // Distinct face zero sets, with dimension from the kernel of the zero normals.
  std::vector<std::uint32_t> masks;
  for (int f = 0; f < F; ++f) masks.push_back(arr.zero_mask(f));
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());

  for (std::uint32_t m : masks) {
    Flat fl;
    fl.zeros = m;
    std::vector<QVector> normals;
    for (int h = 0; h < H; ++h)
      if (m & (1u << h)) normals.push_back(arr.normal(h));
    QMatrix mat = normals.empty() ? QMatrix::Zero(0, n) : matrix_from_rows(normals);
    fl.basis = kernel_basis(mat);
    fl.dim = static_cast<int>(fl.basis.size());
    // The canonical kernel basis has a unit coordinate per free position;
    // record those positions for coordinate extraction.
    {
      const RrefResult R = rref(mat);
      std::vector<bool> is_pivot(static_cast<size_t>(n), false);
      for (Index p : R.pivots) is_pivot[static_cast<size_t>(p)] = true;
      for (Index c = 0; c < n; ++c)
        if (!is_pivot[static_cast<size_t>(c)]) fl.free_positions.push_back(c);
    }
    L.flats_.push_back(std::move(fl));
  }

  std::sort(L.flats_.begin(), L.flats_.end(), [&](const Flat& a, const Flat& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return zeros_lex_less(a.zeros, b.zeros, H);
  });
  for (size_t i = 0; i < L.flats_.size(); ++i)
    L.zeros_index_[L.flats_[i].zeros] = static_cast<int>(i);

  const int numFlats = L.num_flats();
  L.face_flat_.resize(static_cast<size_t>(F));
  L.face_local_.resize(static_cast<size_t>(F));
  L.faces_of_flat_.assign(static_cast<size_t>(numFlats), {});
  for (int f = 0; f < F; ++f) {
    const int X = L.zeros_index_.at(arr.zero_mask(f));
    L.face_flat_[static_cast<size_t>(f)] = X;
    L.face_local_[static_cast<size_t>(f)] =
        static_cast<int>(L.faces_of_flat_[static_cast<size_t>(X)].size());
    L.faces_of_flat_[static_cast<size_t>(X)].push_back(f);
  }

  L.min_flat_ = L.support(arr.identity_face());
  L.top_flat_ = L.zeros_index_.at(0);
  if (L.flats_[static_cast<size_t>(L.min_flat_)].zeros !=
      (H >= 32 ? ~0u : ((1u << H) - 1u)))
    throw std::logic_error("Lattice: identity face support is not the minimum flat");

  // Group action on flats through the hyperplane permutation.
  const int N = arr.group().order();
  L.flat_act_.assign(static_cast<size_t>(N), std::vector<int>(static_cast<size_t>(numFlats)));
  for (int w = 0; w < N; ++w) {
    for (int X = 0; X < numFlats; ++X) {
      std::uint32_t img = 0;
      for (int h = 0; h < H; ++h)
        if (L.flats_[static_cast<size_t>(X)].zeros & (1u << h))
          img |= (1u << arr.hyp_perm(w, h));
      L.flat_act_[static_cast<size_t>(w)][static_cast<size_t>(X)] = L.zeros_index_.at(img);
    }
  }

  // Full Möbius table by downward recursion in each upper-bounded interval.
  L.mobius_.assign(static_cast<size_t>(numFlats), std::vector<long>(static_cast<size_t>(numFlats), 0));
  // Flats are sorted by dimension, so iterating ids descending within the
  // interval below X visits each Y only after everything strictly above it.
  for (int X = 0; X < numFlats; ++X) {
    auto& row = L.mobius_[static_cast<size_t>(X)];
    row[static_cast<size_t>(X)] = 1;
    for (int Y = X - 1; Y >= 0; --Y) {
      if (!L.leq(Y, X)) continue;
      long s = 0;
      for (int Z = Y + 1; Z <= X; ++Z)
        if (L.leq(Y, Z) && L.leq(Z, X)) s += row[static_cast<size_t>(Z)];
      row[static_cast<size_t>(Y)] = -s;
    }
  }

  return L;
}

int Lattice::flat_by_zeros(std::uint32_t zeros) const {
  const auto it = zeros_index_.find(zeros);
  if (it == zeros_index_.end())
    throw std::invalid_argument("Lattice: no flat with the given zero set");
  return it->second;
}

int Lattice::join(int X, int Y) const {
  return flat_by_zeros(flat(X).zeros & flat(Y).zeros);
}

int Lattice::meet(int X, int Y) const {
  const Arrangement& arr = *arr_;
  const int H = arr.num_hyperplanes();
  const std::uint32_t u = flat(X).zeros | flat(Y).zeros;
  std::vector<QVector> normals;
  for (int h = 0; h < H; ++h)
    if (u & (1u << h)) normals.push_back(arr.normal(h));
  const int n = arr.group().rank();
  const auto K = kernel_basis(normals.empty() ? QMatrix::Zero(0, n)
                                              : matrix_from_rows(normals));
  std::uint32_t sat = 0;
  for (int h = 0; h < H; ++h) {
    bool contains = true;
    for (const auto& k : K) {
      Rational d(0);
      for (Index i = 0; i < k.size(); ++i) d += arr.normal(h)(i) * k(i);
      if (!d.is_zero()) { contains = false; break; }
    }
    if (contains) sat |= (1u << h);
  }
  return flat_by_zeros(sat);
}

long Lattice::mobius(int Y, int X) const {
  if (!leq(Y, X))
    throw std::invalid_argument("Lattice::mobius: Y must be below X");
  return mobius_[static_cast<size_t>(X)][static_cast<size_t>(Y)];
}

std::vector<int> Lattice::upper_covers(int X) const {
  std::vector<int> out;
  for (int Z = 0; Z < num_flats(); ++Z)
    if (Z != X && covers(X, Z)) out.push_back(Z);
  return out;
}

std::vector<int> Lattice::lower_covers(int X) const {
  std::vector<int> out;
  for (int Z = 0; Z < num_flats(); ++Z)
    if (Z != X && covers(Z, X)) out.push_back(Z);
  return out;
}

Partition flat_label(const Lattice& lat, int X) {
  const Arrangement& arr = lat.arrangement();
  const int n = arr.group().rank();
  const std::uint32_t zeros = lat.flat(X).zeros;
  const int H = arr.num_hyperplanes();

  if (arr.group().type() == CoxType::A) {
    Dsu dsu(n);
    for (int h = 0; h < H; ++h) {
      if (!(zeros & (1u << h))) continue;
      int i = -1, j = -1;
      for (int c = 0; c < n; ++c) {
        if (arr.normal(h)(c).is_one()) i = c;
        else if (!arr.normal(h)(c).is_zero()) j = c;
      }
      dsu.unite(i, j);
    }
    std::vector<int> size(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) ++size[static_cast<size_t>(dsu.find(i))];
    std::vector<int> parts;
    for (int s : size)
      if (s > 0) parts.push_back(s);
    return Partition::of(std::move(parts));
  }

  // Type B: union-find over signed letters; letter l>0 at l-1, -l at n+l-1.
  Dsu dsu(2 * n);
  const auto pos = [&](int l) { return l > 0 ? l - 1 : n + (-l) - 1; };
  for (int h = 0; h < H; ++h) {
    if (!(zeros & (1u << h))) continue;
    int i = -1, j = -1;
    int si = 0, sj = 0;
    for (int c = 0; c < n; ++c) {
      const int s = arr.normal(h)(c).sign();
      if (s == 0) continue;
      if (i < 0) { i = c; si = s; }
      else { j = c; sj = s; }
    }
    if (j < 0) {
      dsu.unite(pos(i + 1), pos(-(i + 1)));  // coordinate hyperplane v_i = 0
    } else if (si == sj) {                   // v_i + v_j = 0
      dsu.unite(pos(i + 1), pos(-(j + 1)));
      dsu.unite(pos(-(i + 1)), pos(j + 1));
    } else {                                 // v_i - v_j = 0
      dsu.unite(pos(i + 1), pos(j + 1));
      dsu.unite(pos(-(i + 1)), pos(-(j + 1)));
    }
  }
  std::vector<int> size(static_cast<size_t>(2 * n), 0);
  for (int p = 0; p < 2 * n; ++p) ++size[static_cast<size_t>(dsu.find(p))];
  int zeroClasses = 0;
  std::vector<int> parts;
  std::vector<bool> counted(static_cast<size_t>(2 * n), false);
  for (int l = 1; l <= n; ++l) {
    const int cp = dsu.find(pos(l)), cn = dsu.find(pos(-l));
    if (cp == cn) {
      if (!counted[static_cast<size_t>(cp)]) {
        counted[static_cast<size_t>(cp)] = true;
        ++zeroClasses;
      }
      continue;
    }
    if (!counted[static_cast<size_t>(cp)]) {
      counted[static_cast<size_t>(cp)] = true;
      counted[static_cast<size_t>(cn)] = true;
      parts.push_back(size[static_cast<size_t>(cp)]);
    }
  }
  if (zeroClasses > 1)
    throw std::logic_error("flat_label: zero block not unique (unsaturated flat)");
  return Partition::of(std::move(parts));
}

OrbitPoset OrbitPoset::build(const Lattice& lat) {
  OrbitPoset P;
  P.lat_ = &lat;
  const int numFlats = lat.num_flats();
  const int N = lat.arrangement().group().order();

  P.orbit_of_.assign(static_cast<size_t>(numFlats), -1);
  for (int X = 0; X < numFlats; ++X) {
    if (P.orbit_of_[static_cast<size_t>(X)] >= 0) continue;
    const int o = static_cast<int>(P.members_.size());
    std::vector<int> orbit;
    for (int w = 0; w < N; ++w) {
      const int img = lat.act(w, X);
      if (P.orbit_of_[static_cast<size_t>(img)] < 0) {
        P.orbit_of_[static_cast<size_t>(img)] = o;
        orbit.push_back(img);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    P.members_.push_back(std::move(orbit));
  }

  for (int o = 0; o < P.num_orbits(); ++o)
    P.labels_.push_back(flat_label(lat, P.representative(o)));

  const int K = P.num_orbits();
  P.leq_.assign(static_cast<size_t>(K), std::vector<char>(static_cast<size_t>(K), 0));
  for (int o = 0; o < K; ++o)
    for (int p = 0; p < K; ++p) {
      bool le = false;
      for (int X : P.members_[static_cast<size_t>(o)])
        if (lat.leq(X, P.representative(p))) { le = true; break; }
      P.leq_[static_cast<size_t>(o)][static_cast<size_t>(p)] = le ? 1 : 0;
    }
  return P;
}

bool OrbitPoset::covers(int o, int p) const {
  if (o == p || !leq(o, p)) return false;
  for (int q = 0; q < num_orbits(); ++q) {
    if (q == o || q == p) continue;
    if (leq(o, q) && leq(q, p)) return false;
  }
  return true;
}

int OrbitPoset::orbit_by_label(const Partition& p) const {
  for (int o = 0; o < num_orbits(); ++o)
    if (labels_[static_cast<size_t>(o)] == p) return o;
  throw std::invalid_argument("OrbitPoset: no orbit with label " + p.label());
}

}  // namespace descent
