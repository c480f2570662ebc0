#include "descent/quiver.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "descent/parallel.hpp"

namespace descent {

// ---------------------------------------------------------------------------
// QuiverGraph

int QuiverGraph::index_of(const std::string& name) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == name) return static_cast<int>(i);
  return -1;
}

int QuiverGraph::multiplicity(int from, int to) const {
  const auto it = arrows.find({from, to});
  return it == arrows.end() ? 0 : it->second;
}

long QuiverGraph::arrow_count() const {
  long total = 0;
  for (const auto& [edge, mult] : arrows) total += mult;
  return total;
}

std::vector<int> QuiverGraph::out_neighbors(int v) const {
  std::vector<int> out;
  for (const auto& [edge, mult] : arrows)
    if (edge.first == v) out.push_back(edge.second);
  return out;
}

std::vector<int> QuiverGraph::in_neighbors(int v) const {
  std::vector<int> in;
  for (const auto& [edge, mult] : arrows)
    if (edge.second == v) in.push_back(edge.first);
  std::sort(in.begin(), in.end());
  return in;
}

QuiverGraph QuiverGraph::reversed() const {
  QuiverGraph r;
  r.vertices = vertices;
  for (const auto& [edge, mult] : arrows) r.arrows[{edge.second, edge.first}] = mult;
  return r;
}

bool QuiverGraph::is_acyclic() const {
  const int n = static_cast<int>(vertices.size());
  std::vector<std::vector<int>> succ(static_cast<size_t>(n));
  for (const auto& [edge, mult] : arrows)
    succ[static_cast<size_t>(edge.first)].push_back(edge.second);
  // 0 = unseen, 1 = on the current path, 2 = finished.
  std::vector<char> state(static_cast<size_t>(n), 0);
  auto dfs = [&](auto&& self, int v) -> bool {
    state[static_cast<size_t>(v)] = 1;
    for (int w : succ[static_cast<size_t>(v)]) {
      if (state[static_cast<size_t>(w)] == 1) return false;
      if (state[static_cast<size_t>(w)] == 0 && !self(self, w)) return false;
    }
    state[static_cast<size_t>(v)] = 2;
    return true;
  };
  for (int v = 0; v < n; ++v)
    if (state[static_cast<size_t>(v)] == 0 && !dfs(dfs, v)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Closed-form quivers

namespace {

// Removes one copy of each listed value and appends their sum.
Partition merge_parts(const Partition& p, const std::vector<int>& removed) {
  std::vector<int> parts = p.parts;
  int sum = 0;
  for (int r : removed) {
    const auto it = std::find(parts.begin(), parts.end(), r);
    if (it == parts.end()) throw std::logic_error("merge_parts: value not present");
    parts.erase(it);
    sum += r;
  }
  parts.push_back(sum);
  return Partition::of(std::move(parts));
}

Partition delete_parts(const Partition& p, int a, int b) {
  std::vector<int> parts = p.parts;
  for (int r : {a, b}) {
    const auto it = std::find(parts.begin(), parts.end(), r);
    if (it == parts.end()) throw std::logic_error("delete_parts: value not present");
    parts.erase(it);
  }
  return Partition::of(std::move(parts));
}

// Distinct part values in descending order with their multiplicities.
std::vector<std::pair<int, int>> value_counts(const Partition& p) {
  std::vector<std::pair<int, int>> vc;
  for (int part : p.parts) {
    if (!vc.empty() && vc.back().first == part)
      ++vc.back().second;
    else
      vc.emplace_back(part, 1);
  }
  return vc;
}

QuiverGraph graph_on_partitions(const std::vector<Partition>& parts) {
  QuiverGraph g;
  g.vertices.reserve(parts.size());
  for (const auto& p : parts) g.vertices.push_back(p.label());
  return g;
}

int index_in(const std::vector<Partition>& parts, const Partition& q) {
  const auto it = std::lower_bound(parts.begin(), parts.end(), q);
  if (it == parts.end() || !(*it == q))
    throw std::logic_error("closed-form quiver: target partition missing");
  return static_cast<int>(it - parts.begin());
}

}  // namespace

QuiverGraph closed_form_quiver_A(int n) {
  if (n < 1) throw std::invalid_argument("closed_form_quiver_A: rank must be positive");
  const auto parts = partitions_of(n);
  QuiverGraph g = graph_on_partitions(parts);
  for (size_t i = 0; i < parts.size(); ++i) {
    const auto vc = value_counts(parts[i]);
    for (size_t a = 0; a < vc.size(); ++a)
      for (size_t b = a + 1; b < vc.size(); ++b) {
        const Partition q = merge_parts(parts[i], {vc[a].first, vc[b].first});
        g.arrows[{static_cast<int>(i), index_in(parts, q)}] = 1;
      }
  }
  return g;
}

QuiverGraph closed_form_quiver_B(int n) {
  if (n < 1) throw std::invalid_argument("closed_form_quiver_B: rank must be positive");
  const auto parts = partitions_up_to(n);
  QuiverGraph g = graph_on_partitions(parts);
  for (size_t i = 0; i < parts.size(); ++i) {
    const int from = static_cast<int>(i);
    const auto vc = value_counts(parts[i]);
    // Merge three parts: multiplicity two when the values are pairwise
    // distinct, one when exactly two of them coincide.
    for (size_t a = 0; a < vc.size(); ++a) {
      for (size_t b = a + 1; b < vc.size(); ++b) {
        for (size_t c = b + 1; c < vc.size(); ++c) {
          const Partition q =
              merge_parts(parts[i], {vc[a].first, vc[b].first, vc[c].first});
          g.arrows[{from, index_in(parts, q)}] += 2;
        }
        if (vc[a].second >= 2) {
          const Partition q =
              merge_parts(parts[i], {vc[a].first, vc[a].first, vc[b].first});
          g.arrows[{from, index_in(parts, q)}] += 1;
        }
        if (vc[b].second >= 2) {
          const Partition q =
              merge_parts(parts[i], {vc[a].first, vc[b].first, vc[b].first});
          g.arrows[{from, index_in(parts, q)}] += 1;
        }
      }
    }
    // Delete two parts of different sizes.
    for (size_t a = 0; a < vc.size(); ++a)
      for (size_t b = a + 1; b < vc.size(); ++b) {
        const Partition q = delete_parts(parts[i], vc[a].first, vc[b].first);
        g.arrows[{from, index_in(parts, q)}] += 1;
      }
  }
  return g;
}

QuiverGraph kf_cover_quiver(const Lattice& lat) {
  QuiverGraph g;
  const int L = lat.num_flats();
  g.vertices.reserve(static_cast<size_t>(L));
  for (int X = 0; X < L; ++X)
    g.vertices.push_back("F" + std::to_string(X) + ":" + flat_label(lat, X).label());
  for (int X = 0; X < L; ++X)
    for (int Y : lat.lower_covers(X)) g.arrows[{X, Y}] = 1;
  return g;
}

// ---------------------------------------------------------------------------
// PathElement

PathElement PathElement::single(Path p, Rational c) {
  PathElement out;
  if (!c.is_zero()) out.terms.emplace(std::move(p), std::move(c));
  return out;
}

void PathElement::add(const Path& p, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(p, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

PathElement& PathElement::operator+=(const PathElement& other) {
  for (const auto& [p, c] : other.terms) add(p, c);
  return *this;
}

PathElement& PathElement::operator-=(const PathElement& other) {
  for (const auto& [p, c] : other.terms) add(p, -c);
  return *this;
}

PathElement PathElement::scaled(const Rational& c) const {
  PathElement out;
  if (c.is_zero()) return out;
  for (const auto& [p, x] : terms) out.terms.emplace(p, x * c);
  return out;
}

PathElement path_product(const PathElement& late, const PathElement& early) {
  PathElement out;
  for (const auto& [q, cq] : early.terms)
    for (const auto& [p, cp] : late.terms) {
      if (q.back() != p.front()) continue;
      Path joined = q;
      joined.insert(joined.end(), p.begin() + 1, p.end());
      out.add(joined, cq * cp);
    }
  return out;
}

// ---------------------------------------------------------------------------
// QuiverMap

QuiverMap::QuiverMap(const FaceAlgebra& A, const IdempotentSystem& sys)
    : A_(&A), sys_(&sys) {
  const size_t L = static_cast<size_t>(A.lattice().num_flats());
  if (sys.e.size() != L || sys.ells.size() != L)
    throw std::invalid_argument(
        "QuiverMap: system must carry one idempotent and one generator per flat");
}

QVector QuiverMap::flat_coords(int X, const QVector& v) const {
  const Flat& fl = A_->lattice().flat(X);
  const Index d = static_cast<Index>(fl.basis.size());
  QVector coords(d);
  for (Index j = 0; j < d; ++j)
    coords[j] = v[fl.free_positions[static_cast<size_t>(j)]];
  QVector rebuilt = QVector::Zero(v.size());
  for (Index j = 0; j < d; ++j) rebuilt += coords[j] * fl.basis[static_cast<size_t>(j)];
  if (!exactly_equal(rebuilt, v))
    throw std::invalid_argument("flat_coords: vector outside the flat");
  return coords;
}

int QuiverMap::incidence(int y, int x) const {
  const Arrangement& arr = A_->arrangement();
  const Lattice& lat = A_->lattice();
  const int Y = lat.support(y), X = lat.support(x);
  if (!arr.leq(y, x) || lat.flat(X).dim != lat.flat(Y).dim + 1)
    throw std::invalid_argument("incidence: need a codimension-one face pair");
  const Flat& fy = lat.flat(Y);
  const Index d = static_cast<Index>(fy.basis.size());
  QMatrix m(d + 1, d + 1);
  for (Index j = 0; j < d; ++j)
    m.col(j) = flat_coords(X, fy.basis[static_cast<size_t>(j)]);
  m.col(d) = flat_coords(X, arr.witness(x));
  const int s = det_sign(m);
  if (s == 0)
    throw std::logic_error("incidence: witness degenerate against the lower basis");
  return s;
}

int QuiverMap::orientation(int w, int X) const {
  const Lattice& lat = A_->lattice();
  const CoxeterSystem& W = A_->group();
  const Flat& fl = lat.flat(X);
  const int Xw = lat.act(w, X);
  const Index d = static_cast<Index>(fl.basis.size());
  QMatrix m(d, d);
  for (Index j = 0; j < d; ++j)
    m.col(j) = flat_coords(Xw, W.act(w, fl.basis[static_cast<size_t>(j)]));
  const int s = det_sign(m);
  if (s == 0) throw std::logic_error("orientation: image basis degenerate");
  return s;
}

AlgebraElement QuiverMap::vertex_image(int X) const {
  return sys_->e[static_cast<size_t>(X)];
}

AlgebraElement QuiverMap::arrow_image(int X, int Y, int yface) const {
  const Lattice& lat = A_->lattice();
  const Arrangement& arr = A_->arrangement();
  if (!lat.covers(Y, X))
    throw std::invalid_argument("arrow_image: target must be covered by source");
  if (lat.support(yface) != Y)
    throw std::invalid_argument("arrow_image: witness face must have the target support");
  std::vector<int> uppers;
  for (int f : lat.faces_of(X))
    if (arr.leq(yface, f)) uppers.push_back(f);
  if (uppers.size() != 2)
    throw std::logic_error("arrow_image: expected exactly two upper faces");
  AlgebraElement pair;
  for (int f : uppers)
    pair += AlgebraElement::unit(f, Rational(incidence(yface, f)));
  return A_->multiply(A_->multiply(sys_->ells[static_cast<size_t>(Y)], pair),
                      sys_->e[static_cast<size_t>(X)]);
}

AlgebraElement QuiverMap::arrow_image(int X, int Y) const {
  return arrow_image(X, Y, A_->lattice().faces_of(Y).front());
}

AlgebraElement QuiverMap::path_image(const Path& p) const {
  if (p.empty()) throw std::invalid_argument("path_image: empty path");
  const Lattice& lat = A_->lattice();
  for (size_t i = 0; i + 1 < p.size(); ++i)
    if (!lat.covers(p[i + 1], p[i]))
      throw std::invalid_argument("path_image: consecutive flats must be covers");
  if (p.size() == 1) return vertex_image(p[0]);
  AlgebraElement out = arrow_image(p[0], p[1]);
  for (size_t i = 1; i + 1 < p.size(); ++i)
    out = A_->multiply(arrow_image(p[i], p[i + 1]), out);
  return out;
}

AlgebraElement QuiverMap::image(const PathElement& a) const {
  AlgebraElement out;
  for (const auto& [p, c] : a.terms) out += path_image(p) * c;
  return out;
}

// ---------------------------------------------------------------------------
// Signed path action

PathElement act_on_path(const QuiverMap& M, int w, const Path& p) {
  if (p.empty()) throw std::invalid_argument("act_on_path: empty path");
  const Lattice& lat = M.algebra().lattice();
  const int sign = M.orientation(w, p.front()) * M.orientation(w, p.back());
  Path mapped;
  mapped.reserve(p.size());
  for (int X : p) mapped.push_back(lat.act(w, X));
  return PathElement::single(std::move(mapped), Rational(sign));
}

PathElement norm_sum(const QuiverMap& M, const Path& p) {
  PathElement out;
  const int order = M.algebra().group().order();
  for (int w = 0; w < order; ++w) out += act_on_path(M, w, p);
  return out;
}

std::vector<Path> cover_paths_from(const Lattice& lat, int X0, int max_len) {
  std::vector<Path> out;
  Path cur{X0};
  auto rec = [&](auto&& self) -> void {
    out.push_back(cur);
    if (static_cast<int>(cur.size()) - 1 >= max_len) return;
    for (int Y : lat.lower_covers(cur.back())) {
      cur.push_back(Y);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

Index path_image_rank(const QuiverMap& M) {
  const FaceAlgebra& A = M.algebra();
  const Lattice& lat = A.lattice();
  RowSpan span(A.dim());
  std::map<std::pair<int, int>, AlgebraElement> arrow_cache;
  const auto arrow = [&](int X, int Y) -> const AlgebraElement& {
    const auto it = arrow_cache.find({X, Y});
    if (it != arrow_cache.end()) return it->second;
    return arrow_cache.emplace(std::make_pair(X, Y), M.arrow_image(X, Y))
        .first->second;
  };
  // Depth-first over all descending paths, extending the composed image one
  // arrow at a time; a zero image stays zero under every extension.
  auto extend = [&](auto&& self, int X, const AlgebraElement& img) -> void {
    span.insert(A.to_dense(img));
    for (int Y : lat.lower_covers(X)) {
      AlgebraElement next = A.multiply(arrow(X, Y), img);
      if (!next.empty()) self(self, Y, next);
    }
  };
  for (int X = 0; X < lat.num_flats(); ++X) extend(extend, X, M.vertex_image(X));
  return span.rank();
}

std::vector<IntervalReport> verify_kernel_relations(const QuiverMap& M,
                                                    int workers) {
  const FaceAlgebra& A = M.algebra();
  const Lattice& lat = A.lattice();
  const int L = lat.num_flats();
  std::vector<std::pair<int, int>> intervals;  // (bottom, top), rank gap two
  for (int Z = 0; Z < L; ++Z)
    for (int X = 0; X < L; ++X)
      if (lat.leq(Z, X) && lat.flat(X).dim == lat.flat(Z).dim + 2)
        intervals.emplace_back(Z, X);

  std::vector<IntervalReport> reports(intervals.size());
  parallel_for(static_cast<int>(intervals.size()), workers, [&](int i) {
    const auto [Z, X] = intervals[static_cast<size_t>(i)];
    IntervalReport rep;
    rep.bottom = Z;
    rep.top = X;
    AlgebraElement sum;
    RowSpan span(A.dim());
    for (int Y : lat.upper_covers(Z)) {
      if (!lat.covers(Y, X)) continue;
      const AlgebraElement img = M.path_image({X, Y, Z});
      ++rep.paths;
      sum += img;
      span.insert(A.to_dense(img));
    }
    rep.image_rank = span.rank();
    rep.sum_vanishes = sum.empty();
    reports[static_cast<size_t>(i)] = rep;
  });
  return reports;
}

// ---------------------------------------------------------------------------
// Numeric quivers

QuiverGraph quiver_of_kf_numeric(const FaceAlgebra& A,
                                 const IdempotentSystem& sys, int workers) {
  const Lattice& lat = A.lattice();
  const int L = lat.num_flats();
  QuiverGraph g = kf_cover_quiver(lat);
  g.arrows.clear();

  // Corner dimensions against the idempotent at X: the right module over e_X
  // is spanned by the faces of support X, its radical part by their
  // differences, and the square of the radical by products with the
  // support-homogeneous face differences from flats below X.
  std::vector<std::vector<int>> mult(static_cast<size_t>(L),
                                     std::vector<int>(static_cast<size_t>(L), 0));
  parallel_for(L, workers, [&](int X) {
    const AlgebraElement& eX = sys.e[static_cast<size_t>(X)];
    const auto& faces = lat.faces_of(X);

    std::vector<AlgebraElement> module;  // f * e_X, one per face of support X
    module.reserve(faces.size());
    for (int f : faces) module.push_back(A.multiply(AlgebraElement::unit(f), eX));
    {
      RowSpan sanity(A.dim());
      for (const auto& v : module) sanity.insert(A.to_dense(v));
      if (sanity.rank() != static_cast<Index>(module.size()))
        throw std::logic_error("numeric quiver: module generators are dependent");
    }

    std::vector<AlgebraElement> rad_basis;  // basis of rad * e_X
    {
      RowSpan span(A.dim());
      for (size_t i = 1; i < module.size(); ++i) {
        AlgebraElement diff = module[i] - module[0];
        if (span.insert(A.to_dense(diff))) rad_basis.push_back(std::move(diff));
      }
    }

    std::vector<AlgebraElement> rad2_basis;  // basis of rad^2 * e_X
    {
      RowSpan span(A.dim());
      for (int Z = 0; Z < L; ++Z) {
        if (!lat.leq(Z, X)) continue;
        const auto& zf = lat.faces_of(Z);
        for (size_t i = 1; i < zf.size(); ++i) {
          const AlgebraElement gen =
              AlgebraElement::unit(zf[i]) - AlgebraElement::unit(zf[0]);
          for (const auto& v : rad_basis) {
            AlgebraElement prod = A.multiply(gen, v);
            if (!prod.empty() && span.insert(A.to_dense(prod)))
              rad2_basis.push_back(std::move(prod));
          }
        }
      }
    }

    for (int Y = 0; Y < L; ++Y) {
      const AlgebraElement& eY = sys.e[static_cast<size_t>(Y)];
      RowSpan corner1(A.dim()), corner2(A.dim());
      for (const auto& v : rad_basis) corner1.insert(A.to_dense(A.multiply(eY, v)));
      for (const auto& v : rad2_basis) corner2.insert(A.to_dense(A.multiply(eY, v)));
      mult[static_cast<size_t>(X)][static_cast<size_t>(Y)] =
          static_cast<int>(corner1.rank() - corner2.rank());
    }
  });

  for (int X = 0; X < L; ++X)
    for (int Y = 0; Y < L; ++Y)
      if (mult[static_cast<size_t>(X)][static_cast<size_t>(Y)] != 0)
        g.arrows[{X, Y}] = mult[static_cast<size_t>(X)][static_cast<size_t>(Y)];
  return g;
}

QuiverGraph quiver_of_invariant_numeric(const InvariantAlgebra& inv) {
  const OrbitPoset& orb = inv.orbits();
  const int n_orbits = orb.num_orbits();

  // Vertices in ascending partition order, matching the closed forms.
  std::vector<std::pair<Partition, int>> order;
  order.reserve(static_cast<size_t>(n_orbits));
  for (int o = 0; o < n_orbits; ++o) order.emplace_back(orb.label(o), o);
  std::sort(order.begin(), order.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  QuiverGraph g;
  g.vertices.reserve(order.size());
  for (const auto& [label, o] : order) g.vertices.push_back(label.label());

  const std::vector<QVector> eps = inv.idempotents_recursive();
  const std::vector<QMatrix> filt = inv.radical_filtration(2);
  const QMatrix& rad1 = filt[0];
  const QMatrix rad2 =
      filt.size() >= 2 ? filt[1] : QMatrix(0, static_cast<Index>(inv.dim()));

  const auto corner_rank = [&](const QMatrix& rows, int target, int source) {
    std::vector<QVector> images;
    images.reserve(static_cast<size_t>(rows.rows()));
    for (Index i = 0; i < rows.rows(); ++i)
      images.push_back(inv.multiply(
          eps[static_cast<size_t>(target)],
          inv.multiply(rows.row(i).transpose(), eps[static_cast<size_t>(source)])));
    return span_rank(images);
  };

  for (int a = 0; a < n_orbits; ++a)
    for (int b = 0; b < n_orbits; ++b) {
      const int from = order[static_cast<size_t>(a)].second;
      const int to = order[static_cast<size_t>(b)].second;
      const Index m =
          corner_rank(rad1, to, from) - corner_rank(rad2, to, from);
      if (m != 0) g.arrows[{a, b}] = static_cast<int>(m);
    }
  return g;
}

}  // namespace descent
