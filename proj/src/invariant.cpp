#include "descent/invariant.hpp"

#include <algorithm>
#include <stdexcept>

#include "descent/parallel.hpp"

namespace descent {

InvariantAlgebra InvariantAlgebra::build(const FaceAlgebra& A, int workers) {
  InvariantAlgebra inv;
  inv.A_ = &A;
  const Arrangement& arr = A.arrangement();
  const int dim = 1 << A.group().num_simple();

  inv.sums_.resize(static_cast<size_t>(dim));
  for (GenSet J = 0; J < static_cast<GenSet>(dim); ++J) {
    AlgebraElement sum;
    for (int f : arr.orbit_faces(J)) sum.add_term(f, Rational(1));
    inv.sums_[static_cast<size_t>(J)] = std::move(sum);
  }

  inv.tab_.assign(static_cast<size_t>(dim),
                  std::vector<QVector>(static_cast<size_t>(dim)));
  parallel_for(dim * dim, workers, [&](int i) {
    const GenSet J = static_cast<GenSet>(i / dim);
    const GenSet K = static_cast<GenSet>(i % dim);
    inv.tab_[static_cast<size_t>(J)][static_cast<size_t>(K)] = inv.to_coords(
        A.multiply(inv.sums_[static_cast<size_t>(J)], inv.sums_[static_cast<size_t>(K)]));
  });

  const Lattice& lat = A.lattice();
  const int orbits = A.orbits().num_orbits();
  inv.jo_.resize(static_cast<size_t>(orbits));
  inv.lo_.resize(static_cast<size_t>(orbits));
  for (int o = 0; o < orbits; ++o) {
    const GenSet J = A.least_genset(o);
    inv.jo_[static_cast<size_t>(o)] = J;
    const int X = lat.support(arr.fundamental_face(J));
    long count = 0;
    for (int z : arr.orbit_faces(J))
      if (lat.support(z) == X) ++count;
    inv.lo_[static_cast<size_t>(o)] = count;
  }
  return inv;
}

QVector InvariantAlgebra::to_coords(const AlgebraElement& a) const {
  const Arrangement& arr = A_->arrangement();
  QVector c(dim());
  for (GenSet J = 0; J < static_cast<GenSet>(dim()); ++J) {
    const auto& faces = arr.orbit_faces(J);
    const Rational v = a.coeff(faces.front());
    for (int f : faces)
      if (a.coeff(f) != v)
        throw std::invalid_argument(
            "to_coords: coefficients are not constant on a face orbit");
    c(static_cast<Index>(J)) = v;
  }
  return c;
}

AlgebraElement InvariantAlgebra::from_coords(const QVector& c) const {
  if (c.size() != dim())
    throw std::invalid_argument("from_coords: wrong coordinate length");
  AlgebraElement out;
  for (GenSet J = 0; J < static_cast<GenSet>(dim()); ++J) {
    const Rational& v = c(static_cast<Index>(J));
    if (v.is_zero()) continue;
    out += v * sums_[static_cast<size_t>(J)];
  }
  return out;
}

QVector InvariantAlgebra::unit_coords() const {
  QVector c = QVector::Zero(dim());
  c(static_cast<Index>(A_->group().full_gen_set())) = Rational(1);
  return c;
}

QVector InvariantAlgebra::reynolds_coords(const AlgebraElement& a) const {
  const Arrangement& arr = A_->arrangement();
  QVector c(dim());
  for (GenSet J = 0; J < static_cast<GenSet>(dim()); ++J) {
    const auto& faces = arr.orbit_faces(J);
    Rational total;
    for (int f : faces) total += a.coeff(f);
    c(static_cast<Index>(J)) = total / Rational(static_cast<long>(faces.size()));
  }
  return c;
}

QVector InvariantAlgebra::multiply(const QVector& a, const QVector& b) const {
  if (a.size() != dim() || b.size() != dim())
    throw std::invalid_argument("multiply: wrong coordinate length");
  QVector out = QVector::Zero(dim());
  for (Index J = 0; J < dim(); ++J) {
    if (a(J).is_zero()) continue;
    for (Index K = 0; K < dim(); ++K) {
      if (b(K).is_zero()) continue;
      const Rational f = a(J) * b(K);
      const QVector& row = tab_[static_cast<size_t>(J)][static_cast<size_t>(K)];
      for (Index M = 0; M < dim(); ++M)
        if (!row(M).is_zero()) out(M) += f * row(M);
    }
  }
  return out;
}

std::vector<QMatrix> InvariantAlgebra::radical_filtration(int up_to) const {
  if (up_to < 1)
    throw std::invalid_argument("radical_filtration: up_to must be >= 1");
  const Index d = dim();
  // trace of left multiplication by each basis element
  QVector traces = QVector::Zero(d);
  for (Index M = 0; M < d; ++M) {
    Rational t;
    for (Index K = 0; K < d; ++K)
      t += tab_[static_cast<size_t>(M)][static_cast<size_t>(K)](K);
    traces(M) = t;
  }
  // Gram matrix of the trace form; its kernel is the radical in char zero
  QMatrix gram(d, d);
  for (Index J = 0; J < d; ++J)
    for (Index K = 0; K < d; ++K) {
      Rational g;
      const QVector& row = tab_[static_cast<size_t>(J)][static_cast<size_t>(K)];
      for (Index M = 0; M < d; ++M)
        if (!row(M).is_zero()) g += row(M) * traces(M);
      gram(J, K) = g;
    }

  std::vector<QMatrix> powers;
  const auto kernel = kernel_basis(gram);
  if (kernel.empty()) {
    powers.emplace_back(QMatrix(0, d));
  } else {
    const RrefResult r1 = rref(matrix_from_rows(kernel));
    powers.emplace_back(r1.mat.topRows(r1.rank));
  }
  while (static_cast<int>(powers.size()) < up_to && powers.back().rows() > 0) {
    const QMatrix& prev = powers.back();
    const QMatrix& first = powers.front();
    std::vector<QVector> products;
    for (Index i = 0; i < prev.rows(); ++i)
      for (Index j = 0; j < first.rows(); ++j)
        products.push_back(multiply(prev.row(i).transpose(), first.row(j).transpose()));
    const RrefResult red = rref(matrix_from_rows(products));
    powers.emplace_back(red.mat.topRows(red.rank));
  }
  return powers;
}

int InvariantAlgebra::loewy_length() const {
  const auto powers = radical_filtration(dim() + 1);
  for (size_t p = 0; p < powers.size(); ++p)
    if (powers[p].rows() == 0) return static_cast<int>(p) + 1;
  throw std::logic_error("loewy_length: radical failed to vanish");
}

std::vector<QVector> InvariantAlgebra::idempotents_recursive() const {
  const OrbitPoset& orb = orbits();
  const int n = orb.num_orbits();
  std::vector<int> order(static_cast<size_t>(n));
  for (int o = 0; o < n; ++o) order[static_cast<size_t>(o)] = o;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return orb.rank_of(a) > orb.rank_of(b); });

  std::vector<QVector> eps(static_cast<size_t>(n));
  std::vector<bool> done(static_cast<size_t>(n), false);
  for (int o : order) {
    QVector ell = QVector::Zero(dim());
    ell(static_cast<Index>(jo_[static_cast<size_t>(o)])) =
        Rational(1, lo_[static_cast<size_t>(o)]);
    QVector above = QVector::Zero(dim());
    for (int p = 0; p < n; ++p)
      if (p != o && done[static_cast<size_t>(p)] && orb.leq(o, p))
        above += eps[static_cast<size_t>(p)];
    QVector e = ell - multiply(ell, above);
    eps[static_cast<size_t>(o)] = std::move(e);
    done[static_cast<size_t>(o)] = true;
  }

  QVector total = QVector::Zero(dim());
  for (const auto& e : eps) total += e;
  bool ok = exactly_equal(total, unit_coords());
  for (int o = 0; o < n && ok; ++o)
    ok = exactly_equal(
        multiply(eps[static_cast<size_t>(o)], eps[static_cast<size_t>(o)]),
        eps[static_cast<size_t>(o)]);
  for (int o = 0; o < n && ok; ++o)
    for (int p = 0; p < n && ok; ++p) {
      if (p == o) continue;
      ok = is_zero_vector(
          multiply(eps[static_cast<size_t>(o)], eps[static_cast<size_t>(p)]));
    }
  if (!ok)
    throw std::runtime_error(
        "invariant idempotent recursion failed its axiom checks");
  return eps;
}

std::vector<QVector> InvariantAlgebra::idempotents_via_sum(
    const IdempotentSystem& sys) const {
  const OrbitPoset& orb = orbits();
  std::vector<QVector> eps(static_cast<size_t>(orb.num_orbits()));
  for (int o = 0; o < orb.num_orbits(); ++o) {
    AlgebraElement sum;
    for (int X : orb.members(o)) sum += sys.e[static_cast<size_t>(X)];
    eps[static_cast<size_t>(o)] = to_coords(sum);
  }
  return eps;
}

}  // namespace descent
