#include "descent/descent_algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace descent {

namespace {

std::vector<int> conjugate_subgroup(const CoxeterSystem& W, int w,
                                    const std::vector<int>& sub) {
  std::vector<int> out;
  out.reserve(sub.size());
  const int winv = W.inverse(w);
  for (int h : sub) out.push_back(W.mult(W.mult(w, h), winv));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

DescentAlgebra DescentAlgebra::build(const CoxeterSystem& W) {
  DescentAlgebra D;
  D.W_ = &W;
  const int dim = 1 << W.num_simple();

  D.x_.resize(static_cast<size_t>(dim));
  for (GenSet J = 0; J < static_cast<GenSet>(dim); ++J) {
    SparseVec xj;
    for (int r : W.minimal_coset_reps(J)) xj.add_term(r, Rational(1));
    D.x_[static_cast<size_t>(J)] = std::move(xj);
  }

  // group the subsets by conjugacy of their parabolic subgroups
  std::vector<std::vector<int>> subs(static_cast<size_t>(dim));
  for (GenSet J = 0; J < static_cast<GenSet>(dim); ++J)
    subs[static_cast<size_t>(J)] = W.subgroup(J);
  D.class_of_.assign(static_cast<size_t>(dim), -1);
  for (GenSet J = 0; J < static_cast<GenSet>(dim); ++J) {
    bool placed = false;
    for (size_t c = 0; c < D.classes_.size() && !placed; ++c) {
      const auto& ref = subs[static_cast<size_t>(D.classes_[c].front())];
      if (ref.size() != subs[static_cast<size_t>(J)].size()) continue;
      for (int w = 0; w < W.order() && !placed; ++w)
        if (conjugate_subgroup(W, w, subs[static_cast<size_t>(J)]) == ref) {
          D.classes_[c].push_back(J);
          D.class_of_[static_cast<size_t>(J)] = static_cast<int>(c);
          placed = true;
        }
    }
    if (!placed) {
      D.class_of_[static_cast<size_t>(J)] = static_cast<int>(D.classes_.size());
      D.classes_.push_back({J});
    }
  }
  return D;
}

SparseVec DescentAlgebra::multiply(const SparseVec& a, const SparseVec& b) const {
  std::vector<SparseVec::Term> terms;
  terms.reserve(a.size() * b.size());
  for (const auto& [u, alpha] : a.terms())
    for (const auto& [v, beta] : b.terms())
      terms.emplace_back(W_->mult(u, v), alpha * beta);
  return SparseVec::from_terms(std::move(terms));
}

QVector DescentAlgebra::expand(const SparseVec& a) const {
  std::vector<QVector> basis;
  basis.reserve(x_.size());
  for (const auto& xj : x_) {
    QVector col = QVector::Zero(W_->order());
    for (const auto& [w, c] : xj.terms()) col(w) = c;
    basis.push_back(std::move(col));
  }
  QVector v = QVector::Zero(W_->order());
  for (const auto& [w, c] : a.terms()) v(w) = c;
  const auto coords = coordinates_in(basis, v);
  if (!coords)
    throw std::invalid_argument("expand: element lies outside the basis span");
  return *coords;
}

long DescentAlgebra::normalizer_index(GenSet J) const {
  const std::vector<int> sub = W_->subgroup(J);
  long n = 0;
  for (int w = 0; w < W_->order(); ++w)
    if (conjugate_subgroup(*W_, w, sub) == sub) ++n;
  return n / static_cast<long>(sub.size());
}

std::vector<SparseVec> DescentAlgebra::idempotents(const InvariantAlgebra& inv) const {
  const OrbitPoset& orb = inv.orbits();
  const int n = orb.num_orbits();
  std::vector<int> order(static_cast<size_t>(n));
  for (int o = 0; o < n; ++o) order[static_cast<size_t>(o)] = o;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return orb.rank_of(a) > orb.rank_of(b); });

  std::vector<SparseVec> eps(static_cast<size_t>(n));
  std::vector<bool> done(static_cast<size_t>(n), false);
  for (int o : order) {
    const SparseVec ell = Rational(1, inv.orbit_face_count(o)) *
                          basis_element(inv.orbit_genset(o));
    SparseVec above;
    for (int p = 0; p < n; ++p)
      if (p != o && done[static_cast<size_t>(p)] && orb.leq(o, p))
        above += eps[static_cast<size_t>(p)];
    // mirrored recursion: the higher idempotents multiply from the left
    eps[static_cast<size_t>(o)] = ell - multiply(above, ell);
    done[static_cast<size_t>(o)] = true;
  }

  SparseVec total;
  for (const auto& e : eps) total += e;
  bool ok = (total == unit());
  for (int o = 0; o < n && ok; ++o)
    ok = (multiply(eps[static_cast<size_t>(o)], eps[static_cast<size_t>(o)]) ==
          eps[static_cast<size_t>(o)]);
  for (int o = 0; o < n && ok; ++o)
    for (int p = 0; p < n && ok; ++p) {
      if (p == o) continue;
      ok = multiply(eps[static_cast<size_t>(o)], eps[static_cast<size_t>(p)]).empty();
    }
  if (!ok)
    throw std::runtime_error(
        "descent idempotent recursion failed its axiom checks");
  return eps;
}

}  // namespace descent
