#include "descent/group.hpp"

#include <deque>
#include <set>
#include <stdexcept>

namespace descent {

CoxeterSystem CoxeterSystem::build(CoxType type, int rank) {
  if (rank < 1) throw std::invalid_argument("CoxeterSystem: rank must be >= 1");
  const int n = rank;

  std::vector<SignedPerm> gens;
  if (type == CoxType::B) {
    SignedPerm flip = SignedPerm::identity(n);
    flip.img[0] = -1;  // reflection in {v_1 = 0}, the wall of the base chamber
    gens.push_back(flip);
  }
  for (int i = 0; i + 1 < n; ++i) {
    SignedPerm t = SignedPerm::identity(n);
    std::swap(t.img[static_cast<size_t>(i)], t.img[static_cast<size_t>(i + 1)]);
    gens.push_back(t);
  }
  // Type A of rank 1 is the trivial group; it still needs the identity.

  // Closure under right multiplication by the generators.
  std::set<SignedPerm> seen;
  std::deque<SignedPerm> queue;
  const SignedPerm id = SignedPerm::identity(n);
  seen.insert(id);
  queue.push_back(id);
  while (!queue.empty()) {
    SignedPerm w = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      SignedPerm wg = w * g;
      if (seen.insert(wg).second) queue.push_back(wg);
    }
  }

  CoxeterSystem W;
  W.type_ = type;
  W.rank_ = n;
  W.elements_.assign(seen.begin(), seen.end());  // canonical: lexicographic
  for (size_t i = 0; i < W.elements_.size(); ++i)
    W.index_[W.elements_[i].img] = static_cast<int>(i);

  W.identity_ = W.index_.at(id.img);
  for (const auto& g : gens) W.simple_.push_back(W.index_.at(g.img));

  const int N = W.order();
  W.inverse_.resize(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i)
    W.inverse_[static_cast<size_t>(i)] = W.index_.at(W.elements_[static_cast<size_t>(i)].inverse().img);

  if (static_cast<long>(N) * N <= 4'000'000L) {
    W.mult_table_.resize(static_cast<size_t>(N) * static_cast<size_t>(N));
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b)
        W.mult_table_[static_cast<size_t>(a) * static_cast<size_t>(N) + static_cast<size_t>(b)] =
            W.index_.at((W.elements_[static_cast<size_t>(a)] * W.elements_[static_cast<size_t>(b)]).img);
  }

  // Word lengths: BFS in the Cayley graph of the simple generators.
  W.length_.assign(static_cast<size_t>(N), -1);
  std::deque<int> bfs;
  W.length_[static_cast<size_t>(W.identity_)] = 0;
  bfs.push_back(W.identity_);
  while (!bfs.empty()) {
    const int w = bfs.front();
    bfs.pop_front();
    for (int s : W.simple_) {
      const int ws = W.mult(w, s);
      if (W.length_[static_cast<size_t>(ws)] < 0) {
        W.length_[static_cast<size_t>(ws)] = W.length_[static_cast<size_t>(w)] + 1;
        bfs.push_back(ws);
      }
    }
  }

  W.p0_ = QVector(n);
  for (int i = 0; i < n; ++i) W.p0_(i) = Rational(i + 1);
  return W;
}

int CoxeterSystem::index_of(const SignedPerm& w) const {
  auto it = index_.find(w.img);
  if (it == index_.end())
    throw std::invalid_argument("CoxeterSystem: element not in group");
  return it->second;
}

int CoxeterSystem::mult(int a, int b) const {
  if (!mult_table_.empty())
    return mult_table_[static_cast<size_t>(a) * static_cast<size_t>(order()) + static_cast<size_t>(b)];
  return index_.at((elements_[static_cast<size_t>(a)] * elements_[static_cast<size_t>(b)]).img);
}

QVector CoxeterSystem::act(int w, const QVector& v) const {
  if (v.size() != rank_)
    throw std::invalid_argument("CoxeterSystem::act: dimension mismatch");
  const SignedPerm& p = elements_[static_cast<size_t>(w)];
  QVector out(rank_);
  for (int i = 0; i < rank_; ++i) {
    const int t = p.img[static_cast<size_t>(i)];
    if (t > 0)
      out(t - 1) = v(i);
    else
      out(-t - 1) = -v(i);
  }
  return out;
}

QMatrix CoxeterSystem::matrix(int w) const {
  const SignedPerm& p = elements_[static_cast<size_t>(w)];
  QMatrix m = QMatrix::Zero(rank_, rank_);
  for (int i = 0; i < rank_; ++i) {
    const int t = p.img[static_cast<size_t>(i)];
    if (t > 0)
      m(t - 1, i) = Rational(1);
    else
      m(-t - 1, i) = Rational(-1);
  }
  return m;
}

int CoxeterSystem::det(int w) const {
  const SignedPerm& p = elements_[static_cast<size_t>(w)];
  // Sign of the underlying permutation times the product of entry signs.
  int sign = 1;
  std::vector<bool> vis(p.img.size(), false);
  for (size_t i = 0; i < p.img.size(); ++i) {
    if (vis[i]) continue;
    size_t j = i;
    int cycle = 0;
    while (!vis[j]) {
      vis[j] = true;
      const int t = p.img[j];
      if (t < 0) sign = -sign;
      j = static_cast<size_t>(std::abs(t) - 1);
      ++cycle;
    }
    if (cycle % 2 == 0) sign = -sign;
  }
  return sign;
}

std::vector<int> CoxeterSystem::subgroup(GenSet J) const {
  if (num_simple() < 32 && (J >> num_simple()) != 0)
    throw std::invalid_argument("CoxeterSystem::subgroup: J is not a subset of S");
  std::set<int> members{identity_};
  std::deque<int> queue{identity_};
  while (!queue.empty()) {
    const int w = queue.front();
    queue.pop_front();
    for (int j = 0; j < num_simple(); ++j) {
      if (!(J & (GenSet(1) << j))) continue;
      const int ws = mult(w, simple_[static_cast<size_t>(j)]);
      if (members.insert(ws).second) queue.push_back(ws);
    }
  }
  return {members.begin(), members.end()};
}

std::vector<int> CoxeterSystem::minimal_coset_reps(GenSet J) const {
  const std::vector<int> WJ = subgroup(J);
  const int N = order();
  std::vector<bool> assigned(static_cast<size_t>(N), false);
  std::vector<int> reps;
  // Scan elements in canonical order; each unassigned element opens a new
  // coset w W_J, whose minimal-length member becomes the representative.
  for (int w = 0; w < N; ++w) {
    if (assigned[static_cast<size_t>(w)]) continue;
    int best = -1, bestLen = -1, minCount = 0;
    for (int u : WJ) {
      const int wu = mult(w, u);
      assigned[static_cast<size_t>(wu)] = true;
      if (best < 0 || length(wu) < bestLen) {
        best = wu;
        bestLen = length(wu);
        minCount = 1;
      } else if (length(wu) == bestLen) {
        ++minCount;
      }
    }
    if (minCount != 1)
      throw std::logic_error("minimal_coset_reps: minimal element not unique");
    reps.push_back(best);
  }
  std::sort(reps.begin(), reps.end());
  return reps;
}

}  // namespace descent
