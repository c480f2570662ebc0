#include "descent/arrangement.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace descent {

namespace {

// Field codes inside packed keys.
constexpr std::uint64_t kOddBits = 0x5555555555555555ULL;

int code_of_sign(int s) { return s > 0 ? 1 : (s < 0 ? 2 : 0); }
int sign_of_code(std::uint64_t c) { return c == 1 ? 1 : (c == 2 ? -1 : 0); }

Rational dot(const QVector& a, const QVector& b) {
  Rational r(0);
  for (Index i = 0; i < a.size(); ++i) r += a(i) * b(i);
  return r;
}

}  // namespace

int Arrangement::sign_in_key(std::uint64_t key, int H, int h) {
  const int shift = 2 * (H - 1 - h);
  return sign_of_code((key >> shift) & 3u);
}

std::uint64_t Arrangement::key_from_point(const QVector& v) const {
  const int H = num_hyperplanes();
  std::uint64_t k = 0;
  for (int h = 0; h < H; ++h) {
    const int s = dot(normals_[static_cast<size_t>(h)], v).sign();
    k |= static_cast<std::uint64_t>(code_of_sign(s)) << (2 * (H - 1 - h));
  }
  return k;
}

std::uint64_t Arrangement::transform_key(int w, std::uint64_t k) const {
  const int H = num_hyperplanes();
  std::uint64_t out = 0;
  for (int h = 0; h < H; ++h) {
    const std::uint64_t c = (k >> (2 * (H - 1 - h))) & 3u;
    if (c == 0) continue;
    int s = sign_of_code(c) * hyp_sign(w, h);
    out |= static_cast<std::uint64_t>(code_of_sign(s)) << (2 * (H - 1 - hyp_perm(w, h)));
  }
  return out;
}

int Arrangement::face_by_key(std::uint64_t k) const {
  const auto it = index_.find(k);
  if (it == index_.end())
    throw std::invalid_argument("Arrangement: no face with the given key");
  return it->second;
}

std::string Arrangement::signs_string(int f) const {
  const int H = num_hyperplanes();
  std::string s(static_cast<size_t>(H), '0');
  for (int h = 0; h < H; ++h) {
    const int v = sign_of(f, h);
    s[static_cast<size_t>(h)] = v > 0 ? '+' : (v < 0 ? '-' : '0');
  }
  return s;
}

Arrangement Arrangement::build(const CoxeterSystem& W) {
  Arrangement A;
  A.W_ = &W;
  A.odd_bits_ = kOddBits;
  const int n = W.rank();

  // Hyperplane normals in the mandated order.
  auto unit = [&](int i) {
    QVector v = QVector::Zero(n);
    v(i) = Rational(1);
    return v;
  };
  if (W.type() == CoxType::B)
    for (int i = 0; i < n; ++i) A.normals_.push_back(unit(i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      QVector v = unit(i);
      v(j) = Rational(-1);
      A.normals_.push_back(v);
    }
  if (W.type() == CoxType::B)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        QVector v = unit(i);
        v(j) = Rational(1);
        A.normals_.push_back(v);
      }

  const int H = A.num_hyperplanes();
  if (2 * H > 62)
    throw std::invalid_argument("Arrangement: rank too large for packed sign keys");

  // Base point must avoid every hyperplane.
  for (int h = 0; h < H; ++h)
    if (dot(A.normals_[static_cast<size_t>(h)], W.base_point()).is_zero())
      throw std::logic_error("Arrangement: base point lies on a hyperplane");

  // Signed hyperplane action per group element.
  const int N = W.order();
  A.hyp_perm_.assign(static_cast<size_t>(N), std::vector<int>(static_cast<size_t>(H), -1));
  A.hyp_sign_.assign(static_cast<size_t>(N), std::vector<int8_t>(static_cast<size_t>(H), 0));
  for (int w = 0; w < N; ++w) {
    for (int h = 0; h < H; ++h) {
      const QVector img = W.act(w, A.normals_[static_cast<size_t>(h)]);
      const QVector neg = -img;
      int found = -1, sign = 0;
      for (int h2 = 0; h2 < H && found < 0; ++h2) {
        if (exactly_equal(img, A.normals_[static_cast<size_t>(h2)])) { found = h2; sign = 1; }
        else if (exactly_equal(neg, A.normals_[static_cast<size_t>(h2)])) { found = h2; sign = -1; }
      }
      if (found < 0)
        throw std::logic_error("Arrangement: group does not permute the hyperplanes");
      A.hyp_perm_[static_cast<size_t>(w)][static_cast<size_t>(h)] = found;
      A.hyp_sign_[static_cast<size_t>(w)][static_cast<size_t>(h)] = static_cast<int8_t>(sign);
    }
  }

  // Fundamental faces c_J: witness = W_J-average of the base point.
  const int s = W.num_simple();
  const GenSet numJ = GenSet(1) << s;
  std::vector<std::uint64_t> cJ_key(numJ);
  std::vector<QVector> cJ_wit(numJ);
  for (GenSet J = 0; J < numJ; ++J) {
    QVector sum = QVector::Zero(n);
    const auto WJ = W.subgroup(J);
    for (int u : WJ) sum += W.act(u, W.base_point());
    cJ_wit[J] = sum * (Rational(1) / Rational(static_cast<long>(WJ.size())));
    cJ_key[J] = A.key_from_point(cJ_wit[J]);
    for (int j = 0; j < s; ++j)
      if (J & (GenSet(1) << j))
        if (A.transform_key(W.simple(j), cJ_key[J]) != cJ_key[J])
          throw std::logic_error("Arrangement: c_J not fixed by J");
  }

  // Enumerate all faces as the W-orbits of the c_J.
  std::map<std::uint64_t, std::pair<QVector, GenSet>> found;  // key -> (witness, orbit)
  for (GenSet J = 0; J < numJ; ++J) {
    for (int w = 0; w < N; ++w) {
      const std::uint64_t k = A.transform_key(w, cJ_key[J]);
      auto it = found.find(k);
      if (it == found.end()) {
        found.emplace(k, std::make_pair(W.act(w, cJ_wit[J]), J));
      } else if (it->second.second != J) {
        throw std::logic_error("Arrangement: face in two fundamental orbits");
      }
    }
  }

  const int F = static_cast<int>(found.size());
  A.keys_.reserve(static_cast<size_t>(F));
  A.witnesses_.reserve(static_cast<size_t>(F));
  A.face_orbit_.reserve(static_cast<size_t>(F));
  A.index_.reserve(static_cast<size_t>(F) * 2);
  for (auto& [k, data] : found) {  // std::map iterates keys ascending
    A.index_.emplace(k, static_cast<int>(A.keys_.size()));
    A.keys_.push_back(k);
    A.witnesses_.push_back(std::move(data.first));
    A.face_orbit_.push_back(data.second);
  }

  A.zero_masks_.resize(static_cast<size_t>(F));
  for (int f = 0; f < F; ++f) {
    std::uint32_t m = 0;
    for (int h = 0; h < H; ++h)
      if (A.sign_of(f, h) == 0) m |= (1u << h);
    A.zero_masks_[static_cast<size_t>(f)] = m;
    if (m == (H >= 32 ? ~0u : ((1u << H) - 1u))) A.identity_face_ = f;
    if (m == 0) A.chambers_.push_back(f);
  }
  if (A.identity_face_ < 0)
    throw std::logic_error("Arrangement: missing identity face");

  A.orbit_members_.assign(numJ, {});
  for (int f = 0; f < F; ++f)
    A.orbit_members_[A.face_orbit_[static_cast<size_t>(f)]].push_back(f);

  A.cJ_.resize(numJ);
  for (GenSet J = 0; J < numJ; ++J) A.cJ_[J] = A.index_.at(cJ_key[J]);

  A.face_act_.assign(static_cast<size_t>(N), std::vector<int>(static_cast<size_t>(F)));
  for (int w = 0; w < N; ++w)
    for (int f = 0; f < F; ++f)
      A.face_act_[static_cast<size_t>(w)][static_cast<size_t>(f)] =
          A.index_.at(A.transform_key(w, A.keys_[static_cast<size_t>(f)]));

  return A;
}

int Arrangement::fundamental_face(GenSet J) const {
  if (J >= cJ_.size())
    throw std::invalid_argument("Arrangement::fundamental_face: J out of range");
  return cJ_[J];
}

QVector Arrangement::interpolated_witness(int x, int y) const {
  const int H = num_hyperplanes();
  const QVector& wx = witness(x);
  const QVector delta = witness(y) - witness(x);
  std::vector<Rational> a, b;
  std::vector<int> want;
  for (int h = 0; h < H; ++h) {
    const int s = sign_of(x, h);
    if (s == 0) continue;
    a.push_back(dot(normal(h), wx));
    b.push_back(dot(normal(h), delta));
    want.push_back(s);
  }
  Rational t(1);
  for (;;) {
    bool ok = true;
    for (size_t i = 0; i < a.size() && ok; ++i)
      ok = (a[i] + t * b[i]).sign() == want[i];
    if (ok) break;
    t /= Rational(2);
  }
  return wx + t * delta;
}

// --- codecs ------------------------------------------------------------------

SetComposition Arrangement::face_to_composition(int f) const {
  if (W_->type() != CoxType::A)
    throw std::logic_error("face_to_composition: type A only");
  const int n = W_->rank();
  const QVector& v = witness(f);
  std::vector<int> idx(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i + 1;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int i, int j) { return v(i - 1) < v(j - 1); });
  SetComposition sc;
  for (size_t p = 0; p < idx.size();) {
    size_t q = p;
    std::vector<int> block;
    while (q < idx.size() && v(idx[q] - 1) == v(idx[p] - 1)) block.push_back(idx[q++]);
    std::sort(block.begin(), block.end());
    sc.blocks.push_back(std::move(block));
    p = q;
  }
  return sc;
}

int Arrangement::composition_to_face(const SetComposition& sc) const {
  if (W_->type() != CoxType::A)
    throw std::logic_error("composition_to_face: type A only");
  const int n = W_->rank();
  QVector v(n);
  std::vector<bool> seen(static_cast<size_t>(n), false);
  int level = 0;
  for (const auto& block : sc.blocks) {
    ++level;
    if (block.empty())
      throw std::invalid_argument("composition_to_face: empty block");
    for (int e : block) {
      if (e < 1 || e > n || seen[static_cast<size_t>(e - 1)])
        throw std::invalid_argument("composition_to_face: not a set composition of {1..n}");
      seen[static_cast<size_t>(e - 1)] = true;
      v(e - 1) = Rational(level);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw std::invalid_argument("composition_to_face: not all of {1..n} covered");
  return face_by_key(key_from_point(v));
}

SignedComposition Arrangement::face_to_signed_composition(int f) const {
  if (W_->type() != CoxType::B)
    throw std::logic_error("face_to_signed_composition: type B only");
  const int n = W_->rank();
  const QVector& v = witness(f);
  SignedComposition sc;
  std::vector<std::pair<Rational, int>> nz;  // (|v_i|, i+1)
  for (int i = 0; i < n; ++i) {
    if (v(i).is_zero())
      sc.zero.push_back(i + 1);
    else
      nz.emplace_back(abs(v(i)), i + 1);
  }
  std::stable_sort(nz.begin(), nz.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t p = 0; p < nz.size();) {
    size_t q = p;
    std::vector<int> block;
    while (q < nz.size() && nz[q].first == nz[p].first) {
      const int i = nz[q].second;
      block.push_back(v(i - 1).sign() > 0 ? i : -i);
      ++q;
    }
    std::sort(block.begin(), block.end());
    sc.blocks.push_back(std::move(block));
    p = q;
  }
  return sc;
}

int Arrangement::signed_composition_to_face(const SignedComposition& sc) const {
  if (W_->type() != CoxType::B)
    throw std::logic_error("signed_composition_to_face: type B only");
  const int n = W_->rank();
  QVector v = QVector::Zero(n);
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int z : sc.zero) {
    if (z < 1 || z > n || seen[static_cast<size_t>(z - 1)])
      throw std::invalid_argument("signed_composition_to_face: bad zero block");
    seen[static_cast<size_t>(z - 1)] = true;
  }
  int level = 0;
  for (const auto& block : sc.blocks) {
    ++level;
    if (block.empty())
      throw std::invalid_argument("signed_composition_to_face: empty block");
    for (int l : block) {
      const int i = std::abs(l);
      if (i < 1 || i > n || l == 0 || seen[static_cast<size_t>(i - 1)])
        throw std::invalid_argument("signed_composition_to_face: not a signed composition");
      seen[static_cast<size_t>(i - 1)] = true;
      v(i - 1) = Rational(l > 0 ? level : -level);
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw std::invalid_argument("signed_composition_to_face: letters missing");
  return face_by_key(key_from_point(v));
}

SetComposition compose_product(const SetComposition& a, const SetComposition& b) {
  SetComposition out;
  for (const auto& B : a.blocks) {
    for (const auto& C : b.blocks) {
      std::vector<int> inter;
      std::set_intersection(B.begin(), B.end(), C.begin(), C.end(),
                            std::back_inserter(inter));
      if (!inter.empty()) out.blocks.push_back(std::move(inter));
    }
  }
  return out;
}

}  // namespace descent
