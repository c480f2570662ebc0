#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "descent/arrangement.hpp"

using namespace descent;

namespace {

// All ordered set partitions of the index set given by `mask` (bits over
// 0..n-1), built independently of the face machinery: pick the first block as
// any nonempty subset, recurse on the rest.
void ordered_set_partitions(unsigned mask, std::vector<std::vector<int>>& acc,
                            std::vector<SetComposition>& out) {
  if (mask == 0) {
    out.push_back({acc});
    return;
  }
  // enumerate nonempty submasks of mask
  for (unsigned sub = mask; sub; sub = (sub - 1) & mask) {
    std::vector<int> block;
    for (int i = 0; i < 32; ++i)
      if (sub & (1u << i)) block.push_back(i + 1);
    acc.push_back(block);
    ordered_set_partitions(mask & ~sub, acc, out);
    acc.pop_back();
  }
}

std::vector<SetComposition> all_set_compositions(int n) {
  std::vector<SetComposition> out;
  std::vector<std::vector<int>> acc;
  ordered_set_partitions((1u << n) - 1, acc, out);
  return out;
}

long fubini(int n) {
  // a(n) = sum_{k=1..n} C(n,k) a(n-k), a(0) = 1
  std::vector<long> a(static_cast<size_t>(n) + 1, 0), choose;
  a[0] = 1;
  for (int m = 1; m <= n; ++m) {
    long c = 1;  // C(m, k) computed incrementally
    for (int k = 1; k <= m; ++k) {
      c = c * (m - k + 1) / k;
      a[static_cast<size_t>(m)] += c * a[static_cast<size_t>(m - k)];
    }
  }
  return a[static_cast<size_t>(n)];
}

}  // namespace

TEST_CASE("hyperplane inventory and ordering") {
  const auto WA = CoxeterSystem::build(CoxType::A, 3);
  const auto A = Arrangement::build(WA);
  REQUIRE(A.num_hyperplanes() == 3);
  // Type A order: differences e_i - e_j for i < j, lexicographic on (i, j).
  QVector n0(3);
  n0 << 1, -1, 0;
  CHECK(exactly_equal(A.normal(0), n0));
  QVector n2(3);
  n2 << 0, 1, -1;
  CHECK(exactly_equal(A.normal(2), n2));

  const auto WB = CoxeterSystem::build(CoxType::B, 2);
  const auto B = Arrangement::build(WB);
  REQUIRE(B.num_hyperplanes() == 4);
  // Type B order: coordinates first, then differences, then sums.
  QVector e1(2), diff(2), sum(2);
  e1 << 1, 0;
  diff << 1, -1;
  sum << 1, 1;
  CHECK(exactly_equal(B.normal(0), e1));
  CHECK(exactly_equal(B.normal(2), diff));
  CHECK(exactly_equal(B.normal(3), sum));
}

TEST_CASE("face counts") {
  const auto WA3 = CoxeterSystem::build(CoxType::A, 3);
  const auto A3 = Arrangement::build(WA3);
  CHECK(A3.num_faces() == 13);
  CHECK(A3.chambers().size() == 6);

  const auto WA4 = CoxeterSystem::build(CoxType::A, 4);
  const auto A4 = Arrangement::build(WA4);
  CHECK(A4.num_faces() == 75);
  CHECK(A4.chambers().size() == 24);

  const auto WB2 = CoxeterSystem::build(CoxType::B, 2);
  const auto B2 = Arrangement::build(WB2);
  CHECK(B2.num_faces() == 17);
  CHECK(B2.chambers().size() == 8);

  const auto WB3 = CoxeterSystem::build(CoxType::B, 3);
  const auto B3 = Arrangement::build(WB3);
  CHECK(B3.num_faces() == 147);

  // Independent count for type B: pick the zero set (j coordinates), then an
  // ordered set partition of the remaining n-j indices, then a sign for each.
  for (const auto* arr : {&B2, &B3}) {
    const int n = arr->group().rank();
    long total = 0, c = 1;
    for (int j = 0; j <= n; ++j) {
      long signs = 1;
      for (int k = 0; k < n - j; ++k) signs *= 2;
      total += c * fubini(n - j) * signs;
      c = c * (n - j) / (j + 1);
    }
    CHECK(total == arr->num_faces());
  }

  // Keys are stored strictly ascending, so face ids are canonical.
  for (int f = 1; f < B3.num_faces(); ++f) CHECK(B3.key(f - 1) < B3.key(f));
  for (int f = 0; f < B3.num_faces(); ++f) CHECK(B3.face_by_key(B3.key(f)) == f);

  // B2 faces by number of zero signs: 8 chambers, 8 rays, 1 origin.
  std::map<int, int> hist;
  for (int f = 0; f < B2.num_faces(); ++f)
    hist[__builtin_popcount(B2.zero_mask(f))]++;
  CHECK(hist == std::map<int, int>({{0, 8}, {1, 8}, {4, 1}}));
}

TEST_CASE("type A faces are exactly the ordered set partitions") {
  for (int n : {3, 4}) {
    const auto W = CoxeterSystem::build(CoxType::A, n);
    const auto A = Arrangement::build(W);
    const auto comps = all_set_compositions(n);
    CHECK(static_cast<long>(comps.size()) == fubini(n));
    std::set<int> seen;
    for (const auto& sc : comps) seen.insert(A.composition_to_face(sc));
    CHECK(static_cast<int>(seen.size()) == A.num_faces());  // bijection
    // and the codec round-trips
    for (int f = 0; f < A.num_faces(); ++f)
      CHECK(A.composition_to_face(A.face_to_composition(f)) == f);
  }
}

TEST_CASE("type B codec round-trips and is injective") {
  for (int n : {2, 3}) {
    const auto W = CoxeterSystem::build(CoxType::B, n);
    const auto A = Arrangement::build(W);
    std::set<std::pair<std::vector<int>, std::vector<std::vector<int>>>> images;
    for (int f = 0; f < A.num_faces(); ++f) {
      const auto sc = A.face_to_signed_composition(f);
      images.insert({sc.zero, sc.blocks});
      CHECK(A.signed_composition_to_face(sc) == f);
    }
    CHECK(static_cast<int>(images.size()) == A.num_faces());
  }

  // A concrete decoding: the face of B2 with witness on the positive v2 axis.
  const auto W = CoxeterSystem::build(CoxType::B, 2);
  const auto A = Arrangement::build(W);
  QVector p(2);
  p << 0, 1;
  const int f = A.face_by_key(A.key_from_point(p));
  const auto sc = A.face_to_signed_composition(f);
  CHECK(sc.zero == std::vector<int>{1});
  CHECK(sc.blocks == std::vector<std::vector<int>>{{2}});
}

TEST_CASE("codec rejects malformed input") {
  const auto W = CoxeterSystem::build(CoxType::A, 3);
  const auto A = Arrangement::build(W);
  CHECK_THROWS_AS(A.composition_to_face({{{1}, {1, 2}}}), std::invalid_argument);
  CHECK_THROWS_AS(A.composition_to_face({{{1, 2}}}), std::invalid_argument);
  CHECK_THROWS_AS(A.composition_to_face({{{1}, {}, {2, 3}}}), std::invalid_argument);
  CHECK_THROWS_AS(A.composition_to_face({{{0, 1, 2}}}), std::invalid_argument);

  const auto WB = CoxeterSystem::build(CoxType::B, 2);
  const auto B = Arrangement::build(WB);
  CHECK_THROWS_AS(B.signed_composition_to_face({{1}, {{1}}}), std::invalid_argument);
  CHECK_THROWS_AS(B.signed_composition_to_face({{}, {{2}, {-2}}}), std::invalid_argument);
  CHECK_THROWS_AS(B.signed_composition_to_face({{}, {{1}}}), std::invalid_argument);
}

TEST_CASE("semigroup laws") {
  std::vector<std::pair<CoxType, int>> cases = {
      {CoxType::A, 3}, {CoxType::A, 4}, {CoxType::B, 2}, {CoxType::B, 3}};
  for (auto [t, n] : cases) {
    const auto W = CoxeterSystem::build(t, n);
    const auto A = Arrangement::build(W);
    const int N = A.num_faces();
    const int e = A.identity_face();
    for (int x = 0; x < N; ++x) {
      CHECK(A.product(x, x) == x);
      CHECK(A.product(e, x) == x);
      CHECK(A.product(x, e) == x);
      for (int y = 0; y < N; ++y) {
        const int xy = A.product(x, y);
        CHECK(A.product(xy, x) == xy);  // xyx = xy
      }
    }
    // chambers absorb on the left
    for (int c : A.chambers())
      for (int y = 0; y < N; y += 3) CHECK(A.product(c, y) == c);
  }

  // associativity, exhaustively on the small arrangements
  for (auto [t, n] : {std::pair{CoxType::A, 3}, std::pair{CoxType::B, 2}}) {
    const auto W = CoxeterSystem::build(t, n);
    const auto A = Arrangement::build(W);
    const int N = A.num_faces();
    for (int x = 0; x < N; ++x)
      for (int y = 0; y < N; ++y)
        for (int z = 0; z < N; ++z)
          CHECK(A.product(A.product(x, y), z) == A.product(x, A.product(y, z)));
  }
}

TEST_CASE("partial order on faces") {
  const auto W = CoxeterSystem::build(CoxType::A, 3);
  const auto A = Arrangement::build(W);
  const int N = A.num_faces();
  // x <= y exactly when every nonzero sign of x matches y (checked here sign
  // by sign, independently of the packed-key shortcut used by leq).
  for (int x = 0; x < N; ++x) {
    for (int y = 0; y < N; ++y) {
      bool sub = true;
      for (int h = 0; h < A.num_hyperplanes(); ++h) {
        const int sx = A.sign_of(x, h);
        if (sx != 0 && sx != A.sign_of(y, h)) sub = false;
      }
      CHECK(A.leq(x, y) == sub);
    }
  }
  // identity face below everything; chambers below nothing but themselves
  for (int y = 0; y < N; ++y) CHECK(A.leq(A.identity_face(), y));
  for (int c : A.chambers()) {
    int above = 0;
    for (int y = 0; y < N; ++y) above += A.leq(c, y);
    CHECK(above == 1);
  }

  // the edge {1,2}|{3} lies below the two chambers refining it
  const int x = A.composition_to_face({{{1, 2}, {3}}});
  CHECK(A.leq(x, A.composition_to_face({{{1}, {2}, {3}}})));
  CHECK(A.leq(x, A.composition_to_face({{{2}, {1}, {3}}})));
  CHECK_FALSE(A.leq(x, A.composition_to_face({{{3}, {1}, {2}}})));
}

TEST_CASE("products in composition coordinates") {
  const auto W = CoxeterSystem::build(CoxType::A, 3);
  const auto A = Arrangement::build(W);
  const int x = A.composition_to_face({{{1, 2}, {3}}});
  const int y = A.composition_to_face({{{3}, {1}, {2}}});
  CHECK(A.face_to_composition(A.product(x, y)).blocks ==
        std::vector<std::vector<int>>({{1}, {2}, {3}}));

  // The sign-rule product agrees with block refinement everywhere.
  for (int n : {3, 4}) {
    const auto Wn = CoxeterSystem::build(CoxType::A, n);
    const auto An = Arrangement::build(Wn);
    for (int a = 0; a < An.num_faces(); ++a)
      for (int b = 0; b < An.num_faces(); ++b) {
        const auto direct = An.face_to_composition(An.product(a, b));
        const auto refined = compose_product(An.face_to_composition(a),
                                             An.face_to_composition(b));
        CHECK(direct.blocks == refined.blocks);
      }
  }
}

TEST_CASE("witness interpolation matches the sign rule") {
  for (auto [t, n] : {std::pair{CoxType::A, 3}, std::pair{CoxType::B, 2}}) {
    const auto W = CoxeterSystem::build(t, n);
    const auto A = Arrangement::build(W);
    for (int x = 0; x < A.num_faces(); ++x)
      for (int y = 0; y < A.num_faces(); ++y)
        CHECK(A.key_from_point(A.interpolated_witness(x, y)) ==
              A.key(A.product(x, y)));
  }
}

TEST_CASE("fundamental faces and orbits") {
  for (auto [t, n] : {std::pair{CoxType::A, 3}, std::pair{CoxType::A, 4},
                      std::pair{CoxType::B, 2}, std::pair{CoxType::B, 3}}) {
    const auto W = CoxeterSystem::build(t, n);
    const auto A = Arrangement::build(W);

    // c_empty is the base chamber, c_S the identity face.
    const int base = A.fundamental_face(0);
    CHECK(exactly_equal(A.witness(base), W.base_point()));
    CHECK(A.fundamental_face(W.full_gen_set()) == A.identity_face());

    int total = 0;
    const int num_subsets = 1 << W.num_simple();
    for (GenSet J = 0; J < static_cast<GenSet>(num_subsets); ++J) {
      const int cJ = A.fundamental_face(J);
      CHECK(A.orbit_genset(cJ) == J);
      const auto& orbit = A.orbit_faces(J);
      total += static_cast<int>(orbit.size());
      CHECK(std::find(orbit.begin(), orbit.end(), cJ) != orbit.end());
      // exactly one member of the orbit is a face of the base chamber
      int on_base = 0;
      for (int f : orbit) on_base += A.leq(f, base);
      CHECK(on_base == 1);
      CHECK(A.leq(cJ, base));
    }
    CHECK(total == A.num_faces());  // orbits partition the faces
    for (int f = 0; f < A.num_faces(); ++f) {
      const auto& orbit = A.orbit_faces(A.orbit_genset(f));
      CHECK(std::find(orbit.begin(), orbit.end(), f) != orbit.end());
    }
  }

  // Spot check: c_{s1} in A3 averages the base point with its reflection.
  const auto W = CoxeterSystem::build(CoxType::A, 3);
  const auto A = Arrangement::build(W);
  const int c = A.fundamental_face(GenSet(1));
  QVector expect(3);
  expect << Rational(3, 2), Rational(3, 2), 3;
  CHECK(exactly_equal(A.witness(c), expect));
  CHECK(A.face_to_composition(c).blocks ==
        std::vector<std::vector<int>>({{1, 2}, {3}}));
}

TEST_CASE("group action on faces") {
  for (auto [t, n] : {std::pair{CoxType::A, 3}, std::pair{CoxType::B, 2}}) {
    const auto W = CoxeterSystem::build(t, n);
    const auto A = Arrangement::build(W);
    for (int w = 0; w < W.order(); ++w) {
      for (int f = 0; f < A.num_faces(); ++f) {
        // agreement with transported witnesses
        CHECK(A.key(A.act_on_face(w, f)) ==
              A.key_from_point(W.act(w, A.witness(f))));
        // the action preserves orbits
        CHECK(A.orbit_genset(A.act_on_face(w, f)) == A.orbit_genset(f));
        // and is a semigroup homomorphism
        for (int g = f % 4; g < A.num_faces(); g += 5)
          CHECK(A.act_on_face(w, A.product(f, g)) ==
                A.product(A.act_on_face(w, f), A.act_on_face(w, g)));
      }
    }
  }

  // (1 2) applied to the chamber 1|2|3 gives the chamber 2|1|3.
  const auto W = CoxeterSystem::build(CoxType::A, 3);
  const auto A = Arrangement::build(W);
  const int c = A.composition_to_face({{{1}, {2}, {3}}});
  CHECK(A.face_to_composition(A.act_on_face(W.simple(0), c)).blocks ==
        std::vector<std::vector<int>>({{2}, {1}, {3}}));
}

TEST_CASE("set composition codec at larger rank") {
  const auto W = CoxeterSystem::build(CoxType::A, 6);
  const auto A = Arrangement::build(W);
  CHECK(A.num_faces() == 4683);
  const SetComposition sc{{{5}, {1, 3, 4}, {2, 6}}};
  const int f = A.composition_to_face(sc);
  CHECK(A.face_to_composition(f).blocks == sc.blocks);
  // witness sits at levels 1 < 2 < 3 in the block order
  const auto& v = A.witness(f);
  CHECK(v(4) < v(0));
  CHECK(v(0) == v(2));
  CHECK(v(2) == v(3));
  CHECK(v(0) < v(1));
  CHECK(v(1) == v(5));
}
