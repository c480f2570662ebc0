#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>

#include "descent/descent_algebra.hpp"
#include "descent/invariant.hpp"

using namespace descent;

namespace {

struct Setup {
  CoxeterSystem W;
  Arrangement arr;
  Lattice lat;
  OrbitPoset orbits;
  FaceAlgebra alg;
  InvariantAlgebra inv;
};

std::unique_ptr<Setup> make_setup(CoxType t, int n) {
  auto s = std::make_unique<Setup>();
  s->W = CoxeterSystem::build(t, n);
  s->arr = Arrangement::build(s->W);
  s->lat = Lattice::build(s->arr);
  s->orbits = OrbitPoset::build(s->lat);
  s->alg = FaceAlgebra::build(s->lat, s->orbits);
  s->inv = InvariantAlgebra::build(s->alg);
  return s;
}

QVector random_coords(std::mt19937& rng, int dim) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  QVector c(dim);
  for (Index i = 0; i < dim; ++i) c(i) = Rational(coeff(rng));
  return c;
}

}  // namespace

TEST_CASE("orbit sums form a basis of the invariant subalgebra") {
  for (auto [t, n, d] : {std::tuple{CoxType::A, 4, 8}, std::tuple{CoxType::B, 2, 4},
                         std::tuple{CoxType::B, 3, 8}}) {
    auto s = make_setup(t, n);
    const InvariantAlgebra& inv = s->inv;
    CHECK(inv.dim() == d);
    long faces = 0;
    for (GenSet J = 0; J < static_cast<GenSet>(d); ++J) {
      const AlgebraElement& sum = inv.orbit_sum(J);
      faces += static_cast<long>(sum.size());
      for (const auto& [f, c] : sum.terms()) CHECK(c == Rational(1));
      // coordinates of a basis element are a unit vector
      const QVector coords = inv.to_coords(sum);
      for (Index M = 0; M < inv.dim(); ++M)
        CHECK(coords(M) == (M == static_cast<Index>(J) ? Rational(1) : Rational(0)));
      CHECK(inv.from_coords(coords) == sum);
    }
    CHECK(faces == s->alg.dim());  // the orbits partition the faces
    CHECK(exactly_equal(inv.to_coords(s->alg.unit()), inv.unit_coords()));
  }
}

TEST_CASE("coordinate validation rejects non-invariant elements") {
  auto s = make_setup(CoxType::A, 3);
  // a lone chamber is not constant on the chamber orbit
  const int chamber = s->arr.chambers().front();
  CHECK_THROWS_AS(s->inv.to_coords(AlgebraElement::unit(chamber)),
                  std::invalid_argument);
  CHECK_THROWS_AS(s->inv.from_coords(QVector::Zero(3)), std::invalid_argument);
}

TEST_CASE("coordinate products match face-side products") {
  for (auto [t, n] : {std::pair{CoxType::A, 4}, std::pair{CoxType::B, 3}}) {
    auto s = make_setup(t, n);
    const InvariantAlgebra& inv = s->inv;
    std::mt19937 rng(5151);
    for (int trial = 0; trial < 20; ++trial) {
      const QVector a = random_coords(rng, inv.dim());
      const QVector b = random_coords(rng, inv.dim());
      const AlgebraElement fa = inv.from_coords(a);
      const AlgebraElement fb = inv.from_coords(b);
      CHECK(exactly_equal(inv.multiply(a, b),
                          inv.to_coords(s->alg.multiply(fa, fb))));
    }
    // identity behaves as the unit in coordinates
    const QVector one = inv.unit_coords();
    const QVector a = random_coords(rng, inv.dim());
    CHECK(exactly_equal(inv.multiply(one, a), a));
    CHECK(exactly_equal(inv.multiply(a, one), a));
  }
}

TEST_CASE("group averaging projects onto the invariants") {
  auto s = make_setup(CoxType::B, 2);
  const InvariantAlgebra& inv = s->inv;
  std::mt19937 rng(777);
  std::uniform_int_distribution<int> face(0, s->alg.dim() - 1);
  std::uniform_int_distribution<int> coeff(-4, 4);
  for (int trial = 0; trial < 30; ++trial) {
    AlgebraElement a;
    for (int i = 0; i < 5; ++i) a.add_term(face(rng), Rational(coeff(rng)));
    const QVector avg = inv.reynolds_coords(a);
    // averaging an invariant is the identity
    CHECK(exactly_equal(inv.reynolds_coords(inv.from_coords(avg)), avg));
    // the average agrees with the brute-force group average
    AlgebraElement brute;
    for (int w = 0; w < s->W.order(); ++w) brute += s->alg.act(w, a);
    brute = Rational(1, s->W.order()) * brute;
    CHECK(exactly_equal(inv.to_coords(brute), avg));
  }
  // invariant elements are fixed points of the projection
  const QVector c = random_coords(rng, inv.dim());
  CHECK(exactly_equal(inv.reynolds_coords(inv.from_coords(c)), c));
}

TEST_CASE("invariant multiplication table is worker-independent") {
  auto s = make_setup(CoxType::B, 2);
  const InvariantAlgebra wide = InvariantAlgebra::build(s->alg, 4);
  for (GenSet J = 0; J < static_cast<GenSet>(s->inv.dim()); ++J)
    for (GenSet K = 0; K < static_cast<GenSet>(s->inv.dim()); ++K)
      CHECK(exactly_equal(s->inv.table(J, K), wide.table(J, K)));
}

TEST_CASE("structure constants are nonnegative integers") {
  for (auto [t, n] : {std::pair{CoxType::A, 4}, std::pair{CoxType::B, 3}}) {
    auto s = make_setup(t, n);
    for (GenSet J = 0; J < static_cast<GenSet>(s->inv.dim()); ++J)
      for (GenSet K = 0; K < static_cast<GenSet>(s->inv.dim()); ++K) {
        const QVector& row = s->inv.table(J, K);
        for (Index M = 0; M < s->inv.dim(); ++M) {
          CHECK(row(M).is_integer());
          CHECK(row(M).sign() >= 0);
        }
      }
  }
}

TEST_CASE("radical dimensions and nilpotency degrees match known values") {
  for (auto [t, n, rad_dim, loewy] :
       {std::tuple{CoxType::A, 3, 1, 2}, std::tuple{CoxType::A, 4, 3, 3},
        std::tuple{CoxType::B, 2, 0, 1}, std::tuple{CoxType::B, 3, 1, 2}}) {
    auto s = make_setup(t, n);
    CAPTURE(type_name(t));
    CAPTURE(n);
    const auto powers = s->inv.radical_filtration(s->inv.dim() + 1);
    CHECK(powers.front().rows() == rad_dim);
    CHECK(s->inv.loewy_length() == loewy);
    // strict descent down to zero
    for (size_t p = 1; p < powers.size(); ++p) {
      if (powers[p - 1].rows() == 0) break;
      CHECK(powers[p].rows() < powers[p - 1].rows());
    }
    // the unit escapes the radical
    if (powers.front().rows() > 0) {
      std::vector<QVector> rows;
      for (Index i = 0; i < powers.front().rows(); ++i)
        rows.push_back(powers.front().row(i).transpose());
      CHECK(!span_contains(rows, s->inv.unit_coords()));
    }
  }
}

TEST_CASE("invariant radical equals the group-averaged face radical") {
  // type A: the m-th invariant radical power meets the same power of the face
  // radical; type B: it meets the (2m)-th power.
  for (auto [t, n, stretch] :
       {std::tuple{CoxType::A, 3, 1}, std::tuple{CoxType::A, 4, 1},
        std::tuple{CoxType::B, 2, 2}, std::tuple{CoxType::B, 3, 2}}) {
    auto s = make_setup(t, n);
    CAPTURE(type_name(t));
    CAPTURE(n);
    const InvariantAlgebra& inv = s->inv;
    const int max_m = 3;
    RadicalFiltration filt =
        RadicalFiltration::build(s->alg, stretch * max_m + 1);
    const auto sigma = inv.radical_filtration(max_m);
    for (int m = 1; m <= max_m; ++m) {
      const int face_power = stretch * m;
      const QMatrix& sig =
          sigma[static_cast<size_t>(std::min<size_t>(m, sigma.size()) - 1)];
      const Index sig_dim =
          static_cast<size_t>(m) <= sigma.size() ? sig.rows() : 0;
      // dimension of the invariant part of the face radical power
      std::vector<QVector> averaged;
      if (face_power <= filt.max_power())
        for (const auto& b : filt.basis(face_power))
          averaged.push_back(inv.reynolds_coords(b));
      CHECK(span_rank(averaged) == sig_dim);
      // membership both ways
      if (static_cast<size_t>(m) <= sigma.size())
        for (Index i = 0; i < sig.rows(); ++i) {
          const bool inside =
              face_power <= filt.max_power()
                  ? filt.contains(face_power,
                                  inv.from_coords(sig.row(i).transpose()))
                  : false;
          CHECK(inside);
        }
      for (const auto& r : averaged) {
        std::vector<QVector> rows;
        for (Index i = 0; i < sig.rows(); ++i)
          rows.push_back(sig.row(i).transpose());
        CHECK(span_contains(rows, r));
      }
    }
  }
}

TEST_CASE("primitive idempotents of the invariant algebra") {
  for (auto [t, n] : {std::pair{CoxType::A, 3}, std::pair{CoxType::A, 4},
                      std::pair{CoxType::B, 2}, std::pair{CoxType::B, 3}}) {
    auto s = make_setup(t, n);
    CAPTURE(type_name(t));
    CAPTURE(n);
    const InvariantAlgebra& inv = s->inv;
    const auto eps = inv.idempotents_recursive();
    CHECK(static_cast<int>(eps.size()) == s->orbits.num_orbits());

    // orbit-summing the matched face-side system gives the same family
    const auto reps = s->alg.fundamental_reps();
    const IdempotentSystem matched =
        s->alg.build_idempotents(EllFamily::Second, &reps);
    const auto via_sum = inv.idempotents_via_sum(matched);
    REQUIRE(via_sum.size() == eps.size());
    for (size_t o = 0; o < eps.size(); ++o)
      CHECK(exactly_equal(eps[o], via_sum[o]));

    // orbit-summing the uniform system gives a valid family as well
    const auto uniform =
        inv.idempotents_via_sum(s->alg.build_idempotents(EllFamily::First));
    QVector total = QVector::Zero(inv.dim());
    for (const auto& e : uniform) total += e;
    CHECK(exactly_equal(total, inv.unit_coords()));
    for (size_t o = 0; o < uniform.size(); ++o)
      for (size_t p = 0; p < uniform.size(); ++p) {
        const QVector prod = inv.multiply(uniform[o], uniform[p]);
        if (o == p)
          CHECK(exactly_equal(prod, uniform[o]));
        else
          CHECK(is_zero_vector(prod));
      }
  }
}

TEST_CASE("descent basis elements count cosets and expand to unit vectors") {
  for (auto [t, n] : {std::pair{CoxType::A, 4}, std::pair{CoxType::B, 3}}) {
    auto s = make_setup(t, n);
    const DescentAlgebra D = DescentAlgebra::build(s->W);
    CHECK(D.dim() == s->inv.dim());
    // the full subset gives the identity, the empty one the whole group
    CHECK(D.basis_element(s->W.full_gen_set()) == D.unit());
    CHECK(D.basis_element(0).size() == static_cast<size_t>(s->W.order()));
    for (GenSet J = 0; J < static_cast<GenSet>(D.dim()); ++J) {
      CHECK(D.basis_element(J).size() * s->W.subgroup(J).size() ==
            static_cast<size_t>(s->W.order()));
      const QVector coords = D.expand(D.basis_element(J));
      for (Index M = 0; M < D.dim(); ++M)
        CHECK(coords(M) == (M == static_cast<Index>(J) ? Rational(1) : Rational(0)));
    }
    // a lone reflection lies outside the descent algebra
    CHECK_THROWS_AS(D.expand(SparseVec::unit(s->W.simple(0))),
                    std::invalid_argument);
  }
}

TEST_CASE("orbit sums multiply opposite to the descent basis") {
  for (auto [t, n] : {std::pair{CoxType::A, 3}, std::pair{CoxType::A, 4},
                      std::pair{CoxType::B, 2}, std::pair{CoxType::B, 3}}) {
    auto s = make_setup(t, n);
    const DescentAlgebra D = DescentAlgebra::build(s->W);
    CAPTURE(type_name(t));
    CAPTURE(n);
    for (GenSet J = 0; J < static_cast<GenSet>(D.dim()); ++J)
      for (GenSet K = 0; K < static_cast<GenSet>(D.dim()); ++K) {
        const QVector lhs = D.expand(
            D.multiply(D.basis_element(K), D.basis_element(J)));
        CHECK(exactly_equal(lhs, s->inv.table(J, K)));
      }
  }
}

TEST_CASE("parabolic conjugacy classes mirror the flat orbits") {
  for (auto [t, n] : {std::pair{CoxType::A, 4}, std::pair{CoxType::B, 3}}) {
    auto s = make_setup(t, n);
    const DescentAlgebra D = DescentAlgebra::build(s->W);
    CHECK(static_cast<int>(D.genset_classes().size()) == s->orbits.num_orbits());
    // the class of J determines and is determined by the orbit of its flat
    std::map<int, int> class_to_orbit;
    for (GenSet J = 0; J < static_cast<GenSet>(D.dim()); ++J) {
      const int orbit =
          s->orbits.orbit_of(s->lat.support(s->arr.fundamental_face(J)));
      const auto [it, fresh] = class_to_orbit.emplace(D.class_of(J), orbit);
      CHECK(it->second == orbit);
    }
    std::set<int> hit;
    for (const auto& [c, o] : class_to_orbit) hit.insert(o);
    CHECK(static_cast<int>(hit.size()) == s->orbits.num_orbits());
  }
}

TEST_CASE("orbit face counts equal normalizer indices") {
  for (auto [t, n] : {std::pair{CoxType::A, 3}, std::pair{CoxType::A, 4},
                      std::pair{CoxType::B, 2}, std::pair{CoxType::B, 3}}) {
    auto s = make_setup(t, n);
    const DescentAlgebra D = DescentAlgebra::build(s->W);
    for (int o = 0; o < s->orbits.num_orbits(); ++o)
      CHECK(s->inv.orbit_face_count(o) ==
            D.normalizer_index(s->inv.orbit_genset(o)));
  }
}

TEST_CASE("descent idempotents mirror the invariant ones") {
  for (auto [t, n] : {std::pair{CoxType::A, 3}, std::pair{CoxType::A, 4},
                      std::pair{CoxType::B, 2}, std::pair{CoxType::B, 3}}) {
    auto s = make_setup(t, n);
    const DescentAlgebra D = DescentAlgebra::build(s->W);
    const auto mirrored = D.idempotents(s->inv);   // throws unless the axioms hold
    const auto eps = s->inv.idempotents_recursive();
    REQUIRE(mirrored.size() == eps.size());
    for (size_t o = 0; o < eps.size(); ++o) {
      // push the invariant idempotent through the basis correspondence
      SparseVec image;
      for (GenSet J = 0; J < static_cast<GenSet>(D.dim()); ++J) {
        const Rational& c = eps[o](static_cast<Index>(J));
        if (!c.is_zero()) image += c * D.basis_element(J);
      }
      CHECK(image == mirrored[o]);
    }
  }
}
