#include "descent/algebra.hpp"

#include <algorithm>
#include <stdexcept>

#include "descent/parallel.hpp"

namespace descent {

FaceAlgebra FaceAlgebra::build(const Lattice& lat, const OrbitPoset& orbits) {
  if (&orbits.lattice() != &lat)
    throw std::invalid_argument("FaceAlgebra: orbit poset built on a different lattice");
  FaceAlgebra A;
  A.lat_ = &lat;
  A.orbits_ = &orbits;
  return A;
}

AlgebraElement FaceAlgebra::multiply(const AlgebraElement& a,
                                     const AlgebraElement& b) const {
  const Arrangement& arr = arrangement();
  std::vector<SparseVec::Term> terms;
  terms.reserve(a.size() * b.size());
  for (const auto& [f, alpha] : a.terms())
    for (const auto& [g, beta] : b.terms())
      terms.emplace_back(arr.product(f, g), alpha * beta);
  return AlgebraElement::from_terms(std::move(terms));
}

AlgebraElement FaceAlgebra::act(int w, const AlgebraElement& a) const {
  const Arrangement& arr = arrangement();
  std::vector<SparseVec::Term> terms;
  terms.reserve(a.size());
  for (const auto& [f, alpha] : a.terms())
    terms.emplace_back(arr.act_on_face(w, f), alpha);
  return AlgebraElement::from_terms(std::move(terms));
}

LatticeElement FaceAlgebra::supp_hom(const AlgebraElement& a) const {
  std::vector<SparseVec::Term> terms;
  terms.reserve(a.size());
  for (const auto& [f, alpha] : a.terms())
    terms.emplace_back(lat_->support(f), alpha);
  return LatticeElement::from_terms(std::move(terms));
}

LatticeElement FaceAlgebra::lattice_multiply(const LatticeElement& a,
                                             const LatticeElement& b) const {
  std::vector<SparseVec::Term> terms;
  terms.reserve(a.size() * b.size());
  for (const auto& [X, alpha] : a.terms())
    for (const auto& [Y, beta] : b.terms())
      terms.emplace_back(lat_->join(X, Y), alpha * beta);
  return LatticeElement::from_terms(std::move(terms));
}

QVector FaceAlgebra::to_dense(const AlgebraElement& a) const {
  QVector v = QVector::Zero(dim());
  for (const auto& [f, alpha] : a.terms()) v(f) = alpha;
  return v;
}

AlgebraElement FaceAlgebra::ell_first(int X) const {
  const auto& faces = lat_->faces_of(X);
  const Rational w(1, static_cast<long>(faces.size()));
  AlgebraElement out;
  for (int f : faces) out.add_term(f, w);
  return out;
}

AlgebraElement FaceAlgebra::ell_second(int X, const std::vector<int>& reps) const {
  const int o = orbits_->orbit_of(X);
  const int rep = reps.at(static_cast<size_t>(o));
  if (orbits_->orbit_of(lat_->support(rep)) != o)
    throw std::invalid_argument(
        "ell_second: representative face is not supported on the flat's orbit");
  const Arrangement& arr = arrangement();
  std::vector<int> hits;
  for (int z : arr.orbit_faces(arr.orbit_genset(rep)))
    if (lat_->support(z) == X) hits.push_back(z);
  const Rational w(1, static_cast<long>(hits.size()));
  AlgebraElement out;
  for (int z : hits) out.add_term(z, w);
  return out;
}

std::vector<int> FaceAlgebra::least_face_reps() const {
  std::vector<int> reps(static_cast<size_t>(orbits_->num_orbits()), -1);
  for (int f = 0; f < dim(); ++f) {
    const int o = orbits_->orbit_of(lat_->support(f));
    if (reps[static_cast<size_t>(o)] < 0) reps[static_cast<size_t>(o)] = f;
  }
  return reps;
}

namespace {

std::vector<int> genset_bits(GenSet J) {
  std::vector<int> bits;
  for (int j = 0; j < 32; ++j)
    if (J & (GenSet(1) << j)) bits.push_back(j);
  return bits;
}

}  // namespace

GenSet FaceAlgebra::least_genset(int orbit) const {
  const Arrangement& arr = arrangement();
  const GenSet all = group().full_gen_set();
  GenSet best = 0;
  std::vector<int> best_bits;
  bool found = false;
  for (GenSet J = 0; J <= all; ++J) {
    if (orbits_->orbit_of(lat_->support(arr.fundamental_face(J))) != orbit) continue;
    auto bits = genset_bits(J);
    if (!found || bits < best_bits) {
      best = J;
      best_bits = std::move(bits);
      found = true;
    }
  }
  if (!found)
    throw std::logic_error("least_genset: orbit not reached by any generator subset");
  return best;
}

std::vector<int> FaceAlgebra::fundamental_reps() const {
  std::vector<int> reps(static_cast<size_t>(orbits_->num_orbits()));
  for (int o = 0; o < orbits_->num_orbits(); ++o)
    reps[static_cast<size_t>(o)] = arrangement().fundamental_face(least_genset(o));
  return reps;
}

IdempotentSystem FaceAlgebra::build_idempotents(EllFamily family,
                                                const std::vector<int>* reps,
                                                bool verify) const {
  std::vector<AlgebraElement> ells(static_cast<size_t>(lat_->num_flats()));
  std::vector<int> defaults;
  if (family == EllFamily::Second && reps == nullptr) {
    defaults = least_face_reps();
    reps = &defaults;
  }
  for (int X = 0; X < lat_->num_flats(); ++X)
    ells[static_cast<size_t>(X)] =
        family == EllFamily::First ? ell_first(X) : ell_second(X, *reps);
  return build_from_ells(ells, family, verify);
}

IdempotentSystem FaceAlgebra::build_from_ells(const std::vector<AlgebraElement>& ells,
                                              EllFamily tag, bool verify) const {
  const int L = lat_->num_flats();
  if (static_cast<int>(ells.size()) != L)
    throw std::invalid_argument("build_from_ells: one element per flat required");
  IdempotentSystem sys;
  sys.family = tag;
  sys.ells = ells;
  sys.e.resize(static_cast<size_t>(L));
  // Flat ids ascend with dimension, so descending id order visits every flat
  // after everything strictly above it.
  for (int X = L - 1; X >= 0; --X) {
    AlgebraElement above;
    for (int Y = X + 1; Y < L; ++Y)
      if (lat_->leq(X, Y)) above += sys.e[static_cast<size_t>(Y)];
    AlgebraElement eX = ells[static_cast<size_t>(X)];
    if (!above.empty()) eX -= multiply(ells[static_cast<size_t>(X)], above);
    sys.e[static_cast<size_t>(X)] = std::move(eX);
  }
  if (verify) {
    sys.checks = verify_system(sys.e);
    if (!sys.checks.all()) {
      std::string what = "idempotent system failed verification:";
      if (!sys.checks.idempotent) what += " idempotency";
      if (!sys.checks.orthogonal) what += " orthogonality";
      if (!sys.checks.sums_to_one) what += " unit-sum";
      if (!sys.checks.equivariant) what += " equivariance";
      throw std::runtime_error(what);
    }
  }
  return sys;
}

SystemChecks FaceAlgebra::verify_system(const std::vector<AlgebraElement>& e) const {
  SystemChecks c;
  const int L = lat_->num_flats();

  AlgebraElement total;
  for (const auto& eX : e) total += eX;
  c.sums_to_one = (total == unit());

  c.idempotent = true;
  for (int X = 0; X < L && c.idempotent; ++X)
    c.idempotent = (multiply(e[static_cast<size_t>(X)], e[static_cast<size_t>(X)]) ==
                    e[static_cast<size_t>(X)]);

  c.orthogonal = true;
  for (int X = 0; X < L && c.orthogonal; ++X)
    for (int Y = 0; Y < L && c.orthogonal; ++Y) {
      if (X == Y) continue;
      c.orthogonal =
          multiply(e[static_cast<size_t>(X)], e[static_cast<size_t>(Y)]).empty();
    }

  c.equivariant = true;
  const int n = group().order();
  for (int w = 0; w < n && c.equivariant; ++w)
    for (int X = 0; X < L && c.equivariant; ++X)
      c.equivariant = (act(w, e[static_cast<size_t>(X)]) ==
                       e[static_cast<size_t>(lat_->act(w, X))]);
  return c;
}

std::vector<LatticeElement> FaceAlgebra::lattice_idempotents() const {
  const int L = lat_->num_flats();
  std::vector<LatticeElement> E(static_cast<size_t>(L));
  for (int X = L - 1; X >= 0; --X) {
    LatticeElement v = LatticeElement::unit(X);
    for (int Y = X + 1; Y < L; ++Y)
      if (lat_->leq(X, Y)) v -= E[static_cast<size_t>(Y)];
    E[static_cast<size_t>(X)] = std::move(v);
  }
  return E;
}

// --- radical filtration -----------------------------------------------------

namespace {

// Converts the sparse rows of a block span back to algebra elements (global
// face ids), in deterministic block-then-row order.
std::vector<AlgebraElement> extract_basis(const Lattice& lat,
                                          const std::map<int, IntRowSpan>& blocks) {
  std::vector<AlgebraElement> basis;
  for (const auto& [Z, span] : blocks) {
    const auto& faces = lat.faces_of(Z);
    for (const auto& row : span.rows()) {
      std::vector<SparseVec::Term> terms;
      terms.reserve(row.size());
      for (const auto& [local, val] : row)
        terms.emplace_back(faces[static_cast<size_t>(local)], Rational(val));
      basis.push_back(AlgebraElement::from_terms(std::move(terms)));
    }
  }
  return basis;
}

}  // namespace

RadicalFiltration RadicalFiltration::build(const FaceAlgebra& A, int up_to,
                                           int workers) {
  if (up_to < 1) throw std::invalid_argument("RadicalFiltration: up_to must be >= 1");
  const Lattice& lat = A.lattice();
  RadicalFiltration filt;
  filt.algebra_ = &A;

  // rad^1: differences of faces sharing a support.
  Power first;
  for (int Z = 0; Z < lat.num_flats(); ++Z) {
    const auto& faces = lat.faces_of(Z);
    const int n = static_cast<int>(faces.size());
    if (n < 2) continue;
    IntRowSpan span(n);
    for (int i = 1; i < n; ++i)
      span.insert(IntRow{{0, mpz_class(-1)}, {i, mpz_class(1)}});
    first.blocks.emplace(Z, std::move(span));
  }
  first.basis = extract_basis(lat, first.blocks);
  filt.powers_.push_back(std::move(first));
  if (filt.powers_.back().basis.empty()) {
    filt.loewy_ = 1;
    return filt;
  }

  for (int p = 2; p <= up_to; ++p) {
    const auto& prev = filt.powers_[static_cast<size_t>(p - 2)].basis;
    const auto& gens = filt.powers_[0].basis;
    const long pairs = static_cast<long>(prev.size()) * static_cast<long>(gens.size());

    Power next;
    for (const auto& [Z, span] : filt.powers_[static_cast<size_t>(p - 2)].blocks)
      next.blocks.emplace(Z, IntRowSpan(span.cols()));
    // blocks for joins not present in the previous power are created on demand

    const long chunk = 1 << 14;
    std::vector<IntRow> rows(static_cast<size_t>(std::min(pairs, chunk)));
    std::vector<int> target(rows.size());
    for (long start = 0; start < pairs; start += chunk) {
      const int count = static_cast<int>(std::min(chunk, pairs - start));
      parallel_for(count, workers, [&](int i) {
        const long idx = start + i;
        const AlgebraElement prod =
            A.multiply(prev[static_cast<size_t>(idx / static_cast<long>(gens.size()))],
                       gens[static_cast<size_t>(idx % static_cast<long>(gens.size()))]);
        if (prod.empty()) {
          target[static_cast<size_t>(i)] = -1;
          return;
        }
        const int Z = lat.support(prod.terms().front().first);
        std::vector<std::pair<int, Rational>> local;
        local.reserve(prod.size());
        for (const auto& [f, c] : prod.terms()) {
          if (lat.support(f) != Z)
            throw std::logic_error("radical generator is not support-homogeneous");
          local.emplace_back(lat.local_index(f), c);
        }
        rows[static_cast<size_t>(i)] = int_row_from(local);
        target[static_cast<size_t>(i)] = Z;
      });
      for (int i = 0; i < count; ++i) {
        if (target[static_cast<size_t>(i)] < 0) continue;
        auto [it, created] = next.blocks.try_emplace(
            target[static_cast<size_t>(i)],
            static_cast<int>(lat.faces_of(target[static_cast<size_t>(i)]).size()));
        it->second.insert(std::move(rows[static_cast<size_t>(i)]));
      }
    }
    std::erase_if(next.blocks,
                  [](const auto& kv) { return kv.second.rank() == 0; });
    next.basis = extract_basis(lat, next.blocks);
    const bool vanished = next.basis.empty();
    filt.powers_.push_back(std::move(next));
    if (vanished) {
      filt.loewy_ = p;
      break;
    }
  }
  return filt;
}

const RadicalFiltration::Power& RadicalFiltration::power(int p) const {
  if (p < 1 || p > max_power())
    throw std::out_of_range("RadicalFiltration: power not computed");
  return powers_[static_cast<size_t>(p - 1)];
}

Index RadicalFiltration::dim(int p) const {
  if (p > max_power() && loewy_ >= 0 && p >= loewy_) return 0;
  return static_cast<Index>(power(p).basis.size());
}

const std::vector<AlgebraElement>& RadicalFiltration::basis(int p) const {
  return power(p).basis;
}

AlgebraElement RadicalFiltration::residue(int p, const AlgebraElement& a) const {
  if (a.empty()) return a;
  if (p > max_power() && loewy_ >= 0 && p >= loewy_) return a;  // rad^p = 0
  const Power& pow = power(p);
  const Lattice& lat = algebra_->lattice();
  std::map<int, std::map<int, Rational>> components;  // flat -> local -> coeff
  for (const auto& [f, c] : a.terms())
    components[lat.support(f)][lat.local_index(f)] = c;
  AlgebraElement out;
  for (const auto& [Z, comp] : components) {
    const auto& faces = lat.faces_of(Z);
    std::vector<Rational> v(faces.size());
    for (const auto& [i, c] : comp) v[static_cast<size_t>(i)] = c;
    const auto it = pow.blocks.find(Z);
    if (it != pow.blocks.end()) {
      // rows are mutually reduced with strictly increasing leads, so one pass
      // over them eliminates every representable coordinate
      for (const IntRow& row : it->second.rows()) {
        const size_t lead = static_cast<size_t>(row.front().first);
        if (v[lead].is_zero()) continue;
        const Rational f = v[lead] / Rational(row.front().second);
        for (const auto& [pos, val] : row)
          v[static_cast<size_t>(pos)] -= f * Rational(val);
      }
    }
    for (size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) out.add_term(faces[i], v[i]);
  }
  return out;
}

bool RadicalFiltration::contains(int p, const AlgebraElement& a) const {
  if (a.empty()) return true;
  if (p > max_power() && loewy_ >= 0 && p >= loewy_) return false;
  const Power& pow = power(p);
  const Lattice& lat = algebra_->lattice();
  // split into support-homogeneous components; each must lie in its block
  std::map<int, std::vector<std::pair<int, Rational>>> components;
  for (const auto& [f, c] : a.terms())
    components[lat.support(f)].emplace_back(lat.local_index(f), c);
  for (auto& [Z, local] : components) {
    const auto it = pow.blocks.find(Z);
    if (it == pow.blocks.end()) return false;
    std::sort(local.begin(), local.end());
    if (!it->second.contains(int_row_from(local))) return false;
  }
  return true;
}

}  // namespace descent
