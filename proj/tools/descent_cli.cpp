// Command-line driver: enumerates faces and flats, builds idempotent
// systems, computes quivers (numerically or in closed form), and runs the
// verification battery.  Data artifacts go to stdout or --output; progress
// and diagnostics go to stderr.  Output is deterministic: reruns with any
// worker count produce identical bytes.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "descent/checks.hpp"
#include "descent/graph_io.hpp"
#include "descent/invariant.hpp"
#include "descent/parallel.hpp"
#include "descent/quiver.hpp"

using namespace descent;
using nlohmann::ordered_json;

namespace {

struct RunConfig {
  std::string type = "A";      // reflection group family
  int rank = 0;                // rank within the family
  std::string ell = "first";   // which normalized-sum family seeds e_X
  std::string format;          // dot | json | text (default per command)
  std::string level = "full";  // verify battery level
  bool reverse = false;        // emit the opposite-orientation quiver
  bool allow_large = false;    // override the rank guardrail
  std::string output;          // artifact file; empty means stdout
  int workers = 0;             // 0 = hardware concurrency
};

CoxType cox_type(const RunConfig& cfg) {
  return cfg.type == "A" ? CoxType::A : CoxType::B;
}

EllFamily ell_family(const RunConfig& cfg) {
  return cfg.ell == "first" ? EllFamily::First : EllFamily::Second;
}

// Largest rank each command family accepts without --allow-large.
int compute_cap(CoxType t) { return t == CoxType::A ? 6 : 4; }
int verify_cap(CoxType t, VerifyLevel lv) {
  if (lv == VerifyLevel::Fast) return t == CoxType::A ? 5 : 3;
  return compute_cap(t);
}

bool guard_rank(const RunConfig& cfg, int cap, const std::string& what) {
  if (cfg.rank <= cap || cfg.allow_large) return true;
  std::cerr << "refusing " << what << " for type " << cfg.type << " rank "
            << cfg.rank << " (guardrail: rank <= " << cap
            << "); pass --allow-large to override\n";
  return false;
}

int emit(const std::string& data, const RunConfig& cfg) {
  if (cfg.output.empty()) {
    std::cout << data;
    return std::cout.good() ? 0 : 1;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open output file: " << cfg.output << "\n";
    return 2;
  }
  out << data;
  out.close();
  if (!out.good()) {
    std::cerr << "failed writing output file: " << cfg.output << "\n";
    return 1;
  }
  return 0;
}

int emit_graph(const QuiverGraph& graph, const RunConfig& cfg,
               const std::string& dot_name) {
  const QuiverGraph g = cfg.reverse ? graph.reversed() : graph;
  std::string data;
  if (cfg.format == "dot")
    data = quiver_dot(g, dot_name);
  else if (cfg.format == "json")
    data = quiver_json(g);
  else
    data = quiver_text(g);
  return emit(data, cfg);
}

// Shared geometric context, built once per invocation.
struct Context {
  CoxeterSystem W;
  Arrangement arr;
  Lattice lat;
  OrbitPoset orbits;
  FaceAlgebra alg;
};

std::unique_ptr<Context> build_context(const RunConfig& cfg) {
  std::cerr << "building arrangement for type " << cfg.type << " rank "
            << cfg.rank << "\n";
  auto c = std::make_unique<Context>();
  c->W = CoxeterSystem::build(cox_type(cfg), cfg.rank);
  c->arr = Arrangement::build(c->W);
  c->lat = Lattice::build(c->arr);
  c->orbits = OrbitPoset::build(c->lat);
  c->alg = FaceAlgebra::build(c->lat, c->orbits);
  std::cerr << "faces: " << c->arr.num_faces()
            << "  flats: " << c->lat.num_flats() << "\n";
  return c;
}

IdempotentSystem build_system(const Context& c, const RunConfig& cfg) {
  std::cerr << "building the " << cfg.ell << "-family idempotent system\n";
  if (ell_family(cfg) == EllFamily::Second) {
    const auto reps = c.alg.fundamental_reps();
    return c.alg.build_idempotents(EllFamily::Second, &reps);
  }
  return c.alg.build_idempotents(EllFamily::First);
}

std::string orbit_label(const Context& c, int flat) {
  return c.orbits.label(c.orbits.orbit_of(flat)).label();
}

int run_faces(const RunConfig& cfg) {
  if (!guard_rank(cfg, compute_cap(cox_type(cfg)), "face enumeration"))
    return 2;
  const auto c = build_context(cfg);
  if (cfg.format == "json") {
    ordered_json j;
    j["type"] = cfg.type;
    j["rank"] = cfg.rank;
    j["num_faces"] = c->arr.num_faces();
    j["num_flats"] = c->lat.num_flats();
    j["num_chambers"] = c->arr.chambers().size();
    j["faces"] = ordered_json::array();
    for (int f = 0; f < c->arr.num_faces(); ++f) {
      ordered_json e;
      e["id"] = f;
      e["signs"] = c->arr.signs_string(f);
      e["support"] = c->lat.support(f);
      if (cox_type(cfg) == CoxType::A) {
        e["blocks"] = c->arr.face_to_composition(f).blocks;
      } else {
        const SignedComposition sc = c->arr.face_to_signed_composition(f);
        e["zero"] = sc.zero;
        e["blocks"] = sc.blocks;
      }
      j["faces"].push_back(std::move(e));
    }
    return emit(j.dump(2) + "\n", cfg);
  }
  std::ostringstream os;
  os << "type " << cfg.type << " rank " << cfg.rank << ": "
     << c->arr.num_faces() << " faces, " << c->lat.num_flats() << " flats, "
     << c->arr.chambers().size() << " chambers\n";
  for (int o = 0; o < c->orbits.num_orbits(); ++o) {
    const auto& members = c->orbits.members(o);
    const size_t each = c->lat.faces_of(members.front()).size();
    os << "orbit " << c->orbits.label(o).label() << ": flats=" << members.size()
       << " faces-each=" << each << "\n";
  }
  return emit(os.str(), cfg);
}

int run_lattice(const RunConfig& cfg) {
  if (!guard_rank(cfg, compute_cap(cox_type(cfg)), "lattice enumeration"))
    return 2;
  const auto c = build_context(cfg);
  if (cfg.format == "json") {
    ordered_json j;
    j["type"] = cfg.type;
    j["rank"] = cfg.rank;
    j["num_flats"] = c->lat.num_flats();
    j["min_flat"] = c->lat.min_flat();
    j["top_flat"] = c->lat.top_flat();
    j["flats"] = ordered_json::array();
    for (int X = 0; X < c->lat.num_flats(); ++X) {
      ordered_json e;
      e["id"] = X;
      e["orbit"] = orbit_label(*c, X);
      e["num_faces"] = c->lat.faces_of(X).size();
      e["mobius_from_bottom"] = c->lat.mobius(c->lat.min_flat(), X);
      e["lower_covers"] = c->lat.lower_covers(X);
      j["flats"].push_back(std::move(e));
    }
    return emit(j.dump(2) + "\n", cfg);
  }
  std::ostringstream os;
  os << "type " << cfg.type << " rank " << cfg.rank << ": "
     << c->lat.num_flats() << " flats in " << c->orbits.num_orbits()
     << " orbits\n";
  for (int o = 0; o < c->orbits.num_orbits(); ++o) {
    const auto& members = c->orbits.members(o);
    const int rep = members.front();
    os << "orbit " << c->orbits.label(o).label() << ": flats=" << members.size()
       << " faces-each=" << c->lat.faces_of(rep).size()
       << " mobius=" << c->lat.mobius(c->lat.min_flat(), rep) << "\n";
  }
  return emit(os.str(), cfg);
}

int run_idempotents(const RunConfig& cfg) {
  if (!guard_rank(cfg, compute_cap(cox_type(cfg)), "idempotent construction"))
    return 2;
  const auto c = build_context(cfg);
  const IdempotentSystem sys = build_system(*c, cfg);
  if (cfg.format == "json") {
    ordered_json j;
    j["type"] = cfg.type;
    j["rank"] = cfg.rank;
    j["family"] = family_name(sys.family);
    j["checks"] = {{"idempotent", sys.checks.idempotent},
                   {"orthogonal", sys.checks.orthogonal},
                   {"sums_to_one", sys.checks.sums_to_one},
                   {"equivariant", sys.checks.equivariant}};
    j["idempotents"] = ordered_json::array();
    for (int X = 0; X < c->lat.num_flats(); ++X) {
      ordered_json e;
      e["flat"] = X;
      e["orbit"] = orbit_label(*c, X);
      e["terms"] = ordered_json::array();
      for (const auto& [f, coeff] : sys.e[static_cast<size_t>(X)].terms())
        e["terms"].push_back(ordered_json::array({f, coeff.to_string()}));
      j["idempotents"].push_back(std::move(e));
    }
    return emit(j.dump(2) + "\n", cfg);
  }
  std::ostringstream os;
  os << "type " << cfg.type << " rank " << cfg.rank << ", " << cfg.ell
     << " family: " << c->lat.num_flats() << " primitive orthogonal idempotents\n"
     << "axioms verified: idempotent=" << (sys.checks.idempotent ? "yes" : "no")
     << " orthogonal=" << (sys.checks.orthogonal ? "yes" : "no")
     << " sums-to-one=" << (sys.checks.sums_to_one ? "yes" : "no")
     << " equivariant=" << (sys.checks.equivariant ? "yes" : "no") << "\n";
  for (int X = 0; X < c->lat.num_flats(); ++X)
    os << "e[" << X << "] orbit=" << orbit_label(*c, X)
       << " support-faces=" << c->lat.faces_of(X).size()
       << " terms=" << sys.e[static_cast<size_t>(X)].size() << "\n";
  return emit(os.str(), cfg);
}

int run_quiver_kf(const RunConfig& cfg) {
  if (!guard_rank(cfg, compute_cap(cox_type(cfg)), "face-algebra quiver"))
    return 2;
  const auto c = build_context(cfg);
  const IdempotentSystem sys = build_system(*c, cfg);
  std::cerr << "computing corner dimensions\n";
  const QuiverGraph g =
      quiver_of_kf_numeric(c->alg, sys, resolve_workers(cfg.workers));
  return emit_graph(g, cfg, "faces_" + cfg.type + std::to_string(cfg.rank));
}

int run_quiver_descent(const RunConfig& cfg) {
  if (!guard_rank(cfg, compute_cap(cox_type(cfg)), "invariant quiver"))
    return 2;
  const auto c = build_context(cfg);
  std::cerr << "building the invariant subalgebra\n";
  const InvariantAlgebra inv =
      InvariantAlgebra::build(c->alg, resolve_workers(cfg.workers));
  std::cerr << "computing the quiver from radical layers\n";
  const QuiverGraph g = quiver_of_invariant_numeric(inv);
  return emit_graph(g, cfg, "descent_" + cfg.type + std::to_string(cfg.rank));
}

int run_closed_form(const RunConfig& cfg) {
  const QuiverGraph g = cox_type(cfg) == CoxType::A
                            ? closed_form_quiver_A(cfg.rank)
                            : closed_form_quiver_B(cfg.rank);
  return emit_graph(g, cfg, "descent_" + cfg.type + std::to_string(cfg.rank));
}

int run_verify(const RunConfig& cfg) {
  const VerifyLevel level = parse_level(cfg.level);
  if (!guard_rank(cfg, verify_cap(cox_type(cfg), level),
                  "verification at level " + cfg.level))
    return 2;
  std::cerr << "verifying type " << cfg.type << " rank " << cfg.rank
            << " at level " << cfg.level << "\n";
  const CheckReport rep = run_checks(
      cox_type(cfg), cfg.rank, level, resolve_workers(cfg.workers),
      [](const CheckResult& r) {
        std::cerr << (r.passed ? "pass" : "FAIL") << " " << r.name << " ("
                  << r.detail << ")\n";
      });
  std::string data;
  if (cfg.format == "text") {
    std::ostringstream os;
    for (const CheckResult& r : rep.results)
      os << (r.passed ? "PASS" : "FAIL") << " " << r.name << " — " << r.detail
         << "\n";
    for (const std::string& name : rep.skipped)
      os << "SKIP " << name << " — beyond the scope cap at this rank\n";
    os << (rep.all_passed() ? "all checks passed" : "verification FAILED")
       << "\n";
    data = os.str();
  } else {
    ordered_json j;
    j["type"] = cfg.type;
    j["rank"] = cfg.rank;
    j["level"] = level_name(rep.level);
    j["checks"] = ordered_json::array();
    for (const CheckResult& r : rep.results)
      j["checks"].push_back(ordered_json{
          {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    j["skipped"] = rep.skipped;
    j["all_passed"] = rep.all_passed();
    data = j.dump(2) + "\n";
  }
  const int rc = emit(data, cfg);
  if (rc != 0) return rc;
  return rep.all_passed() ? 0 : 1;
}

void add_common(CLI::App* cmd, RunConfig& cfg, const std::string& format_default) {
  cmd->add_option("--type,-t", cfg.type, "reflection group family")
      ->check(CLI::IsMember({"A", "B"}))
      ->required();
  cmd->add_option("--rank,-n", cfg.rank, "rank within the family")
      ->check(CLI::PositiveNumber)
      ->required();
  cfg.format = format_default;
  cmd->add_option("--format,-f", cfg.format, "output format")
      ->check(CLI::IsMember({"dot", "json", "text"}))
      ->capture_default_str();
  cmd->add_option("--output,-o", cfg.output,
                  "write the artifact to this file instead of stdout");
  cmd->add_option("--workers,-j", cfg.workers,
                  "worker threads (0 = hardware concurrency)")
      ->check(CLI::NonNegativeNumber)
      ->envname("DESCENT_WORKERS");
}

void add_guardrail(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_flag("--allow-large", cfg.allow_large,
                "override the rank guardrail");
}

void add_ell(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--ell", cfg.ell, "normalized-sum family seeding e_X")
      ->check(CLI::IsMember({"first", "second"}))
      ->capture_default_str();
}

void add_reverse(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_flag("--reverse", cfg.reverse,
                "emit the opposite orientation (one arrow per radical "
                "composition instead of the pictured convention)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact computations in the face semigroup algebra of a reflection "
      "arrangement and its invariant (descent) subalgebra"};
  app.require_subcommand(1);
  // one config per subcommand so per-command defaults stay independent
  RunConfig cfg_faces, cfg_lattice, cfg_idem, cfg_qkf, cfg_qdesc, cfg_closed,
      cfg_verify;

  CLI::App* faces =
      app.add_subcommand("faces", "enumerate the faces of the arrangement");
  add_common(faces, cfg_faces, "text");
  add_guardrail(faces, cfg_faces);

  CLI::App* lattice =
      app.add_subcommand("lattice", "enumerate the intersection lattice");
  add_common(lattice, cfg_lattice, "text");
  add_guardrail(lattice, cfg_lattice);

  CLI::App* idem = app.add_subcommand(
      "idempotents", "build a complete system of primitive orthogonal "
                     "idempotents of the face algebra");
  add_common(idem, cfg_idem, "text");
  add_guardrail(idem, cfg_idem);
  add_ell(idem, cfg_idem);

  CLI::App* qkf = app.add_subcommand(
      "quiver-kf", "compute the quiver of the face algebra numerically");
  add_common(qkf, cfg_qkf, "dot");
  add_guardrail(qkf, cfg_qkf);
  add_ell(qkf, cfg_qkf);
  add_reverse(qkf, cfg_qkf);

  CLI::App* qdesc = app.add_subcommand(
      "quiver-descent",
      "compute the quiver of the invariant subalgebra numerically");
  add_common(qdesc, cfg_qdesc, "dot");
  add_guardrail(qdesc, cfg_qdesc);
  add_reverse(qdesc, cfg_qdesc);

  CLI::App* closed = app.add_subcommand(
      "closed-form", "emit the closed-form quiver of the invariant "
                     "subalgebra (any rank, no computation)");
  add_common(closed, cfg_closed, "dot");
  add_reverse(closed, cfg_closed);

  CLI::App* verify = app.add_subcommand(
      "verify", "run the verification battery and report the results");
  add_common(verify, cfg_verify, "json");
  add_guardrail(verify, cfg_verify);
  verify->add_option("--level,-l", cfg_verify.level, "battery level")
      ->check(CLI::IsMember({"fast", "full", "extended"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (faces->parsed()) return run_faces(cfg_faces);
    if (lattice->parsed()) return run_lattice(cfg_lattice);
    if (idem->parsed()) return run_idempotents(cfg_idem);
    if (qkf->parsed()) return run_quiver_kf(cfg_qkf);
    if (qdesc->parsed()) return run_quiver_descent(cfg_qdesc);
    if (closed->parsed()) return run_closed_form(cfg_closed);
    if (verify->parsed()) return run_verify(cfg_verify);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
