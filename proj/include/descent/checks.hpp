#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "descent/algebra.hpp"
#include "descent/invariant.hpp"

// Named verification checks over one (type, rank) pair.  Each check is a
// self-contained pass/fail unit with a one-line detail string; exceptions
// raised while checking are turned into failures, never propagated.  The
// battery selected by a verify level is the union of every check whose scope
// cap admits the requested rank, so the same registry drives both the
// command-line verifier and the acceptance suite.

namespace descent {

enum class VerifyLevel { Fast, Full, Extended };

std::string level_name(VerifyLevel level);
// Parses "fast" / "full" / "extended"; throws std::invalid_argument otherwise.
VerifyLevel parse_level(const std::string& text);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Shared per-(type, rank) state: the engine objects plus lazily built
// idempotent systems and the invariant subalgebra.  Non-copyable because the
// members hold pointers into one another; create through make_check_context.
struct CheckContext {
  CoxType type = CoxType::A;
  int rank = 0;
  int workers = 1;

  CoxeterSystem W;
  Arrangement arr;
  Lattice lat;
  OrbitPoset orbits;
  FaceAlgebra alg;

  CheckContext() = default;
  CheckContext(const CheckContext&) = delete;
  CheckContext& operator=(const CheckContext&) = delete;

  const IdempotentSystem& system(EllFamily family);
  const InvariantAlgebra& invariant();

 private:
  std::optional<IdempotentSystem> sys_first_;
  std::optional<IdempotentSystem> sys_second_;
  std::optional<InvariantAlgebra> inv_;
};

std::unique_ptr<CheckContext> make_check_context(CoxType type, int rank,
                                                 int workers);

// The individual checks.  Scope caps (the largest rank each is meant for)
// live in the registry consulted by run_checks; calling one directly at a
// larger rank is allowed but may be very slow.
CheckResult check_counts(CheckContext& ctx);
CheckResult check_closed_form_structure(CheckContext& ctx);
CheckResult check_idempotent_axioms(CheckContext& ctx);
CheckResult check_support_annihilation(CheckContext& ctx);
CheckResult check_moebius_corners(CheckContext& ctx);
CheckResult check_descent_mirror(CheckContext& ctx);
CheckResult check_phi_suite(CheckContext& ctx, EllFamily family);
CheckResult check_kf_quiver(CheckContext& ctx);
CheckResult check_descent_quiver(CheckContext& ctx);
CheckResult check_radical_match(CheckContext& ctx);
CheckResult check_structural(CheckContext& ctx);

struct CheckReport {
  CoxType type = CoxType::A;
  int rank = 0;
  VerifyLevel level = VerifyLevel::Fast;
  std::vector<CheckResult> results;
  std::vector<std::string> skipped;  // in the level but beyond their rank cap
  bool all_passed() const;
};

// Runs the battery for the level at this rank, skipping checks whose scope
// cap the rank exceeds.  Deterministic for fixed inputs; workers only splits
// independent work.  on_result, when set, fires after each check finishes
// (progress reporting); it must not throw.
CheckReport run_checks(
    CoxType type, int rank, VerifyLevel level, int workers,
    const std::function<void(const CheckResult&)>& on_result = {});

}  // namespace descent
