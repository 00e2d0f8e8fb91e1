#pragma once

/**
 * Registry of the library's verification identities: each record names a
 * relation between harmonic-weighted sums, nested polylogarithms, and
 * polylogarithm products that the evaluators can check numerically at
 * chosen parameters, either one case at a time or as a seeded random sweep.
 *
 * Where the source display of an identity is believed to carry a
 * transcription defect, the registry default evaluates the corrected
 * reading and keeps the verbatim reading available as an alternate; a
 * failing check reports the residual under both readings so defects
 * localize instead of hiding.
 */

#include <map>
#include <string>
#include <vector>

#include "esum/common.hpp"
#include "esum/unit_param.hpp"

namespace esum {

struct IdentityRecord {
  std::string id;        ///< stable registry key, e.g. "thm-3.1"
  std::string title;     ///< what the relation does
  int depth = 1;         ///< number of harmonic factors on the deep side
  std::vector<std::string> int_params;   ///< required integer parameters
  std::vector<std::string> unit_params;  ///< required disk/circle parameters
  bool has_alternate = false;  ///< a verbatim alternate reading exists
  std::vector<std::string> notes;  ///< reading choices and open questions
};

/// All records, fixed order; exactly the identities this library verifies.
const std::vector<IdentityRecord>& identity_registry();

/// Lookup by id; null when absent.
const IdentityRecord* find_identity(const std::string& id);

/// Parameter bundle for one check: integers and unit-disk arguments by name.
struct IdentityParams {
  std::map<std::string, long long> ints;
  std::map<std::string, UnitParam> units;
};

struct IdentityCheck {
  std::string id;
  ValueWithError lhs;
  ValueWithError rhs;
  double abs_diff = 0.0;
  double tol_used = 0.0;
  bool pass = false;
  /// Residual under the verbatim alternate reading; negative when not
  /// evaluated (no alternate, or the primary reading already passed).
  double alt_abs_diff = -1.0;
  unsigned long long terms_used = 0;
  std::vector<std::string> notes;
  /// Parameters echoed back in deterministic order, for reports.
  std::string params_echo;
};

/**
 * Evaluates both sides of the identity at the given parameters.
 * By default the tolerance ladder applies (1e-5 when any parameter lies on
 * the unit circle or the relation is inherently a unit-circle statement,
 * 1e-8 for interior-only) and pass means
 * |lhs - rhs| <= tol + lhs.err + rhs.err. tol_override > 0 pins the whole
 * envelope instead: pass means |lhs - rhs| <= tol_override exactly, with
 * no error cushion.
 * Violated preconditions raise a domain error naming the clause, e.g.
 * "(q, x y) = (1, 1)". When the primary reading fails and a verbatim
 * alternate exists, the alternate residual is evaluated and reported.
 */
IdentityCheck check_identity(const std::string& id,
                             const IdentityParams& params,
                             const EvalConfig& cfg = {},
                             double tol_override = 0.0);

struct SweepResult {
  std::string id;
  unsigned long long seed = 0;
  int requested = 0;
  int ran = 0;
  int passed = 0;
  unsigned long long terms_used = 0;
  std::vector<IdentityCheck> cases;
};

/**
 * Seeded random sweep: `count` admissible parameter draws (re-drawing on
 * domain violations, capped at 10000 attempts), each checked with the
 * tolerance ladder. Same seed, same library build => identical draws and
 * verdicts; a warm value cache changes terms_used only.
 */
SweepResult sweep_identity(const std::string& id, unsigned long long seed,
                           int count, const EvalConfig& cfg = {});

}  // namespace esum
