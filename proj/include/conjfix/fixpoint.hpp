#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "conjfix/conjugation.hpp"

namespace conjfix {

/// Which index to lower when several have a positive gap h - C h.
enum class SelectionRule {
  max_gap,      ///< the index with the largest gap, ties to the lowest index
  first_index,  ///< the lowest index with a strictly positive gap
};

struct DescentConfig {
  double tolerance = 1e-9;  ///< stop once max gap <= tolerance
  int max_sweeps = 1000;    ///< budget of single-index updates
  SelectionRule rule = SelectionRule::max_gap;
  bool record_trace = false;
};

/// One recorded update: during sweep `sweep` the value at `index` was
/// lowered to `t0`; `gap_before` is the gap at that index that triggered it.
struct TraceRow {
  int sweep = 0;
  std::size_t index = 0;
  double t0 = 0.0;
  ExtReal gap_before;
};

/// Componentwise bracket lower <= h <= upper checked after a solve, with the
/// worst signed excesses (positive excess = violation).
struct SandwichCheck {
  Valuation lower;
  Valuation upper;
  ExtReal worst_lower_excess;  ///< max_r [ lower(r) - h(r) ]
  ExtReal worst_upper_excess;  ///< max_r [ h(r) - upper(r) ]
  bool lower_holds = false;    ///< worst_lower_excess <= tolerance
  bool upper_holds = false;    ///< worst_upper_excess <= tolerance
};

struct FixpointResult {
  Valuation h;
  ExtReal final_gap;  ///< max_r [ h(r) - C h(r) ] at termination
  int sweeps_used = 0;
  bool converged = false;
  /// Termination with final_gap exactly zero, reported separately from
  /// epsilon-termination (the descent usually closes gaps bit-exactly).
  bool exact_fixed_point = false;
  std::optional<std::vector<TraceRow>> trace;
  std::optional<SandwichCheck> sandwich;
};

/// One descent update at index r0 for a symmetric coupling: replaces h(r0)
/// by t0 = max( C h(r0), phi(r0, r0) / 2 ), the lowest value that keeps the
/// result inside the conjugate-dominated family.
///
/// Preconditions (contract_error): phi symmetric, h in the family, and a
/// strictly positive gap at r0 (C h(r0) < h(r0)).
Valuation descent_step(const CouplingMatrix& phi, const Valuation& h, std::size_t r0);

/// Greedy descent from a member g of the conjugate-dominated family down to
/// a self-conjugate valuation (C h = h).  Each sweep recomputes the
/// conjugate and lowers one index chosen by cfg.rule; iteration stops when
/// the largest gap is <= cfg.tolerance or the update budget is exhausted.
///
/// The result's sandwich records C g <= h <= g against the *starting*
/// valuation.  Output is minimal in the family below g in the exact theory;
/// use minimality_probe for a numerical certificate.
///
/// Preconditions (contract_error): phi symmetric, g in the family,
/// dimensions match, tolerance >= 0, max_sweeps >= 1.
FixpointResult solve_fixpoint(const CouplingMatrix& phi, const Valuation& g,
                              const DescentConfig& cfg);

/// Self-conjugate point dominating an arbitrary start g0 from below.  Sets
/// g = C g0, requires g <= C g (componentwise, exactly), then solves from
/// C g downward; the sandwich records g <= h <= C g.
///
/// Preconditions (contract_error): phi symmetric, g0 sized to phi, and the
/// g <= C g domination above.
FixpointResult solve_from_below(const CouplingMatrix& phi, const Valuation& g0,
                                const DescentConfig& cfg);

/// Result of the finite minimality certificate: lowering h at any single
/// finite coordinate by epsilon must leave the conjugate-dominated family.
struct MinimalityReport {
  double epsilon = 0.0;
  std::size_t indices_checked = 0;  ///< finite coordinates probed
  /// Indices where the lowered valuation stayed in the family — minimality
  /// failures.  Empty means certified minimal at scale epsilon.
  std::vector<std::size_t> failures;
  bool passed() const noexcept { return failures.empty(); }
};

/// Probe minimality of a (numerical) fixed point h of the symmetric
/// conjugation: for every finite coordinate r, check that h with h(r)
/// lowered by epsilon is no longer dominated by its conjugate.
///
/// Preconditions (contract_error): phi symmetric, epsilon > 0, and
/// max_r |h(r) - C h(r)| <= epsilon (h must already be a fixed point to
/// within the probe scale).
MinimalityReport minimality_probe(const CouplingMatrix& phi, const Valuation& h,
                                  double epsilon);

/// max_r | C C C h (r) - C h (r) | for a symmetric coupling — the triple
/// conjugate must reproduce the single conjugate.  Equal infinities count
/// as agreement.  Precondition: phi symmetric.
ExtReal triple_conjugate_residual(const CouplingMatrix& phi, const Valuation& h);

}  // namespace conjfix
