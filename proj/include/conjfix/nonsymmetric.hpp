#pragma once

#include <cstddef>
#include <vector>

#include "conjfix/fixpoint.hpp"

namespace conjfix {

/// Which of the two one-sided conjugations is meant.
enum class Conjugation { c1, c2 };

/// The conjugate-domination test evaluated three equivalent ways for a
/// possibly non-symmetric coupling: against C1, against C2, and against
/// their pointwise max.  The theory says the three booleans always agree.
struct MembershipEquivalence {
  bool via_c1 = false;
  bool via_c2 = false;
  bool via_max = false;
  bool agree() const noexcept { return via_c1 == via_c2 && via_c2 == via_max; }
};

MembershipEquivalence membership_equivalence(const CouplingMatrix& phi,
                                             const Valuation& h);

/// Minimal dominated valuation below g for a general (possibly
/// non-symmetric) coupling: solve on the symmetrized coupling, then verify
/// the result against the *original* coupling's two conjugates.
struct GeneralMinimalResult {
  FixpointResult fix;          ///< solve on symmetrize(phi) from g
  ExtReal selfconj_residual;   ///< max_r | max{C1 h, C2 h}(r) - h(r) |, original phi
  bool selfconj_ok = false;    ///< residual <= cfg.tolerance
};

/// Preconditions (contract_error): g in the family for the original phi
/// (equivalently for the symmetrized one), sizes matching.  The sandwich in
/// .fix uses lower = max{C1 g, C2 g} and upper = g, both via the original
/// coupling.
GeneralMinimalResult general_minimal(const CouplingMatrix& phi, const Valuation& g,
                                     const DescentConfig& cfg);

/// Checks that a fixed point of one one-sided conjugation is minimal in the
/// family.  Verifies h = C_which h exactly (contract_error otherwise), then
/// reports family membership, whether h is also a fixed point of the
/// symmetrized conjugation (an exact identity in theory *and* in IEEE
/// arithmetic), and a minimality probe on the symmetrized coupling.
struct FixedPointMinimalReport {
  Conjugation which = Conjugation::c1;
  bool in_family = false;
  bool symmetrized_fixed_point = false;  ///< C^sym h == h, bit-exact
  MinimalityReport probe;
};

FixedPointMinimalReport fixed_point_implies_minimal_check(const CouplingMatrix& phi,
                                                          const Valuation& h,
                                                          Conjugation which,
                                                          double epsilon);

/// Subgradient-style certificate at a touching index r0 of a member h:
/// where h(r0) equals phi(r0, r0)/2, both conjugates also touch that value
/// and two families of inequalities bound h from below.
///
/// `applicable` is false when h(r0) sits strictly above the diagonal half
/// (nothing to certify).  h(r0) strictly below it contradicts membership
/// and raises invariant_error.  violations_* list indices r where the
/// corresponding inequality family fails beyond the tolerance:
///   family 1:  h(r0) + [phi(r, r0) - phi(r0, r0)] <= h(r)
///   family 2:  h(r0) + [phi(r0, r) - phi(r0, r0)] <= h(r)
struct SubdiffReport {
  std::size_t r0 = 0;
  bool applicable = false;
  ExtReal value_at_r0;
  ExtReal c1_at_r0;
  ExtReal c2_at_r0;
  std::vector<std::size_t> violations_1;
  std::vector<std::size_t> violations_2;
  bool certified() const noexcept {
    return applicable && violations_1.empty() && violations_2.empty();
  }
};

/// Exact variant: applicability and the inequalities are tested with zero
/// tolerance.  Intended for analytically constructed members.
/// Preconditions (contract_error): h in the family (via is_in_H), r0 in range.
SubdiffReport subdifferential_check(const CouplingMatrix& phi, const Valuation& h,
                                    std::size_t r0);

/// Tolerance variant for solver outputs: h(r0) counts as touching when
/// within tol of phi(r0,r0)/2, and the inequality families may be violated
/// by at most tol.  Default tol = 1e-9 matches the solver default.
SubdiffReport subdifferential_check(const CouplingMatrix& phi, const Valuation& h,
                                    std::size_t r0, double tol);

/// The standing two-point counterexample showing a one-sided conjugation
/// need not admit fixed points: labels {a, b}, table rows [[0, -3], [0, -3]],
/// h = (1, -1).  C1 h = (1, -2) and C2 h = (-1, -1), so max{C1 h, C2 h} = h
/// while h is fixed by neither one-sided conjugation.
struct CounterexampleFixture {
  CouplingMatrix phi;
  Valuation h;
  Valuation expected_c1;
  Valuation expected_c2;
};

CounterexampleFixture counterexample_fixture();

}  // namespace conjfix
