#include "conjfix/nonsymmetric.hpp"

#include "conjfix/errors.hpp"

namespace conjfix {

namespace {
void require_sized(const CouplingMatrix& phi, const Valuation& h, const char* op) {
  if (h.size() != phi.size())
    throw contract_error(std::string(op) + ": valuation size " + std::to_string(h.size()) +
                         " does not match coupling size " + std::to_string(phi.size()));
}

bool dominated(const Valuation& c, const Valuation& h) {
  for (std::size_t r = 0; r < h.size(); ++r)
    if (c[r] > h[r]) return false;
  return true;
}
}  // namespace

MembershipEquivalence membership_equivalence(const CouplingMatrix& phi, const Valuation& h) {
  require_sized(phi, h, "membership_equivalence");
  Valuation c1 = conjugate1(phi, h);
  Valuation c2 = conjugate2(phi, h);
  MembershipEquivalence eq;
  eq.via_c1 = dominated(c1, h);
  eq.via_c2 = dominated(c2, h);
  eq.via_max = dominated(pointwise_max(c1, c2), h);
  return eq;
}

GeneralMinimalResult general_minimal(const CouplingMatrix& phi, const Valuation& g,
                                     const DescentConfig& cfg) {
  require_sized(phi, g, "general_minimal");
  {
    MembershipReport m = is_in_H(phi, g);
    if (!m.member)
      throw contract_error("general_minimal: start is not dominated by its conjugate (index " +
                           std::to_string(*m.first_violation) + ")");
  }

  GeneralMinimalResult out{solve_fixpoint(symmetrize(phi), g, cfg), ExtReal(0.0), false};

  // Verify against the original coupling: the solved h must be fixed by the
  // pointwise max of the two one-sided conjugates.
  Valuation m = pointwise_max(conjugate1(phi, out.fix.h), conjugate2(phi, out.fix.h));
  out.selfconj_residual = max_abs_diff(m, out.fix.h);
  out.selfconj_ok = out.selfconj_residual <= ExtReal(cfg.tolerance);

  // Bracket against the start via the original coupling's conjugates.
  Valuation lower = pointwise_max(conjugate1(phi, g), conjugate2(phi, g));
  SandwichCheck s;
  s.lower = lower;
  s.upper = g;
  s.worst_lower_excess = max_diff(lower, out.fix.h);
  s.worst_upper_excess = max_diff(out.fix.h, g);
  s.lower_holds = s.worst_lower_excess <= ExtReal(cfg.tolerance);
  s.upper_holds = s.worst_upper_excess <= ExtReal(cfg.tolerance);
  out.fix.sandwich = s;
  return out;
}

FixedPointMinimalReport fixed_point_implies_minimal_check(const CouplingMatrix& phi,
                                                          const Valuation& h,
                                                          Conjugation which, double epsilon) {
  require_sized(phi, h, "fixed_point_implies_minimal_check");
  Valuation c = which == Conjugation::c1 ? conjugate1(phi, h) : conjugate2(phi, h);
  if (!(c == h)) {
    std::size_t r = 0;
    while (c[r] == h[r]) ++r;
    throw contract_error("fixed_point_implies_minimal_check: h is not a fixed point of the "
                         "chosen conjugation (index " + std::to_string(r) + ")");
  }

  FixedPointMinimalReport rep;
  rep.which = which;
  rep.in_family = is_in_H(phi, h).member;

  CouplingMatrix phi_sym = symmetrize(phi);
  rep.symmetrized_fixed_point = sym_conjugate(phi_sym, h) == h;
  rep.probe = minimality_probe(phi_sym, h, epsilon);
  return rep;
}

namespace {
SubdiffReport subdiff_impl(const CouplingMatrix& phi, const Valuation& h, std::size_t r0,
                           double tol) {
  if (r0 >= phi.size())
    throw contract_error("subdifferential_check: index " + std::to_string(r0) +
                         " out of range for size " + std::to_string(phi.size()));
  {
    MembershipReport m = is_in_H(phi, h);
    if (!m.member)
      throw contract_error("subdifferential_check: h is not dominated by its conjugate "
                           "(index " + std::to_string(*m.first_violation) + ")");
  }

  SubdiffReport rep;
  rep.r0 = r0;
  rep.value_at_r0 = h[r0];

  const ExtReal half(phi.at(r0, r0) / 2);
  if (h[r0] < ExtReal(half.raw() - tol))
    throw invariant_error("subdifferential_check: member value below half the diagonal at "
                          "index " + std::to_string(r0));
  rep.applicable = abs_diff(h[r0], half) <= ExtReal(tol);
  if (!rep.applicable) return rep;

  rep.c1_at_r0 = conjugate1(phi, h)[r0];
  rep.c2_at_r0 = conjugate2(phi, h)[r0];
  if (abs_diff(rep.c1_at_r0, half) > ExtReal(tol) || abs_diff(rep.c2_at_r0, half) > ExtReal(tol))
    throw invariant_error("subdifferential_check: conjugates do not touch half the diagonal "
                          "at index " + std::to_string(r0));

  // Both subgradient inequality families, anchored at the touching index.
  const double h0 = h[r0].raw();
  const double d0 = phi.at(r0, r0);
  for (std::size_t r = 0; r < phi.size(); ++r) {
    ExtReal bound1(h0 + (phi.at(r, r0) - d0));
    ExtReal bound2(h0 + (phi.at(r0, r) - d0));
    if (diff_or_zero(bound1, h[r]) > ExtReal(tol)) rep.violations_1.push_back(r);
    if (diff_or_zero(bound2, h[r]) > ExtReal(tol)) rep.violations_2.push_back(r);
  }
  return rep;
}
}  // namespace

SubdiffReport subdifferential_check(const CouplingMatrix& phi, const Valuation& h,
                                    std::size_t r0) {
  return subdiff_impl(phi, h, r0, 0.0);
}

SubdiffReport subdifferential_check(const CouplingMatrix& phi, const Valuation& h,
                                    std::size_t r0, double tol) {
  if (!(tol >= 0.0)) throw contract_error("subdifferential_check: tol must be >= 0");
  return subdiff_impl(phi, h, r0, tol);
}

CounterexampleFixture counterexample_fixture() {
  return CounterexampleFixture{
      CouplingMatrix::from_rows({"a", "b"}, {{0.0, -3.0}, {0.0, -3.0}}),
      Valuation::of({1.0, -1.0}),
      Valuation::of({1.0, -2.0}),
      Valuation::of({-1.0, -1.0}),
  };
}

}  // namespace conjfix
