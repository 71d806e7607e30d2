#include "conjfix/fixpoint.hpp"

#include <limits>

#include "conjfix/errors.hpp"

namespace conjfix {

namespace {

void require_symmetric(const CouplingMatrix& phi, const char* op) {
  if (!phi.symmetric()) throw contract_error(std::string(op) + ": coupling is not symmetric");
}

void require_sized(const CouplingMatrix& phi, const Valuation& h, const char* op) {
  if (h.size() != phi.size())
    throw contract_error(std::string(op) + ": valuation size " + std::to_string(h.size()) +
                         " does not match coupling size " + std::to_string(phi.size()));
}

/// The descent target at r0: the lowest replacement value that keeps the
/// valuation dominated by its conjugate.  conj_r0 = C h (r0) may be -inf
/// (e.g. from the identically +inf start); the diagonal clamp keeps t0
/// finite.  It can never be +inf because the gap at r0 is strictly positive.
double descent_target(const CouplingMatrix& phi, ExtReal conj_r0, std::size_t r0) {
  return max(conj_r0, ExtReal(phi.at(r0, r0) / 2)).finite_value();
}

/// Index selection for one sweep.  Returns n when no index has a strictly
/// positive gap.
std::size_t select_index(const Valuation& h, const Valuation& conj, SelectionRule rule) {
  const std::size_t n = h.size();
  std::size_t pick = n;
  ExtReal best_gap = ExtReal::neg_inf();
  for (std::size_t r = 0; r < n; ++r) {
    ExtReal gap = diff_or_zero(h[r], conj[r]);
    if (!(gap > ExtReal(0.0))) continue;
    if (rule == SelectionRule::first_index) return r;
    if (gap > best_gap) {  // strict: ties stay with the lowest index
      best_gap = gap;
      pick = r;
    }
  }
  return pick;
}

SandwichCheck make_sandwich(const Valuation& lower, const Valuation& upper,
                            const Valuation& h, double tolerance) {
  SandwichCheck s;
  s.lower = lower;
  s.upper = upper;
  s.worst_lower_excess = max_diff(lower, h);
  s.worst_upper_excess = max_diff(h, upper);
  s.lower_holds = s.worst_lower_excess <= ExtReal(tolerance);
  s.upper_holds = s.worst_upper_excess <= ExtReal(tolerance);
  return s;
}

void require_config(const DescentConfig& cfg, const char* op) {
  if (!(cfg.tolerance >= 0.0))
    throw contract_error(std::string(op) + ": tolerance must be >= 0");
  if (cfg.max_sweeps < 1)
    throw contract_error(std::string(op) + ": max_sweeps must be >= 1");
}

}  // namespace

Valuation descent_step(const CouplingMatrix& phi, const Valuation& h, std::size_t r0) {
  require_symmetric(phi, "descent_step");
  require_sized(phi, h, "descent_step");
  if (r0 >= h.size())
    throw contract_error("descent_step: index " + std::to_string(r0) +
                         " out of range for size " + std::to_string(h.size()));
  Valuation conj = conjugate1(phi, h);
  for (std::size_t r = 0; r < h.size(); ++r)
    if (conj[r] > h[r])
      throw contract_error("descent_step: input is not dominated by its conjugate (index " +
                           std::to_string(r) + ")");
  if (!(conj[r0] < h[r0]))
    throw contract_error("descent_step: no strict gap at index " + std::to_string(r0));
  Valuation out = h;
  out[r0] = ExtReal(descent_target(phi, conj[r0], r0));
  return out;
}

FixpointResult solve_fixpoint(const CouplingMatrix& phi, const Valuation& g,
                              const DescentConfig& cfg) {
  require_symmetric(phi, "solve_fixpoint");
  require_sized(phi, g, "solve_fixpoint");
  require_config(cfg, "solve_fixpoint");
  {
    MembershipReport m = is_in_H(phi, g);
    if (!m.member)
      throw contract_error("solve_fixpoint: start is not dominated by its conjugate (index " +
                           std::to_string(*m.first_violation) + ")");
  }

  FixpointResult res;
  res.h = g;
  if (cfg.record_trace) res.trace.emplace();

  const ExtReal tol(cfg.tolerance);
  while (true) {
    Valuation conj = conjugate1(phi, res.h);
    res.final_gap = max_diff(res.h, conj);
    if (res.final_gap <= tol) {
      res.converged = true;
      res.exact_fixed_point = max_abs_diff(res.h, conj) == ExtReal(0.0);
      break;
    }
    if (res.sweeps_used >= cfg.max_sweeps) {
      res.converged = false;
      break;
    }
    std::size_t r0 = select_index(res.h, conj, cfg.rule);
    if (r0 >= res.h.size())  // final_gap > tol >= 0 means a strict gap exists
      throw invariant_error("solve_fixpoint: positive gap but no index selected");
    ++res.sweeps_used;
    double t0 = descent_target(phi, conj[r0], r0);
    if (res.trace)
      res.trace->push_back({res.sweeps_used, r0, t0, diff_or_zero(res.h[r0], conj[r0])});
    res.h[r0] = ExtReal(t0);
  }

  res.sandwich = make_sandwich(conjugate1(phi, g), g, res.h, cfg.tolerance);
  return res;
}

FixpointResult solve_from_below(const CouplingMatrix& phi, const Valuation& g0,
                                const DescentConfig& cfg) {
  require_symmetric(phi, "solve_from_below");
  require_sized(phi, g0, "solve_from_below");
  require_config(cfg, "solve_from_below");

  Valuation g = conjugate1(phi, g0);
  Valuation cg = conjugate1(phi, g);
  if (!leq(g, cg)) {
    for (std::size_t r = 0; r < g.size(); ++r)
      if (!(g[r] <= cg[r]))
        throw contract_error(
            "solve_from_below: conjugate of the start is not dominated by its own "
            "conjugate (index " + std::to_string(r) + ")");
  }

  // cg = C C g0 is dominated by its conjugate (conjugation is
  // order-reversing, applied to g <= C g), so it is a valid descent start.
  FixpointResult res = solve_fixpoint(phi, cg, cfg);
  // Report the from-below bracket g <= h <= C g instead of the inner
  // solve's (C cg, cg) bracket.
  res.sandwich = make_sandwich(g, cg, res.h, cfg.tolerance);
  return res;
}

MinimalityReport minimality_probe(const CouplingMatrix& phi, const Valuation& h,
                                  double epsilon) {
  require_symmetric(phi, "minimality_probe");
  require_sized(phi, h, "minimality_probe");
  if (!(epsilon > 0.0)) throw contract_error("minimality_probe: epsilon must be > 0");

  ExtReal residual = max_abs_diff(h, conjugate1(phi, h));
  if (!(residual <= ExtReal(epsilon)))
    throw contract_error("minimality_probe: input is not a fixed point to within epsilon "
                         "(residual " + std::to_string(residual.raw()) + ")");

  MinimalityReport rep;
  rep.epsilon = epsilon;
  Valuation lowered = h;
  for (std::size_t r = 0; r < h.size(); ++r) {
    if (!h[r].finite()) continue;
    ++rep.indices_checked;
    lowered[r] = ExtReal(h[r].raw() - epsilon);
    if (is_in_H(phi, lowered).member) rep.failures.push_back(r);
    lowered[r] = h[r];
  }
  return rep;
}

ExtReal triple_conjugate_residual(const CouplingMatrix& phi, const Valuation& h) {
  require_symmetric(phi, "triple_conjugate_residual");
  require_sized(phi, h, "triple_conjugate_residual");
  Valuation c1 = conjugate1(phi, h);
  Valuation c3 = conjugate1(phi, conjugate1(phi, c1));
  return max_abs_diff(c3, c1);
}

}  // namespace conjfix
