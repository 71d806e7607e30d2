#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "conjfix/coupling.hpp"
#include "conjfix/valuation.hpp"

namespace conjfix {

/// First conjugate: (C1 h)(s) = max_r [ phi(r, s) - h(r) ].
/// The max runs over the whole (non-empty) index set; terms follow the
/// extended-real subtraction convention of conj_term.
Valuation conjugate1(const CouplingMatrix& phi, const Valuation& h);

/// Second conjugate: (C2 h)(r) = max_s [ phi(r, s) - h(s) ].
Valuation conjugate2(const CouplingMatrix& phi, const Valuation& h);

/// Conjugation for a symmetric coupling, where the two conjugates coincide.
/// Precondition: phi.symmetric().
Valuation sym_conjugate(const CouplingMatrix& phi, const Valuation& h);

/// Indicator-style valuation: `offset` on `support`, +inf elsewhere.
/// `offset` must not be -inf; support indices must be in range (duplicates
/// are harmless).  An empty support gives the identically +inf valuation.
Valuation indicator(std::size_t n, const std::vector<std::size_t>& support,
                    ExtReal offset);

/// Outcome of the conjugate-domination test C1 h <= h.
struct MembershipReport {
  bool member = false;
  /// First index where (C1 h)(r) > h(r), when not a member.
  std::optional<std::size_t> first_violation;
};

/// Does h dominate its own first conjugate (componentwise, exactly)?
/// This family is the solver's working set: descent steps must stay inside
/// it.  A valuation with any -inf entry is never a member (its conjugate is
/// identically +inf).
MembershipReport is_in_H(const CouplingMatrix& phi, const Valuation& h);

/// The valuation r -> phi(r, r) / 2.  Every member of the family tested by
/// is_in_H dominates this lower envelope componentwise; the solver's t0
/// clamp and the minimality probe both lean on it.
Valuation diag_halves(const CouplingMatrix& phi);

}  // namespace conjfix
