#include "conjfix/conjugation.hpp"

#include "conjfix/errors.hpp"

namespace conjfix {

namespace {
void require_sized(const CouplingMatrix& phi, const Valuation& h, const char* op) {
  if (h.size() != phi.size())
    throw contract_error(std::string(op) + ": valuation size " + std::to_string(h.size()) +
                         " does not match coupling size " + std::to_string(phi.size()));
}
}  // namespace

Valuation conjugate1(const CouplingMatrix& phi, const Valuation& h) {
  require_sized(phi, h, "conjugate1");
  const std::size_t n = phi.size();
  std::vector<ExtReal> out(n, ExtReal::neg_inf());
  // Row-major accumulation: for fixed r, fold phi(r, s) - h(r) into every
  // output s.  Equivalent to the per-output max over r, term order fixed.
  for (std::size_t r = 0; r < n; ++r) {
    const ExtReal hr = h[r];
    for (std::size_t s = 0; s < n; ++s) out[s] = max(out[s], conj_term(phi.at(r, s), hr));
  }
  return Valuation(std::move(out));
}

Valuation conjugate2(const CouplingMatrix& phi, const Valuation& h) {
  require_sized(phi, h, "conjugate2");
  const std::size_t n = phi.size();
  std::vector<ExtReal> out;
  out.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    ExtReal best = ExtReal::neg_inf();
    for (std::size_t s = 0; s < n; ++s) best = max(best, conj_term(phi.at(r, s), h[s]));
    out.push_back(best);
  }
  return Valuation(std::move(out));
}

Valuation sym_conjugate(const CouplingMatrix& phi, const Valuation& h) {
  if (!phi.symmetric())
    throw contract_error("sym_conjugate: coupling is not symmetric");
  return conjugate1(phi, h);
}

Valuation indicator(std::size_t n, const std::vector<std::size_t>& support, ExtReal offset) {
  if (offset.is_neg_inf())
    throw contract_error("indicator: offset must be finite or +inf");
  Valuation out = Valuation::top(n);
  for (std::size_t r : support) {
    if (r >= n)
      throw contract_error("indicator: support index " + std::to_string(r) +
                           " out of range for size " + std::to_string(n));
    out[r] = offset;
  }
  return out;
}

MembershipReport is_in_H(const CouplingMatrix& phi, const Valuation& h) {
  require_sized(phi, h, "is_in_H");
  Valuation c = conjugate1(phi, h);
  MembershipReport rep;
  rep.member = true;
  for (std::size_t r = 0; r < h.size(); ++r) {
    if (c[r] > h[r]) {
      rep.member = false;
      rep.first_violation = r;
      break;
    }
  }
  return rep;
}

Valuation diag_halves(const CouplingMatrix& phi) {
  std::vector<ExtReal> out;
  out.reserve(phi.size());
  for (std::size_t r = 0; r < phi.size(); ++r) out.push_back(ExtReal(phi.at(r, r) / 2));
  return Valuation(std::move(out));
}

}  // namespace conjfix
