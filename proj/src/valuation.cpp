#include "conjfix/valuation.hpp"

#include "conjfix/errors.hpp"

namespace conjfix {

namespace {
void require_same_size(const Valuation& a, const Valuation& b, const char* op) {
  if (a.size() != b.size())
    throw contract_error(std::string(op) + ": valuation sizes differ (" +
                         std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
}
}  // namespace

bool leq(const Valuation& a, const Valuation& b) {
  require_same_size(a, b, "leq");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] <= b[i])) return false;
  return true;
}

Valuation pointwise_max(const Valuation& a, const Valuation& b) {
  require_same_size(a, b, "pointwise_max");
  std::vector<ExtReal> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(max(a[i], b[i]));
  return Valuation(std::move(out));
}

Valuation pointwise_min(const Valuation& a, const Valuation& b) {
  require_same_size(a, b, "pointwise_min");
  std::vector<ExtReal> out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(min(a[i], b[i]));
  return Valuation(std::move(out));
}

ExtReal max_diff(const Valuation& a, const Valuation& b) {
  require_same_size(a, b, "max_diff");
  ExtReal worst = ExtReal::neg_inf();
  for (std::size_t i = 0; i < a.size(); ++i) worst = max(worst, diff_or_zero(a[i], b[i]));
  return worst;
}

ExtReal max_abs_diff(const Valuation& a, const Valuation& b) {
  require_same_size(a, b, "max_abs_diff");
  ExtReal worst = ExtReal(0.0);
  for (std::size_t i = 0; i < a.size(); ++i) worst = max(worst, abs_diff(a[i], b[i]));
  return worst;
}

}  // namespace conjfix
