#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "conjfix/coupling.hpp"
#include "conjfix/valuation.hpp"

namespace conjfix {

/// Randomized checks of the library's structural identities: conjugation is
/// order-reversing, double conjugation is a lower bound, the three
/// membership tests agree, the symmetrized conjugate is the pointwise max
/// of the one-sided ones, membership is the same for a coupling and its
/// symmetrization, triple conjugation collapses, members dominate the
/// half-diagonal (strictly when strictly dominated), and touching members
/// satisfy both subgradient inequality families.
///
/// Generated values are dyadic rationals (plus ±inf entries), so all
/// conjugation arithmetic is exact and every check runs at zero tolerance.
struct PropertySuiteConfig {
  std::uint64_t cases = 1000;
  std::uint64_t seed = 42;
  std::size_t max_n = 16;
  /// Test-only fault injection: flips the comparison in the double-
  /// conjugation bound so the suite must report failures.  Exists to prove
  /// the harness can fail; never set outside tests.
  bool inject_comparison_bug = false;
};

struct PropertyResult {
  std::string name;
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  /// Minimized first counterexample (null when the property held).
  nlohmann::ordered_json first_counterexample = nullptr;
};

struct SuiteResult {
  std::vector<PropertyResult> properties;
  bool all_passed() const noexcept {
    for (const auto& p : properties)
      if (p.failures != 0) return false;
    return true;
  }
  std::uint64_t total_failures() const noexcept {
    std::uint64_t t = 0;
    for (const auto& p : properties) t += p.failures;
    return t;
  }
};

SuiteResult run_property_suite(const PropertySuiteConfig& cfg);

/// Deterministic JSON rendering of a suite result (stable key order), used
/// by reports and by the determinism tests.
nlohmann::ordered_json suite_result_to_json(const SuiteResult& r);

}  // namespace conjfix
