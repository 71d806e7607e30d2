#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "conjfix/ext_real.hpp"

namespace conjfix {

/// A function on a finite index set with values in the extended reals.
/// Thin wrapper over a vector<ExtReal>; all the structure lives in the free
/// functions below.
class Valuation {
 public:
  Valuation() = default;
  explicit Valuation(std::vector<ExtReal> values) : values_(std::move(values)) {}
  Valuation(std::initializer_list<ExtReal> values) : values_(values) {}

  /// All indices set to the same value.
  static Valuation constant(std::size_t n, ExtReal c) {
    return Valuation(std::vector<ExtReal>(n, c));
  }

  /// The identically +infinite valuation (the default solver start).
  static Valuation top(std::size_t n) { return constant(n, ExtReal::pos_inf()); }

  /// Convenience: build from plain doubles (±inf allowed, NaN rejected).
  static Valuation of(const std::vector<double>& values) {
    std::vector<ExtReal> v;
    v.reserve(values.size());
    for (double x : values) v.push_back(ExtReal(x));
    return Valuation(std::move(v));
  }

  std::size_t size() const noexcept { return values_.size(); }
  ExtReal operator[](std::size_t i) const { return values_[i]; }
  ExtReal& operator[](std::size_t i) { return values_[i]; }

  auto begin() const noexcept { return values_.begin(); }
  auto end() const noexcept { return values_.end(); }

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.values_ == b.values_;
  }

 private:
  std::vector<ExtReal> values_;
};

/// Componentwise a <= b.  Sizes must match.
bool leq(const Valuation& a, const Valuation& b);

/// Componentwise max.
Valuation pointwise_max(const Valuation& a, const Valuation& b);

/// Componentwise min.
Valuation pointwise_min(const Valuation& a, const Valuation& b);

/// max_i (a(i) - b(i)) with equal values (equal infinities included)
/// differing by zero.  The signed worst excess of a over b.
ExtReal max_diff(const Valuation& a, const Valuation& b);

/// max_i |a(i) - b(i)| under the same convention.
ExtReal max_abs_diff(const Valuation& a, const Valuation& b);

}  // namespace conjfix
