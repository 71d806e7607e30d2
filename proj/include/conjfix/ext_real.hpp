#pragma once

#include <algorithm>
#include <limits>

#include "conjfix/errors.hpp"

namespace conjfix {

/// One point of the extended real line: a finite IEEE double or ±infinity.
/// NaN is rejected at construction, so the order is total and every
/// comparison below is trustworthy.
///
/// The only arithmetic the library ever needs on extended reals is
/// "finite minus extended" (conjugation terms) and "extended minus
/// extended with equal operands collapsing to zero" (gaps and residuals);
/// both are provided as free functions rather than operator overloads so
/// the infinity conventions stay explicit at call sites.
class ExtReal {
 public:
  constexpr ExtReal() noexcept : v_(0.0) {}

  explicit constexpr ExtReal(double v) : v_(v) {
    if (v != v) throw contract_error("ExtReal: NaN is not an extended real");
  }

  static constexpr ExtReal pos_inf() noexcept {
    return ExtReal(unchecked{}, std::numeric_limits<double>::infinity());
  }
  static constexpr ExtReal neg_inf() noexcept {
    return ExtReal(unchecked{}, -std::numeric_limits<double>::infinity());
  }

  constexpr bool is_pos_inf() const noexcept {
    return v_ == std::numeric_limits<double>::infinity();
  }
  constexpr bool is_neg_inf() const noexcept {
    return v_ == -std::numeric_limits<double>::infinity();
  }
  constexpr bool finite() const noexcept {
    return !is_pos_inf() && !is_neg_inf();
  }

  /// The underlying IEEE value, infinities included.
  constexpr double raw() const noexcept { return v_; }

  /// The value, required finite.
  constexpr double finite_value() const {
    if (!finite()) throw contract_error("ExtReal: value is not finite");
    return v_;
  }

  friend constexpr bool operator==(ExtReal a, ExtReal b) noexcept { return a.v_ == b.v_; }
  friend constexpr bool operator!=(ExtReal a, ExtReal b) noexcept { return a.v_ != b.v_; }
  friend constexpr bool operator<(ExtReal a, ExtReal b) noexcept { return a.v_ < b.v_; }
  friend constexpr bool operator<=(ExtReal a, ExtReal b) noexcept { return a.v_ <= b.v_; }
  friend constexpr bool operator>(ExtReal a, ExtReal b) noexcept { return a.v_ > b.v_; }
  friend constexpr bool operator>=(ExtReal a, ExtReal b) noexcept { return a.v_ >= b.v_; }

 private:
  struct unchecked {};
  constexpr ExtReal(unchecked, double v) noexcept : v_(v) {}
  double v_;
};

constexpr ExtReal max(ExtReal a, ExtReal b) noexcept { return a < b ? b : a; }
constexpr ExtReal min(ExtReal a, ExtReal b) noexcept { return b < a ? b : a; }

/// One conjugation term phi - h with phi finite.  IEEE arithmetic already
/// implements the required convention: finite h gives the rounded
/// difference, h = +inf gives -inf, h = -inf gives +inf, and inf - inf can
/// never arise because phi is finite.
constexpr ExtReal conj_term(double phi, ExtReal h) noexcept {
  return ExtReal(phi - h.raw());
}

/// a - b under the convention that equal operands (equal infinities
/// included) differ by zero.  Used for gaps h - C h and for residuals, where
/// "both infinite the same way" must count as agreement, not NaN.
constexpr ExtReal diff_or_zero(ExtReal a, ExtReal b) noexcept {
  if (a == b) return ExtReal(0.0);
  return ExtReal(a.raw() - b.raw());
}

/// |a - b| under the same equal-infinities convention.
constexpr ExtReal abs_diff(ExtReal a, ExtReal b) noexcept {
  ExtReal d = diff_or_zero(a, b);
  return d < ExtReal(0.0) ? ExtReal(-d.raw()) : d;
}

}  // namespace conjfix
