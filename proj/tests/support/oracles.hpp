// Reference implementations used only by the tests.  These are written
// independently of the library — plain double arrays, explicit infinity
// branches, different loop structure — so that agreement between the two is
// meaningful evidence rather than the same code tested against itself.
#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace oracles {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// max_r (phi[r][s] - h[r]) with the extended-real conventions spelled out:
// a +inf valuation entry never contributes, a -inf entry pins the sup to +inf.
inline std::vector<double> naive_conjugate1(const std::vector<std::vector<double>>& phi,
                                            const std::vector<double>& h) {
  const std::size_t n = phi.size();
  std::vector<double> out(n, -kInf);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t r = 0; r < n; ++r) {
      double term;
      if (h[r] == kInf) {
        term = -kInf;
      } else if (h[r] == -kInf) {
        term = kInf;
      } else {
        term = phi[r][s] - h[r];
      }
      if (term > out[s]) out[s] = term;
    }
  }
  return out;
}

// max_s (phi[r][s] - h[s]), same conventions.
inline std::vector<double> naive_conjugate2(const std::vector<std::vector<double>>& phi,
                                            const std::vector<double>& h) {
  const std::size_t n = phi.size();
  std::vector<double> out(n, -kInf);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = 0; s < n; ++s) {
      double term;
      if (h[s] == kInf) {
        term = -kInf;
      } else if (h[s] == -kInf) {
        term = kInf;
      } else {
        term = phi[r][s] - h[s];
      }
      if (term > out[r]) out[r] = term;
    }
  }
  return out;
}

inline std::vector<std::vector<double>> naive_symmetrize(
    const std::vector<std::vector<double>>& phi) {
  const std::size_t n = phi.size();
  std::vector<std::vector<double>> out(n, std::vector<double>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s)
      out[r][s] = phi[r][s] > phi[s][r] ? phi[r][s] : phi[s][r];
  return out;
}

// Membership scan: h belongs to the family iff conjugating it does not push
// any coordinate above h itself.
inline bool naive_is_member(const std::vector<std::vector<double>>& phi,
                            const std::vector<double>& h) {
  const std::vector<double> c = naive_conjugate1(phi, h);
  for (std::size_t s = 0; s < h.size(); ++s) {
    if (!(c[s] <= h[s])) return false;
  }
  return true;
}

// Fitzpatrick value in the textbook arrangement <x - y, y* - x*> + <x, x*>,
// deliberately different from the library's grouping of the bilinear terms.
inline double naive_fitzpatrick(const std::vector<std::pair<std::vector<double>, std::vector<double>>>& pairs,
                                const std::vector<double>& x,
                                const std::vector<double>& xstar) {
  double best = -kInf;
  for (const auto& [y, ystar] : pairs) {
    double inner = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      inner += (x[k] - y[k]) * (ystar[k] - xstar[k]);
    }
    double self = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) self += x[k] * xstar[k];
    const double v = inner + self;
    if (v > best) best = v;
  }
  return best;
}

// Closed form for the identity operator in one dimension.  Valid wherever the
// maximizing point (x + x*)/2 is available to the sample set.
inline double identity_fitzpatrick_closed_form(double x, double xstar) {
  const double m = (x + xstar) / 2.0;
  return m * m;
}

}  // namespace oracles
