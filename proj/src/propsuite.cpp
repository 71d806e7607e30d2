#include "conjfix/propsuite.hpp"

#include <cmath>
#include <functional>

#include "conjfix/conjugation.hpp"
#include "conjfix/fixpoint.hpp"
#include "conjfix/io.hpp"
#include "conjfix/nonsymmetric.hpp"
#include "conjfix/rng.hpp"

namespace conjfix {

namespace {

/// One generated instance.  h is arbitrary (finite dyadics plus ±inf
/// entries); f dominates h so the order-reversal check has a ready-made
/// comparable pair.  All finite values are dyadic rationals, so every
/// conjugation term below evaluates exactly and the properties can be
/// checked with zero tolerance.
struct GenCase {
  CouplingMatrix phi;
  Valuation h;
  Valuation f;
};

GenCase generate_case(SplitMix64& rng, std::size_t max_n) {
  const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(max_n)));
  std::vector<double> flat(n * n);
  for (double& v : flat) v = rng.dyadic(10.0, 4);
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));

  std::vector<ExtReal> h(n), f(n);
  for (std::size_t i = 0; i < n; ++i) {
    double roll = rng.uniform(0.0, 1.0);
    if (roll < 0.10) h[i] = ExtReal::pos_inf();
    else if (roll < 0.16) h[i] = ExtReal::neg_inf();
    else h[i] = ExtReal(rng.dyadic(10.0, 4));

    if (h[i].is_pos_inf() || rng.chance(0.4)) {
      f[i] = h[i];
    } else if (rng.chance(0.1)) {
      f[i] = ExtReal::pos_inf();
    } else {
      double base = h[i].is_neg_inf() ? rng.dyadic(10.0, 4) : h[i].raw();
      f[i] = ExtReal(base + std::fabs(rng.dyadic(5.0, 4)));
    }
  }
  return GenCase{CouplingMatrix(std::move(labels), std::move(flat)),
                 Valuation(std::move(h)), Valuation(std::move(f))};
}

nlohmann::ordered_json case_to_json(const GenCase& c) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < c.phi.size(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t s = 0; s < c.phi.size(); ++s) row.push_back(c.phi.at(r, s));
    rows.push_back(std::move(row));
  }
  nlohmann::ordered_json j;
  j["n"] = c.phi.size();
  j["phi"] = std::move(rows);
  j["h"] = valuation_to_json(c.h)["values"];
  j["f"] = valuation_to_json(c.f)["values"];
  return j;
}

/// Greedy structural shrink: drop indices, zero values, zero coupling
/// entries — keeping only changes under which the property still fails.
GenCase shrink_case(GenCase c, const std::function<bool(const GenCase&)>& holds) {
  auto drop_index = [](const GenCase& in, std::size_t k) {
    const std::size_t n = in.phi.size();
    std::vector<std::string> labels;
    std::vector<double> flat;
    std::vector<ExtReal> h, f;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == k) continue;
      labels.push_back(in.phi.labels()[r]);
      h.push_back(in.h[r]);
      f.push_back(in.f[r]);
      for (std::size_t s = 0; s < n; ++s)
        if (s != k) flat.push_back(in.phi.at(r, s));
    }
    return GenCase{CouplingMatrix(std::move(labels), std::move(flat)),
                   Valuation(std::move(h)), Valuation(std::move(f))};
  };

  int budget = 500;
  bool improved = true;
  while (improved && budget > 0) {
    improved = false;
    for (std::size_t k = 0; c.phi.size() > 1 && k < c.phi.size() && budget > 0; ++k) {
      GenCase cand = drop_index(c, k);
      --budget;
      if (!holds(cand)) {
        c = std::move(cand);
        improved = true;
        break;
      }
    }
    if (improved) continue;
    for (std::size_t k = 0; k < c.phi.size() && budget > 0; ++k) {
      if (c.h[k] == ExtReal(0.0)) continue;
      GenCase cand = c;
      cand.h[k] = ExtReal(0.0);
      if (cand.f[k] < ExtReal(0.0)) cand.f[k] = ExtReal(0.0);
      --budget;
      if (!holds(cand)) {
        c = std::move(cand);
        improved = true;
        break;
      }
    }
    if (improved) continue;
    for (std::size_t r = 0; r < c.phi.size() && !improved && budget > 0; ++r) {
      for (std::size_t s = 0; s < c.phi.size() && budget > 0; ++s) {
        if (c.phi.at(r, s) == 0.0) continue;
        std::vector<double> flat = c.phi.row_major();
        flat[r * c.phi.size() + s] = 0.0;
        GenCase cand{CouplingMatrix(c.phi.labels(), std::move(flat)), c.h, c.f};
        --budget;
        if (!holds(cand)) {
          c = std::move(cand);
          improved = true;
          break;
        }
      }
    }
  }
  return c;
}

bool dominated(const Valuation& c, const Valuation& h) {
  for (std::size_t r = 0; r < h.size(); ++r)
    if (c[r] > h[r]) return false;
  return true;
}

// --- the properties ---------------------------------------------------
// Each returns true when the property holds on the case.  Checkers are
// self-contained: they re-derive any auxiliary data they need from the
// case so the shrinker cannot hand them inconsistent inputs.

bool prop_order_reversal(const GenCase& c) {
  if (!leq(c.h, c.f)) return true;  // vacuous (only after a shrink mutation)
  return leq(conjugate1(c.phi, c.f), conjugate1(c.phi, c.h)) &&
         leq(conjugate2(c.phi, c.f), conjugate2(c.phi, c.h));
}

bool prop_biconjugate(const GenCase& c, bool flipped) {
  Valuation a = conjugate2(c.phi, conjugate1(c.phi, c.h));
  Valuation b = conjugate1(c.phi, conjugate2(c.phi, c.h));
  if (flipped) return leq(c.h, a) && leq(c.h, b);
  return leq(a, c.h) && leq(b, c.h);
}

bool prop_membership_equivalence(const GenCase& c) {
  return membership_equivalence(c.phi, c.h).agree();
}

bool prop_symmetrized_max(const GenCase& c) {
  return sym_conjugate(symmetrize(c.phi), c.h) ==
         pointwise_max(conjugate1(c.phi, c.h), conjugate2(c.phi, c.h));
}

bool prop_family_match(const GenCase& c) {
  return is_in_H(c.phi, c.h).member == is_in_H(symmetrize(c.phi), c.h).member;
}

bool prop_triple_conjugation(const GenCase& c) {
  return triple_conjugate_residual(symmetrize(c.phi), c.h) == ExtReal(0.0);
}

bool prop_diag_half_bound(const GenCase& c) {
  Valuation halves = diag_halves(c.phi);
  Valuation c1 = conjugate1(c.phi, c.h);
  Valuation c2 = conjugate2(c.phi, c.h);
  for (std::size_t r = 0; r < c.h.size(); ++r) {
    for (const Valuation* conj : {&c1, &c2}) {
      if ((*conj)[r] <= c.h[r] && !(halves[r] <= c.h[r])) return false;
      if ((*conj)[r] < c.h[r] && !(halves[r] < c.h[r])) return false;
    }
  }
  // Constructed member g = max{C1 u, C2 u, u} must dominate the halves.
  Valuation g = pointwise_max(pointwise_max(c1, c2), c.h);
  if (!dominated(conjugate1(c.phi, g), g)) return false;
  return leq(halves, g);
}

bool prop_touching_subgradient(const GenCase& c) {
  // Member equal to a large constant except at one index pinned to half the
  // diagonal: a touching member by construction.
  const std::size_t n = c.phi.size();
  double maxabs = 0.0;
  for (double v : c.phi.row_major()) maxabs = std::max(maxabs, std::fabs(v));
  const double big = 2 * maxabs + 1;
  for (std::size_t r0 = 0; r0 < n; ++r0) {
    Valuation h = Valuation::constant(n, ExtReal(big));
    h[r0] = ExtReal(c.phi.at(r0, r0) / 2);
    if (!is_in_H(c.phi, h).member) return false;
    SubdiffReport rep = subdifferential_check(c.phi, h, r0);
    if (!rep.applicable || !rep.certified()) return false;
    ExtReal half(c.phi.at(r0, r0) / 2);
    if (rep.c1_at_r0 != half || rep.c2_at_r0 != half) return false;
  }
  return true;
}

}  // namespace

SuiteResult run_property_suite(const PropertySuiteConfig& cfg) {
  if (cfg.cases == 0) throw contract_error("property suite: cases must be >= 1");
  if (cfg.max_n == 0) throw contract_error("property suite: max_n must be >= 1");

  struct Named {
    const char* name;
    std::function<bool(const GenCase&)> holds;
  };
  const bool flipped = cfg.inject_comparison_bug;
  std::vector<Named> props = {
      {"order-reversal", prop_order_reversal},
      {"biconjugate-bound", [flipped](const GenCase& c) { return prop_biconjugate(c, flipped); }},
      {"membership-equivalence", prop_membership_equivalence},
      {"symmetrized-conjugate-max", prop_symmetrized_max},
      {"membership-family-match", prop_family_match},
      {"triple-conjugation", prop_triple_conjugation},
      {"diagonal-half-bound", prop_diag_half_bound},
      {"touching-subgradient", prop_touching_subgradient},
  };

  SuiteResult out;
  out.properties.resize(props.size());
  for (std::size_t p = 0; p < props.size(); ++p) out.properties[p].name = props[p].name;

  SplitMix64 rng(cfg.seed);
  for (std::uint64_t i = 0; i < cfg.cases; ++i) {
    GenCase c = generate_case(rng, cfg.max_n);
    for (std::size_t p = 0; p < props.size(); ++p) {
      PropertyResult& res = out.properties[p];
      ++res.cases;
      if (props[p].holds(c)) continue;
      ++res.failures;
      if (res.first_counterexample.is_null())
        res.first_counterexample = case_to_json(shrink_case(c, props[p].holds));
    }
  }
  return out;
}

nlohmann::ordered_json suite_result_to_json(const SuiteResult& r) {
  nlohmann::ordered_json props = nlohmann::ordered_json::array();
  for (const auto& p : r.properties) {
    nlohmann::ordered_json jp;
    jp["name"] = p.name;
    jp["cases"] = p.cases;
    jp["failures"] = p.failures;
    jp["first_counterexample"] = p.first_counterexample;
    props.push_back(std::move(jp));
  }
  nlohmann::ordered_json j;
  j["all_passed"] = r.all_passed();
  j["total_failures"] = r.total_failures();
  j["properties"] = std::move(props);
  return j;
}

}  // namespace conjfix
