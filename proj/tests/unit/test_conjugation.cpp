#include <limits>
#include <string>
#include <vector>

#include "conjfix/conjugation.hpp"
#include "conjfix/coupling.hpp"
#include "conjfix/errors.hpp"
#include "conjfix/rng.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using conjfix::CouplingMatrix;
using conjfix::ExtReal;
using conjfix::Valuation;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

std::vector<double> raw(const Valuation& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (ExtReal x : v) out.push_back(x.raw());
  return out;
}

// The two-point table where the two conjugates genuinely differ:
// rows ((0, -3), (0, -3)) with h = (1, -1).
CouplingMatrix two_point_table() {
  return CouplingMatrix::from_rows({"a", "b"}, {{0.0, -3.0}, {0.0, -3.0}});
}

}  // namespace

TEST_CASE("the two conjugates of an asymmetric coupling can differ") {
  const CouplingMatrix phi = two_point_table();
  CHECK_FALSE(phi.symmetric());
  const Valuation h = Valuation::of({1.0, -1.0});

  const Valuation c1 = conjfix::conjugate1(phi, h);
  const Valuation c2 = conjfix::conjugate2(phi, h);
  CHECK(c1 == Valuation::of({1.0, -2.0}));
  CHECK(c2 == Valuation::of({-1.0, -1.0}));

  // Neither conjugate fixes h, but their pointwise max reproduces it.
  CHECK(c1 != h);
  CHECK(c2 != h);
  CHECK(conjfix::pointwise_max(c1, c2) == h);

  // And h dominates its first conjugate, so it is in the working family.
  CHECK(conjfix::is_in_H(phi, h).member);
}

TEST_CASE("conjugates of small tables match hand computation") {
  const CouplingMatrix phi = CouplingMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  CHECK(phi.symmetric());

  CHECK(conjfix::conjugate1(phi, Valuation::of({0.0, 0.0})) == Valuation::of({1.0, 1.0}));
  CHECK(conjfix::conjugate2(phi, Valuation::of({0.0, 0.0})) == Valuation::of({1.0, 1.0}));
  CHECK(conjfix::conjugate2(phi, Valuation::of({0.0, kInf})) == Valuation::of({0.0, 1.0}));
  CHECK(conjfix::sym_conjugate(phi, Valuation::of({0.0, kInf})) == Valuation::of({0.0, 1.0}));
}

TEST_CASE("a -inf entry pins the conjugate at +inf everywhere") {
  const CouplingMatrix phi = CouplingMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  const Valuation h{ExtReal(0.0), ExtReal::neg_inf()};
  const Valuation c = conjfix::conjugate1(phi, h);
  CHECK(c[0].is_pos_inf());
  CHECK(c[1].is_pos_inf());
  CHECK_FALSE(conjfix::is_in_H(phi, h).member);
}

TEST_CASE("the identically +inf valuation conjugates to -inf and is a member") {
  const CouplingMatrix phi = CouplingMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  const Valuation top = Valuation::top(2);
  const Valuation c = conjfix::conjugate1(phi, top);
  CHECK(c[0].is_neg_inf());
  CHECK(c[1].is_neg_inf());
  CHECK(conjfix::is_in_H(phi, top).member);
}

TEST_CASE("symmetrize takes the entrywise max of the table and its transpose") {
  const CouplingMatrix sy = conjfix::symmetrize(two_point_table());
  CHECK(sy.symmetric());
  CHECK(sy.at(0, 0) == 0.0);
  CHECK(sy.at(0, 1) == 0.0);
  CHECK(sy.at(1, 0) == 0.0);
  CHECK(sy.at(1, 1) == -3.0);
  CHECK(sy.labels() == std::vector<std::string>{"a", "b"});

  const CouplingMatrix sy2 =
      conjfix::symmetrize(CouplingMatrix::from_rows({{1.0, 5.0}, {2.0, 3.0}}));
  CHECK(sy2.at(0, 1) == 5.0);
  CHECK(sy2.at(1, 0) == 5.0);
  CHECK(sy2.at(0, 0) == 1.0);
  CHECK(sy2.at(1, 1) == 3.0);

  // Idempotent on an already symmetric table.
  const CouplingMatrix again = conjfix::symmetrize(sy);
  CHECK(again.row_major() == sy.row_major());
}

TEST_CASE("indicator valuations place the offset on the support") {
  const Valuation v = conjfix::indicator(3, {1}, ExtReal(2.5));
  CHECK(v[0].is_pos_inf());
  CHECK(v[1] == ExtReal(2.5));
  CHECK(v[2].is_pos_inf());

  const Valuation empty_support = conjfix::indicator(2, {}, ExtReal(1.0));
  CHECK(empty_support == Valuation::top(2));

  CHECK_THROWS_AS(conjfix::indicator(3, {1}, ExtReal::neg_inf()), conjfix::contract_error);
  CHECK_THROWS_AS(conjfix::indicator(3, {7}, ExtReal(0.0)), conjfix::contract_error);
}

TEST_CASE("conjugating a single-point indicator reads off a table row") {
  const CouplingMatrix phi =
      CouplingMatrix::from_rows({{2.0, -1.0, 0.5}, {0.0, 4.0, 1.0}, {3.0, 2.0, -2.0}});
  const Valuation v = conjfix::indicator(3, {1}, ExtReal(0.25));
  const Valuation c = conjfix::conjugate1(phi, v);
  for (std::size_t s = 0; s < 3; ++s) {
    CHECK(c[s] == ExtReal(phi.at(1, s) - 0.25));
  }
}

TEST_CASE("diag_halves reads half the diagonal") {
  CHECK(conjfix::diag_halves(two_point_table()) == Valuation::of({0.0, -1.5}));
  const CouplingMatrix phi = CouplingMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  CHECK(conjfix::diag_halves(phi) == Valuation::of({0.0, 0.0}));
}

TEST_CASE("membership reports the first violating index") {
  const CouplingMatrix phi = CouplingMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  const auto report = conjfix::is_in_H(phi, Valuation::of({0.0, 0.0}));
  CHECK_FALSE(report.member);
  REQUIRE(report.first_violation.has_value());
  CHECK(*report.first_violation == 0);

  const auto ok = conjfix::is_in_H(phi, Valuation::of({0.0, 1.0}));
  CHECK(ok.member);
  CHECK_FALSE(ok.first_violation.has_value());
}

TEST_CASE("conjugates agree bitwise with an independent reference") {
  conjfix::SplitMix64 rng(0x5eed0001u);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = 1 + rng.uniform_int(0, 9);
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    for (auto& row : rows)
      for (double& x : row) x = rng.dyadic(10.0, 4);

    std::vector<double> hv(n);
    for (double& x : hv) {
      if (rng.chance(0.10)) {
        x = kInf;
      } else if (rng.chance(0.07)) {
        x = -kInf;
      } else {
        x = rng.dyadic(10.0, 4);
      }
    }

    const CouplingMatrix phi = CouplingMatrix::from_rows(rows);
    const Valuation h = Valuation::of(hv);
    CHECK(raw(conjfix::conjugate1(phi, h)) == oracles::naive_conjugate1(rows, hv));
    CHECK(raw(conjfix::conjugate2(phi, h)) == oracles::naive_conjugate2(rows, hv));

    // Symmetrization agrees entry by entry as well.
    const CouplingMatrix sy = conjfix::symmetrize(phi);
    const auto naive_sy = oracles::naive_symmetrize(rows);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s) CHECK(sy.at(r, s) == naive_sy[r][s]);

    CHECK(conjfix::is_in_H(phi, h).member == oracles::naive_is_member(rows, hv));
  }
}

TEST_CASE("coupling construction validates shape and entries") {
  // Non-square rows.
  CHECK_THROWS_AS(CouplingMatrix::from_rows({{0.0, 1.0}, {1.0}}), conjfix::contract_error);
  // Label count mismatch.
  CHECK_THROWS_AS(CouplingMatrix::from_rows({"a"}, {{0.0, 1.0}, {1.0, 0.0}}),
                  conjfix::contract_error);
  // Duplicate labels.
  CHECK_THROWS_AS(CouplingMatrix::from_rows({"a", "a"}, {{0.0, 1.0}, {1.0, 0.0}}),
                  conjfix::contract_error);
  // Non-finite entry.
  CHECK_THROWS_AS(CouplingMatrix::from_rows({{0.0, kInf}, {1.0, 0.0}}),
                  conjfix::contract_error);
  // Empty table.
  CHECK_THROWS_AS(CouplingMatrix::from_rows(std::vector<std::vector<double>>{}),
                  conjfix::contract_error);
}

TEST_CASE("sym_conjugate refuses asymmetric couplings") {
  CHECK_THROWS_AS(conjfix::sym_conjugate(two_point_table(), Valuation::of({1.0, -1.0})),
                  conjfix::contract_error);
}

TEST_CASE("size mismatches between coupling and valuation are rejected") {
  const CouplingMatrix phi = CouplingMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  CHECK_THROWS_AS(conjfix::conjugate1(phi, Valuation::of({0.0})), conjfix::contract_error);
  CHECK_THROWS_AS(conjfix::conjugate2(phi, Valuation::of({0.0, 1.0, 2.0})),
                  conjfix::contract_error);
}
