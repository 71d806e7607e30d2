#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "conjfix/fixpoint.hpp"

namespace conjfix {

/// <x, xstar> for vectors of equal dimension (contract_error otherwise).
/// Accumulated left to right so every caller sees the same rounding.
double duality_product(std::span<const double> x, std::span<const double> xstar);

/// A finite sample of an operator's graph in R^d x R^d: pairs (x, x*).
/// d is 1 or 2; every vector must have length d and all entries finite.
struct OperatorSample {
  int d = 1;
  std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs;

  OperatorSample(int dim,
                 std::vector<std::pair<std::vector<double>, std::vector<double>>> ps);
  std::size_t size() const noexcept { return pairs.size(); }
};

/// Monotonicity scan over all sample pairs: <x - y, x* - y*> >= 0.
struct MonotonicityReport {
  bool monotone = true;
  /// First violating pair of sample indices and the offending inner value.
  std::optional<std::pair<std::size_t, std::size_t>> violation;
  double inner_value = 0.0;
};

MonotonicityReport monotonicity_check(const OperatorSample& T);

/// The sampled-operator convexification at a query point (x, x*):
///
///   max over (y, y*) in T of  <x - y, y* - x*> + <x, x*>.
///
/// Each term is evaluated in the expanded arrangement
/// (<x, y*> + <y, x*>) - <y, y*> — the same doubles the grid-coupling
/// conjugation produces — so the conjugation route reproduces these values
/// bit for bit.  Always finite for a non-empty sample (contract_error on an
/// empty one or on dimension mismatch).
double fitzpatrick_value(const OperatorSample& T, std::span<const double> x,
                         std::span<const double> xstar);

/// A finite product grid in R^d x R^d: one sorted axis per x coordinate and
/// one per x* coordinate.  Nodes are all (x, x*) combinations, flattened
/// row-major with the x axes as the outer indices (x axis 0 outermost, then
/// x axis 1, then the x* axes).  Axes must be strictly increasing, finite,
/// and non-empty; d is 1 or 2.
class ProductGrid {
 public:
  ProductGrid(int d, std::vector<std::vector<double>> x_axes,
              std::vector<std::vector<double>> xstar_axes);

  int d() const noexcept { return d_; }
  std::size_t node_count() const noexcept { return count_; }
  const std::vector<std::vector<double>>& x_axes() const noexcept { return x_axes_; }
  const std::vector<std::vector<double>>& xstar_axes() const noexcept { return xs_axes_; }

  /// Coordinates of node i.
  std::span<const double> x_of(std::size_t i) const;
  std::span<const double> xstar_of(std::size_t i) const;

  /// <x, x*> at node i, precomputed.
  double pi(std::size_t i) const { return pi_[i]; }

  /// Locate a node with exactly these coordinates (bitwise double equality,
  /// via binary search on each axis).
  std::optional<std::size_t> find_node(std::span<const double> x,
                                       std::span<const double> xstar) const;

  /// Stable node label "n<i>" used for coupling matrices over this grid.
  std::string label(std::size_t i) const;

  /// Sizes of the 2d axes in flattening order (x axes then x* axes).
  const std::vector<std::size_t>& axis_sizes() const noexcept { return sizes_; }
  /// Multi-index of node i in flattening order.
  std::vector<std::size_t> decompose(std::size_t i) const;
  /// Inverse of decompose.
  std::size_t compose(const std::vector<std::size_t>& idx) const;

 private:
  int d_;
  std::vector<std::vector<double>> x_axes_, xs_axes_;
  std::vector<std::size_t> sizes_, strides_;
  std::size_t count_ = 0;
  std::vector<double> node_x_, node_xs_;  // node_count * d each
  std::vector<double> pi_;
};

/// Coupling over grid nodes: phi(p, q) = <x_p, x*_q> + <x_q, x*_p>.
/// Symmetric by construction (and verified by the matrix's own scan); its
/// diagonal is 2 <x_p, x*_p>, so diag_halves of this coupling reproduces the
/// grid's pi values bit for bit.  Refuses grids above node_cap nodes
/// (resource_error) since the table is node_count^2 doubles.
CouplingMatrix build_grid_coupling(const ProductGrid& grid, std::size_t node_cap = 5000);

/// A valuation indexed by grid nodes (flattening order).
using GridFunction = Valuation;

/// The grid conjugation of h: max_q [ phi(p, q) - h(q) ] over the grid
/// coupling.  Convenience wrapper that builds the coupling internally;
/// fine at desk scale, use build_grid_coupling + sym_conjugate to amortize.
GridFunction j_transform_grid(const ProductGrid& grid, const GridFunction& h,
                              std::size_t node_cap = 5000);

/// Discrete membership test for the family of representing functions of a
/// sampled operator T: checks, at tolerance tol,
///   (a) h >= pi everywhere on the grid,
///   (b) h = pi at the nodes of T,
///   (c) midpoint convexity along axis-aligned node triples whose values
///       are all finite: h(mid) <= (h(a) + h(b))/2 + tol whenever the mid
///       node's coordinate is the exact midpoint of a's and b's.
/// Nodes *off* T where h touches pi are reported informationally
/// (pi_touch_off_t) but do not fail the test: the sampled convexification
/// legitimately touches pi off T wherever no sample separates two nodes.
struct FtMembershipReport {
  std::vector<std::size_t> below_pi;                    // (a) violations
  std::vector<std::size_t> t_mismatch;                  // (b) violations
  std::vector<std::array<std::size_t, 3>> convexity;    // (c) violating triples a,m,b
  std::vector<std::size_t> pi_touch_off_t;              // informational
  bool ok() const noexcept {
    return below_pi.empty() && t_mismatch.empty() && convexity.empty();
  }
};

/// Preconditions (contract_error): every pair of T lies exactly on a grid
/// node; h is sized to the grid; tol >= 0.
FtMembershipReport ft_membership_grid(const OperatorSample& T, const ProductGrid& grid,
                                      const GridFunction& h, double tol);

/// Self-conjugate representative of a monotone sample T on a grid: start
/// from the valuation equal to pi on T's nodes and +inf elsewhere, verify it
/// is dominated by its conjugate (falling back to the identically +inf
/// start when discretization breaks that domination), then run the descent
/// solver on the grid coupling.  The result's h is a discrete representing
/// function: h >= pi with equality on T, self-conjugate up to cfg.tolerance.
struct RepresenterResult {
  FixpointResult fix;
  bool indicator_start = true;  ///< false = fell back to the +inf start
  FtMembershipReport membership;
};

/// Preconditions (contract_error): T monotone (the violating pair is named
/// otherwise) and on-grid; resource_error above node_cap.
RepresenterResult self_conjugate_representer(const OperatorSample& T,
                                             const ProductGrid& grid,
                                             const DescentConfig& cfg,
                                             std::size_t node_cap = 5000);

}  // namespace conjfix
