#include "conjfix/fitzpatrick.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "conjfix/errors.hpp"

namespace conjfix {

double duality_product(std::span<const double> x, std::span<const double> xstar) {
  if (x.size() != xstar.size())
    throw contract_error("duality_product: dimension mismatch (" + std::to_string(x.size()) +
                         " vs " + std::to_string(xstar.size()) + ")");
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * xstar[i];
  return acc;
}

OperatorSample::OperatorSample(
    int dim, std::vector<std::pair<std::vector<double>, std::vector<double>>> ps)
    : d(dim), pairs(std::move(ps)) {
  if (d != 1 && d != 2) throw contract_error("operator sample: d must be 1 or 2");
  if (pairs.empty()) throw contract_error("operator sample: at least one pair required");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [x, xs] = pairs[i];
    if (x.size() != static_cast<std::size_t>(d) || xs.size() != static_cast<std::size_t>(d))
      throw contract_error("operator sample: pair " + std::to_string(i) +
                           " has vectors of the wrong dimension");
    for (double v : x)
      if (!std::isfinite(v))
        throw contract_error("operator sample: pair " + std::to_string(i) +
                             " has a non-finite x entry");
    for (double v : xs)
      if (!std::isfinite(v))
        throw contract_error("operator sample: pair " + std::to_string(i) +
                             " has a non-finite x* entry");
  }
}

MonotonicityReport monotonicity_check(const OperatorSample& T) {
  MonotonicityReport rep;
  const std::size_t m = T.pairs.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      double inner = 0.0;
      for (int k = 0; k < T.d; ++k)
        inner += (T.pairs[i].first[k] - T.pairs[j].first[k]) *
                 (T.pairs[i].second[k] - T.pairs[j].second[k]);
      if (inner < 0.0) {
        rep.monotone = false;
        rep.violation = {i, j};
        rep.inner_value = inner;
        return rep;
      }
    }
  }
  return rep;
}

double fitzpatrick_value(const OperatorSample& T, std::span<const double> x,
                         std::span<const double> xstar) {
  if (x.size() != static_cast<std::size_t>(T.d) || xstar.size() != static_cast<std::size_t>(T.d))
    throw contract_error("fitzpatrick_value: query dimension does not match the sample");
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& [y, ystar] : T.pairs) {
    // (<x, y*> + <y, x*>) - <y, y*>: the expanded arrangement of
    // <x - y, y* - x*> + <x, x*>, matching the grid coupling bit for bit.
    double term = (duality_product(x, ystar) + duality_product(y, xstar)) -
                  duality_product(y, ystar);
    best = std::max(best, term);
  }
  return best;
}

ProductGrid::ProductGrid(int d, std::vector<std::vector<double>> x_axes,
                         std::vector<std::vector<double>> xstar_axes)
    : d_(d), x_axes_(std::move(x_axes)), xs_axes_(std::move(xstar_axes)) {
  if (d_ != 1 && d_ != 2) throw contract_error("grid: d must be 1 or 2");
  if (x_axes_.size() != static_cast<std::size_t>(d_) ||
      xs_axes_.size() != static_cast<std::size_t>(d_))
    throw contract_error("grid: expected " + std::to_string(d_) + " x axes and " +
                         std::to_string(d_) + " x* axes");
  auto check_axis = [](const std::vector<double>& axis, const std::string& name) {
    if (axis.empty()) throw contract_error("grid: axis " + name + " is empty");
    for (std::size_t i = 0; i < axis.size(); ++i) {
      if (!std::isfinite(axis[i]))
        throw contract_error("grid: axis " + name + " entry " + std::to_string(i) +
                             " is not finite");
      if (i > 0 && !(axis[i - 1] < axis[i]))
        throw contract_error("grid: axis " + name + " is not strictly increasing at entry " +
                             std::to_string(i));
    }
  };
  for (int k = 0; k < d_; ++k) {
    check_axis(x_axes_[k], "x" + std::to_string(k));
    check_axis(xs_axes_[k], "xstar" + std::to_string(k));
  }

  for (const auto& a : x_axes_) sizes_.push_back(a.size());
  for (const auto& a : xs_axes_) sizes_.push_back(a.size());
  strides_.assign(sizes_.size(), 1);
  for (std::size_t k = sizes_.size(); k-- > 1;)
    strides_[k - 1] = strides_[k] * sizes_[k];
  count_ = strides_[0] * sizes_[0];

  node_x_.resize(count_ * d_);
  node_xs_.resize(count_ * d_);
  pi_.resize(count_);
  for (std::size_t i = 0; i < count_; ++i) {
    std::vector<std::size_t> idx = decompose(i);
    for (int k = 0; k < d_; ++k) {
      node_x_[i * d_ + k] = x_axes_[k][idx[k]];
      node_xs_[i * d_ + k] = xs_axes_[k][idx[d_ + k]];
    }
    pi_[i] = duality_product(x_of(i), xstar_of(i));
  }
}

std::span<const double> ProductGrid::x_of(std::size_t i) const {
  return {node_x_.data() + i * d_, static_cast<std::size_t>(d_)};
}

std::span<const double> ProductGrid::xstar_of(std::size_t i) const {
  return {node_xs_.data() + i * d_, static_cast<std::size_t>(d_)};
}

std::vector<std::size_t> ProductGrid::decompose(std::size_t i) const {
  std::vector<std::size_t> idx(sizes_.size());
  for (std::size_t k = 0; k < sizes_.size(); ++k) {
    idx[k] = i / strides_[k];
    i %= strides_[k];
  }
  return idx;
}

std::size_t ProductGrid::compose(const std::vector<std::size_t>& idx) const {
  std::size_t i = 0;
  for (std::size_t k = 0; k < sizes_.size(); ++k) i += idx[k] * strides_[k];
  return i;
}

std::optional<std::size_t> ProductGrid::find_node(std::span<const double> x,
                                                  std::span<const double> xstar) const {
  if (x.size() != static_cast<std::size_t>(d_) || xstar.size() != static_cast<std::size_t>(d_))
    return std::nullopt;
  std::vector<std::size_t> idx(sizes_.size());
  auto locate = [](const std::vector<double>& axis, double v, std::size_t& out) {
    auto it = std::lower_bound(axis.begin(), axis.end(), v);
    if (it == axis.end() || *it != v) return false;
    out = static_cast<std::size_t>(it - axis.begin());
    return true;
  };
  for (int k = 0; k < d_; ++k) {
    if (!locate(x_axes_[k], x[k], idx[k])) return std::nullopt;
    if (!locate(xs_axes_[k], xstar[k], idx[d_ + k])) return std::nullopt;
  }
  return compose(idx);
}

std::string ProductGrid::label(std::size_t i) const { return "n" + std::to_string(i); }

CouplingMatrix build_grid_coupling(const ProductGrid& grid, std::size_t node_cap) {
  const std::size_t n = grid.node_count();
  if (n > node_cap)
    throw resource_error("grid coupling: " + std::to_string(n) + " nodes exceed the cap of " +
                         std::to_string(node_cap));
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(grid.label(i));
  std::vector<double> phi(n * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      phi[p * n + q] = duality_product(grid.x_of(p), grid.xstar_of(q)) +
                       duality_product(grid.x_of(q), grid.xstar_of(p));
  return CouplingMatrix(std::move(labels), std::move(phi));
}

GridFunction j_transform_grid(const ProductGrid& grid, const GridFunction& h,
                              std::size_t node_cap) {
  if (h.size() != grid.node_count())
    throw contract_error("j_transform_grid: grid function size " + std::to_string(h.size()) +
                         " does not match node count " + std::to_string(grid.node_count()));
  return sym_conjugate(build_grid_coupling(grid, node_cap), h);
}

namespace {
/// Node indices of the sample's pairs; contract_error naming any off-grid pair.
std::vector<std::size_t> locate_sample(const OperatorSample& T, const ProductGrid& grid,
                                       const char* op) {
  if (T.d != grid.d())
    throw contract_error(std::string(op) + ": sample dimension " + std::to_string(T.d) +
                         " does not match grid dimension " + std::to_string(grid.d()));
  std::vector<std::size_t> nodes;
  nodes.reserve(T.pairs.size());
  for (std::size_t i = 0; i < T.pairs.size(); ++i) {
    auto n = grid.find_node(T.pairs[i].first, T.pairs[i].second);
    if (!n)
      throw contract_error(std::string(op) + ": sample pair " + std::to_string(i) +
                           " does not lie on a grid node");
    nodes.push_back(*n);
  }
  return nodes;
}
}  // namespace

FtMembershipReport ft_membership_grid(const OperatorSample& T, const ProductGrid& grid,
                                      const GridFunction& h, double tol) {
  if (h.size() != grid.node_count())
    throw contract_error("ft_membership_grid: grid function size " + std::to_string(h.size()) +
                         " does not match node count " + std::to_string(grid.node_count()));
  if (!(tol >= 0.0)) throw contract_error("ft_membership_grid: tol must be >= 0");
  std::vector<std::size_t> t_nodes = locate_sample(T, grid, "ft_membership_grid");
  std::vector<bool> on_t(grid.node_count(), false);
  for (std::size_t i : t_nodes) on_t[i] = true;

  FtMembershipReport rep;
  const ExtReal tol_e(tol);
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    ExtReal pi_i(grid.pi(i));
    if (diff_or_zero(pi_i, h[i]) > tol_e) rep.below_pi.push_back(i);
    if (on_t[i]) {
      if (abs_diff(h[i], pi_i) > tol_e) rep.t_mismatch.push_back(i);
    } else if (abs_diff(h[i], pi_i) <= tol_e) {
      rep.pi_touch_off_t.push_back(i);
    }
  }

  // Midpoint convexity along every axis-aligned line of nodes.  For each
  // pair (a, b) on a line, the candidate midpoint node m must satisfy
  // h(m) <= (h(a) + h(b)) / 2 + tol when all three values are finite and
  // m's coordinate is (numerically) the midpoint of a's and b's.
  const auto& sizes = grid.axis_sizes();
  for (std::size_t axis = 0; axis < sizes.size(); ++axis) {
    const std::vector<double>& coords = axis < static_cast<std::size_t>(grid.d())
                                            ? grid.x_axes()[axis]
                                            : grid.xstar_axes()[axis - grid.d()];
    const std::size_t len = sizes[axis];
    if (len < 3) continue;
    // Enumerate lines: all nodes sharing every index except `axis`.
    for (std::size_t base = 0; base < grid.node_count(); ++base) {
      std::vector<std::size_t> idx = grid.decompose(base);
      if (idx[axis] != 0) continue;  // each line visited once, at its start
      for (std::size_t ia = 0; ia + 2 < len; ++ia) {
        for (std::size_t ib = ia + 2; ib < len; ++ib) {
          double mid = (coords[ia] + coords[ib]) / 2;
          double atol = 1e-12 * std::max({1.0, std::fabs(coords[ia]), std::fabs(coords[ib])});
          // Nearest interior axis point to the midpoint, if within atol.
          auto lo = coords.begin() + ia + 1, hi = coords.begin() + ib;
          auto it = std::lower_bound(lo, hi, mid);
          std::size_t im = len;
          if (it != hi && std::fabs(*it - mid) <= atol)
            im = static_cast<std::size_t>(it - coords.begin());
          else if (it != lo && std::fabs(*(it - 1) - mid) <= atol)
            im = static_cast<std::size_t>(it - 1 - coords.begin());
          if (im >= len) continue;
          idx[axis] = ia;
          std::size_t na = grid.compose(idx);
          idx[axis] = im;
          std::size_t nm = grid.compose(idx);
          idx[axis] = ib;
          std::size_t nb = grid.compose(idx);
          idx[axis] = 0;
          if (!h[na].finite() || !h[nm].finite() || !h[nb].finite()) continue;
          double avg = (h[na].raw() + h[nb].raw()) / 2;
          if (h[nm].raw() > avg + tol) rep.convexity.push_back({na, nm, nb});
        }
      }
    }
  }
  return rep;
}

RepresenterResult self_conjugate_representer(const OperatorSample& T, const ProductGrid& grid,
                                             const DescentConfig& cfg, std::size_t node_cap) {
  {
    MonotonicityReport mono = monotonicity_check(T);
    if (!mono.monotone)
      throw contract_error("self_conjugate_representer: sample is not monotone (pairs " +
                           std::to_string(mono.violation->first) + " and " +
                           std::to_string(mono.violation->second) + ")");
  }
  std::vector<std::size_t> t_nodes = locate_sample(T, grid, "self_conjugate_representer");
  CouplingMatrix coupling = build_grid_coupling(grid, node_cap);

  // The natural start equals pi on T and +inf elsewhere.  Discretization can
  // break its conjugate-domination (the grid max over-shoots between
  // samples); in that case fall back to the identically +inf start, which is
  // always admissible.
  Valuation start = Valuation::top(grid.node_count());
  for (std::size_t i : t_nodes) start[i] = ExtReal(grid.pi(i));

  RepresenterResult out;
  out.indicator_start = is_in_H(coupling, start).member;
  if (!out.indicator_start) start = Valuation::top(grid.node_count());
  out.fix = solve_fixpoint(coupling, start, cfg);
  out.membership = ft_membership_grid(T, grid, out.fix.h, std::max(cfg.tolerance, 0.0));
  return out;
}

}  // namespace conjfix
