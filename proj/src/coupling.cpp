#include "conjfix/coupling.hpp"

#include <cmath>
#include <unordered_set>

#include "conjfix/errors.hpp"

namespace conjfix {

CouplingMatrix::CouplingMatrix(std::vector<std::string> labels, std::vector<double> row_major)
    : n_(labels.size()), labels_(std::move(labels)), phi_(std::move(row_major)) {
  if (n_ == 0) throw contract_error("coupling: index set must be non-empty");
  if (phi_.size() != n_ * n_)
    throw contract_error("coupling: expected " + std::to_string(n_ * n_) +
                         " entries for " + std::to_string(n_) + " labels, got " +
                         std::to_string(phi_.size()));
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_)
    if (!seen.insert(l).second)
      throw contract_error("coupling: duplicate label \"" + l + "\"");
  for (std::size_t r = 0; r < n_; ++r)
    for (std::size_t s = 0; s < n_; ++s)
      if (!std::isfinite(phi_[r * n_ + s]))
        throw contract_error("coupling: entry (" + std::to_string(r) + ", " +
                             std::to_string(s) + ") is not finite");
  symmetric_ = true;
  for (std::size_t r = 0; r < n_ && symmetric_; ++r)
    for (std::size_t s = r + 1; s < n_; ++s)
      if (phi_[r * n_ + s] != phi_[s * n_ + r]) {
        symmetric_ = false;
        break;
      }
}

CouplingMatrix CouplingMatrix::from_rows(std::vector<std::string> labels,
                                         const std::vector<std::vector<double>>& rows) {
  if (labels.size() != rows.size())
    throw contract_error("coupling: " + std::to_string(labels.size()) + " labels but " +
                         std::to_string(rows.size()) + " rows");
  std::vector<double> flat;
  flat.reserve(rows.size() * rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size())
      throw contract_error("coupling: row " + std::to_string(r) + " has " +
                           std::to_string(rows[r].size()) + " entries, expected " +
                           std::to_string(rows.size()));
    flat.insert(flat.end(), rows[r].begin(), rows[r].end());
  }
  return CouplingMatrix(std::move(labels), std::move(flat));
}

CouplingMatrix CouplingMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  std::vector<std::string> labels;
  labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) labels.push_back("e" + std::to_string(i));
  return from_rows(std::move(labels), rows);
}

CouplingMatrix symmetrize(const CouplingMatrix& phi) {
  const std::size_t n = phi.size();
  std::vector<double> sym(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s)
      sym[r * n + s] = std::max(phi.at(r, s), phi.at(s, r));
  return CouplingMatrix(phi.labels(), std::move(sym));
}

}  // namespace conjfix
