#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace conjfix {

/// A finite coupling: a real-valued n x n table phi(r, s) over a labelled
/// index set.  Entries are required finite (NaN and ±inf rejected); the
/// valuations being conjugated carry the infinities, never the coupling.
///
/// Whether the table is symmetric is detected once at construction and
/// cached, since several operations are only defined for symmetric
/// couplings.
class CouplingMatrix {
 public:
  /// Row-major entries; labels must be distinct and match the dimension.
  CouplingMatrix(std::vector<std::string> labels, std::vector<double> row_major);

  /// Build from nested rows, validating shape.
  static CouplingMatrix from_rows(std::vector<std::string> labels,
                                  const std::vector<std::vector<double>>& rows);

  /// Same, with generated labels "e0", "e1", ...
  static CouplingMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return n_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool symmetric() const noexcept { return symmetric_; }

  double at(std::size_t r, std::size_t s) const { return phi_[r * n_ + s]; }
  const std::vector<double>& row_major() const noexcept { return phi_; }

 private:
  std::size_t n_;
  std::vector<std::string> labels_;
  std::vector<double> phi_;
  bool symmetric_;
};

/// The symmetrized coupling: entrywise max(phi(r,s), phi(s,r)).  Always
/// symmetric; fixed labels are kept.
CouplingMatrix symmetrize(const CouplingMatrix& phi);

}  // namespace conjfix
