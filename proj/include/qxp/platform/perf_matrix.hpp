#pragma once

#include <string>
#include <vector>

#include "qxp/core/types.hpp"

namespace qxp {

// Pairwise comparison results over a list of labeled runs: square f_max and
// standard-error matrices. Entry (i, j) equals entry (j, i) exactly, and
// the diagonal is the self-comparison value 1 with zero error.
struct PerfMatrix {
  std::vector<std::string> labels;
  Eigen::MatrixXd f_max;
  Eigen::MatrixXd std_err;

  void validate() const;  // shape/label checks, UsageError on failure
};

bool matrices_equal(const PerfMatrix& a, const PerfMatrix& b);

// CSV: an `f_max` block then a `std_err` block, each a square table with a
// label header row and label-prefixed rows, separated by a blank line.
// Numbers carry 17 significant digits, so write → parse is the identity.
std::string matrix_to_csv(const PerfMatrix& m);
PerfMatrix matrix_from_csv(const std::string& text);

// JSON: one object with format marker, labels, and both matrices.
std::string matrix_to_json(const PerfMatrix& m);
PerfMatrix matrix_from_json(const std::string& text);

void save_matrix_csv(const PerfMatrix& m, const std::string& path);
void save_matrix_json(const PerfMatrix& m, const std::string& path);
PerfMatrix load_matrix_csv(const std::string& path);
PerfMatrix load_matrix_json(const std::string& path);

}  // namespace qxp
