#pragma once

#include <string>
#include <vector>

#include "zicount/linalg.hpp"

namespace zicount {

/// Outcome vector plus design matrix. Column 0 is the intercept (all ones);
/// when a second column is present it is the treatment indicator in {0,1};
/// remaining columns are numeric covariates.
struct Dataset {
  std::vector<double> y;  // nonnegative integer counts
  Matrix X;               // n x p design
  std::vector<std::string> column_names;

  std::size_t n() const { return X.rows; }
  std::size_t p() const { return X.cols; }
  double x(std::size_t i, std::size_t j) const { return X(i, j); }
  bool has_treatment() const { return p() >= 2; }
  std::size_t zero_count() const;
};

/// Validates the invariants (intercept column of ones, binary treatment,
/// nonnegative integer outcomes, n >= p) and assembles a Dataset.
/// Throws DomainError on violation.
Dataset make_dataset(std::vector<double> y, Matrix X,
                     std::vector<std::string> column_names);

/// Reads a comma-separated file with a header row and builds a Dataset with
/// columns [intercept, treatment, covariates...]. treatment_col may be empty
/// for an intercept-only (plus covariates) design. Throws InputError with
/// row/column context on malformed content.
Dataset load_dataset_csv(const std::string& path, const std::string& outcome_col,
                         const std::string& treatment_col,
                         const std::vector<std::string>& covariate_cols);

}  // namespace zicount
