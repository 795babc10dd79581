#include "zicount/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "zicount/errors.hpp"

namespace zicount {

std::size_t Dataset::zero_count() const {
  return static_cast<std::size_t>(std::count(y.begin(), y.end(), 0.0));
}

Dataset make_dataset(std::vector<double> y, Matrix X,
                     std::vector<std::string> column_names) {
  const std::size_t n = X.rows;
  const std::size_t p = X.cols;
  if (y.size() != n) throw DomainError("dataset: outcome length != design rows");
  if (column_names.size() != p)
    throw DomainError("dataset: column_names length != design columns");
  if (n < p) throw DomainError("dataset: need at least as many rows as columns");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(y[i] >= 0.0) || std::floor(y[i]) != y[i])
      throw DomainError("dataset: outcomes must be nonnegative integers (row " +
                        std::to_string(i) + ")");
    if (X(i, 0) != 1.0)
      throw DomainError("dataset: first design column must be all ones (row " +
                        std::to_string(i) + ")");
    if (p >= 2 && X(i, 1) != 0.0 && X(i, 1) != 1.0)
      throw DomainError("dataset: treatment column must be 0/1 (row " +
                        std::to_string(i) + ")");
  }
  Dataset d;
  d.y = std::move(y);
  d.X = std::move(X);
  d.column_names = std::move(column_names);
  return d;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim spaces and stray carriage returns
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double parse_number(const std::string& s, std::size_t row, const std::string& col) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw InputError("row " + std::to_string(row) + ", column '" + col +
                     "': '" + s + "' is not a number");
  }
}

}  // namespace

Dataset load_dataset_csv(const std::string& path, const std::string& outcome_col,
                         const std::string& treatment_col,
                         const std::vector<std::string>& covariate_cols) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open data file '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw InputError("data file '" + path + "' is empty");
  const std::vector<std::string> header = split_csv_line(line);

  auto col_index = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      throw InputError("column '" + name + "' not found in '" + path + "'");
    return static_cast<std::size_t>(it - header.begin());
  };

  const std::size_t yi = col_index(outcome_col);
  const bool with_treatment = !treatment_col.empty();
  const std::size_t ti = with_treatment ? col_index(treatment_col) : 0;
  std::vector<std::size_t> ci;
  ci.reserve(covariate_cols.size());
  for (const auto& c : covariate_cols) ci.push_back(col_index(c));

  std::vector<double> y;
  std::vector<std::vector<double>> rows;
  std::size_t row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw InputError("row " + std::to_string(row_no) + ": expected " +
                       std::to_string(header.size()) + " fields, found " +
                       std::to_string(fields.size()));
    const double yv = parse_number(fields[yi], row_no, outcome_col);
    if (!(yv >= 0.0) || std::floor(yv) != yv)
      throw InputError("row " + std::to_string(row_no) + ", column '" +
                       outcome_col + "': outcome must be a nonnegative integer");
    std::vector<double> xrow;
    xrow.push_back(1.0);
    if (with_treatment) {
      const double tv = parse_number(fields[ti], row_no, treatment_col);
      if (tv != 0.0 && tv != 1.0)
        throw InputError("row " + std::to_string(row_no) + ", column '" +
                         treatment_col + "': treatment must be 0 or 1");
      xrow.push_back(tv);
    }
    for (std::size_t j = 0; j < ci.size(); ++j)
      xrow.push_back(parse_number(fields[ci[j]], row_no, covariate_cols[j]));
    y.push_back(yv);
    rows.push_back(std::move(xrow));
  }
  if (rows.empty()) throw InputError("data file '" + path + "' has no data rows");

  const std::size_t p = rows.front().size();
  Matrix X(rows.size(), p);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < p; ++j) X(i, j) = rows[i][j];

  std::vector<std::string> names;
  names.push_back("intercept");
  if (with_treatment) names.push_back(treatment_col);
  for (const auto& c : covariate_cols) names.push_back(c);

  try {
    return make_dataset(std::move(y), std::move(X), std::move(names));
  } catch (const DomainError& e) {
    throw InputError(std::string("invalid data in '") + path + "': " + e.what());
  }
}

}  // namespace zicount
