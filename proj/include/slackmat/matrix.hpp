#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "slackmat/rational.hpp"

namespace slackmat {

// Parse failure for the matrix / graph file formats; line and column are 1-based.
struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(int line_, int column_, const std::string& what_)
      : std::runtime_error("line " + std::to_string(line_) + ", column " +
                           std::to_string(column_) + ": " + what_),
        line(line_),
        column(column_) {}
};

// A set of row indices, kept sorted and duplicate-free.
class RowSet {
 public:
  RowSet() = default;
  explicit RowSet(std::vector<int> idx);
  static RowSet full(int m);  // {0,...,m-1}

  const std::vector<int>& indices() const { return idx_; }
  int size() const { return static_cast<int>(idx_.size()); }
  bool empty() const { return idx_.empty(); }
  bool contains(int i) const;
  RowSet complement(int m) const;
  bool proper(int m) const { return !idx_.empty() && size() < m; }
  RowSet united(const RowSet& other) const;

  bool operator==(const RowSet& o) const { return idx_ == o.idx_; }
  bool operator<(const RowSet& o) const { return idx_ < o.idx_; }

 private:
  std::vector<int> idx_;
};

// Dense matrix of exact rationals with unique row/column labels.
// Labels are opaque bookkeeping identifiers, not part of entry equality.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int m, int n);  // zero-filled, labels r0.., c0..

  int rows() const { return m_; }
  int cols() const { return n_; }

  Rational& at(int i, int j) { return entries_[static_cast<size_t>(i) * n_ + j]; }
  const Rational& at(int i, int j) const {
    return entries_[static_cast<size_t>(i) * n_ + j];
  }

  const std::string& row_label(int i) const { return row_labels_[i]; }
  const std::string& col_label(int j) const { return col_labels_[j]; }
  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }
  void set_row_labels(std::vector<std::string> labels);  // throws on dup/size
  void set_col_labels(std::vector<std::string> labels);
  int row_index(const std::string& label) const;  // -1 when absent

  std::vector<Rational> row(int i) const;
  std::vector<Rational> column(int j) const;

  // result.at(i,j) == at(row_perm[i], col_perm[j]); labels follow their lines.
  RationalMatrix permuted(const std::vector<int>& row_perm,
                          const std::vector<int>& col_perm) const;
  RationalMatrix restrict_rows(const RowSet& X) const;
  RationalMatrix restrict_cols(const std::vector<int>& cols) const;

  bool is_nonnegative() const;
  bool is_zero_one() const;
  bool row_is_zero_one(int i) const;

  // Entrywise comparison; dimensions must match, labels are ignored.
  bool operator==(const RationalMatrix& o) const;

  // Exact rank over Q (Gaussian elimination on rationals).
  int rank() const;

  // File format: optional '#' comments, first data line "m n", then m lines of
  // n tokens ("p" or "p/q", q>0). Throws ParseError with 1-based line/column.
  static RationalMatrix read(std::istream& in);
  static RationalMatrix read_file(const std::string& path);
  void write(std::ostream& out) const;  // gcd-reduced tokens, deterministic
  std::string to_text() const;

 private:
  int m_ = 0, n_ = 0;
  std::vector<Rational> entries_;
  std::vector<std::string> row_labels_, col_labels_;
};

// Distinct columns of S restricted to rows X, with multiplicities.
// Support order = first occurrence, left to right.
struct ColumnDistribution {
  std::vector<std::vector<Rational>> support;
  std::vector<long long> count;
  long long total = 0;
};
ColumnDistribution column_multiset(const RationalMatrix& S, const RowSet& X);

}  // namespace slackmat
