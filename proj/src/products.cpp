#include "slackmat/products.hpp"

#include <algorithm>
#include <stdexcept>

namespace slackmat {

RationalMatrix one_product(const RationalMatrix& S1, const RationalMatrix& S2) {
  int m1 = S1.rows(), n1 = S1.cols(), m2 = S2.rows(), n2 = S2.cols();
  if (n1 == 0 || n2 == 0) throw std::invalid_argument("one_product: empty factor");
  RationalMatrix P(m1 + m2, n1 * n2);
  for (int p = 0; p < n1; ++p)
    for (int q = 0; q < n2; ++q) {
      int c = p * n2 + q;
      for (int i = 0; i < m1; ++i) P.at(i, c) = S1.at(i, p);
      for (int i = 0; i < m2; ++i) P.at(m1 + i, c) = S2.at(i, q);
    }
  return P;
}

namespace {

// pattern of column c on tuple rows: -1 invalid, 0 all-zero, j>=1 for e_j
int column_pattern(const RationalMatrix& S, const SpecialRowTuple& t, int c) {
  int ones = 0, where = -1;
  for (size_t i = 0; i < t.rows.size(); ++i) {
    const Rational& v = S.at(t.rows[i], c);
    if (v == 1) {
      ++ones;
      where = static_cast<int>(i);
    } else if (v != 0) {
      return -1;
    }
  }
  if (ones > 1) return -1;
  return ones == 0 ? 0 : where + 1;
}

}  // namespace

BlockSplitResult split_blocks(const RationalMatrix& S, const SpecialRowTuple& t) {
  int k = t.k();
  for (int r : t.rows) {
    if (r < 0 || r >= S.rows())
      return {std::nullopt, "special row index out of range"};
    if (!S.row_is_zero_one(r))
      return {std::nullopt, "special row '" + S.row_label(r) + "' is not 0/1"};
  }
  for (size_t a = 0; a < t.rows.size(); ++a)
    for (size_t b = a + 1; b < t.rows.size(); ++b)
      if (t.rows[a] == t.rows[b]) return {std::nullopt, "repeated special row"};

  BlockSplit split;
  split.blocks.assign(k, {});
  for (int c = 0; c < S.cols(); ++c) {
    int p = column_pattern(S, t, c);
    if (p < 0)
      return {std::nullopt, "column '" + S.col_label(c) +
                                "' does not restrict to a pattern in {0, e_1..e_" +
                                std::to_string(k - 1) + "}"};
    split.blocks[p].push_back(c);
  }
  for (int j = 0; j < k; ++j)
    if (split.blocks[j].empty())
      return {std::nullopt, "pattern " + (j == 0 ? std::string("0") : "e_" + std::to_string(j)) +
                                " does not occur in any column"};
  return {std::move(split), ""};
}

std::vector<SpecialRowTuple> find_special_tuples(const RationalMatrix& S, int k) {
  if (k < 1) throw std::invalid_argument("find_special_tuples: k >= 1 required");
  std::vector<SpecialRowTuple> out;
  if (k == 1) {
    out.push_back({});
    return out;
  }
  std::vector<int> zo;
  for (int i = 0; i < S.rows(); ++i)
    if (S.row_is_zero_one(i)) zo.push_back(i);
  // ordered (k-1)-tuples of distinct 0/1 rows, lexicographic
  std::vector<int> tup(k - 1, -1);
  std::vector<char> used(S.rows(), 0);
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == k - 1) {
      SpecialRowTuple t{tup};
      if (split_blocks(S, t).split) out.push_back(std::move(t));
      return;
    }
    for (int r : zo) {
      if (used[r]) continue;
      used[r] = 1;
      tup[pos] = r;
      self(self, pos + 1);
      used[r] = 0;
    }
  };
  rec(rec, 0);
  return out;
}

RationalMatrix k_product(const RationalMatrix& S1, const SpecialRowTuple& t1,
                         const RationalMatrix& S2, const SpecialRowTuple& t2) {
  if (t1.k() != t2.k()) throw std::invalid_argument("k_product: mismatched k");
  int k = t1.k();
  if (k == 1) return one_product(S1, S2);

  auto b1 = split_blocks(S1, t1), b2 = split_blocks(S2, t2);
  if (!b1.split) throw std::invalid_argument("k_product: left tuple invalid: " + b1.error);
  if (!b2.split) throw std::invalid_argument("k_product: right tuple invalid: " + b2.error);

  RowSet sp1(t1.rows), sp2(t2.rows);
  RowSet keep1 = sp1.complement(S1.rows()), keep2 = sp2.complement(S2.rows());
  int m1 = keep1.size(), m2 = keep2.size();

  int ncols = 0;
  std::vector<int> block_cols(k);
  for (int j = 0; j < k; ++j) {
    block_cols[j] = static_cast<int>(b1.split->blocks[j].size() * b2.split->blocks[j].size());
    ncols += block_cols[j];
  }
  RationalMatrix P(m1 + m2 + (k - 1), ncols);
  int base = 0;
  for (int j = 0; j < k; ++j) {
    const auto& c1 = b1.split->blocks[j];
    const auto& c2 = b2.split->blocks[j];
    for (size_t p = 0; p < c1.size(); ++p)
      for (size_t q = 0; q < c2.size(); ++q) {
        int c = base + static_cast<int>(p * c2.size() + q);
        int out = 0;
        for (int i : keep1.indices()) P.at(out++, c) = S1.at(i, c1[p]);
        for (int i : keep2.indices()) P.at(out++, c) = S2.at(i, c2[q]);
        for (int s = 1; s < k; ++s) P.at(out++, c) = (s == j) ? 1 : 0;
      }
    base += block_cols[j];
  }
  return P;
}

RationalMatrix augment_factor(const RationalMatrix& S, const SpecialRowTuple& t) {
  for (int r : t.rows)
    if (r < 0 || r >= S.rows())
      throw std::invalid_argument("augment_factor: row index out of range");
  RationalMatrix A(S.rows() + 1, S.cols());
  for (int i = 0; i < S.rows(); ++i)
    for (int j = 0; j < S.cols(); ++j) A.at(i, j) = S.at(i, j);
  for (int j = 0; j < S.cols(); ++j) {
    Rational v(1);
    for (int r : t.rows) v -= S.at(r, j);
    A.at(S.rows(), j) = v;
  }
  std::vector<std::string> labels = S.row_labels();
  std::string aug = "aug";
  while (std::find(labels.begin(), labels.end(), aug) != labels.end()) aug += "'";
  labels.push_back(aug);
  A.set_row_labels(std::move(labels));
  A.set_col_labels(S.col_labels());
  return A;
}

std::vector<std::vector<Rational>> glued_product_vertices(
    const std::vector<std::vector<Rational>>& V1,
    const std::vector<std::vector<Rational>>& V2, int k) {
  if (k < 1) throw std::invalid_argument("glued_product_vertices: k >= 1 required");
  std::vector<std::vector<Rational>> out;
  for (const auto& x : V1)
    for (const auto& y : V2) {
      if (static_cast<int>(x.size()) < k - 1 || static_cast<int>(y.size()) < k - 1)
        throw std::invalid_argument("glued_product_vertices: vertex shorter than k-1");
      bool match = true;
      for (int i = 0; i < k - 1 && match; ++i) match = x[i] == y[i];
      if (!match) continue;
      std::vector<Rational> v = x;
      v.insert(v.end(), y.begin() + (k - 1), y.end());
      out.push_back(std::move(v));
    }
  return out;
}

}  // namespace slackmat
