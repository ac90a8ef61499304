#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slackmat/matrix.hpp"

namespace slackmat {

// Ordered tuple of k-1 distinct special row indices (empty for k=1).
// A tuple is valid for S when those rows are 0/1 and the column restrictions
// realize exactly the patterns 0, e_1, ..., e_{k-1}, each at least once.
struct SpecialRowTuple {
  std::vector<int> rows;
  int k() const { return static_cast<int>(rows.size()) + 1; }
};

// Column blocks of a k-product: block j holds the columns whose restriction to
// the special rows is the pattern e_j (block 0: all-zero pattern).
struct BlockSplit {
  std::vector<std::vector<int>> blocks;
};

struct BlockSplitResult {
  std::optional<BlockSplit> split;
  std::string error;  // names the violating column on failure
};

// Columns of the product are all stacked pairs (S1 column, S2 column), S1-major:
// column p*n2+q stacks S1 col p over S2 col q. Labels are fresh defaults.
RationalMatrix one_product(const RationalMatrix& S1, const RationalMatrix& S2);

// All valid ordered (k-1)-tuples in lexicographic order.
std::vector<SpecialRowTuple> find_special_tuples(const RationalMatrix& S, int k);

BlockSplitResult split_blocks(const RationalMatrix& S, const SpecialRowTuple& t);

// Glue the k column blocks: block j of the result is the 1-product of block j
// of S1 and block j of S2 (special rows removed), blocks concatenated in
// order, then k-1 fresh special rows appended (0 under block 0, row i gets 1
// exactly under block i). k = 1 degenerates to one_product.
RationalMatrix k_product(const RationalMatrix& S1, const SpecialRowTuple& t1,
                         const RationalMatrix& S2, const SpecialRowTuple& t2);

// Appends the row 1 - sum of the special rows (the factor of a k-product of
// slack matrices stays a slack matrix with this row added).
RationalMatrix augment_factor(const RationalMatrix& S, const SpecialRowTuple& t);

// Vertex list of the glued product. Vertices are coordinate vectors whose
// first k-1 coordinates are the special (0/1) ones. k=1: Cartesian product
// x ++ y. k>=2: pairs with equal special prefixes, the duplicate prefix of y
// dropped: x ++ y[k-1..].
std::vector<std::vector<Rational>> glued_product_vertices(
    const std::vector<std::vector<Rational>>& V1,
    const std::vector<std::vector<Rational>>& V2, int k);

}  // namespace slackmat
