#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "slackmat/matrix.hpp"

namespace slackmat {

struct Isomorphism {
  std::vector<int> row_perm;  // B.at(i,j) == A.at(row_perm[i], col_perm[j])
  std::vector<int> col_perm;
};

// Permutation equivalence of matrices: refinement on row/column invariants,
// then individualization with backtracking. Deterministic.
std::optional<Isomorphism> is_isomorphic(const RationalMatrix& A,
                                         const RationalMatrix& B);

}  // namespace slackmat
