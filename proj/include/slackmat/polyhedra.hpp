#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slackmat/matrix.hpp"

namespace slackmat {

// aff(columns of S) = { base + basis * t }, basis columns independent.
struct AffineHull {
  std::vector<Rational> base;
  std::vector<std::vector<Rational>> basis;  // each vector lives in R^m
  int dim() const { return static_cast<int>(basis.size()); }
};
AffineHull affine_hull(const RationalMatrix& S);  // pre: n >= 1

// Convex-combination coefficients when p lies in conv(columns of S).
std::optional<std::vector<Rational>> in_convex_hull(const RationalMatrix& S,
                                                    const std::vector<Rational>& p);

enum class SlackStatus { yes, no, too_large };

struct SlackVerdict {
  SlackStatus status;
  int dim = -1;  // rank - 1 on yes
  std::optional<std::vector<Rational>> witness_vertex;  // vertex of Q not a column
  std::optional<std::vector<Rational>> witness_ray;     // recession direction
  std::string reason;
};

// Decides whether the nonnegative matrix S is the slack matrix of a polytope:
// with Q = aff(columns) intersected with the nonnegative orthant, answer yes
// iff Q is bounded and every vertex of Q is a column. Columns are deduplicated
// first. Vertices are enumerated over d-subsets of the m sign constraints;
// when C(m,d) exceeds max_candidates the verdict is too_large.
// Conventions below rank 2: all-zero => no; rank 1 => yes iff a single
// distinct nonzero column (a point).
SlackVerdict is_slack_matrix(const RationalMatrix& S,
                             unsigned long long max_candidates = 2000000ULL);

// Dimension of the polytope a slack matrix describes.
int polytope_dim(const RationalMatrix& S);  // rank(S) - 1

struct Nonredundant {
  RationalMatrix matrix;
  std::vector<std::string> removed_rows;  // labels, in removal order
  std::vector<std::string> removed_cols;
};

// Normal form for slack-matrix inputs (pre: S nonnegative): drops duplicate
// rows/columns, rows with no zero or no nonzero entry, rows whose zero set is
// strictly contained in another row's, and columns inside the convex hull of
// the others. Runs to a fixpoint; never empties the matrix (degenerate inputs
// can shrink to 1x1). Idempotent.
Nonredundant make_nonredundant(const RationalMatrix& S);

}  // namespace slackmat
