#pragma once

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "slackmat/matrix.hpp"

namespace slackmat {

// Sum decomposition over uniform leaves. Element labels are unique across the
// tree except that the two children of a two_sum share exactly the glue
// element (which is deleted by the sum).
struct MatroidSumTree {
  enum class Kind { uniform, one_sum, two_sum };
  Kind kind = Kind::uniform;
  int n = 0, k = 0;                   // uniform leaves: U_{n,k}
  std::vector<std::string> elements;  // uniform leaves: n labels
  std::unique_ptr<MatroidSumTree> left, right;
  std::string glue;  // two_sum

  MatroidSumTree() = default;
  MatroidSumTree(MatroidSumTree&&) = default;
  MatroidSumTree& operator=(MatroidSumTree&&) = default;
  MatroidSumTree clone() const;
};

// U_{n,k} with 2 <= n and 1 <= k <= n-1 (no loops or coloops).
// Default element labels e0..e{n-1}.
MatroidSumTree uniform_matroid(int n, int k, std::vector<std::string> elements = {});
MatroidSumTree one_sum(MatroidSumTree left, MatroidSumTree right);
MatroidSumTree two_sum(MatroidSumTree left, MatroidSumTree right, const std::string& glue);

std::vector<std::string> ground_set(const MatroidSumTree& t);  // left-to-right
int matroid_rank(const MatroidSumTree& t);
// Sorted bases (each a sorted label vector). Throws std::length_error over cap.
std::vector<std::vector<std::string>> matroid_bases(const MatroidSumTree& t,
                                                    long long cap = 200000);
MatroidSumTree dual_matroid(const MatroidSumTree& t);  // leafwise k -> n-k
void rename_element(MatroidSumTree& t, const std::string& from, const std::string& to);

// Slack matrix of the hypersimplex (the base polytope of U_{n,k}): columns are
// the k-subsets in ascending bitmask order; rows are the facet slacks x_e
// ("lo:e") and 1-x_e ("hi:e"). For k = 1 only the lo bank is facet-defining,
// for k = n-1 only the hi bank; both banks otherwise. pre: n >= 2, 1 <= k <= n-1.
RationalMatrix hypersimplex_slack(int n, int k);

struct BasePolytopeSlack {
  RationalMatrix matrix;
  std::vector<std::vector<std::string>> column_bases;  // sorted labels per column
};
// Recursive construction: leaves are hypersimplex slacks; a 1-sum multiplies
// the polytopes (1-product of slacks); a 2-sum on p glues them (2-product with
// left special row lo:p and right special row hi:p, either appended as the
// complement of the bank that is present when missing). The appended 2-product
// row is labeled cut:p.
BasePolytopeSlack base_polytope_slack(const MatroidSumTree& t);

struct MatroidRecognition {
  bool ok = false;
  std::string reason;
  MatroidSumTree tree;
  std::vector<std::vector<std::string>> bases;
};
// Inverse of base_polytope_slack up to row/column permutation, redundancy, and
// the inherent ambiguity of the slack matrix (connected parts are recovered up
// to duality; element names are fresh). The result is verified by regenerating
// the slack matrix and checking isomorphism with the nonredundant input.
MatroidRecognition recognize_matroid_slack(const RationalMatrix& S);

// Random sum tree for stress tests: `leaves` uniform leaves with n in [2,6],
// joined by random 1-/2-sums, keeping the base count at most max_bases.
MatroidSumTree random_matroid_tree(std::mt19937_64& rng, int leaves, long long max_bases);

nlohmann::json matroid_to_json(const MatroidSumTree& t);
MatroidSumTree matroid_from_json(const nlohmann::json& j);

}  // namespace slackmat
