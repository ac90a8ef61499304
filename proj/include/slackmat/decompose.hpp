#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "json.hpp"
#include "slackmat/matrix.hpp"
#include "slackmat/products.hpp"

namespace slackmat {

// Candidate zero cuts are accepted below this value and then confirmed with
// the exact combinatorial independence test.
inline constexpr double kZeroCutTol = 1e-9;

struct SubmodularOracle {
  int ground;
  std::function<double(const RowSet&)> f;
};

struct CutCandidate {
  RowSet cut;
  double value;
};

// Queyranne's pendant-pair scheme for symmetric submodular minimization over
// proper nonempty subsets; O(ground^3) oracle calls. pre: ground >= 2.
CutCandidate queyranne_min(const SubmodularOracle& o);
std::vector<CutCandidate> queyranne_candidates(const SubmodularOracle& o);

// I(C_X ; C_{complement}) in bits for a uniformly random column of S.
// Returns exactly 0.0 when the exact independence test passes.
double mutual_information(const RationalMatrix& S, const RowSet& X);

// Exact test: the joint column distribution factors over (X, complement):
// every (a,b) value pair occurs and n*mu(a,b) == mu_X(a)*mu_Xbar(b).
bool is_independent_partition(const RationalMatrix& S, const RowSet& X);

struct OneProduct {
  RationalMatrix s1, s2;
  RowSet x;  // rows of s1 within S
  // S.at(i,j) == P.at(row_map[i], col_map[j]) for P = one_product(s1, s2)
  std::vector<int> row_map, col_map;
};
// pre: S has >= 2 rows. Multiplicity-aware: duplicate columns are factored
// into integral column multiplicities of the factors (gcd normalization).
std::optional<OneProduct> recognize_1product(const RationalMatrix& S);

// The unique partition of the rows into minimal zero sets of f; blocks sorted
// by smallest row index.
std::vector<RowSet> irreducible_partition(const RationalMatrix& S);

struct KProduct {
  int k = 1;
  RationalMatrix s1, s2;
  SpecialRowTuple t1, t2;         // special rows within s1 / s2
  std::vector<int> special_rows;  // rows of S consumed as the special tuple
  // S.at(i,j) == P.at(row_map[i], col_map[j]) for P = k_product(s1,t1,s2,t2)
  std::vector<int> row_map, col_map;
};

// Tries special tuples in lexicographic order; for each, splits blocks and
// looks for a common zero cut of all block matrices (components of the
// pairwise-dependence graph, exact confirmation). Factors must be strictly
// smaller than S in both dimensions. First success wins; deterministic.
std::optional<KProduct> recognize_kproduct(const RationalMatrix& S, int k);

using TuplePredicate = std::function<bool(const SpecialRowTuple&)>;
using FactorPredicate = std::function<bool(const KProduct&)>;
std::optional<KProduct> recognize_kproduct_filtered(const RationalMatrix& S,
                                                    int k,
                                                    const TuplePredicate& tuple_ok,
                                                    const FactorPredicate& factors_ok);

struct FactorizationTree {
  enum class Kind { leaf, product };
  Kind kind = Kind::leaf;
  RationalMatrix matrix;  // leaf payload
  int k = 0;
  std::unique_ptr<FactorizationTree> left, right;
  SpecialRowTuple t_left, t_right;
  std::vector<std::string> special_labels;  // labels of the consumed rows of S
  std::vector<int> row_map, col_map;        // original -> expansion
};

FactorizationTree tree_from_kproduct(const RationalMatrix& S, const KProduct& kp);
RationalMatrix expand(const FactorizationTree& t);
nlohmann::json tree_to_json(const FactorizationTree& t);
FactorizationTree tree_from_json(const nlohmann::json& j);

}  // namespace slackmat
