#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "slackmat/graph.hpp"
#include "slackmat/matrix.hpp"

namespace slackmat {

inline constexpr long long kStableSetCap = 4096;

struct StabRowRole {
  bool is_clique = false;
  int vertex = -1;      // nonnegativity row: vertex index
  uint64_t clique = 0;  // clique row: vertex mask
};

struct StabSlackWitness {
  Graph graph;            // vertices keep their nonnegativity row labels
  RationalMatrix matrix;  // nonredundant reduction the roles index into
  int empty_set_column = -1;
  std::vector<StabRowRole> row_roles;
  std::vector<uint64_t> column_roles;  // stable-set mask per column
};

// Slack matrix of the stable set polytope: one row per vertex (nonnegativity,
// labeled by the vertex) then per maximal clique in bron_kerbosch order
// (labeled "C:" + member labels); one column per stable set in ascending-mask
// order, the empty set first.  For an imperfect graph this is only the
// clique-relaxation matrix, not a slack matrix; screen with is_perfect.
// Throws length_error past `cap` stable sets.
RationalMatrix stab_slack(const Graph& g, long long cap = kStableSetCap);

// Decides whether S is the slack matrix of the stable set polytope of a
// perfect graph and recovers the graph with full row/column roles.  Works on
// the nonredundant reduction of S; every column with exactly rank(S)-1 zeros
// is tried left to right as the empty-set column, first success wins.  The
// verified graph must pass the exhaustive odd-hole/antihole perfection check,
// so inputs implying more than 24 vertices throw length_error.
std::optional<StabSlackWitness> recognize_stab_slack(const RationalMatrix& S);

nlohmann::json stab_witness_to_json(const StabSlackWitness& w);

// Both sides of the cutset/product correspondence, computed independently: a
// clique cutset of size k-1 in G, and a k-product structure of stab_slack(G)
// whose special rows are all nonnegativity rows.  `agree` records whether the
// two searches reach the same verdict (they must when G is perfect).
struct CutsetEquivalence {
  std::optional<CliqueCutset> cutset;
  bool product_found = false;
  bool agree = false;
};
CutsetEquivalence clique_cutset_equivalence(const Graph& g, int k);

}  // namespace slackmat
