#include "slackmat/stab.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <string>

#include "slackmat/decompose.hpp"
#include "slackmat/polyhedra.hpp"

namespace slackmat {

namespace {

// every stable set, ascending mask order; same subset listing (largest
// maximal set first, seen-set dedup) as count_stable_sets_capped
std::vector<uint64_t> all_stable_sets(const Graph& g, long long cap) {
  std::vector<uint64_t> masks;
  for (const auto& s : maximal_stable_sets(g)) {
    uint64_t m = 0;
    for (int v : s) m |= uint64_t{1} << v;
    masks.push_back(m);
  }
  std::stable_sort(masks.begin(), masks.end(), [](uint64_t a, uint64_t b) {
    return std::popcount(a) > std::popcount(b);
  });
  if (!masks.empty()) {
    int big = std::popcount(masks[0]);
    if (big >= 63 || (1LL << big) > cap)
      throw std::length_error("stab_slack: more than " + std::to_string(cap) + " stable sets");
  }
  std::set<uint64_t> seen;
  for (uint64_t m : masks) {
    uint64_t sub = m;
    while (true) {
      seen.insert(sub);
      if (static_cast<long long>(seen.size()) > cap)
        throw std::length_error("stab_slack: more than " + std::to_string(cap) + " stable sets");
      if (!sub) break;
      sub = (sub - 1) & m;
    }
  }
  return {seen.begin(), seen.end()};
}

std::string join_labels(const Graph& g, uint64_t mask, const char* sep) {
  std::string out;
  for (uint64_t t = mask; t; t &= t - 1) {
    if (!out.empty()) out += sep;
    out += g.label(std::countr_zero(t));
  }
  return out;
}

}  // namespace

RationalMatrix stab_slack(const Graph& g, long long cap) {
  int d = g.vertices();
  if (d < 1) throw std::invalid_argument("stab_slack: at least one vertex required");
  auto cliques = bron_kerbosch(g);
  std::vector<uint64_t> stables = all_stable_sets(g, cap);
  int m = d + static_cast<int>(cliques.size());
  int n = static_cast<int>(stables.size());
  RationalMatrix S(m, n);
  std::vector<std::string> rlab, clab;
  for (int v = 0; v < d; ++v) {
    rlab.push_back(g.label(v));
    for (int j = 0; j < n; ++j) S.at(v, j) = (stables[j] >> v & 1) ? 1 : 0;
  }
  for (size_t c = 0; c < cliques.size(); ++c) {
    uint64_t cm = 0;
    for (int v : cliques[c]) cm |= uint64_t{1} << v;
    rlab.push_back("C:" + join_labels(g, cm, ","));
    // a clique meets a stable set in at most one vertex, so 1-|C cap S| is 0/1
    for (int j = 0; j < n; ++j)
      S.at(d + static_cast<int>(c), j) = (cm & stables[j]) ? 0 : 1;
  }
  for (int j = 0; j < n; ++j) clab.push_back("{" + join_labels(g, stables[j], ",") + "}");
  S.set_row_labels(std::move(rlab));
  S.set_col_labels(std::move(clab));
  return S;
}

namespace {

std::optional<StabSlackWitness> try_empty_column(const RationalMatrix& T, int c, int d) {
  int m = T.rows(), n = T.cols();
  std::vector<int> vrows, crows;
  for (int i = 0; i < m; ++i) (T.at(i, c) == 0 ? vrows : crows).push_back(i);

  // u ~ v iff their rows never share a 1, i.e. {u,v} is in no stable set
  Graph g(d);
  {
    std::vector<std::string> labels;
    for (int r : vrows) labels.push_back(T.row_label(r));
    g.set_labels(std::move(labels));
  }
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b) {
      bool share = false;
      for (int j = 0; j < n && !share; ++j)
        share = T.at(vrows[a], j) == 1 && T.at(vrows[b], j) == 1;
      if (!share) g.add_edge(a, b);
    }

  // columns read as vertex sets; by the adjacency rule each is stable in g
  std::vector<uint64_t> sets(n, 0);
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < d; ++a)
      if (T.at(vrows[a], j) == 1) sets[j] |= uint64_t{1} << a;

  std::vector<int> single(d, -1);
  for (int j = 0; j < n; ++j)
    if (std::popcount(sets[j]) == 1) {
      int v = std::countr_zero(sets[j]);
      if (single[v] < 0) single[v] = j;
    }
  for (int v = 0; v < d; ++v)
    if (single[v] < 0) return std::nullopt;  // some singleton is not a column

  // candidate maximal cliques: zeros of each clique row on singleton columns
  std::vector<uint64_t> cand_cliques;
  for (int r : crows) {
    uint64_t cm = 0;
    for (int v = 0; v < d; ++v)
      if (T.at(r, single[v]) == 0) cm |= uint64_t{1} << v;
    cand_cliques.push_back(cm);
  }
  std::vector<uint64_t> bk;
  for (const auto& cl : bron_kerbosch(g)) {
    uint64_t cm = 0;
    for (int v : cl) cm |= uint64_t{1} << v;
    bk.push_back(cm);
  }
  std::vector<uint64_t> sorted_cand = cand_cliques;
  std::sort(sorted_cand.begin(), sorted_cand.end());
  std::sort(bk.begin(), bk.end());
  if (sorted_cand != bk) return std::nullopt;

  // maximal column sets must be exactly the maximal stable sets of g
  std::set<uint64_t> max_cols;
  for (int j = 0; j < n; ++j) {
    bool maximal = true;
    for (int j2 = 0; j2 < n && maximal; ++j2)
      maximal = j2 == j || (sets[j] | sets[j2]) != sets[j2] || sets[j] == sets[j2];
    if (maximal) max_cols.insert(sets[j]);
  }
  auto max_stables = maximal_stable_sets(g);
  std::set<uint64_t> max_true;
  for (const auto& s : max_stables) {
    uint64_t sm = 0;
    for (int v : s) sm |= uint64_t{1} << v;
    max_true.insert(sm);
  }
  if (max_cols != max_true) return std::nullopt;

  // column count must equal the number of stable sets of g
  StableCount sc = count_stable_sets_capped(max_stables, n);
  if (sc.exceeded || sc.count != n) return std::nullopt;

  // clique rows must read 1-|C cap S| everywhere
  for (size_t r = 0; r < crows.size(); ++r)
    for (int j = 0; j < n; ++j) {
      int p = std::popcount(cand_cliques[r] & sets[j]);
      if (p > 1 || T.at(crows[r], j) != 1 - p) return std::nullopt;
    }

  if (!is_perfect(g)) return std::nullopt;

  StabSlackWitness w;
  w.graph = std::move(g);
  w.matrix = T;
  w.empty_set_column = c;
  w.row_roles.resize(m);
  for (int a = 0; a < d; ++a) w.row_roles[vrows[a]] = {false, a, 0};
  for (size_t r = 0; r < crows.size(); ++r) w.row_roles[crows[r]] = {true, -1, cand_cliques[r]};
  w.column_roles = std::move(sets);
  return w;
}

}  // namespace

std::optional<StabSlackWitness> recognize_stab_slack(const RationalMatrix& S) {
  if (S.rows() == 0 || S.cols() == 0) return std::nullopt;
  if (!S.is_zero_one()) return std::nullopt;
  RationalMatrix T = make_nonredundant(S).matrix;
  int d = T.rank() - 1;
  if (d < 1) return std::nullopt;
  if (d > 24) throw std::length_error("recognize_stab_slack: implies more than 24 vertices");
  for (int c = 0; c < T.cols(); ++c) {
    int zeros = 0;
    for (int i = 0; i < T.rows(); ++i)
      if (T.at(i, c) == 0) ++zeros;
    if (zeros != d) continue;
    if (auto w = try_empty_column(T, c, d)) return w;
  }
  return std::nullopt;
}

nlohmann::json stab_witness_to_json(const StabSlackWitness& w) {
  nlohmann::json j;
  j["schema_version"] = 1;
  nlohmann::json graph;
  graph["vertices"] = w.graph.vertices();
  graph["labels"] = w.graph.labels();
  nlohmann::json edges = nlohmann::json::array();
  for (auto& [u, v] : w.graph.edges()) edges.push_back({u, v});
  graph["edges"] = std::move(edges);
  j["graph"] = std::move(graph);
  j["empty_set_column"] = w.empty_set_column;
  nlohmann::json rows = nlohmann::json::array();
  for (size_t i = 0; i < w.row_roles.size(); ++i) {
    const StabRowRole& r = w.row_roles[i];
    nlohmann::json jr;
    jr["label"] = w.matrix.row_label(static_cast<int>(i));
    if (r.is_clique) {
      jr["role"] = "clique";
      nlohmann::json members = nlohmann::json::array();
      for (uint64_t t = r.clique; t; t &= t - 1) members.push_back(w.graph.label(std::countr_zero(t)));
      jr["members"] = std::move(members);
    } else {
      jr["role"] = "vertex";
      jr["vertex"] = w.graph.label(r.vertex);
    }
    rows.push_back(std::move(jr));
  }
  j["rows"] = std::move(rows);
  nlohmann::json cols = nlohmann::json::array();
  for (uint64_t s : w.column_roles) {
    nlohmann::json set = nlohmann::json::array();
    for (uint64_t t = s; t; t &= t - 1) set.push_back(w.graph.label(std::countr_zero(t)));
    cols.push_back(std::move(set));
  }
  j["columns"] = std::move(cols);
  return j;
}

CutsetEquivalence clique_cutset_equivalence(const Graph& g, int k) {
  if (k < 1) throw std::invalid_argument("clique_cutset_equivalence: k >= 1 required");
  CutsetEquivalence out;
  out.cutset = find_clique_cutset(g, k - 1);
  RationalMatrix S = stab_slack(g);
  int d = g.vertices();
  TuplePredicate nonneg_rows = [d](const SpecialRowTuple& t) {
    for (int r : t.rows)
      if (r >= d) return false;  // vertex rows come first in stab_slack
    return true;
  };
  out.product_found = recognize_kproduct_filtered(S, k, nonneg_rows, nullptr).has_value();
  out.agree = out.cutset.has_value() == out.product_found;
  return out;
}

}  // namespace slackmat
