#include <algorithm>
#include <bit>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "slackmat/graph.hpp"
#include "slackmat/isomorphism.hpp"
#include "slackmat/matroid.hpp"
#include "slackmat/polyhedra.hpp"
#include "slackmat/stab.hpp"

using namespace slackmat;

namespace {

Graph make_graph(int d, const std::vector<std::pair<int, int>>& edges) {
  Graph g(d);
  for (auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

Graph path(int d) {
  Graph g(d);
  for (int i = 0; i + 1 < d; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph cycle(int d) {
  Graph g = path(d);
  g.add_edge(d - 1, 0);
  return g;
}

Graph complete(int d) {
  Graph g(d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) g.add_edge(i, j);
  return g;
}

// oracle: subsets that are cliques and maximal, by direct enumeration
std::set<std::vector<int>> brute_max_cliques(const Graph& g) {
  int d = g.vertices();
  std::vector<uint64_t> cliques;
  for (uint64_t m = 1; m < (uint64_t{1} << d); ++m) {
    bool ok = true;
    for (uint64_t t = m; t && ok; t &= t - 1) {
      int v = std::countr_zero(t);
      ok = (g.neighbors(v) & m) == (m ^ (uint64_t{1} << v));
    }
    if (ok) cliques.push_back(m);
  }
  std::set<std::vector<int>> out;
  for (uint64_t m : cliques) {
    bool maximal = true;
    for (uint64_t m2 : cliques)
      if (m2 != m && (m | m2) == m2) maximal = false;
    if (!maximal) continue;
    std::vector<int> v;
    for (uint64_t t = m; t; t &= t - 1) v.push_back(std::countr_zero(t));
    out.insert(v);
  }
  return out;
}

// oracle: stable sets counted by direct enumeration
long long brute_stable_count(const Graph& g) {
  int d = g.vertices();
  long long count = 0;
  for (uint64_t m = 0; m < (uint64_t{1} << d); ++m) {
    bool stable = true;
    for (uint64_t t = m; t && stable; t &= t - 1)
      stable = (g.neighbors(std::countr_zero(t)) & m) == 0;
    if (stable) ++count;
  }
  return count;
}

Graph random_graph(std::mt19937_64& rng, int d, int percent) {
  Graph g(d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (static_cast<int>(rng() % 100) < percent) g.add_edge(i, j);
  return g;
}

RationalMatrix shuffled(const RationalMatrix& S, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> rp(S.rows()), cp(S.cols());
  for (int i = 0; i < S.rows(); ++i) rp[i] = i;
  for (int j = 0; j < S.cols(); ++j) cp[j] = j;
  for (int i = S.rows() - 1; i > 0; --i) std::swap(rp[i], rp[rng() % (i + 1)]);
  for (int j = S.cols() - 1; j > 0; --j) std::swap(cp[j], cp[rng() % (j + 1)]);
  return S.permuted(rp, cp);
}

}  // namespace

TEST_CASE("graph construction, complement, induced, connectivity") {
  Graph g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(g.vertices() == 4);
  CHECK(g.edge_count() == 3);
  CHECK(g.has_edge(1, 0));
  CHECK(!g.has_edge(0, 2));
  CHECK(g.is_connected());
  CHECK_THROWS_AS(g.add_edge(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 9), std::out_of_range);

  Graph c = g.complement();
  CHECK(c.edge_count() == 3);
  CHECK(c.has_edge(0, 2));
  CHECK(!c.has_edge(0, 1));

  Graph h = cycle(5).induced(0b00111);  // three consecutive cycle vertices
  CHECK(h.vertices() == 3);
  CHECK(h.edge_count() == 2);
  CHECK(graphs_isomorphic(h, path(3)));

  CHECK(!make_graph(3, {{0, 1}}).is_connected());
  CHECK(Graph(1).is_connected());

  Graph lab(2);
  lab.set_labels({"x", "y"});
  CHECK(lab.label(1) == "y");
  CHECK_THROWS_AS(lab.set_labels({"x"}), std::invalid_argument);
  CHECK_THROWS_AS(lab.set_labels({"x", "x"}), std::invalid_argument);
}

TEST_CASE("graph file format round trip and parse errors") {
  Graph g = make_graph(4, {{0, 1}, {1, 3}, {2, 3}});
  std::string text = g.to_text();
  std::istringstream in(text);
  CHECK(Graph::read(in) == g);

  auto fails = [](const std::string& s) {
    std::istringstream is(s);
    CHECK_THROWS_AS(Graph::read(is), ParseError);
  };
  fails("");
  fails("2");
  fails("x 1\n0 1\n");
  fails("2 1\n0 2\n");     // out of range
  fails("2 1\n0 0\n");     // loop
  fails("3 2\n0 1\n0 1");  // duplicate edge
  fails("2 2\n0 1\n");     // missing endpoints

  std::istringstream ok("# comment\n3 1 # trailing\n0 2\n");
  CHECK(Graph::read(ok) == make_graph(3, {{0, 2}}));

  std::istringstream err("3 1\n0 9\n");
  try {
    Graph::read(err);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.column == 3);
  }
}

TEST_CASE("bron_kerbosch pinned examples") {
  CHECK(bron_kerbosch(complete(3)) == std::vector<std::vector<int>>{{0, 1, 2}});
  CHECK(bron_kerbosch(Graph(3)) == std::vector<std::vector<int>>{{0}, {1}, {2}});
  auto c5 = bron_kerbosch(cycle(5));
  CHECK(c5 == std::vector<std::vector<int>>{{0, 1}, {0, 4}, {1, 2}, {2, 3}, {3, 4}});
  CHECK(bron_kerbosch(Graph(0)).empty());
}

TEST_CASE("bron_kerbosch equals brute-force maximal cliques on random graphs") {
  std::mt19937_64 rng(71);
  for (int it = 0; it < 40; ++it) {
    Graph g = random_graph(rng, 2 + static_cast<int>(rng() % 7), 10 + static_cast<int>(rng() % 80));
    auto got = bron_kerbosch(g);
    std::set<std::vector<int>> want = brute_max_cliques(g);
    CHECK(std::set<std::vector<int>>(got.begin(), got.end()) == want);
    CHECK(got.size() == want.size());  // no repeats
    CHECK(std::is_sorted(got.begin(), got.end()));
  }
}

TEST_CASE("maximal stable sets") {
  CHECK(maximal_stable_sets(complete(3)) == std::vector<std::vector<int>>{{0}, {1}, {2}});
  CHECK(maximal_stable_sets(path(3)) == std::vector<std::vector<int>>{{0, 2}, {1}});
  auto c5 = maximal_stable_sets(cycle(5));
  CHECK(c5 == std::vector<std::vector<int>>{{0, 2}, {0, 3}, {1, 3}, {1, 4}, {2, 4}});
}

TEST_CASE("count_stable_sets_capped") {
  StableCount a = count_stable_sets_capped({{1}, {0, 2}}, 5);
  CHECK(!a.exceeded);
  CHECK(a.count == 5);  // {}, {1}, {0}, {2}, {0,2}

  StableCount b = count_stable_sets_capped({{0, 1, 2}}, 7);
  CHECK(b.exceeded);  // 2^3 = 8 > 7, early guard

  StableCount c = count_stable_sets_capped({{0}}, 2);
  CHECK(!c.exceeded);
  CHECK(c.count == 2);

  StableCount d = count_stable_sets_capped({}, 10);
  CHECK(!d.exceeded);
  CHECK(d.count == 0);

  // overlapping sets are not double counted
  StableCount e = count_stable_sets_capped({{0, 1}, {1, 2}}, 100);
  CHECK(!e.exceeded);
  CHECK(e.count == 6);  // {}, 0, 1, 2, 01, 12
}

TEST_CASE("capped count equals brute force on random graphs up to 12 vertices") {
  std::mt19937_64 rng(72);
  for (int it = 0; it < 25; ++it) {
    Graph g = random_graph(rng, 1 + static_cast<int>(rng() % 12), 20 + static_cast<int>(rng() % 60));
    StableCount sc = count_stable_sets_capped(maximal_stable_sets(g), 1LL << g.vertices());
    REQUIRE(!sc.exceeded);
    CHECK(sc.count == brute_stable_count(g));
  }
}

TEST_CASE("is_perfect") {
  CHECK(is_perfect(cycle(4)));
  CHECK(!is_perfect(cycle(5)));
  CHECK(is_perfect(cycle(6)));
  CHECK(!is_perfect(cycle(7)));
  CHECK(!is_perfect(cycle(7).complement()));  // odd antihole
  CHECK(is_perfect(complete(6)));
  CHECK(is_perfect(path(8)));
  Graph big(25);
  CHECK_THROWS_AS(is_perfect(big), std::length_error);
  std::mt19937_64 rng(73);
  for (int it = 0; it < 10; ++it) CHECK(is_perfect(random_interval_graph(rng, 8)));
}

TEST_CASE("stab_slack pinned examples") {
  // K_2: stable sets {}, {0}, {1}; one clique row
  RationalMatrix k2 = stab_slack(complete(2));
  REQUIRE(k2.rows() == 3);
  REQUIRE(k2.cols() == 3);
  RationalMatrix i3(3, 3);
  for (int i = 0; i < 3; ++i) i3.at(i, i) = 1;
  CHECK(is_isomorphic(k2, i3).has_value());

  // path a-b-c
  Graph p3 = path(3);
  p3.set_labels({"a", "b", "c"});
  RationalMatrix s = stab_slack(p3);
  REQUIRE(s.rows() == 5);
  REQUIRE(s.cols() == 5);
  CHECK(s.row_labels() == std::vector<std::string>{"a", "b", "c", "C:a,b", "C:b,c"});
  CHECK(s.col_labels() ==
        std::vector<std::string>{"{}", "{a}", "{b}", "{c}", "{a,c}"});
  RationalMatrix want(5, 5);
  int entries[5][5] = {{0, 1, 0, 0, 1},
                       {0, 0, 1, 0, 0},
                       {0, 0, 0, 1, 1},
                       {1, 0, 0, 1, 0},
                       {1, 1, 0, 0, 0}};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) want.at(i, j) = entries[i][j];
  CHECK(s == want);

  // two isolated vertices: all four subsets are stable, cliques are singletons
  RationalMatrix e2 = stab_slack(Graph(2));
  REQUIRE(e2.rows() == 4);
  REQUIRE(e2.cols() == 4);
  RationalMatrix want2(4, 4);
  int entries2[4][4] = {{0, 1, 0, 1}, {0, 0, 1, 1}, {1, 0, 1, 0}, {1, 1, 0, 0}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) want2.at(i, j) = entries2[i][j];
  CHECK(e2 == want2);

  CHECK_THROWS_AS(stab_slack(Graph(0)), std::invalid_argument);
  CHECK_THROWS_AS(stab_slack(Graph(13)), std::length_error);  // 2^13 stable sets
  CHECK(stab_slack(Graph(12), 1LL << 12).cols() == 1 << 12);
}

TEST_CASE("stab_slack of a perfect graph is a slack matrix of dimension d") {
  std::vector<Graph> gs = {path(3), path(4), complete(4), cycle(6),
                           make_graph(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}})};  // paw
  for (const Graph& g : gs) {
    RationalMatrix s = stab_slack(g);
    SlackVerdict v = is_slack_matrix(s);
    CHECK(v.status == SlackStatus::yes);
    CHECK(v.dim == g.vertices());
  }
}

TEST_CASE("recognize_stab_slack round trips") {
  Graph p3 = path(3);
  p3.set_labels({"a", "b", "c"});
  auto w = recognize_stab_slack(shuffled(stab_slack(p3), 9));
  REQUIRE(w.has_value());
  CHECK(graphs_isomorphic(w->graph, path(3)));
  CHECK(w->column_roles.size() == 5);
  // the invariant tying roles to the empty-set column
  for (size_t i = 0; i < w->row_roles.size(); ++i) {
    bool zero = w->matrix.at(static_cast<int>(i), w->empty_set_column) == 0;
    CHECK(w->row_roles[i].is_clique == !zero);
  }
  // vertices keep the labels of the rows tagged as nonnegativity rows (the
  // candidate column is not always the original empty set: a stab slack can
  // admit several valid role assignments, first one in column order wins)
  std::set<std::string> vl(w->graph.labels().begin(), w->graph.labels().end());
  std::set<std::string> nn;
  for (size_t i = 0; i < w->row_roles.size(); ++i)
    if (!w->row_roles[i].is_clique) nn.insert(w->matrix.row_label(static_cast<int>(i)));
  CHECK(vl == nn);

  RationalMatrix i3(3, 3);
  for (int i = 0; i < 3; ++i) i3.at(i, i) = 1;
  auto wk2 = recognize_stab_slack(i3);
  REQUIRE(wk2.has_value());
  CHECK(graphs_isomorphic(wk2->graph, complete(2)));

  std::vector<Graph> gs = {complete(4), cycle(6), Graph(3),
                           make_graph(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}}),
                           make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}})};  // star
  unsigned seed = 40;
  for (const Graph& g : gs) {
    auto wg = recognize_stab_slack(shuffled(stab_slack(g), seed++));
    REQUIRE(wg.has_value());
    CHECK(graphs_isomorphic(wg->graph, g));
  }

  std::mt19937_64 rng(74);
  for (int it = 0; it < 6; ++it) {
    Graph g = random_interval_graph(rng, 4 + static_cast<int>(rng() % 4));
    auto wg = recognize_stab_slack(shuffled(stab_slack(g), seed++));
    REQUIRE(wg.has_value());
    CHECK(graphs_isomorphic(wg->graph, g));
  }
}

TEST_CASE("recognize_stab_slack determinism and JSON shape") {
  RationalMatrix s = shuffled(stab_slack(path(4)), 17);
  auto w1 = recognize_stab_slack(s);
  auto w2 = recognize_stab_slack(s);
  REQUIRE(w1.has_value());
  REQUIRE(w2.has_value());
  auto j1 = stab_witness_to_json(*w1), j2 = stab_witness_to_json(*w2);
  CHECK(j1 == j2);
  CHECK(j1["schema_version"] == 1);
  CHECK(j1["graph"]["vertices"] == 4);
  CHECK(j1["rows"].size() == w1->matrix.rows());
  CHECK(j1["columns"].size() == w1->matrix.cols());
}

TEST_CASE("recognize_stab_slack rejections") {
  // odd hole: the clique relaxation of C_5 passes every list test but fails
  // the perfection check
  CHECK(!recognize_stab_slack(stab_slack(cycle(5))).has_value());
  CHECK(!recognize_stab_slack(stab_slack(cycle(7))).has_value());
  CHECK(!recognize_stab_slack(stab_slack(cycle(7).complement())).has_value());

  RationalMatrix notzo(2, 2);
  notzo.at(0, 0) = 2;
  notzo.at(1, 1) = 1;
  CHECK(!recognize_stab_slack(notzo).has_value());

  // hypersimplex slack: every column has 4 zeros but rank-1 is 3
  CHECK(!recognize_stab_slack(hypersimplex_slack(4, 2)).has_value());

  RationalMatrix empty;
  CHECK(!recognize_stab_slack(empty).has_value());
}

TEST_CASE("find_clique_cutset") {
  auto cut = find_clique_cutset(path(4), 1);
  REQUIRE(cut.has_value());
  CHECK(cut->cutset == 0b0010);
  CHECK(cut->part1 == 0b0001);
  CHECK(cut->part2 == 0b1100);

  CHECK(!find_clique_cutset(cycle(4), 1).has_value());
  CHECK(!find_clique_cutset(cycle(4), 2).has_value());
  CHECK(!find_clique_cutset(complete(3), 0).has_value());
  CHECK(!find_clique_cutset(complete(3), 1).has_value());

  auto disc = find_clique_cutset(make_graph(3, {{0, 1}}), 0);
  REQUIRE(disc.has_value());
  CHECK(disc->cutset == 0);
  CHECK(disc->part1 == 0b011);
  CHECK(disc->part2 == 0b100);

  // chorded 4-cycle: the chord {1,3} separates 0 from 2
  auto diamond = find_clique_cutset(make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {1, 3}}), 2);
  REQUIRE(diamond.has_value());
  CHECK(diamond->cutset == 0b1010);
}

TEST_CASE("clique cutset equivalence on pinned graphs") {
  CutsetEquivalence p3 = clique_cutset_equivalence(path(3), 2);
  CHECK(p3.cutset.has_value());
  CHECK(p3.cutset->cutset == 0b010);
  CHECK(p3.product_found);
  CHECK(p3.agree);

  CutsetEquivalence disc = clique_cutset_equivalence(make_graph(3, {{0, 1}}), 1);
  CHECK(disc.cutset.has_value());
  CHECK(disc.product_found);
  CHECK(disc.agree);

  CutsetEquivalence k3 = clique_cutset_equivalence(complete(3), 2);
  CHECK(!k3.cutset.has_value());
  CHECK(!k3.product_found);
  CHECK(k3.agree);
}

TEST_CASE("clique cutset equivalence sweep over small perfect graphs") {
  std::vector<Graph> gs = {path(3),     path(4),     path(5),    cycle(4),
                           cycle(6),    complete(3), complete(4), Graph(4),
                           make_graph(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}}),
                           make_graph(5, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}}),
                           make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}),
                           make_graph(6, {{0, 1}, {2, 3}, {4, 5}})};
  std::mt19937_64 rng(75);
  for (int it = 0; it < 5; ++it) gs.push_back(random_interval_graph(rng, 5 + static_cast<int>(rng() % 2)));
  for (const Graph& g : gs) {
    REQUIRE(is_perfect(g));
    for (int k = 1; k <= 3; ++k) {
      CutsetEquivalence eq = clique_cutset_equivalence(g, k);
      CHECK(eq.agree);
    }
  }
}
