#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "slackmat/isomorphism.hpp"
#include "slackmat/matroid.hpp"
#include "slackmat/polyhedra.hpp"

using namespace slackmat;

namespace {

RationalMatrix from_rows(const std::vector<std::vector<int>>& rows) {
  RationalMatrix S(static_cast<int>(rows.size()),
                   static_cast<int>(rows[0].size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      S.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  return S;
}

bool base_has(const std::vector<std::string>& b, const std::string& e) {
  return std::find(b.begin(), b.end(), e) != b.end();
}

// Dual route: the columns of the constructed slack matrix must enumerate the
// independently computed base family, and every row of a surviving element
// must be the 0/1 indicator of that element against the column's base. Rows
// named after glued-away elements and cut rows are facet slacks of the glued
// polytope with no indicator meaning; they only need to stay 0/1.
void check_slack_against_bases(const MatroidSumTree& t) {
  BasePolytopeSlack bps = base_polytope_slack(t);
  auto bases = matroid_bases(t);
  auto gv = ground_set(t);
  std::set<std::string> ground(gv.begin(), gv.end());
  std::set<std::vector<std::string>> from_cols(bps.column_bases.begin(),
                                               bps.column_bases.end());
  std::set<std::vector<std::string>> from_tree(bases.begin(), bases.end());
  CHECK(from_cols == from_tree);
  CHECK(bps.column_bases.size() == from_cols.size());  // no duplicate columns
  for (int i = 0; i < bps.matrix.rows(); ++i) {
    const std::string& lab = bps.matrix.row_label(i);
    int member_value = -1;  // row value when the element is in the base
    if (lab.rfind("lo:", 0) == 0) member_value = 1;
    if (lab.rfind("hi:", 0) == 0) member_value = 0;
    if (member_value < 0 || !ground.count(lab.substr(3))) {
      CHECK(bps.matrix.row_is_zero_one(i));
      continue;
    }
    const std::string elem = lab.substr(3);
    for (int j = 0; j < bps.matrix.cols(); ++j) {
      bool in = base_has(bps.column_bases[j], elem);
      CHECK(bps.matrix.at(i, j) == (in ? member_value : 1 - member_value));
    }
  }
}

}  // namespace

TEST_CASE("uniform matroid trees validate their input") {
  CHECK_THROWS_AS(uniform_matroid(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(uniform_matroid(3, 3), std::invalid_argument);
  CHECK_THROWS_AS(uniform_matroid(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(uniform_matroid(3, 1, {"a", "a", "b"}), std::invalid_argument);
  CHECK_THROWS_AS(uniform_matroid(3, 1, {"a", "b"}), std::invalid_argument);

  auto u = uniform_matroid(4, 2);
  CHECK(ground_set(u) == std::vector<std::string>{"e0", "e1", "e2", "e3"});
  CHECK(matroid_rank(u) == 2);
  CHECK(matroid_bases(u).size() == 6);

  // one_sum wants disjoint ground sets, two_sum exactly one shared element
  CHECK_THROWS_AS(one_sum(uniform_matroid(2, 1, {"a", "b"}),
                          uniform_matroid(2, 1, {"b", "c"})),
                  std::invalid_argument);
  CHECK_THROWS_AS(two_sum(uniform_matroid(2, 1, {"a", "b"}),
                          uniform_matroid(2, 1, {"c", "d"}), "b"),
                  std::invalid_argument);
  CHECK_THROWS_AS(two_sum(uniform_matroid(3, 1, {"a", "b", "p"}),
                          uniform_matroid(3, 1, {"p", "b", "d"}), "p"),
                  std::invalid_argument);
}

TEST_CASE("bases of sums") {
  auto s = one_sum(uniform_matroid(2, 1, {"a", "b"}),
                   uniform_matroid(3, 2, {"c", "d", "e"}));
  CHECK(matroid_rank(s) == 3);
  std::vector<std::vector<std::string>> want = {
      {"a", "c", "d"}, {"a", "c", "e"}, {"a", "d", "e"},
      {"b", "c", "d"}, {"b", "c", "e"}, {"b", "d", "e"}};
  std::sort(want.begin(), want.end());
  CHECK(matroid_bases(s) == want);

  auto t = two_sum(uniform_matroid(3, 1, {"a", "b", "p"}),
                   uniform_matroid(3, 2, {"p", "c", "d"}), "p");
  CHECK(ground_set(t) == std::vector<std::string>{"a", "b", "c", "d"});
  CHECK(matroid_rank(t) == 2);
  std::vector<std::vector<std::string>> want2 = {
      {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "d"}};
  CHECK(matroid_bases(t) == want2);

  CHECK_THROWS_AS(matroid_bases(s, 3), std::length_error);
}

TEST_CASE("dual matroid has the complementary bases") {
  auto t = two_sum(uniform_matroid(3, 1, {"a", "b", "p"}),
                   uniform_matroid(3, 2, {"p", "c", "d"}), "p");
  auto d = dual_matroid(t);
  CHECK(matroid_rank(d) == 2);
  std::vector<std::string> ground = ground_set(t);
  std::sort(ground.begin(), ground.end());
  std::set<std::vector<std::string>> want;
  for (const auto& b : matroid_bases(t)) {
    std::vector<std::string> comp;
    for (const auto& e : ground)
      if (!base_has(b, e)) comp.push_back(e);
    want.insert(comp);
  }
  auto db = matroid_bases(d);
  CHECK(std::set<std::vector<std::string>>(db.begin(), db.end()) == want);

  // dual of the dual is the original
  CHECK(matroid_to_json(dual_matroid(d)) == matroid_to_json(t));
}

TEST_CASE("hypersimplex slack matrices") {
  auto s41 = hypersimplex_slack(4, 1);
  CHECK(s41.rows() == 4);
  CHECK(s41.cols() == 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(s41.row_label(i) == "lo:e" + std::to_string(i));
    for (int j = 0; j < 4; ++j) CHECK(s41.at(i, j) == (i == j ? 1 : 0));
  }

  // rank n-1: one bank again, each row/column with exactly one 1
  auto s43 = hypersimplex_slack(4, 3);
  CHECK(s43.rows() == 4);
  CHECK(s43.cols() == 4);
  CHECK(s43.row_label(0) == "hi:e0");
  for (int i = 0; i < 4; ++i) {
    int row_ones = 0, col_ones = 0;
    for (int j = 0; j < 4; ++j) {
      row_ones += s43.at(i, j) == 1 ? 1 : 0;
      col_ones += s43.at(j, i) == 1 ? 1 : 0;
    }
    CHECK(row_ones == 1);
    CHECK(col_ones == 1);
  }

  auto s42 = hypersimplex_slack(4, 2);
  CHECK(s42.rows() == 8);
  CHECK(s42.cols() == 6);
  // columns are the 2-subsets in ascending bitmask order: the first is {e0,e1}
  CHECK(s42.at(0, 0) == 1);  // lo:e0
  CHECK(s42.at(1, 0) == 1);  // lo:e1
  CHECK(s42.at(2, 0) == 0);  // lo:e2
  CHECK(s42.at(4, 0) == 0);  // hi:e0
  CHECK(s42.at(6, 0) == 1);  // hi:e2
  for (int j = 0; j < 6; ++j) {
    Rational lo_sum = 0, hi_sum = 0;
    for (int i = 0; i < 4; ++i) {
      lo_sum += s42.at(i, j);
      hi_sum += s42.at(4 + i, j);
    }
    CHECK(lo_sum == 2);
    CHECK(hi_sum == 2);
  }
  // cross-module route: it really is the slack matrix of a 3-dim polytope
  auto verdict = is_slack_matrix(s42);
  CHECK(verdict.status == SlackStatus::yes);
  CHECK(verdict.dim == 3);

  CHECK_THROWS_AS(hypersimplex_slack(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(hypersimplex_slack(4, 0), std::invalid_argument);
  CHECK_THROWS_AS(hypersimplex_slack(4, 4), std::invalid_argument);
}

TEST_CASE("base polytope slack of a 2-sum, both glue banks present") {
  auto t = two_sum(uniform_matroid(3, 1, {"a", "b", "p"}),
                   uniform_matroid(3, 2, {"p", "c", "d"}), "p");
  BasePolytopeSlack bps = base_polytope_slack(t);
  auto want = from_rows({{1, 1, 0, 0, 0},
                         {0, 0, 1, 1, 0},
                         {0, 1, 0, 1, 0},
                         {1, 0, 1, 0, 0},
                         {0, 0, 0, 0, 1}});
  CHECK(bps.matrix == want);
  CHECK(bps.matrix.row_labels() ==
        std::vector<std::string>{"lo:a", "lo:b", "hi:c", "hi:d", "cut:p"});
  std::vector<std::vector<std::string>> cols = {
      {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}, {"c", "d"}};
  CHECK(bps.column_bases == cols);
  check_slack_against_bases(t);
  CHECK(is_slack_matrix(bps.matrix).status == SlackStatus::yes);
}

TEST_CASE("base polytope slack appends the missing glue bank") {
  // the left leaf only has hi rows, the right only lo rows: both sides need
  // the complementary glue row appended before gluing
  auto t = two_sum(uniform_matroid(3, 2, {"a", "b", "p"}),
                   uniform_matroid(3, 1, {"p", "c", "d"}), "p");
  BasePolytopeSlack bps = base_polytope_slack(t);
  CHECK(bps.matrix.row_labels() ==
        std::vector<std::string>{"hi:a", "hi:b", "hi:p", "lo:p", "lo:c", "lo:d",
                                 "cut:p"});
  auto want = from_rows({{0, 0, 0, 1, 1},
                         {0, 1, 1, 0, 0},
                         {1, 0, 0, 0, 0},
                         {1, 0, 0, 0, 0},
                         {0, 1, 0, 1, 0},
                         {0, 0, 1, 0, 1},
                         {0, 1, 1, 1, 1}});
  CHECK(bps.matrix == want);
  std::vector<std::vector<std::string>> cols = {
      {"a", "b"}, {"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}};
  CHECK(bps.column_bases == cols);
  check_slack_against_bases(t);

  // lo:p duplicates hi:p and cut:p is dominated; the facet rows remain
  Nonredundant nr = make_nonredundant(bps.matrix);
  CHECK(nr.matrix.rows() == 5);
  CHECK(nr.matrix.cols() == 5);
  CHECK(std::find(nr.removed_rows.begin(), nr.removed_rows.end(), "lo:p") !=
        nr.removed_rows.end());
  CHECK(std::find(nr.removed_rows.begin(), nr.removed_rows.end(), "cut:p") !=
        nr.removed_rows.end());
}

TEST_CASE("base polytope slack of sums agrees with the bases") {
  check_slack_against_bases(uniform_matroid(4, 2));
  check_slack_against_bases(uniform_matroid(5, 2));
  check_slack_against_bases(one_sum(uniform_matroid(2, 1, {"a", "b"}),
                                    uniform_matroid(3, 2, {"c", "d", "e"})));
  check_slack_against_bases(two_sum(uniform_matroid(4, 2, {"a", "b", "c", "p"}),
                                    uniform_matroid(3, 1, {"p", "d", "e"}),
                                    "p"));
  auto nested = one_sum(
      two_sum(uniform_matroid(3, 1, {"a", "b", "p"}),
              uniform_matroid(3, 2, {"p", "c", "d"}), "p"),
      uniform_matroid(2, 1, {"f", "g"}));
  check_slack_against_bases(nested);
}

TEST_CASE("recognize hypersimplex slacks") {
  auto r = recognize_matroid_slack(hypersimplex_slack(4, 1));
  REQUIRE(r.ok);
  CHECK(r.tree.kind == MatroidSumTree::Kind::uniform);
  CHECK(r.tree.n == 4);
  CHECK(r.tree.k == 1);
  CHECK(r.bases.size() == 4);

  r = recognize_matroid_slack(hypersimplex_slack(4, 2));
  REQUIRE(r.ok);
  CHECK(r.tree.kind == MatroidSumTree::Kind::uniform);
  CHECK(r.tree.n == 4);
  CHECK(r.tree.k == 2);

  // 10x10 but not an identity: the paired-bank search must find it
  r = recognize_matroid_slack(hypersimplex_slack(5, 2));
  REQUIRE(r.ok);
  CHECK(r.tree.n == 5);
  CHECK(r.tree.k == 2);
  CHECK(r.bases.size() == 10);
}

TEST_CASE("recognize sums from their slack matrices") {
  auto t = one_sum(uniform_matroid(2, 1, {"a", "b"}),
                   uniform_matroid(3, 2, {"c", "d", "e"}));
  auto r = recognize_matroid_slack(base_polytope_slack(t).matrix);
  REQUIRE(r.ok);
  CHECK(r.tree.kind == MatroidSumTree::Kind::one_sum);
  CHECK(r.bases.size() == 6);
  CHECK(ground_set(r.tree).size() == 5);

  auto t2 = two_sum(uniform_matroid(3, 1, {"a", "b", "p"}),
                    uniform_matroid(3, 2, {"p", "c", "d"}), "p");
  auto r2 = recognize_matroid_slack(base_polytope_slack(t2).matrix);
  REQUIRE(r2.ok);
  CHECK(r2.tree.kind == MatroidSumTree::Kind::two_sum);
  CHECK(r2.bases.size() == 5);
  CHECK(matroid_rank(r2.tree) == 2);
  // element/base incidence degrees survive the relabeling
  std::vector<int> deg;
  for (const auto& e : ground_set(r2.tree)) {
    int d = 0;
    for (const auto& b : r2.bases) d += base_has(b, e) ? 1 : 0;
    deg.push_back(d);
  }
  std::sort(deg.begin(), deg.end());
  CHECK(deg == std::vector<int>{2, 2, 3, 3});
}

TEST_CASE("recognition is invariant under row and column permutation") {
  auto t = two_sum(uniform_matroid(3, 1, {"a", "b", "p"}),
                   uniform_matroid(3, 2, {"p", "c", "d"}), "p");
  RationalMatrix S = base_polytope_slack(t).matrix;
  RationalMatrix P = S.permuted({4, 2, 0, 3, 1}, {3, 0, 4, 1, 2});
  auto r = recognize_matroid_slack(P);
  REQUIRE(r.ok);
  CHECK(r.tree.kind == MatroidSumTree::Kind::two_sum);
  CHECK(r.bases.size() == 5);
  CHECK(matroid_rank(r.tree) == 2);

  // deterministic: recognizing twice gives the identical tree
  auto r2 = recognize_matroid_slack(P);
  REQUIRE(r2.ok);
  CHECK(matroid_to_json(r.tree) == matroid_to_json(r2.tree));
}

TEST_CASE("recognition handles the cube as a triple product of segments") {
  auto t = one_sum(one_sum(uniform_matroid(2, 1, {"a", "b"}),
                           uniform_matroid(2, 1, {"c", "d"})),
                   uniform_matroid(2, 1, {"e", "f"}));
  auto r = recognize_matroid_slack(base_polytope_slack(t).matrix);
  REQUIRE(r.ok);
  CHECK(r.bases.size() == 8);
  CHECK(ground_set(r.tree).size() == 6);
  CHECK(matroid_rank(r.tree) == 3);
}

TEST_CASE("recognition rejects non-matroid inputs") {
  auto r = recognize_matroid_slack(from_rows({{1, 2}, {1, 0}}));
  CHECK(!r.ok);
  CHECK(r.reason == "entries are not all 0/1");

  // 0/1 circulant: not a hypersimplex slack nor any product
  r = recognize_matroid_slack(from_rows({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}));
  CHECK(!r.ok);
  CHECK(!r.reason.empty());
}

TEST_CASE("recognition round trip on seeded random sum trees") {
  for (unsigned seed = 1; seed <= 8; ++seed) {
    std::mt19937_64 rng(seed);
    MatroidSumTree t = random_matroid_tree(rng, 3, 400);
    auto bases = matroid_bases(t);
    RationalMatrix S = base_polytope_slack(t).matrix;
    // deterministic scramble: rotate rows and columns by one
    std::vector<int> rp(S.rows()), cp(S.cols());
    for (int i = 0; i < S.rows(); ++i) rp[i] = (i + 1) % S.rows();
    for (int j = 0; j < S.cols(); ++j) cp[j] = (j + 1) % S.cols();
    RationalMatrix P = S.permuted(rp, cp);
    auto r = recognize_matroid_slack(P);
    INFO("seed ", seed, ": ", r.reason);
    REQUIRE(r.ok);
    CHECK(r.bases.size() == bases.size());
    CHECK(ground_set(r.tree).size() == ground_set(t).size());
  }
}

TEST_CASE("random tree generation is deterministic per seed") {
  std::mt19937_64 a(42), b(42);
  auto ta = random_matroid_tree(a, 4, 300);
  auto tb = random_matroid_tree(b, 4, 300);
  CHECK(matroid_to_json(ta) == matroid_to_json(tb));
  CHECK(matroid_bases(ta).size() <= 300);
}

TEST_CASE("matroid JSON round trip") {
  auto t = one_sum(
      two_sum(uniform_matroid(3, 1, {"a", "b", "p"}),
              uniform_matroid(4, 2, {"p", "c", "d", "e"}), "p"),
      uniform_matroid(2, 1, {"f", "g"}));
  auto j = matroid_to_json(t);
  auto t2 = matroid_from_json(j);
  CHECK(matroid_to_json(t2) == j);
  CHECK(matroid_bases(t2) == matroid_bases(t));
  CHECK_THROWS_AS(matroid_from_json(nlohmann::json{{"kind", "mystery"}}),
                  std::invalid_argument);
}
