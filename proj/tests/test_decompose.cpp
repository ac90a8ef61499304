#include "doctest.h"

#include <cmath>
#include <sstream>

#include "slackmat/decompose.hpp"

using namespace slackmat;

static RationalMatrix parse(const std::string& text) {
  std::istringstream in(text);
  return RationalMatrix::read(in);
}

static RationalMatrix identity(int n) {
  RationalMatrix I(n, n);
  for (int i = 0; i < n; ++i) I.at(i, i) = 1;
  return I;
}

// apply the recorded permutations and compare against S
template <typename Prod>
static void check_maps(const RationalMatrix& S, const RationalMatrix& P, const Prod& pr) {
  REQUIRE(P.rows() == S.rows());
  REQUIRE(P.cols() == S.cols());
  for (int i = 0; i < S.rows(); ++i)
    for (int j = 0; j < S.cols(); ++j) CHECK(S.at(i, j) == P.at(pr.row_map[i], pr.col_map[j]));
}

TEST_CASE("mutual information of a simplex slack matrix") {
  RationalMatrix I3 = identity(3);
  double h13 = mutual_information(I3, RowSet({0}));
  CHECK(h13 == doctest::Approx(0.9182958340544896).epsilon(1e-9));
  CHECK(mutual_information(I3, RowSet({1, 2})) == doctest::Approx(h13).epsilon(1e-12));
  CHECK(mutual_information(I3, RowSet()) == 0.0);
  CHECK(mutual_information(I3, RowSet::full(3)) == 0.0);
}

TEST_CASE("independent partitions are detected exactly") {
  RationalMatrix A = parse("2 2\n1 0\n2 3\n");
  RationalMatrix B = parse("2 3\n1 0 0\n0 1 1\n");
  RationalMatrix P = one_product(A, B);
  CHECK(is_independent_partition(P, RowSet({0, 1})));
  CHECK(is_independent_partition(P, RowSet({2, 3})));
  CHECK(mutual_information(P, RowSet({0, 1})) == 0.0);  // exactly zero
  CHECK(!is_independent_partition(P, RowSet({0, 2})));
  CHECK(!is_independent_partition(identity(3), RowSet({0})));
}

TEST_CASE("queyranne minimizes symmetric cut functions") {
  SUBCASE("entropy cut on a simplex") {
    RationalMatrix I3 = identity(3);
    SubmodularOracle o{3, [&I3](const RowSet& X) { return mutual_information(I3, X); }};
    CutCandidate best = queyranne_min(o);
    CHECK(best.value == doctest::Approx(0.9182958340544896).epsilon(1e-9));
  }
  SUBCASE("graph cut") {
    // path 0-1-2-3 with a heavy middle edge: min cut isolates an endpoint
    auto w = [](int a, int b) { return (a > b) ? std::pair(b, a) : std::pair(a, b); };
    SubmodularOracle o{4, [&](const RowSet& X) {
                         double cut = 0;
                         auto cross = [&](int a, int b, double wt) {
                           if (X.contains(a) != X.contains(b)) cut += wt;
                         };
                         cross(0, 1, 1.0);
                         cross(1, 2, 5.0);
                         cross(2, 3, 1.0);
                         return cut;
                       }};
    (void)w;
    CutCandidate best = queyranne_min(o);
    CHECK(best.value == doctest::Approx(1.0));
    CHECK((best.cut == RowSet({0}) || best.cut == RowSet({3}) || best.cut == RowSet({1, 2, 3}) ||
           best.cut == RowSet({0, 1, 2})));
  }
  SUBCASE("ground set of one is rejected") {
    SubmodularOracle o{1, [](const RowSet&) { return 0.0; }};
    CHECK_THROWS_AS(queyranne_min(o), std::invalid_argument);
  }
}

TEST_CASE("1-product recognition recovers verified factors") {
  RationalMatrix A = parse("2 2\n1 0\n2 3\n");
  RationalMatrix B = parse("2 3\n1 0 0\n0 1 1\n");
  RationalMatrix P = one_product(A, B);
  auto op = recognize_1product(P);
  REQUIRE(op.has_value());
  CHECK(op->x == RowSet({0, 1}));
  check_maps(P, one_product(op->s1, op->s2), *op);
  CHECK(op->s1.cols() * op->s2.cols() == P.cols());
}

TEST_CASE("1-product recognition survives column permutation and multiplicity") {
  RationalMatrix A = parse("2 3\n1 1 0\n2 2 3\n");  // duplicate column in the factor
  RationalMatrix B = parse("1 2\n4 5\n");
  RationalMatrix P0 = one_product(A, B);
  // scramble columns
  std::vector<int> cp = {5, 2, 0, 4, 1, 3};
  std::vector<int> rp = {1, 2, 0};
  RationalMatrix P = P0.permuted(rp, cp);
  auto op = recognize_1product(P);
  REQUIRE(op.has_value());
  check_maps(P, one_product(op->s1, op->s2), *op);
}

TEST_CASE("irreducible matrices are not 1-products") {
  CHECK(!recognize_1product(identity(3)).has_value());
  CHECK(!recognize_1product(parse("2 2\n1 0\n0 1\n")).has_value());
  CHECK(!recognize_1product(parse("1 2\n1 0\n")).has_value());  // needs two rows
}

TEST_CASE("irreducible partition splits factors recursively") {
  RationalMatrix I2 = identity(2), I3 = identity(3);
  RationalMatrix P = one_product(I2, I3);
  auto blocks = irreducible_partition(P);
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[0] == RowSet({0, 1}));
  CHECK(blocks[1] == RowSet({2, 3, 4}));

  auto single = irreducible_partition(I3);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == RowSet::full(3));

  // triple product: three blocks
  RationalMatrix Q = one_product(one_product(I2, I2), I3);
  auto b3 = irreducible_partition(Q);
  REQUIRE(b3.size() == 3);
  CHECK(b3[0] == RowSet({0, 1}));
  CHECK(b3[1] == RowSet({2, 3}));
  CHECK(b3[2] == RowSet({4, 5, 6}));
}

TEST_CASE("2-product recognition recovers the textbook factors") {
  RationalMatrix S = parse(
      "4 6\n"
      "1 1 3 3 5 7\n"
      "2 2 4 4 6 8\n"
      "9 10 9 10 11 11\n"
      "0 0 0 0 1 1\n");
  auto kp = recognize_kproduct(S, 2);
  REQUIRE(kp.has_value());
  CHECK(kp->k == 2);
  CHECK(kp->special_rows == std::vector<int>{3});
  CHECK(kp->s1 == parse("3 4\n1 3 5 7\n2 4 6 8\n0 0 1 1\n"));
  CHECK(kp->s2 == parse("2 3\n9 10 11\n0 0 1\n"));
  CHECK(kp->t1.rows == std::vector<int>{2});
  CHECK(kp->t2.rows == std::vector<int>{1});
  check_maps(S, k_product(kp->s1, kp->t1, kp->s2, kp->t2), *kp);
}

TEST_CASE("3-product recognition recovers the textbook factors") {
  RationalMatrix S = parse(
      "5 5\n"
      "1 3 5 7 7\n"
      "2 4 6 8 8\n"
      "9 9 10 11 12\n"
      "0 0 1 0 0\n"
      "0 0 0 1 1\n");
  auto kp = recognize_kproduct(S, 3);
  REQUIRE(kp.has_value());
  CHECK(kp->special_rows == std::vector<int>{3, 4});
  CHECK(kp->s1 == parse("4 4\n1 3 5 7\n2 4 6 8\n0 0 1 0\n0 0 0 1\n"));
  CHECK(kp->s2 == parse("3 4\n9 10 11 12\n0 1 0 0\n0 0 1 1\n"));
  check_maps(S, k_product(kp->s1, kp->t1, kp->s2, kp->t2), *kp);
}

TEST_CASE("k-product recognition respects row and column scrambling") {
  RationalMatrix S0 = parse(
      "4 6\n"
      "1 1 3 3 5 7\n"
      "2 2 4 4 6 8\n"
      "9 10 9 10 11 11\n"
      "0 0 0 0 1 1\n");
  RationalMatrix S = S0.permuted({3, 0, 2, 1}, {4, 0, 5, 2, 1, 3});
  auto kp = recognize_kproduct(S, 2);
  REQUIRE(kp.has_value());
  CHECK(kp->special_rows == std::vector<int>{0});
  check_maps(S, k_product(kp->s1, kp->t1, kp->s2, kp->t2), *kp);
}

TEST_CASE("matrices without the structure are rejected") {
  CHECK(!recognize_kproduct(identity(3), 2).has_value());
  CHECK(!recognize_kproduct(parse("2 2\n1 0\n0 1\n"), 2).has_value());
  // a 0/1 row exists but the remaining rows are entangled across blocks
  RationalMatrix S = parse("3 4\n0 0 1 1\n1 2 3 4\n5 6 7 8\n");
  CHECK(!recognize_kproduct(S, 2).has_value());
}

TEST_CASE("degenerate k-splits with equal columns are rejected") {
  // the only valid 2-split would need a factor as wide as S itself
  RationalMatrix S = parse("2 2\n0 1\n7 7\n");
  CHECK(!recognize_kproduct(S, 2).has_value());
}

TEST_CASE("factorization trees expand and serialize") {
  RationalMatrix S = parse(
      "4 6\n"
      "1 1 3 3 5 7\n"
      "2 2 4 4 6 8\n"
      "9 10 9 10 11 11\n"
      "0 0 0 0 1 1\n");
  auto kp = recognize_kproduct(S, 2);
  REQUIRE(kp.has_value());
  FactorizationTree t = tree_from_kproduct(S, *kp);
  RationalMatrix P = expand(t);
  check_maps(S, P, *kp);

  nlohmann::json j = tree_to_json(t);
  FactorizationTree t2 = tree_from_json(j);
  CHECK(expand(t2) == P);
  CHECK(t2.row_map == t.row_map);
  CHECK(t2.col_map == t.col_map);
  CHECK(t2.special_labels == t.special_labels);
}

TEST_CASE("filtered recognition respects predicates") {
  RationalMatrix S = parse(
      "4 6\n"
      "1 1 3 3 5 7\n"
      "2 2 4 4 6 8\n"
      "9 10 9 10 11 11\n"
      "0 0 0 0 1 1\n");
  auto deny_all = recognize_kproduct_filtered(
      S, 2, [](const SpecialRowTuple&) { return false; }, nullptr);
  CHECK(!deny_all.has_value());
  auto deny_factor = recognize_kproduct_filtered(S, 2, nullptr,
                                                 [](const KProduct&) { return false; });
  CHECK(!deny_factor.has_value());
  auto allow = recognize_kproduct_filtered(S, 2, nullptr, [](const KProduct& kp) {
    return kp.s2.cols() == 3;
  });
  CHECK(allow.has_value());
}
