#include "slackmat/matroid.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "slackmat/decompose.hpp"
#include "slackmat/isomorphism.hpp"
#include "slackmat/polyhedra.hpp"
#include "slackmat/products.hpp"

namespace slackmat {

namespace {

long long binom_ll(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<std::string> merged_sorted(const std::vector<std::string>& a,
                                       const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool contains_label(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

MatroidSumTree MatroidSumTree::clone() const {
  MatroidSumTree t;
  t.kind = kind;
  t.n = n;
  t.k = k;
  t.elements = elements;
  t.glue = glue;
  if (left) t.left = std::make_unique<MatroidSumTree>(left->clone());
  if (right) t.right = std::make_unique<MatroidSumTree>(right->clone());
  return t;
}

MatroidSumTree uniform_matroid(int n, int k, std::vector<std::string> elements) {
  if (n < 2 || n > 20)
    throw std::invalid_argument("uniform_matroid: need 2 <= n <= 20");
  if (k < 1 || k > n - 1)
    throw std::invalid_argument("uniform_matroid: need 1 <= k <= n-1");
  if (elements.empty())
    for (int i = 0; i < n; ++i) elements.push_back("e" + std::to_string(i));
  if (static_cast<int>(elements.size()) != n)
    throw std::invalid_argument("uniform_matroid: wrong number of element labels");
  std::set<std::string> seen(elements.begin(), elements.end());
  if (static_cast<int>(seen.size()) != n)
    throw std::invalid_argument("uniform_matroid: duplicate element labels");
  MatroidSumTree t;
  t.kind = MatroidSumTree::Kind::uniform;
  t.n = n;
  t.k = k;
  t.elements = std::move(elements);
  return t;
}

MatroidSumTree one_sum(MatroidSumTree left, MatroidSumTree right) {
  auto gl = ground_set(left), gr = ground_set(right);
  for (const auto& e : gl)
    if (contains_label(gr, e))
      throw std::invalid_argument("one_sum: ground sets share element " + e);
  MatroidSumTree t;
  t.kind = MatroidSumTree::Kind::one_sum;
  t.left = std::make_unique<MatroidSumTree>(std::move(left));
  t.right = std::make_unique<MatroidSumTree>(std::move(right));
  return t;
}

MatroidSumTree two_sum(MatroidSumTree left, MatroidSumTree right,
                       const std::string& glue) {
  auto gl = ground_set(left), gr = ground_set(right);
  if (!contains_label(gl, glue) || !contains_label(gr, glue))
    throw std::invalid_argument("two_sum: glue element must belong to both sides");
  for (const auto& e : gl)
    if (e != glue && contains_label(gr, e))
      throw std::invalid_argument("two_sum: ground sets share element " + e);
  MatroidSumTree t;
  t.kind = MatroidSumTree::Kind::two_sum;
  t.glue = glue;
  t.left = std::make_unique<MatroidSumTree>(std::move(left));
  t.right = std::make_unique<MatroidSumTree>(std::move(right));
  return t;
}

std::vector<std::string> ground_set(const MatroidSumTree& t) {
  switch (t.kind) {
    case MatroidSumTree::Kind::uniform:
      return t.elements;
    case MatroidSumTree::Kind::one_sum: {
      auto g = ground_set(*t.left);
      auto r = ground_set(*t.right);
      g.insert(g.end(), r.begin(), r.end());
      return g;
    }
    case MatroidSumTree::Kind::two_sum: {
      std::vector<std::string> g;
      for (const auto& e : ground_set(*t.left))
        if (e != t.glue) g.push_back(e);
      for (const auto& e : ground_set(*t.right))
        if (e != t.glue) g.push_back(e);
      return g;
    }
  }
  return {};
}

int matroid_rank(const MatroidSumTree& t) {
  switch (t.kind) {
    case MatroidSumTree::Kind::uniform:
      return t.k;
    case MatroidSumTree::Kind::one_sum:
      return matroid_rank(*t.left) + matroid_rank(*t.right);
    case MatroidSumTree::Kind::two_sum:
      return matroid_rank(*t.left) + matroid_rank(*t.right) - 1;
  }
  return 0;
}

namespace {

using BaseSet = std::set<std::vector<std::string>>;

BaseSet bases_rec(const MatroidSumTree& t, long long cap) {
  BaseSet out;
  auto push = [&](std::vector<std::string> b) {
    out.insert(std::move(b));
    if (static_cast<long long>(out.size()) > cap)
      throw std::length_error("matroid_bases: base count exceeds cap");
  };
  switch (t.kind) {
    case MatroidSumTree::Kind::uniform: {
      for (unsigned mask = 0; mask < (1u << t.n); ++mask) {
        if (__builtin_popcount(mask) != t.k) continue;
        std::vector<std::string> b;
        for (int i = 0; i < t.n; ++i)
          if (mask >> i & 1) b.push_back(t.elements[i]);
        std::sort(b.begin(), b.end());
        push(std::move(b));
      }
      break;
    }
    case MatroidSumTree::Kind::one_sum: {
      BaseSet l = bases_rec(*t.left, cap), r = bases_rec(*t.right, cap);
      for (const auto& b1 : l)
        for (const auto& b2 : r) push(merged_sorted(b1, b2));
      break;
    }
    case MatroidSumTree::Kind::two_sum: {
      BaseSet l = bases_rec(*t.left, cap), r = bases_rec(*t.right, cap);
      for (const auto& b1 : l) {
        bool in1 = std::binary_search(b1.begin(), b1.end(), t.glue);
        for (const auto& b2 : r) {
          bool in2 = std::binary_search(b2.begin(), b2.end(), t.glue);
          if (in1 == in2) continue;
          auto m = merged_sorted(b1, b2);
          m.erase(std::remove(m.begin(), m.end(), t.glue), m.end());
          push(std::move(m));
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::string>> matroid_bases(const MatroidSumTree& t,
                                                    long long cap) {
  BaseSet s = bases_rec(t, cap);
  return {s.begin(), s.end()};
}

MatroidSumTree dual_matroid(const MatroidSumTree& t) {
  MatroidSumTree d = t.clone();
  std::function<void(MatroidSumTree&)> flip = [&](MatroidSumTree& u) {
    if (u.kind == MatroidSumTree::Kind::uniform) {
      u.k = u.n - u.k;
    } else {
      flip(*u.left);
      flip(*u.right);
    }
  };
  flip(d);
  return d;
}

void rename_element(MatroidSumTree& t, const std::string& from,
                    const std::string& to) {
  if (t.kind == MatroidSumTree::Kind::uniform) {
    for (auto& e : t.elements)
      if (e == from) e = to;
    return;
  }
  if (t.kind == MatroidSumTree::Kind::two_sum && t.glue == from) t.glue = to;
  rename_element(*t.left, from, to);
  rename_element(*t.right, from, to);
}

namespace {

// Hypersimplex slack with explicit element labels plus the base of each column.
BasePolytopeSlack leaf_slack(const std::vector<std::string>& elems, int k) {
  int n = static_cast<int>(elems.size());
  bool lo_bank = true, hi_bank = true;
  if (k == 1)
    hi_bank = false;  // x_e <= 1 is not facet-defining on the simplex
  else if (k == n - 1)
    lo_bank = false;
  std::vector<unsigned> masks;
  for (unsigned mask = 0; mask < (1u << n); ++mask)
    if (__builtin_popcount(mask) == k) masks.push_back(mask);
  int m = (lo_bank ? n : 0) + (hi_bank ? n : 0);
  RationalMatrix S(m, static_cast<int>(masks.size()));
  std::vector<std::string> labels;
  int r = 0;
  if (lo_bank) {
    for (int i = 0; i < n; ++i, ++r) {
      labels.push_back("lo:" + elems[i]);
      for (size_t j = 0; j < masks.size(); ++j)
        S.at(r, static_cast<int>(j)) = (masks[j] >> i & 1) ? 1 : 0;
    }
  }
  if (hi_bank) {
    for (int i = 0; i < n; ++i, ++r) {
      labels.push_back("hi:" + elems[i]);
      for (size_t j = 0; j < masks.size(); ++j)
        S.at(r, static_cast<int>(j)) = (masks[j] >> i & 1) ? 0 : 1;
    }
  }
  S.set_row_labels(labels);
  BasePolytopeSlack out;
  out.matrix = std::move(S);
  for (unsigned mask : masks) {
    std::vector<std::string> b;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) b.push_back(elems[i]);
    std::sort(b.begin(), b.end());
    out.column_bases.push_back(std::move(b));
  }
  return out;
}

// Guarantees a row labeled `want` whose values complement row `comp`
// (x_e >= 0 and x_e <= 1 slacks sum to 1 on 0/1 vertices).
void ensure_complement_row(RationalMatrix& M, const std::string& want,
                           const std::string& comp) {
  if (M.row_index(want) >= 0) return;
  int c = M.row_index(comp);
  if (c < 0)
    throw std::logic_error("base_polytope_slack: missing both banks for " + want);
  SpecialRowTuple t;
  t.rows = {c};
  RationalMatrix A = augment_factor(M, t);
  auto labels = A.row_labels();
  labels.back() = want;
  A.set_row_labels(labels);
  M = std::move(A);
}

}  // namespace

RationalMatrix hypersimplex_slack(int n, int k) {
  if (n < 2 || n > 20)
    throw std::invalid_argument("hypersimplex_slack: need 2 <= n <= 20");
  if (k < 1 || k > n - 1)
    throw std::invalid_argument("hypersimplex_slack: need 1 <= k <= n-1");
  std::vector<std::string> elems;
  for (int i = 0; i < n; ++i) elems.push_back("e" + std::to_string(i));
  return leaf_slack(elems, k).matrix;
}

BasePolytopeSlack base_polytope_slack(const MatroidSumTree& t) {
  switch (t.kind) {
    case MatroidSumTree::Kind::uniform:
      return leaf_slack(t.elements, t.k);
    case MatroidSumTree::Kind::one_sum: {
      BasePolytopeSlack L = base_polytope_slack(*t.left);
      BasePolytopeSlack R = base_polytope_slack(*t.right);
      BasePolytopeSlack out;
      out.matrix = one_product(L.matrix, R.matrix);
      auto labels = L.matrix.row_labels();
      for (const auto& l : R.matrix.row_labels()) labels.push_back(l);
      out.matrix.set_row_labels(labels);
      for (const auto& b1 : L.column_bases)
        for (const auto& b2 : R.column_bases)
          out.column_bases.push_back(merged_sorted(b1, b2));
      return out;
    }
    case MatroidSumTree::Kind::two_sum: {
      BasePolytopeSlack L = base_polytope_slack(*t.left);
      BasePolytopeSlack R = base_polytope_slack(*t.right);
      const std::string lo = "lo:" + t.glue, hi = "hi:" + t.glue;
      ensure_complement_row(L.matrix, lo, hi);
      ensure_complement_row(R.matrix, hi, lo);
      SpecialRowTuple t1, t2;
      t1.rows = {L.matrix.row_index(lo)};
      t2.rows = {R.matrix.row_index(hi)};
      auto bl1 = split_blocks(L.matrix, t1);
      auto bl2 = split_blocks(R.matrix, t2);
      if (!bl1.split || !bl2.split)
        throw std::invalid_argument("two_sum: glue element " + t.glue +
                                    " is a loop or coloop of a summand");
      BasePolytopeSlack out;
      out.matrix = k_product(L.matrix, t1, R.matrix, t2);
      std::vector<std::string> labels;
      for (int i = 0; i < L.matrix.rows(); ++i)
        if (i != t1.rows[0]) labels.push_back(L.matrix.row_label(i));
      for (int i = 0; i < R.matrix.rows(); ++i)
        if (i != t2.rows[0]) labels.push_back(R.matrix.row_label(i));
      labels.push_back("cut:" + t.glue);
      out.matrix.set_row_labels(labels);
      for (int j = 0; j < 2; ++j)
        for (int pc : bl1.split->blocks[j])
          for (int qc : bl2.split->blocks[j]) {
            auto m = merged_sorted(L.column_bases[pc], R.column_bases[qc]);
            m.erase(std::remove(m.begin(), m.end(), t.glue), m.end());
            out.column_bases.push_back(std::move(m));
          }
      return out;
    }
  }
  throw std::logic_error("base_polytope_slack: bad tree");
}

// ---------------------------------------------------------------------------
// Recognition.

namespace {

// Row cleanup within the recognition recursion: drop duplicate rows, rows
// without a zero or without a nonzero, and rows whose zero set is strictly
// contained in another's (redundant inequalities). Dropped rows are aliased to
// a surviving row with equal values (flip 0) or complementary values (flip 1)
// when one exists, so glue rows stay traceable.
struct CleanOut {
  bool ok = false;
  std::string why;
  RationalMatrix m;
  std::map<std::string, std::pair<std::string, int>> alias;
};

CleanOut clean_rows(const RationalMatrix& M) {
  CleanOut out;
  int m = M.rows(), n = M.cols();
  std::vector<std::vector<Rational>> val(m);
  for (int i = 0; i < m; ++i) val[i] = M.row(i);
  std::vector<std::vector<char>> zero(m, std::vector<char>(n));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) zero[i][j] = val[i][j] == 0;
  std::vector<char> alive(m, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < m; ++i) {
      if (!alive[i]) continue;
      for (int j = i + 1; j < m; ++j)
        if (alive[j] && val[i] == val[j]) {
          alive[j] = 0;
          changed = true;
        }
    }
    for (int i = 0; i < m; ++i) {
      if (!alive[i]) continue;
      int zeros = 0;
      for (int j = 0; j < n; ++j) zeros += zero[i][j];
      if (zeros == 0 || zeros == n) {
        alive[i] = 0;
        changed = true;
      }
    }
    for (int i = 0; i < m; ++i) {
      if (!alive[i]) continue;
      for (int j = 0; j < m; ++j) {
        if (i == j || !alive[j]) continue;
        bool subset = true, strict = false;
        for (int c = 0; c < n && subset; ++c) {
          if (zero[i][c] && !zero[j][c]) subset = false;
          if (!zero[i][c] && zero[j][c]) strict = true;
        }
        if (subset && strict) {
          alive[i] = 0;
          changed = true;
          break;
        }
      }
    }
  }
  std::vector<int> keep;
  for (int i = 0; i < m; ++i)
    if (alive[i]) keep.push_back(i);
  if (keep.empty()) {
    out.why = "no facet rows survive cleanup";
    return out;
  }
  for (int i = 0; i < m; ++i) {
    if (alive[i]) continue;
    for (int j : keep)
      if (val[j] == val[i]) {
        out.alias[M.row_label(i)] = {M.row_label(j), 0};
        break;
      }
    if (out.alias.count(M.row_label(i))) continue;
    for (int j : keep) {
      bool comp = true;
      for (int c = 0; c < n && comp; ++c)
        if (val[j][c] + val[i][c] != 1) comp = false;
      if (comp) {
        out.alias[M.row_label(i)] = {M.row_label(j), 1};
        break;
      }
    }
  }
  out.m = M.restrict_rows(RowSet(keep));
  out.ok = true;
  return out;
}

// Leaf detection: either an identity matrix (simplex; read as U_{n,1}, bank
// lo) or rows pairing up into complements with some per-pair orientation under
// which the columns enumerate all k-subsets exactly once (2 <= k <= n-2).
struct LeafDet {
  bool ok = false;
  bool identity = false;
  int n = 0, k0 = 0;
  std::map<std::string, std::pair<int, int>> rows;  // label -> (element, bank)
};

LeafDet detect_leaf(const RationalMatrix& M) {
  LeafDet out;
  int m = M.rows(), n = M.cols();
  if (m == n && m >= 2) {
    bool ident = true;
    std::vector<int> colcnt(n, 0);
    std::vector<int> one_at(m, -1);
    for (int i = 0; i < m && ident; ++i) {
      int ones = 0;
      for (int j = 0; j < n; ++j) {
        if (M.at(i, j) == 1) {
          ++ones;
          one_at[i] = j;
          ++colcnt[j];
        } else if (M.at(i, j) != 0) {
          ident = false;
        }
      }
      if (ones != 1) ident = false;
    }
    for (int j = 0; j < n; ++j)
      if (colcnt[j] != 1) ident = false;
    if (ident) {
      out.ok = true;
      out.identity = true;
      out.n = m;
      out.k0 = 1;
      for (int i = 0; i < m; ++i) out.rows[M.row_label(i)] = {i, 0};
      return out;
    }
  }
  if (m % 2 != 0 || m < 8) return out;
  int ne = m / 2;
  if (ne > 20) return out;
  // the column count must be a binomial C(ne, k); composites rarely pass this,
  // which keeps the 2^ne orientation search below off large product matrices
  bool plausible = false;
  for (int k = 2; k <= ne - 2; ++k)
    if (binom_ll(ne, k) == n) plausible = true;
  if (!plausible) return out;
  // pair rows with their complements
  std::map<std::vector<Rational>, int> by_val;
  for (int i = 0; i < m; ++i) by_val[M.row(i)] = i;  // rows are distinct here
  std::vector<std::pair<int, int>> pairs;
  std::vector<char> done(m, 0);
  for (int i = 0; i < m; ++i) {
    if (done[i]) continue;
    std::vector<Rational> comp(n);
    for (int j = 0; j < n; ++j) comp[j] = Rational(1) - M.at(i, j);
    auto it = by_val.find(comp);
    if (it == by_val.end() || done[it->second]) return out;
    done[i] = done[it->second] = 1;
    pairs.emplace_back(i, it->second);
  }
  for (unsigned mask = 0; mask < (1u << ne); ++mask) {
    std::vector<int> lo(ne);
    for (int t = 0; t < ne; ++t)
      lo[t] = (mask >> t & 1) ? pairs[t].second : pairs[t].first;
    std::set<unsigned> seen;
    int k = -1;
    bool good = true;
    for (int j = 0; j < n && good; ++j) {
      unsigned colmask = 0;
      int ones = 0;
      for (int t = 0; t < ne; ++t)
        if (M.at(lo[t], j) == 1) {
          colmask |= 1u << t;
          ++ones;
        }
      if (k < 0) k = ones;
      if (ones != k || !seen.insert(colmask).second) good = false;
    }
    if (!good || k < 2 || k > ne - 2) continue;
    if (static_cast<long long>(n) != binom_ll(ne, k)) continue;
    out.ok = true;
    out.n = ne;
    out.k0 = k;
    for (int t = 0; t < ne; ++t) {
      out.rows[M.row_label(lo[t])] = {t, 0};
      out.rows[M.row_label(lo[t] == pairs[t].first ? pairs[t].second
                                                   : pairs[t].first)] = {t, 1};
    }
    return out;
  }
  return out;
}

bool is_identity2(const RationalMatrix& S) {
  if (S.rows() != 2 || S.cols() != 2 || !S.is_zero_one()) return false;
  return (S.at(0, 0) == 1 && S.at(1, 1) == 1 && S.at(0, 1) == 0 &&
          S.at(1, 0) == 0) ||
         (S.at(0, 1) == 1 && S.at(1, 0) == 1 && S.at(0, 0) == 0 &&
          S.at(1, 1) == 0);
}

struct RecLeaf {
  int n = 0, k0 = 0;
  std::map<std::string, std::pair<int, int>> rows;
};

struct RecEdge {
  int leaf_a = -1, elem_a = -1, bank_a = 0;
  int leaf_b = -1, elem_b = -1, bank_b = 0;
};

struct RecShape {
  int kind = 0;  // 0 leaf, 1 one_sum, 2 two_sum
  int leaf = -1, edge = -1;
  std::unique_ptr<RecShape> l, r;
};

struct RecCtx {
  std::vector<RecLeaf> leaves;
  std::vector<RecEdge> edges;
  std::string fail;
};

// A glue row being traced down to its leaf: `orig` keys the resolution map,
// `cur` is its label in the current matrix, `flip` counts complement aliases.
struct Tracked {
  std::string orig, cur;
  int flip = 0;
};

using Where = std::map<std::string, std::array<int, 3>>;  // orig -> leaf, elem, bank

// A cut consumes one bank row of the glue element from each factor, and the
// two complementary bank rows become the same row of the product, so at most
// one factor gets it back when the product rows are split.  Restore the
// complement of the special row in a factor that lacks it; the child's row
// cleanup deletes it again whenever the glue element carries a single bank.
RationalMatrix with_special_complement(const RationalMatrix& F,
                                       const SpecialRowTuple& t) {
  int s = t.rows[0];
  for (int i = 0; i < F.rows(); ++i) {
    if (i == s) continue;
    bool comp = true;
    for (int j = 0; j < F.cols() && comp; ++j)
      comp = F.at(i, j) + F.at(s, j) == 1;
    if (comp) return F;
  }
  return augment_factor(F, t);
}

std::unique_ptr<RecShape> rec(RecCtx& ctx, const RationalMatrix& M,
                              std::vector<Tracked> tracked, Where& where) {
  CleanOut cl = clean_rows(M);
  if (!cl.ok) {
    ctx.fail = cl.why;
    return nullptr;
  }
  const RationalMatrix& C = cl.m;
  for (auto& tr : tracked) {
    if (C.row_index(tr.cur) >= 0) continue;
    auto it = cl.alias.find(tr.cur);
    if (it == cl.alias.end()) {
      ctx.fail = "lost track of glued row " + tr.cur;
      return nullptr;
    }
    tr.cur = it->second.first;
    tr.flip ^= it->second.second;
  }

  LeafDet leaf = detect_leaf(C);
  if (leaf.ok) {
    int idx = static_cast<int>(ctx.leaves.size());
    ctx.leaves.push_back({leaf.n, leaf.k0, leaf.rows});
    for (const auto& tr : tracked) {
      auto it = leaf.rows.find(tr.cur);
      if (it == leaf.rows.end()) {
        ctx.fail = "glued row " + tr.cur + " is not an element row of its leaf";
        return nullptr;
      }
      where[tr.orig] = {idx, it->second.first, it->second.second ^ tr.flip};
    }
    auto s = std::make_unique<RecShape>();
    s->kind = 0;
    s->leaf = idx;
    return s;
  }

  if (C.rows() >= 2) {
    if (auto op = recognize_1product(C)) {
      std::vector<Tracked> tl, tr2;
      for (const auto& tr : tracked)
        (op->s1.row_index(tr.cur) >= 0 ? tl : tr2).push_back(tr);
      Where wl, wr;
      auto ls = rec(ctx, op->s1, std::move(tl), wl);
      if (!ls) return nullptr;
      auto rs = rec(ctx, op->s2, std::move(tr2), wr);
      if (!rs) return nullptr;
      where.insert(wl.begin(), wl.end());
      where.insert(wr.begin(), wr.end());
      auto s = std::make_unique<RecShape>();
      s->kind = 1;
      s->l = std::move(ls);
      s->r = std::move(rs);
      return s;
    }

    std::set<std::string> res_cur;
    for (const auto& tr : tracked) res_cur.insert(tr.cur);
    TuplePredicate tuple_ok = [&](const SpecialRowTuple& t) {
      for (int r : t.rows)
        if (res_cur.count(C.row_label(r))) return false;
      return true;
    };
    FactorPredicate factors_ok = [](const KProduct& kp) {
      return !is_identity2(kp.s1) && !is_identity2(kp.s2);
    };
    if (auto kp = recognize_kproduct_filtered(C, 2, tuple_ok, factors_ok)) {
      const std::string sigma = C.row_label(kp->special_rows[0]);
      std::vector<Tracked> tl, tr2;
      for (const auto& tr : tracked)
        (kp->s1.row_index(tr.cur) >= 0 ? tl : tr2).push_back(tr);
      std::string key = "#glue";
      for (int i = 0;; ++i) {
        key = "#glue" + std::to_string(i);
        bool used = false;
        for (const auto& tr : tracked) used |= tr.orig == key;
        if (!used) break;
      }
      tl.push_back({key, sigma, 0});
      tr2.push_back({key, sigma, 0});
      Where wl, wr;
      auto ls = rec(ctx, with_special_complement(kp->s1, kp->t1), std::move(tl), wl);
      if (!ls) return nullptr;
      auto rs = rec(ctx, with_special_complement(kp->s2, kp->t2), std::move(tr2), wr);
      if (!rs) return nullptr;
      RecEdge e;
      e.leaf_a = wl[key][0];
      e.elem_a = wl[key][1];
      e.bank_a = wl[key][2];
      e.leaf_b = wr[key][0];
      e.elem_b = wr[key][1];
      e.bank_b = wr[key][2];
      int eidx = static_cast<int>(ctx.edges.size());
      ctx.edges.push_back(e);
      wl.erase(key);
      wr.erase(key);
      where.insert(wl.begin(), wl.end());
      where.insert(wr.begin(), wr.end());
      auto s = std::make_unique<RecShape>();
      s->kind = 2;
      s->edge = eidx;
      s->l = std::move(ls);
      s->r = std::move(rs);
      return s;
    }
  }

  if (ctx.fail.empty())
    ctx.fail = "a factor is neither a hypersimplex slack nor a 1- or 2-product";
  return nullptr;
}

}  // namespace

MatroidRecognition recognize_matroid_slack(const RationalMatrix& S) {
  MatroidRecognition out;
  auto fail = [&](const std::string& why) {
    out.ok = false;
    out.reason = why;
    return std::move(out);
  };
  if (S.rows() == 0 || S.cols() == 0) return fail("empty matrix");
  if (!S.is_zero_one()) return fail("entries are not all 0/1");
  RationalMatrix S0 = make_nonredundant(S).matrix;
  if (S0.rows() < 2) return fail("fewer than two facet rows");

  try {
    RecCtx ctx;
    Where where;
    auto shape = rec(ctx, S0, {}, where);
    if (!shape) return fail(ctx.fail);

    // 2-color the leaves: each glue ties the bank orientations of its two
    // endpoint leaves (one side lo, the other hi). Components are rooted
    // non-dualized, so a bare identity leaf reads as U_{n,1}.
    int L = static_cast<int>(ctx.leaves.size());
    std::vector<std::vector<std::pair<int, int>>> adj(L);
    for (const auto& e : ctx.edges) {
      int parity = 1 ^ e.bank_a ^ e.bank_b;
      adj[e.leaf_a].push_back({e.leaf_b, parity});
      adj[e.leaf_b].push_back({e.leaf_a, parity});
    }
    std::vector<int> color(L, -1);
    for (int i = 0; i < L; ++i) {
      if (color[i] >= 0) continue;
      color[i] = 0;
      std::queue<int> q;
      q.push(i);
      while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (auto [v, par] : adj[u]) {
          int want = color[u] ^ par;
          if (color[v] < 0) {
            color[v] = want;
            q.push(v);
          } else if (color[v] != want) {
            return fail("glue rows force an inconsistent bank orientation");
          }
        }
      }
    }

    std::vector<std::vector<std::string>> elabels(L);
    int counter = 0;
    for (int l = 0; l < L; ++l)
      for (int e = 0; e < ctx.leaves[l].n; ++e)
        elabels[l].push_back("x" + std::to_string(counter++));
    std::set<std::pair<int, int>> used;
    for (size_t t = 0; t < ctx.edges.size(); ++t) {
      const auto& e = ctx.edges[t];
      if (!used.insert({e.leaf_a, e.elem_a}).second ||
          !used.insert({e.leaf_b, e.elem_b}).second)
        return fail("an element row is glued twice");
      elabels[e.leaf_a][e.elem_a] = "p" + std::to_string(t);
      elabels[e.leaf_b][e.elem_b] = "p" + std::to_string(t);
    }

    std::function<MatroidSumTree(const RecShape&)> build =
        [&](const RecShape& s) -> MatroidSumTree {
      if (s.kind == 0) {
        const RecLeaf& lf = ctx.leaves[s.leaf];
        int kk = color[s.leaf] == 0 ? lf.k0 : lf.n - lf.k0;
        return uniform_matroid(lf.n, kk, elabels[s.leaf]);
      }
      MatroidSumTree l = build(*s.l), r = build(*s.r);
      if (s.kind == 1) return one_sum(std::move(l), std::move(r));
      return two_sum(std::move(l), std::move(r),
                     "p" + std::to_string(s.edge));
    };
    MatroidSumTree tree = build(*shape);

    // Independent route back: regenerate the slack matrix from the recovered
    // tree and require permutation equivalence with the cleaned input.
    BasePolytopeSlack reg = base_polytope_slack(tree);
    RationalMatrix regn = make_nonredundant(reg.matrix).matrix;
    if (!is_isomorphic(regn, S0))
      return fail("regenerated slack matrix is not isomorphic to the input");

    out.bases = matroid_bases(tree);
    out.tree = std::move(tree);
    out.ok = true;
    return out;
  } catch (const std::exception& e) {
    return fail(e.what());
  }
}

MatroidSumTree random_matroid_tree(std::mt19937_64& rng, int leaves,
                                   long long max_bases) {
  if (leaves < 1)
    throw std::invalid_argument("random_matroid_tree: need at least one leaf");
  long long counter = 0;
  auto fresh = [&] { return "e" + std::to_string(counter++); };
  std::vector<MatroidSumTree> parts;
  for (int i = 0; i < leaves; ++i) {
    int n = 2 + static_cast<int>(rng() % 5);
    int k = 1 + static_cast<int>(rng() % (n - 1));
    std::vector<std::string> els;
    for (int j = 0; j < n; ++j) els.push_back(fresh());
    parts.push_back(uniform_matroid(n, k, std::move(els)));
  }
  auto count_of = [&](const MatroidSumTree& t) -> long long {
    try {
      return static_cast<long long>(matroid_bases(t, max_bases).size());
    } catch (const std::length_error&) {
      return max_bases + 1;
    }
  };
  auto join = [&](size_t i, size_t j, bool want2) -> MatroidSumTree {
    MatroidSumTree a = parts[i].clone(), b = parts[j].clone();
    auto ga = ground_set(a), gb = ground_set(b);
    if (want2 && ga.size() >= 3 && gb.size() >= 3) {
      const std::string p = ga[rng() % ga.size()];
      const std::string q = gb[rng() % gb.size()];
      rename_element(b, q, p);
      return two_sum(std::move(a), std::move(b), p);
    }
    return one_sum(std::move(a), std::move(b));
  };
  while (parts.size() > 1) {
    bool done = false;
    for (int attempt = 0; attempt < 40 && !done; ++attempt) {
      size_t i = rng() % parts.size(), j = rng() % parts.size();
      if (i == j) continue;
      if (i > j) std::swap(i, j);
      MatroidSumTree t = join(i, j, rng() & 1);
      if (count_of(t) <= max_bases) {
        parts[i] = std::move(t);
        parts.erase(parts.begin() + static_cast<long>(j));
        done = true;
      }
    }
    if (!done) {
      // every sampled join overflowed: 1-sum the two smallest parts
      std::vector<std::pair<long long, size_t>> sized;
      for (size_t i = 0; i < parts.size(); ++i)
        sized.push_back({count_of(parts[i]), i});
      std::sort(sized.begin(), sized.end());
      size_t i = sized[0].second, j = sized[1].second;
      if (i > j) std::swap(i, j);
      parts[i] = join(i, j, false);
      parts.erase(parts.begin() + static_cast<long>(j));
    }
  }
  return std::move(parts[0]);
}

nlohmann::json matroid_to_json(const MatroidSumTree& t) {
  nlohmann::json j;
  switch (t.kind) {
    case MatroidSumTree::Kind::uniform:
      j["kind"] = "uniform";
      j["n"] = t.n;
      j["k"] = t.k;
      j["elements"] = t.elements;
      break;
    case MatroidSumTree::Kind::one_sum:
      j["kind"] = "one_sum";
      j["left"] = matroid_to_json(*t.left);
      j["right"] = matroid_to_json(*t.right);
      break;
    case MatroidSumTree::Kind::two_sum:
      j["kind"] = "two_sum";
      j["glue"] = t.glue;
      j["left"] = matroid_to_json(*t.left);
      j["right"] = matroid_to_json(*t.right);
      break;
  }
  return j;
}

MatroidSumTree matroid_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "uniform") {
    std::vector<std::string> elems;
    if (j.contains("elements"))
      elems = j.at("elements").get<std::vector<std::string>>();
    return uniform_matroid(j.at("n").get<int>(), j.at("k").get<int>(),
                           std::move(elems));
  }
  if (kind == "one_sum")
    return one_sum(matroid_from_json(j.at("left")),
                   matroid_from_json(j.at("right")));
  if (kind == "two_sum")
    return two_sum(matroid_from_json(j.at("left")),
                   matroid_from_json(j.at("right")),
                   j.at("glue").get<std::string>());
  throw std::invalid_argument("matroid_from_json: unknown kind " + kind);
}

}  // namespace slackmat
