#include "slackmat/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "slackmat/json_io.hpp"

namespace slackmat {

namespace {

// Above this many pairwise-dependence components we switch from the exhaustive
// exact sweep (2^(r-1) candidate cuts) to Queyranne minimization with exact
// confirmation of the candidates.
constexpr int kSweepCap = 12;

// Column codes of a row group over a column subset: code[j] identifies the
// restricted column (first-occurrence order), cnt its multiplicity.
struct CodeTable {
  std::vector<int> code;
  int distinct = 0;
  std::vector<long long> cnt;

  void finish(int d) {
    distinct = d;
    cnt.assign(d, 0);
    for (int c : code) ++cnt[c];
  }
};

CodeTable restriction_codes(const RationalMatrix& S, const std::vector<int>& rows,
                            const std::vector<int>& cols) {
  CodeTable t;
  t.code.resize(cols.size());
  std::map<std::vector<Rational>, int> ids;
  std::vector<Rational> key(rows.size());
  for (size_t jj = 0; jj < cols.size(); ++jj) {
    for (size_t i = 0; i < rows.size(); ++i) key[i] = S.at(rows[i], cols[jj]);
    auto it = ids.emplace(key, static_cast<int>(ids.size())).first;
    t.code[jj] = it->second;
  }
  t.finish(static_cast<int>(ids.size()));
  return t;
}

CodeTable combined_codes(const std::vector<const CodeTable*>& parts, size_t ncols) {
  CodeTable t;
  t.code.resize(ncols);
  std::map<std::vector<int>, int> ids;
  std::vector<int> key(parts.size());
  for (size_t j = 0; j < ncols; ++j) {
    for (size_t p = 0; p < parts.size(); ++p) key[p] = parts[p]->code[j];
    auto it = ids.emplace(key, static_cast<int>(ids.size())).first;
    t.code[j] = it->second;
  }
  t.finish(static_cast<int>(ids.size()));
  return t;
}

// Exact factorization test: every (a,b) combination occurs and
// n * joint(a,b) == cnt_a(a) * cnt_b(b).
bool tables_independent(const CodeTable& a, const CodeTable& b) {
  const long long n = static_cast<long long>(a.code.size());
  if (n == 0) return true;
  if (static_cast<long long>(a.distinct) * b.distinct > n) return false;
  std::vector<long long> joint(static_cast<size_t>(a.distinct) * b.distinct, 0);
  for (size_t j = 0; j < a.code.size(); ++j)
    ++joint[static_cast<size_t>(a.code[j]) * b.distinct + b.code[j]];
  for (int x = 0; x < a.distinct; ++x)
    for (int y = 0; y < b.distinct; ++y)
      if (n * joint[static_cast<size_t>(x) * b.distinct + y] != a.cnt[x] * b.cnt[y])
        return false;
  return true;
}

// I = log2(n) - (1/n) * (sum_a c log2 c + sum_b c log2 c - sum_joint c log2 c)
double table_mi(const CodeTable& a, const CodeTable& b) {
  const long long n = static_cast<long long>(a.code.size());
  if (n == 0) return 0.0;
  std::map<std::pair<int, int>, long long> joint;
  for (size_t j = 0; j < a.code.size(); ++j) ++joint[{a.code[j], b.code[j]}];
  auto clog = [](long long c) { return static_cast<double>(c) * std::log2(static_cast<double>(c)); };
  double s = 0.0;
  for (long long c : a.cnt) s += clog(c);
  for (long long c : b.cnt) s += clog(c);
  for (const auto& [key, c] : joint) s -= clog(c);
  return std::log2(static_cast<double>(n)) - s / static_cast<double>(n);
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  }
};

// Ground rows with their pairwise-dependence components. Any partition of the
// rows into exactly independent sides (simultaneously in every column block)
// must keep each component whole, so candidate cuts are unions of components.
struct CutArena {
  const RationalMatrix* S = nullptr;
  std::vector<int> rows;                           // ascending original indices
  std::vector<std::vector<int>> blocks;            // column groups
  std::vector<std::vector<int>> comps;             // positions into rows
  std::vector<std::vector<CodeTable>> comp_codes;  // [block][component]
};

CutArena build_arena(const RationalMatrix& S, std::vector<int> rows,
                     std::vector<std::vector<int>> blocks) {
  CutArena ar;
  ar.S = &S;
  ar.rows = std::move(rows);
  ar.blocks = std::move(blocks);
  const int g = static_cast<int>(ar.rows.size());
  const size_t nb = ar.blocks.size();

  std::vector<std::vector<CodeTable>> singles(nb);
  for (size_t bi = 0; bi < nb; ++bi) {
    singles[bi].reserve(g);
    for (int u = 0; u < g; ++u)
      singles[bi].push_back(restriction_codes(S, {ar.rows[u]}, ar.blocks[bi]));
  }
  UnionFind uf(g);
  for (int u = 0; u < g; ++u)
    for (int v = u + 1; v < g; ++v) {
      if (uf.find(u) == uf.find(v)) continue;
      for (size_t bi = 0; bi < nb; ++bi)
        if (!tables_independent(singles[bi][u], singles[bi][v])) {
          uf.unite(u, v);
          break;
        }
    }
  std::map<int, std::vector<int>> by_root;
  for (int u = 0; u < g; ++u) by_root[uf.find(u)].push_back(u);
  for (auto& [root, members] : by_root) ar.comps.push_back(std::move(members));
  // by_root iterates roots ascending; each root is its component's smallest
  // member, so components come out ordered by smallest ground position.
  ar.comp_codes.assign(nb, {});
  for (size_t bi = 0; bi < nb; ++bi)
    for (const auto& comp : ar.comps) {
      std::vector<int> orig;
      orig.reserve(comp.size());
      for (int u : comp) orig.push_back(ar.rows[u]);
      ar.comp_codes[bi].push_back(restriction_codes(S, orig, ar.blocks[bi]));
    }
  return ar;
}

bool cut_exact(const CutArena& ar, const std::vector<char>& in_x) {
  for (size_t bi = 0; bi < ar.blocks.size(); ++bi) {
    std::vector<const CodeTable*> px, py;
    for (size_t ci = 0; ci < ar.comps.size(); ++ci)
      (in_x[ci] ? px : py).push_back(&ar.comp_codes[bi][ci]);
    CodeTable tx = combined_codes(px, ar.blocks[bi].size());
    CodeTable ty = combined_codes(py, ar.blocks[bi].size());
    if (!tables_independent(tx, ty)) return false;
  }
  return true;
}

RowSet side_to_rowset(const CutArena& ar, const std::vector<char>& in_x) {
  std::vector<int> v;
  for (size_t ci = 0; ci < ar.comps.size(); ++ci)
    if (in_x[ci])
      for (int u : ar.comps[ci]) v.push_back(ar.rows[u]);
  return RowSet(std::move(v));
}

// Visits confirmed zero cuts (as the side avoiding the last component) in a
// deterministic order until `visit` returns true. Exhaustive for few
// components; Queyranne candidates with exact confirmation otherwise.
void for_each_zero_cut(const CutArena& ar, const std::function<bool(const RowSet&)>& visit) {
  const int r = static_cast<int>(ar.comps.size());
  if (r <= 1) return;
  if (r <= kSweepCap) {
    std::vector<char> in_x(r, 0);
    for (unsigned long mask = 1; mask < (1ul << (r - 1)); ++mask) {
      for (int ci = 0; ci < r - 1; ++ci) in_x[ci] = (mask >> ci) & 1;
      in_x[r - 1] = 0;
      if (cut_exact(ar, in_x) && visit(side_to_rowset(ar, in_x))) return;
    }
    return;
  }
  SubmodularOracle o;
  o.ground = r;
  o.f = [&ar, r](const RowSet& A) {
    double total = 0.0;
    for (size_t bi = 0; bi < ar.blocks.size(); ++bi) {
      std::vector<const CodeTable*> px, py;
      for (int ci = 0; ci < r; ++ci)
        (A.contains(ci) ? px : py).push_back(&ar.comp_codes[bi][ci]);
      if (px.empty() || py.empty()) continue;
      CodeTable tx = combined_codes(px, ar.blocks[bi].size());
      CodeTable ty = combined_codes(py, ar.blocks[bi].size());
      total += table_mi(tx, ty);
    }
    return total;
  };
  std::set<RowSet> seen;
  for (const CutCandidate& cand : queyranne_candidates(o)) {
    if (!(cand.value < kZeroCutTol)) continue;
    std::vector<char> in_x(r, 0);
    for (int ci : cand.cut.indices()) in_x[ci] = 1;
    if (in_x[r - 1])  // normalize: X is the side avoiding the last component
      for (int ci = 0; ci < r; ++ci) in_x[ci] = !in_x[ci];
    RowSet x = side_to_rowset(ar, in_x);
    if (x.empty() || x.size() == static_cast<int>(ar.rows.size())) continue;
    if (!seen.insert(x).second) continue;
    if (cut_exact(ar, in_x) && visit(x)) return;
  }
}

std::optional<RowSet> first_zero_cut(const CutArena& ar) {
  std::optional<RowSet> out;
  for_each_zero_cut(ar, [&out](const RowSet& x) {
    out = x;
    return true;
  });
  return out;
}

std::vector<int> iota_upto(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

void check_rows_in_range(const RationalMatrix& S, const RowSet& X, const char* who) {
  for (int i : X.indices())
    if (i < 0 || i >= S.rows()) throw std::out_of_range(std::string(who) + ": row index out of range");
}

// Integral column-multiplicity split of an exactly independent restriction
// pair: with g = gcd of the X-side counts, m1(a) = cnt_x(a)/g and
// m2(b) = g*cnt_y(b)/n satisfy m1(a)*m2(b) == joint(a,b).
struct MultiplicitySplit {
  std::vector<long long> m1, m2;
  std::vector<int> rep_x, rep_y;  // first column position per code
};

std::optional<MultiplicitySplit> split_multiplicities(const CodeTable& tx, const CodeTable& ty) {
  const long long n = static_cast<long long>(tx.code.size());
  if (n == 0) return std::nullopt;
  long long g = 0;
  for (long long c : tx.cnt) g = std::gcd(g, c);
  MultiplicitySplit ms;
  ms.m1.resize(tx.distinct);
  ms.m2.resize(ty.distinct);
  for (int a = 0; a < tx.distinct; ++a) ms.m1[a] = tx.cnt[a] / g;
  for (int b = 0; b < ty.distinct; ++b) {
    long long num = g * ty.cnt[b];
    if (num % n != 0) return std::nullopt;
    ms.m2[b] = num / n;
  }
  std::vector<long long> joint(static_cast<size_t>(tx.distinct) * ty.distinct, 0);
  for (size_t j = 0; j < tx.code.size(); ++j)
    ++joint[static_cast<size_t>(tx.code[j]) * ty.distinct + ty.code[j]];
  for (int a = 0; a < tx.distinct; ++a)
    for (int b = 0; b < ty.distinct; ++b)
      if (ms.m1[a] * ms.m2[b] != joint[static_cast<size_t>(a) * ty.distinct + b])
        return std::nullopt;
  ms.rep_x.assign(tx.distinct, -1);
  ms.rep_y.assign(ty.distinct, -1);
  for (size_t j = 0; j < tx.code.size(); ++j) {
    if (ms.rep_x[tx.code[j]] < 0) ms.rep_x[tx.code[j]] = static_cast<int>(j);
    if (ms.rep_y[ty.code[j]] < 0) ms.rep_y[ty.code[j]] = static_cast<int>(j);
  }
  return ms;
}

std::vector<std::string> labels_of(const RationalMatrix& S, const std::vector<int>& rows) {
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (int i : rows) out.push_back(S.row_label(i));
  return out;
}

}  // namespace

std::vector<CutCandidate> queyranne_candidates(const SubmodularOracle& o) {
  if (o.ground < 2) throw std::invalid_argument("queyranne: ground set must have >= 2 elements");
  std::vector<std::vector<int>> nodes(o.ground);
  for (int i = 0; i < o.ground; ++i) nodes[i] = {i};
  auto feval = [&o](const std::vector<int>& els) { return o.f(RowSet(els)); };

  std::vector<CutCandidate> out;
  while (nodes.size() >= 2) {
    const int nn = static_cast<int>(nodes.size());
    std::vector<char> used(nn, 0);
    std::vector<int> order{0};
    used[0] = 1;
    std::vector<int> wset = nodes[0];
    while (static_cast<int>(order.size()) < nn) {
      int best = -1;
      double best_val = std::numeric_limits<double>::infinity();
      for (int v = 0; v < nn; ++v) {
        if (used[v]) continue;
        std::vector<int> wu = wset;
        wu.insert(wu.end(), nodes[v].begin(), nodes[v].end());
        double val = feval(wu) - feval(nodes[v]);
        if (val < best_val) {
          best_val = val;
          best = v;
        }
      }
      order.push_back(best);
      used[best] = 1;
      wset.insert(wset.end(), nodes[best].begin(), nodes[best].end());
    }
    const int t = order[nn - 2], u = order[nn - 1];
    out.push_back({RowSet(nodes[u]), feval(nodes[u])});
    nodes[t].insert(nodes[t].end(), nodes[u].begin(), nodes[u].end());
    std::sort(nodes[t].begin(), nodes[t].end());
    nodes.erase(nodes.begin() + u);
  }
  return out;
}

CutCandidate queyranne_min(const SubmodularOracle& o) {
  std::vector<CutCandidate> cands = queyranne_candidates(o);
  size_t best = 0;
  for (size_t i = 1; i < cands.size(); ++i)
    if (cands[i].value < cands[best].value) best = i;
  return cands[best];
}

bool is_independent_partition(const RationalMatrix& S, const RowSet& X) {
  check_rows_in_range(S, X, "is_independent_partition");
  const int m = S.rows();
  if (X.empty() || X.size() == m) return true;
  std::vector<int> cols = iota_upto(S.cols());
  CodeTable tx = restriction_codes(S, X.indices(), cols);
  CodeTable ty = restriction_codes(S, X.complement(m).indices(), cols);
  return tables_independent(tx, ty);
}

double mutual_information(const RationalMatrix& S, const RowSet& X) {
  check_rows_in_range(S, X, "mutual_information");
  const int m = S.rows();
  if (X.empty() || X.size() == m || S.cols() == 0) return 0.0;
  std::vector<int> cols = iota_upto(S.cols());
  CodeTable tx = restriction_codes(S, X.indices(), cols);
  CodeTable ty = restriction_codes(S, X.complement(m).indices(), cols);
  if (tables_independent(tx, ty)) return 0.0;
  return table_mi(tx, ty);
}

namespace {

std::optional<OneProduct> build_one_product(const RationalMatrix& S, const RowSet& X) {
  const int m = S.rows(), n = S.cols();
  const RowSet Y = X.complement(m);
  std::vector<int> cols = iota_upto(n);
  CodeTable tx = restriction_codes(S, X.indices(), cols);
  CodeTable ty = restriction_codes(S, Y.indices(), cols);
  auto ms = split_multiplicities(tx, ty);
  if (!ms) return std::nullopt;

  const int A = tx.distinct, B = ty.distinct;
  long long n1 = 0, n2 = 0;
  for (long long c : ms->m1) n1 += c;
  for (long long c : ms->m2) n2 += c;
  if (n1 * n2 != n) return std::nullopt;

  OneProduct op;
  op.x = X;
  op.s1 = RationalMatrix(X.size(), static_cast<int>(n1));
  op.s2 = RationalMatrix(Y.size(), static_cast<int>(n2));
  std::vector<long long> start_p(A, 0), start_q(B, 0);
  {
    int cc = 0;
    for (int a = 0; a < A; ++a) {
      start_p[a] = cc;
      for (long long t = 0; t < ms->m1[a]; ++t, ++cc)
        for (int ri = 0; ri < X.size(); ++ri)
          op.s1.at(ri, cc) = S.at(X.indices()[ri], ms->rep_x[a]);
    }
    cc = 0;
    for (int b = 0; b < B; ++b) {
      start_q[b] = cc;
      for (long long t = 0; t < ms->m2[b]; ++t, ++cc)
        for (int ri = 0; ri < Y.size(); ++ri)
          op.s2.at(ri, cc) = S.at(Y.indices()[ri], ms->rep_y[b]);
    }
  }
  op.s1.set_row_labels(labels_of(S, X.indices()));
  op.s2.set_row_labels(labels_of(S, Y.indices()));

  op.row_map.assign(m, -1);
  for (int ri = 0; ri < X.size(); ++ri) op.row_map[X.indices()[ri]] = ri;
  for (int ri = 0; ri < Y.size(); ++ri) op.row_map[Y.indices()[ri]] = X.size() + ri;

  op.col_map.assign(n, -1);
  std::vector<long long> ctr(static_cast<size_t>(A) * B, 0);
  for (int j = 0; j < n; ++j) {
    const int a = tx.code[j], b = ty.code[j];
    const long long idx = ctr[static_cast<size_t>(a) * B + b]++;
    const long long p = start_p[a] + idx / ms->m2[b];
    const long long q = start_q[b] + idx % ms->m2[b];
    op.col_map[j] = static_cast<int>(p * n2 + q);
  }

  RationalMatrix P = one_product(op.s1, op.s2);
  if (P.rows() != m || P.cols() != n) return std::nullopt;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      if (S.at(i, j) != P.at(op.row_map[i], op.col_map[j])) return std::nullopt;
  return op;
}

}  // namespace

std::optional<OneProduct> recognize_1product(const RationalMatrix& S) {
  if (S.rows() < 2 || S.cols() < 1) return std::nullopt;
  CutArena ar = build_arena(S, iota_upto(S.rows()), {iota_upto(S.cols())});
  auto cut = first_zero_cut(ar);
  if (!cut) return std::nullopt;
  return build_one_product(S, *cut);
}

std::vector<RowSet> irreducible_partition(const RationalMatrix& S) {
  std::vector<RowSet> out;
  if (S.rows() == 0) return out;
  std::vector<int> all_cols = iota_upto(S.cols());
  auto rec = [&](auto&& self, const std::vector<int>& rows) -> void {
    if (rows.size() == 1) {
      out.emplace_back(rows);
      return;
    }
    CutArena ar = build_arena(S, rows, {all_cols});
    auto cut = first_zero_cut(ar);
    if (!cut) {
      out.emplace_back(rows);
      return;
    }
    std::vector<int> ys;
    ys.reserve(rows.size() - cut->size());
    for (int i : rows)
      if (!cut->contains(i)) ys.push_back(i);
    self(self, cut->indices());
    self(self, ys);
  };
  rec(rec, iota_upto(S.rows()));
  std::sort(out.begin(), out.end(), [](const RowSet& a, const RowSet& b) {
    return a.indices().front() < b.indices().front();
  });
  return out;
}

namespace {

std::optional<KProduct> build_k_product(const RationalMatrix& S, const SpecialRowTuple& tuple,
                                        const BlockSplit& split, const RowSet& X) {
  const int k = tuple.k();
  const int m = S.rows(), n = S.cols();
  const RowSet spset(tuple.rows);
  std::vector<int> yv;
  for (int i = 0; i < m; ++i)
    if (!spset.contains(i) && !X.contains(i)) yv.push_back(i);
  const RowSet Y(yv);

  std::vector<CodeTable> tx(k), ty(k);
  std::vector<MultiplicitySplit> ms(k);
  long long n1 = 0, n2 = 0;
  std::vector<long long> a_cols(k, 0), b_cols(k, 0);
  for (int j = 0; j < k; ++j) {
    tx[j] = restriction_codes(S, X.indices(), split.blocks[j]);
    ty[j] = restriction_codes(S, Y.indices(), split.blocks[j]);
    auto m_j = split_multiplicities(tx[j], ty[j]);
    if (!m_j) return std::nullopt;
    ms[j] = std::move(*m_j);
    for (long long c : ms[j].m1) a_cols[j] += c;
    for (long long c : ms[j].m2) b_cols[j] += c;
    if (a_cols[j] * b_cols[j] != static_cast<long long>(split.blocks[j].size()))
      return std::nullopt;
    n1 += a_cols[j];
    n2 += b_cols[j];
  }

  KProduct kp;
  kp.k = k;
  kp.special_rows = tuple.rows;
  kp.s1 = RationalMatrix(X.size() + k - 1, static_cast<int>(n1));
  kp.s2 = RationalMatrix(Y.size() + k - 1, static_cast<int>(n2));
  for (int s = 0; s < k - 1; ++s) {
    kp.t1.rows.push_back(X.size() + s);
    kp.t2.rows.push_back(Y.size() + s);
  }

  auto fill_factor = [&](RationalMatrix& F, const RowSet& side, const std::vector<CodeTable>& tt,
                         bool left) {
    int cc = 0;
    for (int j = 0; j < k; ++j) {
      const auto& mm = left ? ms[j].m1 : ms[j].m2;
      const auto& rep = left ? ms[j].rep_x : ms[j].rep_y;
      for (size_t a = 0; a < mm.size(); ++a)
        for (long long t = 0; t < mm[a]; ++t, ++cc) {
          const int orig_col = split.blocks[j][rep[a]];
          for (int ri = 0; ri < side.size(); ++ri)
            F.at(ri, cc) = S.at(side.indices()[ri], orig_col);
          for (int s = 0; s < k - 1; ++s) F.at(side.size() + s, cc) = (j == s + 1) ? 1 : 0;
        }
    }
    std::vector<std::string> labels = labels_of(S, side.indices());
    for (int r : tuple.rows) labels.push_back(S.row_label(r));
    F.set_row_labels(std::move(labels));
    (void)tt;
  };
  fill_factor(kp.s1, X, tx, true);
  fill_factor(kp.s2, Y, ty, false);

  kp.row_map.assign(m, -1);
  for (int ri = 0; ri < X.size(); ++ri) kp.row_map[X.indices()[ri]] = ri;
  for (int ri = 0; ri < Y.size(); ++ri) kp.row_map[Y.indices()[ri]] = X.size() + ri;
  for (int s = 0; s < k - 1; ++s) kp.row_map[tuple.rows[s]] = X.size() + Y.size() + s;

  kp.col_map.assign(n, -1);
  std::vector<long long> prod_base(k, 0);
  for (int j = 1; j < k; ++j) prod_base[j] = prod_base[j - 1] + a_cols[j - 1] * b_cols[j - 1];
  for (int j = 0; j < k; ++j) {
    const int A = tx[j].distinct, B = ty[j].distinct;
    std::vector<long long> start_p(A, 0), start_q(B, 0);
    long long acc = 0;
    for (int a = 0; a < A; ++a) {
      start_p[a] = acc;
      acc += ms[j].m1[a];
    }
    acc = 0;
    for (int b = 0; b < B; ++b) {
      start_q[b] = acc;
      acc += ms[j].m2[b];
    }
    std::vector<long long> ctr(static_cast<size_t>(A) * B, 0);
    for (size_t jj = 0; jj < split.blocks[j].size(); ++jj) {
      const int a = tx[j].code[jj], b = ty[j].code[jj];
      const long long idx = ctr[static_cast<size_t>(a) * B + b]++;
      const long long p = start_p[a] + idx / ms[j].m2[b];
      const long long q = start_q[b] + idx % ms[j].m2[b];
      kp.col_map[split.blocks[j][jj]] = static_cast<int>(prod_base[j] + p * b_cols[j] + q);
    }
  }

  RationalMatrix P = k_product(kp.s1, kp.t1, kp.s2, kp.t2);
  if (P.rows() != m || P.cols() != n) return std::nullopt;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      if (S.at(i, j) != P.at(kp.row_map[i], kp.col_map[j])) return std::nullopt;
  return kp;
}

}  // namespace

std::optional<KProduct> recognize_kproduct_filtered(const RationalMatrix& S, int k,
                                                    const TuplePredicate& tuple_ok,
                                                    const FactorPredicate& factors_ok) {
  if (k < 1 || S.cols() < 1) return std::nullopt;

  if (k == 1) {
    if (tuple_ok && !tuple_ok(SpecialRowTuple{})) return std::nullopt;
    if (S.rows() < 2) return std::nullopt;
    CutArena ar = build_arena(S, iota_upto(S.rows()), {iota_upto(S.cols())});
    std::optional<KProduct> found;
    for_each_zero_cut(ar, [&](const RowSet& X) {
      auto op = build_one_product(S, X);
      if (!op) return false;
      KProduct kp;
      kp.k = 1;
      kp.s1 = std::move(op->s1);
      kp.s2 = std::move(op->s2);
      kp.row_map = std::move(op->row_map);
      kp.col_map = std::move(op->col_map);
      if (factors_ok && !factors_ok(kp)) return false;
      found = std::move(kp);
      return true;
    });
    return found;
  }

  for (const SpecialRowTuple& t : find_special_tuples(S, k)) {
    if (tuple_ok && !tuple_ok(t)) continue;
    BlockSplitResult sp = split_blocks(S, t);
    if (!sp.split) continue;
    std::vector<int> rest = RowSet(t.rows).complement(S.rows()).indices();
    if (rest.size() < 2) continue;
    CutArena ar = build_arena(S, rest, sp.split->blocks);
    std::optional<KProduct> found;
    for_each_zero_cut(ar, [&](const RowSet& X) {
      auto kp = build_k_product(S, t, *sp.split, X);
      if (!kp) return false;
      // both factors must be strictly smaller in columns (rows always are)
      if (kp->s1.cols() >= S.cols() || kp->s2.cols() >= S.cols()) return false;
      if (factors_ok && !factors_ok(*kp)) return false;
      found = std::move(*kp);
      return true;
    });
    if (found) return found;
  }
  return std::nullopt;
}

std::optional<KProduct> recognize_kproduct(const RationalMatrix& S, int k) {
  return recognize_kproduct_filtered(S, k, nullptr, nullptr);
}

FactorizationTree tree_from_kproduct(const RationalMatrix& S, const KProduct& kp) {
  FactorizationTree t;
  t.kind = FactorizationTree::Kind::product;
  t.k = kp.k;
  t.left = std::make_unique<FactorizationTree>();
  t.left->matrix = kp.s1;
  t.right = std::make_unique<FactorizationTree>();
  t.right->matrix = kp.s2;
  t.t_left = kp.t1;
  t.t_right = kp.t2;
  for (int r : kp.special_rows) t.special_labels.push_back(S.row_label(r));
  t.row_map = kp.row_map;
  t.col_map = kp.col_map;
  return t;
}

RationalMatrix expand(const FactorizationTree& t) {
  if (t.kind == FactorizationTree::Kind::leaf) return t.matrix;
  RationalMatrix L = expand(*t.left);
  RationalMatrix R = expand(*t.right);
  RationalMatrix P = k_product(L, t.t_left, R, t.t_right);
  // carry factor row labels through when they stay unique
  std::vector<std::string> labels;
  RowSet keep1 = RowSet(t.t_left.rows).complement(L.rows());
  RowSet keep2 = RowSet(t.t_right.rows).complement(R.rows());
  for (int i : keep1.indices()) labels.push_back(L.row_label(i));
  for (int i : keep2.indices()) labels.push_back(R.row_label(i));
  if (t.k >= 2) {
    if (static_cast<int>(t.special_labels.size()) == t.k - 1)
      labels.insert(labels.end(), t.special_labels.begin(), t.special_labels.end());
    else
      for (int s = 0; s < t.k - 1; ++s) labels.push_back("sp" + std::to_string(s));
  }
  std::vector<std::string> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::unique(sorted.begin(), sorted.end()) == sorted.end() &&
      static_cast<int>(labels.size()) == P.rows())
    P.set_row_labels(std::move(labels));
  return P;
}

nlohmann::json tree_to_json(const FactorizationTree& t) {
  nlohmann::json j;
  if (t.kind == FactorizationTree::Kind::leaf) {
    j["kind"] = "leaf";
    j["matrix"] = matrix_to_json(t.matrix);
    return j;
  }
  j["kind"] = "product";
  j["k"] = t.k;
  j["special_rows_left"] = t.t_left.rows;
  j["special_rows_right"] = t.t_right.rows;
  j["special_labels"] = t.special_labels;
  j["row_map"] = t.row_map;
  j["col_map"] = t.col_map;
  j["left"] = tree_to_json(*t.left);
  j["right"] = tree_to_json(*t.right);
  return j;
}

FactorizationTree tree_from_json(const nlohmann::json& j) {
  FactorizationTree t;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "leaf") {
    t.matrix = matrix_from_json(j.at("matrix"));
    return t;
  }
  if (kind != "product")
    throw std::invalid_argument("factorization tree: unknown kind '" + kind + "'");
  t.kind = FactorizationTree::Kind::product;
  t.k = j.at("k").get<int>();
  t.t_left.rows = j.at("special_rows_left").get<std::vector<int>>();
  t.t_right.rows = j.at("special_rows_right").get<std::vector<int>>();
  if (j.contains("special_labels"))
    t.special_labels = j.at("special_labels").get<std::vector<std::string>>();
  if (j.contains("row_map")) t.row_map = j.at("row_map").get<std::vector<int>>();
  if (j.contains("col_map")) t.col_map = j.at("col_map").get<std::vector<int>>();
  t.left = std::make_unique<FactorizationTree>(tree_from_json(j.at("left")));
  t.right = std::make_unique<FactorizationTree>(tree_from_json(j.at("right")));
  return t;
}

}  // namespace slackmat
