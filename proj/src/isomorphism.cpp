#include "slackmat/isomorphism.hpp"

#include <algorithm>
#include <map>

namespace slackmat {

namespace {

// Entry codes shared by both matrices so colors are comparable.
struct Coder {
  std::map<Rational, int> codes;
  int code(const Rational& v) {
    auto it = codes.find(v);
    if (it != codes.end()) return it->second;
    int c = static_cast<int>(codes.size());
    codes.emplace(v, c);
    return c;
  }
};

struct Coloring {
  std::vector<int> row, col;  // color ids, shared across A and B
};

// One refinement round: new row color = (old color, sorted multiset of
// (col color, entry)), symmetrically for columns. Signature->id maps are
// shared between both matrices so equal signatures get equal ids.
bool refine_step(const std::vector<std::vector<int>>& ea,
                 const std::vector<std::vector<int>>& eb, Coloring& ca,
                 Coloring& cb) {
  auto row_sigs = [](const std::vector<std::vector<int>>& e, const Coloring& c) {
    std::vector<std::vector<int>> sigs(e.size());
    for (size_t i = 0; i < e.size(); ++i) {
      std::vector<int> s;
      s.reserve(1 + 2 * e[i].size());
      s.push_back(c.row[i]);
      std::vector<std::pair<int, int>> parts(e[i].size());
      for (size_t j = 0; j < e[i].size(); ++j) parts[j] = {c.col[j], e[i][j]};
      std::sort(parts.begin(), parts.end());
      for (auto& p : parts) {
        s.push_back(p.first);
        s.push_back(p.second);
      }
      sigs[i] = std::move(s);
    }
    return sigs;
  };
  auto col_sigs = [](const std::vector<std::vector<int>>& e, const Coloring& c) {
    size_t n = e.empty() ? 0 : e[0].size();
    std::vector<std::vector<int>> sigs(n);
    for (size_t j = 0; j < n; ++j) {
      std::vector<int> s;
      s.push_back(c.col[j]);
      std::vector<std::pair<int, int>> parts(e.size());
      for (size_t i = 0; i < e.size(); ++i) parts[i] = {c.row[i], e[i][j]};
      std::sort(parts.begin(), parts.end());
      for (auto& p : parts) {
        s.push_back(p.first);
        s.push_back(p.second);
      }
      sigs[j] = std::move(s);
    }
    return sigs;
  };

  std::map<std::vector<int>, int> ids;
  auto assign = [&ids](const std::vector<std::vector<int>>& sigs, std::vector<int>& out) {
    for (size_t i = 0; i < sigs.size(); ++i) {
      auto it = ids.find(sigs[i]);
      if (it == ids.end()) it = ids.emplace(sigs[i], static_cast<int>(ids.size())).first;
      out[i] = it->second;
    }
  };

  Coloring na{ca}, nb{cb};
  auto ra = row_sigs(ea, ca), rb = row_sigs(eb, cb);
  assign(ra, na.row);
  assign(rb, nb.row);
  ids.clear();
  auto qa = col_sigs(ea, ca), qb = col_sigs(eb, cb);
  assign(qa, na.col);
  assign(qb, nb.col);
  bool changed = na.row != ca.row || nb.row != cb.row || na.col != ca.col || nb.col != cb.col;
  ca = std::move(na);
  cb = std::move(nb);
  return changed;
}

// Color class sizes must match between the two matrices.
bool histograms_match(const std::vector<int>& a, const std::vector<int>& b) {
  std::map<int, int> ha, hb;
  for (int v : a) ++ha[v];
  for (int v : b) ++hb[v];
  return ha == hb;
}

struct Searcher {
  const std::vector<std::vector<int>>& ea;
  const std::vector<std::vector<int>>& eb;
  int m, n;
  int fresh = 1 << 20;  // individualization colors, disjoint from refinement ids

  bool verify(const std::vector<int>& rp, const std::vector<int>& cp) const {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        if (eb[i][j] != ea[rp[i]][cp[j]]) return false;
    return true;
  }

  bool search(Coloring ca, Coloring cb, std::optional<Isomorphism>& out) {
    while (refine_step(ea, eb, ca, cb)) {
    }
    if (!histograms_match(ca.row, cb.row) || !histograms_match(ca.col, cb.col))
      return false;

    // Pick the first B row in a non-singleton class, try all A rows of that
    // class; then the same for columns. All singleton => read the bijection.
    auto find_target = [](const std::vector<int>& colors) {
      std::map<int, int> cnt;
      for (int c : colors) ++cnt[c];
      for (size_t i = 0; i < colors.size(); ++i)
        if (cnt[colors[i]] > 1) return static_cast<int>(i);
      return -1;
    };

    int bi = find_target(cb.row);
    if (bi >= 0) {
      for (int ai = 0; ai < m; ++ai) {
        if (ca.row[ai] != cb.row[bi]) continue;
        Coloring na{ca}, nb{cb};
        na.row[ai] = fresh;
        nb.row[bi] = fresh;
        ++fresh;
        if (search(std::move(na), std::move(nb), out)) return true;
      }
      return false;
    }
    int bj = find_target(cb.col);
    if (bj >= 0) {
      for (int aj = 0; aj < n; ++aj) {
        if (ca.col[aj] != cb.col[bj]) continue;
        Coloring na{ca}, nb{cb};
        na.col[aj] = fresh;
        nb.col[bj] = fresh;
        ++fresh;
        if (search(std::move(na), std::move(nb), out)) return true;
      }
      return false;
    }

    std::vector<int> rp(m), cp(n);
    std::map<int, int> arow, acol;
    for (int i = 0; i < m; ++i) arow[ca.row[i]] = i;
    for (int j = 0; j < n; ++j) acol[ca.col[j]] = j;
    for (int i = 0; i < m; ++i) rp[i] = arow[cb.row[i]];
    for (int j = 0; j < n; ++j) cp[j] = acol[cb.col[j]];
    if (!verify(rp, cp)) return false;
    out = Isomorphism{std::move(rp), std::move(cp)};
    return true;
  }
};

}  // namespace

std::optional<Isomorphism> is_isomorphic(const RationalMatrix& A,
                                         const RationalMatrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) return std::nullopt;
  int m = A.rows(), n = A.cols();
  if (m == 0 || n == 0) return Isomorphism{{}, {}};

  Coder coder;
  std::vector<std::vector<int>> ea(m, std::vector<int>(n)),
      eb(m, std::vector<int>(n));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      ea[i][j] = coder.code(A.at(i, j));
      eb[i][j] = coder.code(B.at(i, j));
    }

  Coloring ca, cb;
  ca.row.assign(m, 0);
  ca.col.assign(n, 0);
  cb = ca;
  Searcher s{ea, eb, m, n};
  std::optional<Isomorphism> out;
  s.search(std::move(ca), std::move(cb), out);
  return out;
}

}  // namespace slackmat
