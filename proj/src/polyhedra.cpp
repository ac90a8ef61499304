#include "slackmat/polyhedra.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "slackmat/lp.hpp"

namespace slackmat {

AffineHull affine_hull(const RationalMatrix& S) {
  if (S.cols() < 1) throw std::invalid_argument("affine_hull: empty matrix");
  int m = S.rows(), n = S.cols();
  AffineHull h;
  h.base = S.column(0);
  // Keep the column differences that are independent, by exact elimination.
  // echelon: pivot -> reduced vector, vectors zero before their pivot.
  std::map<int, std::vector<Rational>> echelon;
  for (int j = 1; j < n; ++j) {
    std::vector<Rational> d(m);
    for (int i = 0; i < m; ++i) d[i] = S.at(i, j) - h.base[i];
    std::vector<Rational> r = d;
    while (true) {
      int p = 0;
      while (p < m && r[p] == 0) ++p;
      if (p == m) break;  // dependent
      auto it = echelon.find(p);
      if (it == echelon.end()) {
        echelon.emplace(p, r);
        h.basis.push_back(std::move(d));
        break;
      }
      Rational f = r[p] / it->second[p];
      for (int i = p; i < m; ++i) r[i] -= f * it->second[i];
    }
  }
  return h;
}

std::optional<std::vector<Rational>> in_convex_hull(const RationalMatrix& S,
                                                    const std::vector<Rational>& p) {
  if (static_cast<int>(p.size()) != S.rows())
    throw std::invalid_argument("in_convex_hull: point dimension mismatch");
  int m = S.rows(), n = S.cols();
  if (n == 0) return std::nullopt;
  std::vector<std::vector<Rational>> A(m + 1, std::vector<Rational>(n));
  std::vector<Rational> b(m + 1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) A[i][j] = S.at(i, j);
    b[i] = p[i];
  }
  for (int j = 0; j < n; ++j) A[m][j] = 1;
  b[m] = 1;
  return lp_feasible_eq(A, b);
}

namespace {

// Unique solution of A t = rhs for square A; nullopt when singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> A,
                                                  std::vector<Rational> rhs) {
  size_t d = A.size();
  for (size_t c = 0; c < d; ++c) {
    size_t piv = d;
    for (size_t i = c; i < d; ++i)
      if (A[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv == d) return std::nullopt;
    std::swap(A[c], A[piv]);
    std::swap(rhs[c], rhs[piv]);
    for (size_t i = 0; i < d; ++i) {
      if (i == c || A[i][c] == 0) continue;
      Rational f = A[i][c] / A[c][c];
      for (size_t j = c; j < d; ++j) A[i][j] -= f * A[c][j];
      rhs[i] -= f * rhs[c];
    }
  }
  std::vector<Rational> t(d);
  for (size_t i = 0; i < d; ++i) t[i] = rhs[i] / A[i][i];
  return t;
}

mpz_class binomial(int m, int d) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), m, d);
  return r;
}

}  // namespace

SlackVerdict is_slack_matrix(const RationalMatrix& S,
                             unsigned long long max_candidates) {
  SlackVerdict v{SlackStatus::no, -1, std::nullopt, std::nullopt, ""};
  if (S.rows() == 0 || S.cols() == 0) {
    v.reason = "empty matrix";
    return v;
  }
  if (!S.is_nonnegative()) {
    v.reason = "negative entry";
    return v;
  }
  int m = S.rows();

  // distinct columns (a point set, not a multiset)
  std::vector<int> keep;
  {
    std::set<std::vector<Rational>> seen;
    for (int j = 0; j < S.cols(); ++j)
      if (seen.insert(S.column(j)).second) keep.push_back(j);
  }
  RationalMatrix T = S.restrict_cols(keep);

  int r = T.rank();
  if (r == 0) {
    v.reason = "all entries zero";
    return v;
  }
  if (r == 1) {
    if (T.cols() == 1) {
      v.status = SlackStatus::yes;
      v.dim = 0;
      v.reason = "single point";
    } else {
      v.reason = "rank 1 with more than one distinct column";
    }
    return v;
  }

  AffineHull hull = affine_hull(T);
  int d = hull.dim();

  // bounded <=> no t with W t >= 0 and 1^T W t = 1 (W has full column rank,
  // so nonzero recession directions have W t != 0 and can be normalized)
  {
    // vars: u (d), w (d), s (m); constraints W(u-w) - s = 0, sum_i (W(u-w))_i = 1
    std::vector<std::vector<Rational>> A(m + 1, std::vector<Rational>(2 * d + m, Rational(0)));
    std::vector<Rational> b(m + 1, Rational(0));
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < d; ++j) {
        A[i][j] = hull.basis[j][i];
        A[i][d + j] = -hull.basis[j][i];
      }
      A[i][2 * d + i] = -1;
    }
    for (int j = 0; j < d; ++j) {
      Rational s(0);
      for (int i = 0; i < m; ++i) s += hull.basis[j][i];
      A[m][j] = s;
      A[m][d + j] = -s;
    }
    b[m] = 1;
    auto sol = lp_feasible_eq(A, b);
    if (sol) {
      std::vector<Rational> ray(m, Rational(0));
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < d; ++j)
          ray[i] += hull.basis[j][i] * ((*sol)[j] - (*sol)[d + j]);
      v.reason = "aff(columns) meets the orthant in an unbounded set";
      v.witness_ray = std::move(ray);
      return v;
    }
  }

  mpz_class cand = binomial(m, d);
  if (cand > mpz_class(static_cast<unsigned long>(max_candidates))) {
    v.status = SlackStatus::too_large;
    v.reason = "C(" + std::to_string(m) + "," + std::to_string(d) +
               ") basis candidates exceed cap";
    return v;
  }

  std::set<std::vector<Rational>> columns;
  for (int j = 0; j < T.cols(); ++j) columns.insert(T.column(j));

  // Enumerate d-subsets of the m constraints x_i >= 0; each nonsingular
  // system pins a candidate basic point of Q.
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;
  std::set<std::vector<Rational>> vertices;
  while (true) {
    std::vector<std::vector<Rational>> A(d, std::vector<Rational>(d));
    std::vector<Rational> rhs(d);
    for (int a = 0; a < d; ++a) {
      for (int j = 0; j < d; ++j) A[a][j] = hull.basis[j][idx[a]];
      rhs[a] = -hull.base[idx[a]];
    }
    if (auto t = solve_square(std::move(A), std::move(rhs))) {
      std::vector<Rational> p(m);
      bool feas = true;
      for (int i = 0; i < m; ++i) {
        p[i] = hull.base[i];
        for (int j = 0; j < d; ++j) p[i] += hull.basis[j][i] * (*t)[j];
        if (p[i] < 0) {
          feas = false;
          break;
        }
      }
      if (feas && !vertices.count(p)) {
        if (!columns.count(p)) {
          v.reason = "vertex of aff(columns) ∩ orthant is not a column";
          v.witness_vertex = std::move(p);
          return v;
        }
        vertices.insert(std::move(p));
      }
    }
    // next combination
    int pos = d - 1;
    while (pos >= 0 && idx[pos] == m - d + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int q = pos + 1; q < d; ++q) idx[q] = idx[q - 1] + 1;
  }

  v.status = SlackStatus::yes;
  v.dim = r - 1;
  v.reason = "bounded and every vertex is a column";
  return v;
}

int polytope_dim(const RationalMatrix& S) { return S.rank() - 1; }

Nonredundant make_nonredundant(const RationalMatrix& S) {
  if (!S.is_nonnegative())
    throw std::invalid_argument("make_nonredundant: matrix must be nonnegative");
  RationalMatrix T = S;
  Nonredundant out{T, {}, {}};

  bool changed = true;
  while (changed) {
    changed = false;

    // duplicate rows (keep first)
    {
      std::set<std::vector<Rational>> seen;
      std::vector<int> keep;
      for (int i = 0; i < T.rows(); ++i) {
        if (seen.insert(T.row(i)).second)
          keep.push_back(i);
        else
          out.removed_rows.push_back(T.row_label(i));
      }
      if (static_cast<int>(keep.size()) != T.rows()) {
        T = T.restrict_rows(RowSet(keep));
        changed = true;
      }
    }
    // duplicate columns (keep first)
    {
      std::set<std::vector<Rational>> seen;
      std::vector<int> keep;
      for (int j = 0; j < T.cols(); ++j) {
        if (seen.insert(T.column(j)).second)
          keep.push_back(j);
        else
          out.removed_cols.push_back(T.col_label(j));
      }
      if (static_cast<int>(keep.size()) != T.cols()) {
        T = T.restrict_cols(keep);
        changed = true;
      }
    }
    // rows with empty or full zero set
    {
      std::vector<int> keep;
      std::vector<std::string> dropped;
      for (int i = 0; i < T.rows(); ++i) {
        int zeros = 0;
        for (int j = 0; j < T.cols(); ++j)
          if (T.at(i, j) == 0) ++zeros;
        if (zeros == 0 || zeros == T.cols())
          dropped.push_back(T.row_label(i));
        else
          keep.push_back(i);
      }
      if (keep.empty() && T.rows() > 0) {
        // degenerate: keep one row so the matrix stays nonempty
        keep.push_back(0);
        dropped.erase(std::find(dropped.begin(), dropped.end(), T.row_label(0)));
      }
      if (static_cast<int>(keep.size()) != T.rows()) {
        for (auto& l : dropped) out.removed_rows.push_back(l);
        T = T.restrict_rows(RowSet(keep));
        changed = true;
      }
    }
    // rows whose zero set is strictly contained in another row's zero set
    {
      int mR = T.rows(), nC = T.cols();
      std::vector<std::vector<char>> z(mR, std::vector<char>(nC));
      for (int i = 0; i < mR; ++i)
        for (int j = 0; j < nC; ++j) z[i][j] = T.at(i, j) == 0;
      std::vector<int> keep;
      for (int i = 0; i < mR; ++i) {
        bool dominated = false;
        for (int k = 0; k < mR && !dominated; ++k) {
          if (k == i) continue;
          bool subset = true, strict = false;
          for (int j = 0; j < nC; ++j) {
            if (z[i][j] && !z[k][j]) {
              subset = false;
              break;
            }
            if (z[k][j] && !z[i][j]) strict = true;
          }
          dominated = subset && strict;
        }
        if (dominated)
          out.removed_rows.push_back(T.row_label(i));
        else
          keep.push_back(i);
      }
      if (static_cast<int>(keep.size()) != T.rows()) {
        T = T.restrict_rows(RowSet(keep));
        changed = true;
      }
    }
    // columns inside the convex hull of the remaining columns
    {
      // for nonnegative matrices a convex combination equal to column j can
      // only use columns that vanish wherever j does; prefilter on zero-set
      // containment so most columns skip the LP outright
      bool nonneg = T.is_nonnegative();
      int mR = T.rows();
      std::vector<std::vector<char>> z(T.cols(), std::vector<char>(mR));
      if (nonneg)
        for (int b = 0; b < T.cols(); ++b)
          for (int i = 0; i < mR; ++i) z[b][i] = T.at(i, b) == 0;
      std::vector<char> alive(T.cols(), 1);
      for (int j = 0; j < T.cols(); ++j) {
        std::vector<int> others;
        for (int b = 0; b < T.cols(); ++b) {
          if (b == j || !alive[b]) continue;
          if (nonneg) {
            bool covers = true;
            for (int i = 0; i < mR; ++i)
              if (z[j][i] && !z[b][i]) {
                covers = false;
                break;
              }
            if (!covers) continue;
          }
          others.push_back(b);
        }
        if (others.empty()) continue;
        if (in_convex_hull(T.restrict_cols(others), T.column(j))) {
          alive[j] = 0;
          out.removed_cols.push_back(T.col_label(j));
        }
      }
      std::vector<int> keep;
      for (int j = 0; j < T.cols(); ++j)
        if (alive[j]) keep.push_back(j);
      if (static_cast<int>(keep.size()) != T.cols()) {
        T = T.restrict_cols(keep);
        changed = true;
      }
    }
  }
  out.matrix = std::move(T);
  return out;
}

}  // namespace slackmat
