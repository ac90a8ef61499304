#include "slackmat/lp.hpp"

#include <stdexcept>

namespace slackmat {

// Tableau layout: columns 0..n-1 structural, n..n+m-1 artificial, last = rhs.
// Phase one minimizes the sum of artificials; value 0 <=> feasible.
std::optional<std::vector<Rational>> lp_feasible_eq(
    const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b) {
  size_t m = A.size();
  size_t n = m ? A[0].size() : 0;
  if (b.size() != m) throw std::invalid_argument("lp: rhs size mismatch");
  for (const auto& row : A)
    if (row.size() != n) throw std::invalid_argument("lp: ragged matrix");
  if (m == 0) return std::vector<Rational>(n, Rational(0));

  size_t width = n + m + 1;
  std::vector<std::vector<Rational>> T(m, std::vector<Rational>(width, Rational(0)));
  for (size_t i = 0; i < m; ++i) {
    bool flip = b[i] < 0;
    for (size_t j = 0; j < n; ++j) T[i][j] = flip ? -A[i][j] : A[i][j];
    T[i][n + i] = 1;
    T[i][width - 1] = flip ? -b[i] : b[i];
  }
  std::vector<size_t> basis(m);
  for (size_t i = 0; i < m; ++i) basis[i] = n + i;

  // Reduced costs for min sum(artificials): z_j - c_j = sum over rows of T
  // restricted to artificial basics; maintained implicitly by recomputation.
  std::vector<Rational> cost(width, Rational(0));
  auto recompute_cost = [&]() {
    for (size_t j = 0; j < width; ++j) {
      Rational s(0);
      for (size_t i = 0; i < m; ++i)
        if (basis[i] >= n) s += T[i][j];
      // c_j = 1 for artificials: reduced cost = s - c_j
      cost[j] = s - ((j >= n && j < n + m) ? Rational(1) : Rational(0));
    }
  };
  recompute_cost();

  while (true) {
    // Bland: entering = smallest index with positive reduced cost
    // (we maximize -sum(artificials), i.e. pivot while some cost[j] > 0).
    size_t enter = width;
    for (size_t j = 0; j + 1 < width; ++j)
      if (cost[j] > 0) {
        enter = j;
        break;
      }
    if (enter == width) break;
    // Leaving: min ratio, ties by smallest basis index (Bland).
    size_t leave = m;
    Rational best;
    for (size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= 0) continue;
      Rational ratio = T[i][width - 1] / T[i][enter];
      if (leave == m || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot happen in phase one
    Rational piv = T[leave][enter];
    for (size_t j = 0; j < width; ++j) T[leave][j] /= piv;
    for (size_t i = 0; i < m; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      Rational f = T[i][enter];
      for (size_t j = 0; j < width; ++j) T[i][j] -= f * T[leave][j];
    }
    Rational f = cost[enter];
    for (size_t j = 0; j < width; ++j) cost[j] -= f * T[leave][j];
    basis[leave] = enter;
  }

  Rational value(0);
  for (size_t i = 0; i < m; ++i)
    if (basis[i] >= n) value += T[i][width - 1];
  if (value != 0) return std::nullopt;

  std::vector<Rational> x(n, Rational(0));
  for (size_t i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = T[i][width - 1];
  return x;
}

}  // namespace slackmat
