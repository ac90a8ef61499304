#include "slackmat/matrix.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace slackmat {

Rational parse_rational(const std::string& tok) {
  if (tok.empty()) throw std::invalid_argument("empty rational token");
  auto slash = tok.find('/');
  auto check_int = [&](const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  std::string num = slash == std::string::npos ? tok : tok.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : tok.substr(slash + 1);
  if (!check_int(num, true) || !check_int(den, false))
    throw std::invalid_argument("malformed rational '" + tok + "'");
  mpz_class p(num), q(den);
  if (q == 0) throw std::invalid_argument("zero denominator in '" + tok + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& v) {
  Rational r = v;
  r.canonicalize();  // two-argument mpq_class constructions may be unreduced
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

RowSet::RowSet(std::vector<int> idx) : idx_(std::move(idx)) {
  std::sort(idx_.begin(), idx_.end());
  idx_.erase(std::unique(idx_.begin(), idx_.end()), idx_.end());
}

RowSet RowSet::full(int m) {
  std::vector<int> v(m);
  for (int i = 0; i < m; ++i) v[i] = i;
  return RowSet(std::move(v));
}

bool RowSet::contains(int i) const {
  return std::binary_search(idx_.begin(), idx_.end(), i);
}

RowSet RowSet::complement(int m) const {
  std::vector<int> v;
  v.reserve(m - size());
  for (int i = 0; i < m; ++i)
    if (!contains(i)) v.push_back(i);
  return RowSet(std::move(v));
}

RowSet RowSet::united(const RowSet& other) const {
  std::vector<int> v = idx_;
  v.insert(v.end(), other.idx_.begin(), other.idx_.end());
  return RowSet(std::move(v));
}

static std::vector<std::string> default_labels(char prefix, int count) {
  std::vector<std::string> v(count);
  for (int i = 0; i < count; ++i) v[i] = prefix + std::to_string(i);
  return v;
}

RationalMatrix::RationalMatrix(int m, int n)
    : m_(m),
      n_(n),
      entries_(static_cast<size_t>(m) * n, Rational(0)),
      row_labels_(default_labels('r', m)),
      col_labels_(default_labels('c', n)) {
  if (m < 0 || n < 0) throw std::invalid_argument("negative dimension");
}

static void check_labels(const std::vector<std::string>& labels, size_t want) {
  if (labels.size() != want) throw std::invalid_argument("label count mismatch");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size())
    throw std::invalid_argument("duplicate label");
}

void RationalMatrix::set_row_labels(std::vector<std::string> labels) {
  check_labels(labels, static_cast<size_t>(m_));
  row_labels_ = std::move(labels);
}

void RationalMatrix::set_col_labels(std::vector<std::string> labels) {
  check_labels(labels, static_cast<size_t>(n_));
  col_labels_ = std::move(labels);
}

int RationalMatrix::row_index(const std::string& label) const {
  for (int i = 0; i < m_; ++i)
    if (row_labels_[i] == label) return i;
  return -1;
}

std::vector<Rational> RationalMatrix::row(int i) const {
  return std::vector<Rational>(entries_.begin() + static_cast<size_t>(i) * n_,
                               entries_.begin() + static_cast<size_t>(i + 1) * n_);
}

std::vector<Rational> RationalMatrix::column(int j) const {
  std::vector<Rational> c(m_);
  for (int i = 0; i < m_; ++i) c[i] = at(i, j);
  return c;
}

static void check_perm(const std::vector<int>& p, int n, const char* what) {
  if (static_cast<int>(p.size()) != n)
    throw std::invalid_argument(std::string(what) + ": size mismatch");
  std::vector<char> seen(n, 0);
  for (int v : p) {
    if (v < 0 || v >= n || seen[v])
      throw std::invalid_argument(std::string(what) + ": not a permutation");
    seen[v] = 1;
  }
}

RationalMatrix RationalMatrix::permuted(const std::vector<int>& row_perm,
                                        const std::vector<int>& col_perm) const {
  check_perm(row_perm, m_, "row_perm");
  check_perm(col_perm, n_, "col_perm");
  RationalMatrix r(m_, n_);
  std::vector<std::string> rl(m_), cl(n_);
  for (int i = 0; i < m_; ++i) {
    rl[i] = row_labels_[row_perm[i]];
    for (int j = 0; j < n_; ++j) r.at(i, j) = at(row_perm[i], col_perm[j]);
  }
  for (int j = 0; j < n_; ++j) cl[j] = col_labels_[col_perm[j]];
  r.set_row_labels(std::move(rl));
  r.set_col_labels(std::move(cl));
  return r;
}

RationalMatrix RationalMatrix::restrict_rows(const RowSet& X) const {
  RationalMatrix r(X.size(), n_);
  std::vector<std::string> rl;
  rl.reserve(X.size());
  int out = 0;
  for (int i : X.indices()) {
    rl.push_back(row_labels_[i]);
    for (int j = 0; j < n_; ++j) r.at(out, j) = at(i, j);
    ++out;
  }
  r.set_row_labels(std::move(rl));
  r.set_col_labels(col_labels_);
  return r;
}

RationalMatrix RationalMatrix::restrict_cols(const std::vector<int>& cols) const {
  RationalMatrix r(m_, static_cast<int>(cols.size()));
  std::vector<std::string> cl;
  cl.reserve(cols.size());
  for (int j : cols) {
    if (j < 0 || j >= n_) throw std::invalid_argument("column index out of range");
    cl.push_back(col_labels_[j]);
  }
  for (int i = 0; i < m_; ++i)
    for (size_t j = 0; j < cols.size(); ++j) r.at(i, static_cast<int>(j)) = at(i, cols[j]);
  r.set_row_labels(row_labels_);
  r.set_col_labels(std::move(cl));
  return r;
}

bool RationalMatrix::is_nonnegative() const {
  for (const auto& v : entries_)
    if (v < 0) return false;
  return true;
}

bool RationalMatrix::is_zero_one() const {
  for (const auto& v : entries_)
    if (v != 0 && v != 1) return false;
  return true;
}

bool RationalMatrix::row_is_zero_one(int i) const {
  for (int j = 0; j < n_; ++j)
    if (at(i, j) != 0 && at(i, j) != 1) return false;
  return true;
}

bool RationalMatrix::operator==(const RationalMatrix& o) const {
  return m_ == o.m_ && n_ == o.n_ && entries_ == o.entries_;
}

int RationalMatrix::rank() const {
  std::vector<std::vector<Rational>> a(m_);
  for (int i = 0; i < m_; ++i) a[i] = row(i);
  int rank = 0;
  for (int col = 0; col < n_ && rank < m_; ++col) {
    int pivot = -1;
    for (int i = rank; i < m_; ++i)
      if (a[i][col] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[rank], a[pivot]);
    for (int i = rank + 1; i < m_; ++i) {
      if (a[i][col] == 0) continue;
      Rational f = a[i][col] / a[rank][col];
      for (int j = col; j < n_; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

namespace {

struct Token {
  std::string text;
  int line, column;
};

// Strips '#' comments, splits on whitespace, remembers 1-based positions.
std::vector<Token> tokenize(std::istream& in) {
  std::vector<Token> toks;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i >= line.size()) break;
      size_t start = i;
      while (i < line.size() && !isspace(static_cast<unsigned char>(line[i]))) ++i;
      toks.push_back({line.substr(start, i - start), lineno, static_cast<int>(start) + 1});
    }
  }
  return toks;
}

long parse_dim(const Token& t) {
  try {
    size_t pos = 0;
    long v = std::stol(t.text, &pos);
    if (pos != t.text.size() || v < 0) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ParseError(t.line, t.column, "expected nonnegative integer, got '" + t.text + "'");
  }
}

}  // namespace

RationalMatrix RationalMatrix::read(std::istream& in) {
  auto toks = tokenize(in);
  if (toks.size() < 2) throw ParseError(1, 1, "expected header 'm n'");
  long m = parse_dim(toks[0]), n = parse_dim(toks[1]);
  if (m <= 0 || n <= 0) throw ParseError(toks[0].line, toks[0].column, "dimensions must be positive");
  if (static_cast<long>(toks.size()) != 2 + m * n) {
    const Token& last = toks.back();
    throw ParseError(last.line, last.column,
                     "expected " + std::to_string(m * n) + " entries, got " +
                         std::to_string(toks.size() - 2));
  }
  RationalMatrix r(static_cast<int>(m), static_cast<int>(n));
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < n; ++j) {
      const Token& t = toks[2 + i * n + j];
      try {
        r.at(static_cast<int>(i), static_cast<int>(j)) = parse_rational(t.text);
      } catch (const std::invalid_argument& e) {
        throw ParseError(t.line, t.column, e.what());
      }
    }
  return r;
}

RationalMatrix RationalMatrix::read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read(in);
}

void RationalMatrix::write(std::ostream& out) const {
  out << m_ << ' ' << n_ << '\n';
  for (int i = 0; i < m_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (j) out << ' ';
      out << format_rational(at(i, j));
    }
    out << '\n';
  }
}

std::string RationalMatrix::to_text() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

ColumnDistribution column_multiset(const RationalMatrix& S, const RowSet& X) {
  ColumnDistribution d;
  std::map<std::vector<Rational>, int> index;
  for (int j = 0; j < S.cols(); ++j) {
    std::vector<Rational> key;
    key.reserve(X.size());
    for (int i : X.indices()) key.push_back(S.at(i, j));
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(key, static_cast<int>(d.support.size()));
      d.support.push_back(std::move(key));
      d.count.push_back(1);
    } else {
      ++d.count[it->second];
    }
    ++d.total;
  }
  return d;
}

}  // namespace slackmat
