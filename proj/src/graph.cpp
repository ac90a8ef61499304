#include "slackmat/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "slackmat/matrix.hpp"  // ParseError

namespace slackmat {

Graph::Graph(int d) : d_(d), adj_(d, 0) {
  if (d < 0 || d > 64) throw std::invalid_argument("Graph: 0 <= d <= 64 required");
  labels_.reserve(d);
  for (int i = 0; i < d; ++i) labels_.push_back(std::to_string(i));
}

int Graph::edge_count() const {
  int e = 0;
  for (int v = 0; v < d_; ++v) e += std::popcount(adj_[v]);
  return e / 2;
}

bool Graph::has_edge(int u, int v) const {
  return u >= 0 && u < d_ && v >= 0 && v < d_ && (adj_[u] >> v & 1);
}

void Graph::add_edge(int u, int v) {
  if (u < 0 || u >= d_ || v < 0 || v >= d_)
    throw std::out_of_range("Graph::add_edge: vertex out of range");
  if (u == v) throw std::invalid_argument("Graph::add_edge: loops not allowed");
  adj_[u] |= uint64_t{1} << v;
  adj_[v] |= uint64_t{1} << u;
}

void Graph::set_labels(std::vector<std::string> labels) {
  if (static_cast<int>(labels.size()) != d_)
    throw std::invalid_argument("Graph::set_labels: wrong label count");
  std::set<std::string> seen(labels.begin(), labels.end());
  if (static_cast<int>(seen.size()) != d_)
    throw std::invalid_argument("Graph::set_labels: duplicate labels");
  labels_ = std::move(labels);
}

Graph Graph::complement() const {
  Graph c(d_);
  uint64_t all = d_ == 64 ? ~uint64_t{0} : (uint64_t{1} << d_) - 1;
  for (int v = 0; v < d_; ++v) c.adj_[v] = all & ~adj_[v] & ~(uint64_t{1} << v);
  c.labels_ = labels_;
  return c;
}

Graph Graph::induced(uint64_t mask) const {
  std::vector<int> keep;
  for (int v = 0; v < d_; ++v)
    if (mask >> v & 1) keep.push_back(v);
  Graph h(static_cast<int>(keep.size()));
  for (size_t i = 0; i < keep.size(); ++i) {
    h.labels_[i] = labels_[keep[i]];
    for (size_t j = i + 1; j < keep.size(); ++j)
      if (adj_[keep[i]] >> keep[j] & 1) h.add_edge(static_cast<int>(i), static_cast<int>(j));
  }
  return h;
}

namespace {

// vertices of `mask` reachable from its lowest vertex
uint64_t component_of_lowest(const std::vector<uint64_t>& adj, uint64_t mask) {
  if (!mask) return 0;
  uint64_t seen = mask & -mask, frontier = seen;
  while (frontier) {
    uint64_t next = 0;
    for (uint64_t t = frontier; t; t &= t - 1) next |= adj[std::countr_zero(t)];
    next &= mask & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

}  // namespace

bool Graph::is_connected() const {
  if (d_ == 0) return true;
  uint64_t all = d_ == 64 ? ~uint64_t{0} : (uint64_t{1} << d_) - 1;
  return component_of_lowest(adj_, all) == all;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < d_; ++u)
    for (int v = u + 1; v < d_; ++v)
      if (adj_[u] >> v & 1) e.emplace_back(u, v);
  return e;
}

bool Graph::operator==(const Graph& o) const {
  return d_ == o.d_ && adj_ == o.adj_ && labels_ == o.labels_;
}

namespace {

struct Token {
  std::string text;
  int line, column;
};

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

long parse_int(const Token& t) {
  try {
    size_t pos = 0;
    long v = std::stol(t.text, &pos);
    if (pos != t.text.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ParseError(t.line, t.column, "expected an integer, got '" + t.text + "'");
  }
}

}  // namespace

Graph Graph::read(std::istream& in) {
  auto toks = tokenize(in);
  if (toks.size() < 2) throw ParseError(1, 1, "expected header 'd e'");
  long d = parse_int(toks[0]), e = parse_int(toks[1]);
  if (d < 0 || d > 64) throw ParseError(toks[0].line, toks[0].column, "vertex count must be in 0..64");
  if (e < 0) throw ParseError(toks[1].line, toks[1].column, "edge count must be nonnegative");
  if (static_cast<long>(toks.size()) != 2 + 2 * e) {
    const Token& last = toks.back();
    throw ParseError(last.line, last.column,
                     "expected " + std::to_string(2 * e) + " endpoint tokens, got " +
                         std::to_string(toks.size() - 2));
  }
  Graph g(static_cast<int>(d));
  for (long i = 0; i < e; ++i) {
    const Token& tu = toks[2 + 2 * i];
    const Token& tv = toks[3 + 2 * i];
    long u = parse_int(tu), v = parse_int(tv);
    if (u < 0 || u >= d) throw ParseError(tu.line, tu.column, "vertex out of range");
    if (v < 0 || v >= d) throw ParseError(tv.line, tv.column, "vertex out of range");
    if (u == v) throw ParseError(tu.line, tu.column, "loops are not allowed");
    if (g.has_edge(static_cast<int>(u), static_cast<int>(v)))
      throw ParseError(tu.line, tu.column, "duplicate edge");
    g.add_edge(static_cast<int>(u), static_cast<int>(v));
  }
  return g;
}

Graph Graph::read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read(in);
}

void Graph::write(std::ostream& out) const {
  auto e = edges();
  out << d_ << ' ' << e.size() << '\n';
  for (auto& [u, v] : e) out << u << ' ' << v << '\n';
}

std::string Graph::to_text() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

namespace {

void bk_rec(const std::vector<uint64_t>& adj, uint64_t R, uint64_t P, uint64_t X,
            std::vector<uint64_t>& out) {
  if (!P && !X) {
    out.push_back(R);
    return;
  }
  // pivot on the vertex of P|X with most neighbors in P
  int pivot = -1, best = -1;
  for (uint64_t t = P | X; t; t &= t - 1) {
    int u = std::countr_zero(t);
    int deg = std::popcount(P & adj[u]);
    if (deg > best) {
      best = deg;
      pivot = u;
    }
  }
  for (uint64_t cand = P & ~adj[pivot]; cand; cand &= cand - 1) {
    int v = std::countr_zero(cand);
    uint64_t bit = uint64_t{1} << v;
    bk_rec(adj, R | bit, P & adj[v], X & adj[v], out);
    P &= ~bit;
    X |= bit;
  }
}

std::vector<int> mask_to_vertices(uint64_t m) {
  std::vector<int> v;
  for (uint64_t t = m; t; t &= t - 1) v.push_back(std::countr_zero(t));
  return v;
}

}  // namespace

std::vector<std::vector<int>> bron_kerbosch(const Graph& g) {
  int d = g.vertices();
  if (d == 0) return {};
  std::vector<uint64_t> adj(d);
  for (int v = 0; v < d; ++v) adj[v] = g.neighbors(v);
  uint64_t all = d == 64 ? ~uint64_t{0} : (uint64_t{1} << d) - 1;
  std::vector<uint64_t> masks;
  bk_rec(adj, 0, all, 0, masks);
  std::vector<std::vector<int>> out;
  out.reserve(masks.size());
  for (uint64_t m : masks) out.push_back(mask_to_vertices(m));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<int>> maximal_stable_sets(const Graph& g) {
  return bron_kerbosch(g.complement());
}

StableCount count_stable_sets_capped(const std::vector<std::vector<int>>& maximal_sets,
                                     long long cap) {
  StableCount out;
  std::vector<uint64_t> masks;
  masks.reserve(maximal_sets.size());
  for (const auto& s : maximal_sets) {
    uint64_t m = 0;
    for (int v : s) {
      if (v < 0 || v > 63) throw std::invalid_argument("count_stable_sets_capped: vertex out of 0..63");
      m |= uint64_t{1} << v;
    }
    masks.push_back(m);
  }
  std::stable_sort(masks.begin(), masks.end(), [](uint64_t a, uint64_t b) {
    return std::popcount(a) > std::popcount(b);
  });
  if (!masks.empty()) {
    int big = std::popcount(masks[0]);
    // 2^|largest| alone must fit under the cap, else give up before enumerating
    if (big >= 63 || (1LL << big) > cap) {
      out.exceeded = true;
      return out;
    }
  }
  std::set<uint64_t> seen;
  for (uint64_t m : masks) {
    uint64_t sub = m;
    while (true) {
      seen.insert(sub);
      if (static_cast<long long>(seen.size()) > cap) {
        out.exceeded = true;
        return out;
      }
      if (!sub) break;
      sub = (sub - 1) & m;
    }
  }
  out.count = static_cast<long long>(seen.size());
  return out;
}

namespace {

// induced subgraph on `mask` is a single cycle: all degrees 2 and connected
bool induces_cycle(const std::vector<uint64_t>& adj, uint64_t mask) {
  for (uint64_t t = mask; t; t &= t - 1)
    if (std::popcount(adj[std::countr_zero(t)] & mask) != 2) return false;
  return component_of_lowest(adj, mask) == mask;
}

}  // namespace

bool is_perfect(const Graph& g) {
  int d = g.vertices();
  if (d < 5) return true;
  if (d > 24) throw std::length_error("is_perfect: exhaustive hole search limited to 24 vertices");
  std::vector<uint64_t> adj(d), cadj(d);
  Graph c = g.complement();
  for (int v = 0; v < d; ++v) {
    adj[v] = g.neighbors(v);
    cadj[v] = c.neighbors(v);
  }
  for (uint64_t mask = 1; mask < (uint64_t{1} << d); ++mask) {
    int p = std::popcount(mask);
    if (p < 5 || p % 2 == 0) continue;
    if (induces_cycle(adj, mask) || induces_cycle(cadj, mask)) return false;
  }
  return true;
}

std::optional<CliqueCutset> find_clique_cutset(const Graph& g, int size) {
  int d = g.vertices();
  if (size < 0 || size > d - 2) return std::nullopt;  // both sides must be nonempty
  std::vector<uint64_t> adj(d);
  for (int v = 0; v < d; ++v) adj[v] = g.neighbors(v);
  uint64_t all = d == 64 ? ~uint64_t{0} : (uint64_t{1} << d) - 1;
  auto try_cut = [&](uint64_t k) -> std::optional<CliqueCutset> {
    for (uint64_t t = k; t; t &= t - 1) {
      int v = std::countr_zero(t);
      if ((adj[v] & k) != (k ^ (uint64_t{1} << v))) return std::nullopt;  // not a clique
    }
    uint64_t rest = all & ~k;
    uint64_t comp = component_of_lowest(adj, rest);
    if (comp == rest) return std::nullopt;
    return CliqueCutset{comp, rest & ~comp, k};
  };
  if (size == 0) return try_cut(0);
  // fixed-popcount masks in ascending order (Gosper)
  uint64_t k = (uint64_t{1} << size) - 1;
  while (k <= all) {
    if (auto c = try_cut(k)) return c;
    uint64_t lo = k & -k, up = k + lo;
    k = up | ((k ^ up) >> (std::countr_zero(lo) + 2));
    if (!up) break;
  }
  return std::nullopt;
}

namespace {

bool iso_rec(const Graph& a, const Graph& b, std::vector<int>& map, uint64_t used, int i) {
  int d = a.vertices();
  if (i == d) return true;
  for (int u = 0; u < d; ++u) {
    if (used >> u & 1) continue;
    if (std::popcount(a.neighbors(i)) != std::popcount(b.neighbors(u))) continue;
    bool ok = true;
    for (int j = 0; j < i && ok; ++j) ok = a.has_edge(i, j) == b.has_edge(u, map[j]);
    if (!ok) continue;
    map[i] = u;
    if (iso_rec(a, b, map, used | (uint64_t{1} << u), i + 1)) return true;
  }
  return false;
}

}  // namespace

bool graphs_isomorphic(const Graph& a, const Graph& b) {
  if (a.vertices() != b.vertices() || a.edge_count() != b.edge_count()) return false;
  auto degs = [](const Graph& g) {
    std::vector<int> v;
    for (int i = 0; i < g.vertices(); ++i) v.push_back(std::popcount(g.neighbors(i)));
    std::sort(v.begin(), v.end());
    return v;
  };
  if (degs(a) != degs(b)) return false;
  std::vector<int> map(a.vertices(), -1);
  return iso_rec(a, b, map, 0, 0);
}

Graph random_interval_graph(std::mt19937_64& rng, int d) {
  if (d < 1 || d > 64) throw std::invalid_argument("random_interval_graph: 1 <= d <= 64 required");
  std::vector<std::pair<long, long>> iv(d);
  for (int i = 0; i < d; ++i) {
    long a = static_cast<long>(rng() % (2 * d));
    long len = static_cast<long>(rng() % d);
    iv[i] = {a, a + len};
  }
  Graph g(d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (iv[i].first <= iv[j].second && iv[j].first <= iv[i].second) g.add_edge(i, j);
  return g;
}

}  // namespace slackmat
