#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace slackmat {

// Simple undirected graph on at most 64 labeled vertices, adjacency kept as
// one bitmask per vertex.  Vertex labels default to "0".."d-1".
class Graph {
 public:
  Graph() = default;
  explicit Graph(int d);

  int vertices() const { return d_; }
  int edge_count() const;
  bool has_edge(int u, int v) const;
  void add_edge(int u, int v);  // throws on loops / out-of-range
  uint64_t neighbors(int v) const { return adj_[v]; }

  const std::string& label(int v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels);  // throws on size/dup

  Graph complement() const;
  Graph induced(uint64_t mask) const;  // keeps labels, vertices in mask order
  bool is_connected() const;           // true for the empty graph

  // Edges as (u, v) pairs with u < v, lexicographically sorted.
  std::vector<std::pair<int, int>> edges() const;

  bool operator==(const Graph& o) const;

  // Text format: first line "d e", then e lines "u v" (0-based endpoints);
  // '#' starts a comment; blank lines ignored.  Labels are not stored.
  static Graph read(std::istream& in);
  static Graph read_file(const std::string& path);
  void write(std::ostream& out) const;
  std::string to_text() const;

 private:
  int d_ = 0;
  std::vector<uint64_t> adj_;
  std::vector<std::string> labels_;
};

// All maximal cliques (Bron-Kerbosch with pivoting), each as an ascending
// vertex list; the list of cliques is sorted lexicographically.
std::vector<std::vector<int>> bron_kerbosch(const Graph& g);

// Maximal cliques of the complement graph.
std::vector<std::vector<int>> maximal_stable_sets(const Graph& g);

struct StableCount {
  bool exceeded = false;
  long long count = 0;  // meaningful only when !exceeded
};

// Number of distinct subsets of the given sets (all stable sets, when handed
// the maximal stable sets of a graph).  Subsets are listed largest set first
// with a seen-set for deduplication; 2^|largest| > cap or running past cap
// reports exceeded without enumerating further.
StableCount count_stable_sets_capped(const std::vector<std::vector<int>>& maximal_sets,
                                     long long cap);

// Exhaustive search for an induced odd hole or odd antihole of length >= 5.
// Exponential in the vertex count; meant for small graphs.
bool is_perfect(const Graph& g);

struct CliqueCutset {
  uint64_t part1 = 0, part2 = 0, cutset = 0;  // vertex masks
};

// A clique of exactly `size` vertices whose removal leaves a disconnected
// nonempty graph, searched in ascending mask order (size 0 reports whether
// the graph itself is disconnected).  part1 holds the component of the
// smallest remaining vertex.
std::optional<CliqueCutset> find_clique_cutset(const Graph& g, int size);

// Brute-force isomorphism with degree pruning; small graphs only.
bool graphs_isomorphic(const Graph& a, const Graph& b);

// Intersection graph of d random integer intervals: chordal, hence perfect.
Graph random_interval_graph(std::mt19937_64& rng, int d);

}  // namespace slackmat
