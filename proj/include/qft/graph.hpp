#pragma once

// Finite presentations of countable directed graphs and their builders.

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "qft/numeric.hpp"
#include "qft/puzzle.hpp"

namespace qft {

struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;
  BigInt mult = 1;  // number of parallel edges
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GraphTruncation {
 public:
  std::size_t add_vertex(std::string label);
  /// Parallel edges are merged into one entry carrying a multiplicity.
  void add_edge(std::size_t from, std::size_t to, const BigInt& mult = 1);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t v) const { return labels_[v]; }
  std::optional<std::size_t> find(const std::string& label) const;
  std::size_t at(const std::string& label) const;

  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& in_edges(std::size_t v) const { return in_[v]; }
  const std::vector<std::size_t>& out_edges(std::size_t v) const { return out_[v]; }
  /// Sum of multiplicities.
  BigInt edge_count() const;

  void mark_distinguished(std::size_t v);
  const std::vector<std::size_t>& distinguished() const { return distinguished_; }

  /// Largest cycle length guaranteed fully represented; nullopt means the
  /// graph is the whole object (finite).
  std::optional<int> completeness_bound() const { return bound_; }
  void set_completeness_bound(std::optional<int> L) { bound_ = L; }

  /// Subgraph on the vertices with keep[v] set (labels preserved).
  GraphTruncation induced(const std::vector<char>& keep) const;

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> in_, out_;
  std::vector<std::size_t> distinguished_;
  std::optional<int> bound_;
};

GraphTruncation complete_graph(int d);
GraphTruncation sft_graph(const std::vector<std::vector<int>>& A);

enum class Materialization {
  Explicit,  // f_n disjoint loops with fresh interior vertices
  Bundled,   // one chain per length, multiplicity f_n on its first edge
};

/// Distinguished vertex "a" with f[n-1] first-return loops of length n.
GraphTruncation loop_graph(const std::vector<BigInt>& f, Materialization m = Materialization::Bundled);

/// Loop graphs at a (counts a) and b (counts b), plus s_n paths a -> b and
/// t_n paths b -> a of length n. Series index n-1 holds the z^n coefficient.
/// Asserts the measured first-return series at a equals a + s t / (1 - b) to order L.
GraphTruncation appendix_a_graph(const std::vector<BigInt>& a, const std::vector<BigInt>& b,
                                 const std::vector<BigInt>& s, const std::vector<BigInt>& t, int L,
                                 Materialization m = Materialization::Bundled);

/// u -> v iff some w of order N+1 has i(w) = u and f(w) = v. Requires N < D.
GraphTruncation gamma_N(const Puzzle& p, int N);

/// {"kind": "loop_graph" | "appendix_a" | "adjacency" | "complete", ...}
GraphTruncation graph_from_spec(const nlohmann::json& spec);

std::string to_dot(const GraphTruncation& g, const std::string& name = "G");
nlohmann::json to_json(const GraphTruncation& g);

/// Reads counts given as integers or decimal strings.
std::vector<BigInt> counts_from_json(const nlohmann::json& arr);

}  // namespace qft
