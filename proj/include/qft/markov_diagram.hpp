#pragma once

// The complete Markov diagram of a puzzle, pullback of diagram paths to
// pieces, SCC decomposition and loop-growth estimators.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qft/graph.hpp"
#include "qft/reducibility.hpp"

namespace qft {

struct Arrow {
  PieceId from{}, to{};
  PieceId witness{};  // u with i(u) = from and u ⪰^steps to
  int steps = 0;
};

struct FrontierMarker {
  enum class Reason { UnknownReduction, BeyondCutoff };
  PieceId from{};
  PieceId witness{};
  Reason reason = Reason::UnknownReduction;
  PieceId reached{};  // last piece of the reduction chain
};

class MarkovDiagram {
 public:
  const Puzzle& puzzle() const { return red_->puzzle(); }
  const Reducibility& reducibility() const { return *red_; }
  int cutoff() const { return cutoff_; }

  const std::vector<PieceId>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::vector<FrontierMarker>& frontier() const { return frontier_; }
  /// (from, to) pairs carrying more than one witness.
  const std::vector<std::pair<Arrow, Arrow>>& witness_conflicts() const { return conflicts_; }

  bool has_vertex(PieceId v) const;
  const Arrow* arrow(PieceId from, PieceId to) const;
  std::vector<const Arrow*> arrows_from(PieceId v) const;

  /// Vertices labelled by piece label, one edge per arrow.
  GraphTruncation to_graph() const;
  /// Vertices "label|order", arrows labelled by witness.
  std::string to_dot() const;

  friend MarkovDiagram build_diagram(const Puzzle& p, int cutoff);

 private:
  std::shared_ptr<const Reducibility> red_;
  int cutoff_ = 0;
  std::vector<PieceId> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<FrontierMarker> frontier_;
  std::vector<std::pair<Arrow, Arrow>> conflicts_;
};

/// Vertices: the root and the irreducible pieces of order <= cutoff.
/// Arrows v ⇝ w: some child u of v reduces (in k >= 0 steps) to the vertex w.
/// Requires cutoff <= D - 1. The puzzle must outlive the diagram.
MarkovDiagram build_diagram(const Puzzle& p, int cutoff);

class DepthExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// w^(n) for the path v_0 ⇝ ... ⇝ v_n: i^n(w) = v_0 and i^k(w) ⪰ v_{n-k}.
/// Throws DepthExhausted when the pullback leaves the truncation and
/// std::invalid_argument when consecutive vertices carry no arrow.
PieceId path_to_piece(const MarkovDiagram& d, const std::vector<PieceId>& path);

struct PathCheck {
  bool i_ok = true;            // i^n(w) = v_0
  int reduction_failures = 0;  // k with i^k(w) not reducing to v_{n-k}
  int reduction_unknown = 0;   // k where the chain hits unknown verdicts
};

PathCheck check_path_piece(const MarkovDiagram& d, const std::vector<PieceId>& path, PieceId w);

struct ProjectedPath {
  std::vector<PieceId> x;   // x_{|v_0|}, ..., x_{|v_0|+n}
  std::vector<PieceId> pi;  // f^{|v_0|}(x_{|v_0|+k}), k = 0..n
};

ProjectedPath project_path(const MarkovDiagram& d, const std::vector<PieceId>& path);

struct SCC {
  std::vector<std::size_t> vertices;
  int period = 0;  // 0 for a trivial component (one vertex, no loop)
  bool trivial = false;
};

/// Tarjan components in reverse topological order; periods by BFS levels.
std::vector<SCC> scc_decomposition(const GraphTruncation& g);

struct GrowthRow {
  int n = 0;
  BigInt count;
  double rate = 0.0;  // (1/n) log max(count, 1)
};

struct GurevichTable {
  std::vector<GrowthRow> loops;     // closed walks based at a
  std::vector<GrowthRow> periodic;  // n-periodic sequences meeting a
};

GurevichTable gurevich_entropy_estimate(const GraphTruncation& g, std::size_t a, int L);

struct InfinityRow {
  int n = 0;
  BigInt best;  // max over (u, v) in F of the F-avoiding path count
  std::size_t u = 0, v = 0;
  double rate = 0.0;
};

std::vector<InfinityRow> entropy_at_infinity_estimate(const GraphTruncation& g, const std::vector<std::size_t>& F,
                                                      int L);

}  // namespace qft
