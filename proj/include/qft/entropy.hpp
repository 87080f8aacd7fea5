#pragma once

// Bowen balls, covering numbers and sequence-entropy tables on a puzzle.

#include <functional>
#include <span>
#include <vector>

#include "qft/puzzle.hpp"

namespace qft {

/// w ∈ B(v, eps, n): d(f^k w, f^k v) < eps for 0 <= k < min(n, |v|, |w|).
bool in_bowen_ball(const Puzzle& p, PieceId center, PieceId w, DyadicDistance eps, int n);

struct CoverResult {
  std::size_t count = 0;
  bool exact = true;  // false: greedy upper bound
  std::vector<PieceId> centers;
};

/// Minimum number of (eps, n)-balls centred in S covering S. Exact
/// search when |S| <= exact_limit, greedy otherwise.
CoverResult covering_number(const Puzzle& p, std::span<const PieceId> S, DyadicDistance eps, int n,
                            std::size_t exact_limit = 20);

struct EntropyCell {
  DyadicDistance eps = DyadicDistance::zero();
  int n = 0;
  std::size_t count = 0;
  bool exact = true;
  double rate = 0.0;  // (1/n) log max(count, 1)
};

struct EntropyTable {
  std::vector<EntropyCell> cells;
  /// Rate at the largest sampled n for this eps: the finite-range stand-in
  /// for the limsup.
  double estimate(DyadicDistance eps) const;
  /// Largest rate over the sampled n for this eps.
  double max_rate(DyadicDistance eps) const;
};

using PieceFamily = std::function<std::vector<PieceId>(int n)>;

/// Covering-number rates of the family S_n over eps_list x [n_lo, n_hi].
/// Cells are evaluated in parallel.
EntropyTable sequence_entropy(const Puzzle& p, const PieceFamily& S, const std::vector<DyadicDistance>& eps_list,
                              int n_lo, int n_hi);

}  // namespace qft
