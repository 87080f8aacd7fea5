#pragma once

// i-trees, f-reducibility verdicts (R1/R2), irreducible pieces, reduction
// chains and determinacy.

#include <optional>
#include <string>
#include <vector>

#include "qft/entropy.hpp"
#include "qft/puzzle.hpp"

namespace qft {

struct ITree {
  PieceId root{};
  std::vector<std::vector<PieceId>> levels;  // levels[k]: pieces w with i^k(w) = root
  int certified_depth = 0;                   // number of levels below the root materialized

  std::size_t size() const;
};

/// Breadth-first i-preimages of v down to min(max_levels, D - |v|) levels.
ITree i_tree(const Puzzle& p, PieceId v, int max_levels);

enum class VerdictStatus { Reducible, IrreducibleR1, IrreducibleR2, UnknownBeyondDepth };

std::string_view to_string(VerdictStatus s);

struct Verdict {
  VerdictStatus status = VerdictStatus::UnknownBeyondDepth;
  std::optional<int> witness_level;      // IrreducibleR1: first tree level where f is not bijective
  std::optional<PieceId> witness_piece;  // IrreducibleR2: competing sibling
  int certified_depth = 0;

  bool reducible() const { return status == VerdictStatus::Reducible; }
  bool irreducible() const {
    return status == VerdictStatus::IrreducibleR1 || status == VerdictStatus::IrreducibleR2;
  }
};

/// Level-by-level check that f: T_i(v) -> T_i(f(v)) is bijective on the
/// available levels. Returns the first failing level, if any.
std::optional<int> r1_failure(const Puzzle& p, PieceId v);

/// Uncached verdict for a piece of order >= 1.
Verdict is_reducible(const Puzzle& p, PieceId v);

/// Verdicts for every piece of order >= 1, computed once.
class Reducibility {
 public:
  explicit Reducibility(const Puzzle& p);

  const Puzzle& puzzle() const { return *p_; }
  const Verdict& verdict(PieceId v) const;

  /// C_n and the pieces of order n with unknown status.
  std::vector<PieceId> irreducible(int n) const;
  std::vector<PieceId> unknown(int n) const;
  std::vector<PieceId> reducible(int n) const;

  /// Irreducible pieces plus the root, which heads every reduction chain.
  bool is_vertex(PieceId v) const;

 private:
  const Puzzle* p_;
  std::vector<Verdict> verdicts_;
};

enum class ChainStatus { Ok, NotReducible, Unknown };

struct ChainResult {
  ChainStatus status = ChainStatus::Ok;
  std::optional<PieceId> target;  // f^k(v) when status is Ok
};

/// v ⪰^k f^k(v) when f^j(v) is reducible for all j < k.
ChainResult reduces(const Reducibility& r, PieceId v, int k);

struct ReductionTarget {
  ChainStatus status = ChainStatus::Ok;  // Ok or Unknown
  PieceId target{};                      // last piece reached
  int steps = 0;                         // k with v ⪰^k target
};

/// Follows f from v while pieces are reducible; stops at the first
/// diagram vertex (Ok) or at a piece with unknown status (Unknown).
ReductionTarget reduction_target(const Reducibility& r, PieceId v);

struct DeterminacyResult {
  bool determined = true;
  std::optional<std::pair<PieceId, PieceId>> counterexample;  // ordered by (order, label)
  int checked_depth = 0;
};

/// Searches for u != v of equal order with u, v ⪰^1 w and i_1(u) = i_1(v).
DeterminacyResult is_determined(const Reducibility& r);

EntropyTable constraint_entropy(const Reducibility& r, const std::vector<DyadicDistance>& eps_list, int n_lo,
                                int n_hi);

}  // namespace qft
