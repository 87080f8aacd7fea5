#pragma once

// Periodic sequences of the level-N transition graph and their lifts
// through the puzzle.

#include <optional>
#include <string>
#include <vector>

#include "qft/puzzle.hpp"
#include "qft/reducibility.hpp"
#include "qft/series.hpp"

namespace qft {

enum class PeriodicClass {
  LowReturn,     // lift found; its reduction chains visit pieces of order < N
  High,          // lift found; all reduction targets have order >= N
  Undetermined,  // lift found; reduction status unknown at the available depth
  Unliftable,    // no consistent preimage chain up to level M
};

std::string_view to_string(PeriodicClass c);

struct PeriodicCount {
  int n = 0;
  BigInt total;      // n-periodic sequences of Gamma_N
  BigInt certified;  // those with a lift to level M
  BigInt low, high, undetermined, unliftable;
};

struct PuzzleZeta {
  std::vector<PeriodicCount> counts;  // n = 1..K
  PowerSeries zeta;                   // from the certified counts
};

/// Requires N < M <= D. Enumerates the n-periodic sequences of Gamma_N for
/// n <= K and lifts each through levels N+1..M. Throws std::length_error
/// if more than max_sequences sequences would have to be enumerated.
PuzzleZeta puzzle_zeta_N(const Puzzle& p, int N, int K, int M, std::size_t max_sequences = 2000000);

/// A lift of the periodic sequence alpha (pieces of order N) to level M:
/// lift[m - N][j] has order m, i(lift[m][j]) = lift[m-1][j] and
/// f(lift[m][j]) = lift[m-1][j+1 mod n].
std::optional<std::vector<std::vector<PieceId>>> lift_periodic(const Puzzle& p, const std::vector<PieceId>& alpha,
                                                                int M);

}  // namespace qft
