#pragma once

// Example puzzles: subshift languages and the union-collapse family.

#include <functional>
#include <string>
#include <vector>

#include "qft/puzzle.hpp"

namespace qft::examples {

/// Words of length <= depth of the vertex-shift of a 0/1 matrix; vertex k
/// is the symbol '0' + k.
std::vector<std::string> sft_words(const std::vector<std::vector<int>>& A, int depth);

Puzzle sft_puzzle(const std::vector<std::vector<int>>& A, int depth);
Puzzle full_shift(int symbols, int depth);
Puzzle golden_mean(int depth);

/// words(k, n) = L_n(Sigma_k) for 0 <= k <= n. Pieces of V_n are the union of
/// these; words of L_n(Sigma_n) collapse (i = f = 0^{n-1}), all other words
/// use drop-last / drop-first.
using LanguageFamily = std::function<std::vector<std::string>(int k, int n)>;
Puzzle union_collapse_puzzle(const LanguageFamily& words, int depth);

/// Sigma_0 = {0^inf}, Sigma_k a full 2-shift on two fresh letters.
Puzzle nasty_puzzle(int depth);

/// Period sequence 1,1,2,1,2,3,1,2,3,4,... (each value recurs forever).
int bad_zeta_period(int n);

/// Sigma_0 = {0,1}^N, Sigma_k a periodic orbit of period bad_zeta_period(k)
/// on fresh letters.
Puzzle bad_zeta_puzzle(int depth);

/// Depth-4 puzzle with two reducible order-3 pieces u, v sharing f-image
/// and level-1 ancestor: not determined.
Puzzle non_determined_puzzle();

}  // namespace qft::examples
