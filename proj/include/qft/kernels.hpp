#pragma once

// Big-integer walk counting on GraphTruncation. Each kernel has a serial
// reference version and an OpenMP version; both return identical results.

#include <vector>

#include "qft/graph.hpp"

namespace qft::kernels {

/// table[v][n] = number of closed walks of length n based at v, 1 <= n <= K
/// (index 0 unused and zero).
using ClosedWalkTable = std::vector<std::vector<BigInt>>;

/// counts[n] for 1 <= n <= K (index 0 unused and zero).
using Counts = std::vector<BigInt>;

namespace serial {

/// next[v] = sum over edges u -> v of mult * cur[u], restricted to allowed
/// targets when allowed is non-empty.
void step(const GraphTruncation& g, const std::vector<BigInt>& cur, std::vector<BigInt>& next,
          const std::vector<char>& allowed = {});

ClosedWalkTable closed_walks(const GraphTruncation& g, int K);

/// Closed walks of length n whose vertex sequence x_0..x_{n-1} meets F,
/// summed over all base vertices.
Counts closed_walks_meeting(const GraphTruncation& g, const std::vector<char>& in_F, int K);

}  // namespace serial

namespace omp {

void step(const GraphTruncation& g, const std::vector<BigInt>& cur, std::vector<BigInt>& next,
          const std::vector<char>& allowed = {});
ClosedWalkTable closed_walks(const GraphTruncation& g, int K);
Counts closed_walks_meeting(const GraphTruncation& g, const std::vector<char>& in_F, int K);

}  // namespace omp

/// Sum over v of table[v][n]: the n-periodic point counts tr(A^n).
Counts traces(const ClosedWalkTable& t, int K);

}  // namespace qft::kernels
