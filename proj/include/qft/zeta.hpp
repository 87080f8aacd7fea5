#pragma once

// Zeta functions as exact power series: from periodic counts, semi-local
// (first-return determinant and direct count), loop graphs, rational
// reconstruction and periodic empirical measures.

#include <optional>
#include <string>
#include <vector>

#include "qft/graph.hpp"
#include "qft/polynomial.hpp"
#include "qft/series.hpp"

namespace qft {

/// exp(sum_{n=1}^K p_n z^n / n); counts[n-1] = p_n.
PowerSeries zeta_from_counts(const std::vector<BigInt>& counts, int K);

struct FirstReturnMatrix {
  std::vector<std::size_t> F;               // vertex indices
  std::vector<std::vector<PowerSeries>> L;  // L[u][v]: paths F[u] -> F[v] avoiding F in between
};

FirstReturnMatrix first_return_matrix(const GraphTruncation& g, const std::vector<std::size_t>& F, int K);

/// Fraction-free elimination over the truncated series ring. Every pivot
/// must have a nonzero constant term.
PowerSeries series_determinant(std::vector<std::vector<PowerSeries>> M, int K);

/// 1 / det(I - L(z)).
PowerSeries semi_local_zeta_det(const GraphTruncation& g, const std::vector<std::size_t>& F, int K);

struct BruteZeta {
  PowerSeries zeta;
  std::vector<BigInt> counts;  // counts[n-1]: n-periodic sequences meeting F
  std::optional<std::string> warning;
};

/// Direct count of n-periodic sequences meeting F, fed to zeta_from_counts.
/// Warns when K exceeds the graph's completeness bound.
BruteZeta semi_local_zeta_brute(const GraphTruncation& g, const std::vector<std::size_t>& F, int K);

/// 1 / (1 - f); f must have zero constant term and non-negative integer coefficients.
PowerSeries loop_graph_zeta(const PowerSeries& f);

struct RationalFunction {
  RationalPolynomial num, den;  // coprime, den(0) = 1

  /// Integer coefficient vectors of (num, den) scaled by a common factor.
  std::pair<std::vector<BigInt>, std::vector<BigInt>> integer_pair() const;
  std::string to_string(const std::string& var = "z") const;
};

struct Pole {
  std::optional<Rational> exact;        // rational pole
  std::optional<RationalPolynomial> factor;  // irreducible factor without rational roots
  std::vector<std::string> approx;      // numeric roots of `factor` when degree <= 2
};

struct PadeResult {
  RationalFunction fn;
  std::vector<Pole> poles;
};

class NotRationalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reconstructs s = p/q with deg p <= num_deg, deg q <= den_deg when all
/// remaining coefficients to order K agree. Throws NotRationalError otherwise.
PadeResult pade_pole_analysis(const PowerSeries& s, int num_deg, int den_deg);

/// Fraction of n-periodic sequences with x_0 = v, for each vertex v.
std::vector<Rational> periodic_empirical_measure(const GraphTruncation& g, int n);

}  // namespace qft
