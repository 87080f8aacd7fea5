#pragma once

// Independent oracles for the test binaries. Nothing here calls into the
// library's counting or series code.

#include <random>
#include <string>
#include <vector>

#include "qft/graph.hpp"
#include "qft/numeric.hpp"

namespace oracle {

using qft::BigInt;
using qft::Rational;
using Matrix = std::vector<std::vector<BigInt>>;

inline Matrix mat_mul(const Matrix& a, const Matrix& b) {
  std::size_t n = a.size();
  Matrix c(n, std::vector<BigInt>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Matrix to_matrix(const std::vector<std::vector<int>>& A) {
  Matrix m(A.size(), std::vector<BigInt>(A.size(), 0));
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < A.size(); ++j) m[i][j] = A[i][j];
  return m;
}

/// Adjacency matrix with multiplicities, rows = sources.
inline Matrix adjacency(const qft::GraphTruncation& g) {
  Matrix m(g.size(), std::vector<BigInt>(g.size(), 0));
  for (const auto& e : g.edges()) m[e.from][e.to] += e.mult;
  return m;
}

/// Paths of length n from a back to a with no interior visit to a, n = 1..K.
inline std::vector<BigInt> first_returns(const qft::GraphTruncation& g, std::size_t a, int K) {
  auto A = adjacency(g);
  std::vector<BigInt> out{A[a][a]};
  std::vector<BigInt> row(g.size(), 0);  // walks a -> v avoiding a after the start
  for (std::size_t v = 0; v < g.size(); ++v)
    if (v != a) row[v] = A[a][v];
  for (int n = 2; n <= K; ++n) {
    BigInt back = 0;
    for (std::size_t v = 0; v < g.size(); ++v) back += row[v] * A[v][a];
    out.push_back(back);
    std::vector<BigInt> next(g.size(), 0);
    for (std::size_t u = 0; u < g.size(); ++u)
      if (row[u] != 0)
        for (std::size_t v = 0; v < g.size(); ++v)
          if (v != a) next[v] += row[u] * A[u][v];
    row = std::move(next);
  }
  return out;
}

/// Closed walks of length n at a, n = 1..K.
inline std::vector<BigInt> loops_at(const qft::GraphTruncation& g, std::size_t a, int K) {
  auto A = adjacency(g);
  std::vector<BigInt> out;
  auto P = A;
  for (int n = 1; n <= K; ++n) {
    out.push_back(P[a][a]);
    P = mat_mul(P, A);
  }
  return out;
}

/// tr(A^n) for n = 1..K (index n-1).
inline std::vector<BigInt> traces(const Matrix& A, int K) {
  std::vector<BigInt> out;
  Matrix P = A;
  for (int n = 1; n <= K; ++n) {
    BigInt t = 0;
    for (std::size_t i = 0; i < A.size(); ++i) t += P[i][i];
    out.push_back(t);
    P = mat_mul(P, A);
  }
  return out;
}

/// Periodic points meeting F by inclusion-exclusion: tr(A^n) - tr(A_{G\F}^n).
inline std::vector<BigInt> meeting_counts(const Matrix& A, const std::vector<char>& in_F, int K) {
  Matrix B = A;
  for (std::size_t i = 0; i < A.size(); ++i)
    for (std::size_t j = 0; j < A.size(); ++j)
      if (in_F[i] || in_F[j]) B[i][j] = 0;
  auto all = traces(A, K), avoid = traces(B, K);
  for (std::size_t n = 0; n < all.size(); ++n) all[n] -= avoid[n];
  return all;
}

/// Coefficients c_0..c_K of num/den by the recurrence den * c = num.
inline std::vector<Rational> expand(const std::vector<Rational>& num, const std::vector<Rational>& den, int K) {
  std::vector<Rational> c(static_cast<std::size_t>(K) + 1);
  for (int n = 0; n <= K; ++n) {
    Rational s = n < static_cast<int>(num.size()) ? num[static_cast<std::size_t>(n)] : Rational(0);
    for (int k = 1; k <= n && k < static_cast<int>(den.size()); ++k)
      s -= den[static_cast<std::size_t>(k)] * c[static_cast<std::size_t>(n - k)];
    c[static_cast<std::size_t>(n)] = s / den[0];
  }
  return c;
}

/// Words over `alphabet` of length n avoiding every factor in `forbidden`.
inline std::vector<std::string> words(const std::string& alphabet, int n, const std::vector<std::string>& forbidden = {}) {
  std::vector<std::string> cur{""};
  for (int k = 0; k < n; ++k) {
    std::vector<std::string> next;
    for (const auto& w : cur)
      for (char a : alphabet) {
        std::string x = w + a;
        bool bad = false;
        for (const auto& f : forbidden) bad = bad || x.find(f) != std::string::npos;
        if (!bad) next.push_back(x);
      }
    cur = std::move(next);
  }
  return cur;
}

inline std::vector<std::vector<int>> random_adjacency(std::mt19937& rng, int max_vertices, double density = 0.4) {
  std::uniform_int_distribution<int> nv(1, max_vertices);
  std::bernoulli_distribution edge(density);
  int n = nv(rng);
  std::vector<std::vector<int>> A(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
  for (auto& row : A)
    for (auto& x : row) x = edge(rng) ? 1 : 0;
  return A;
}

inline std::vector<BigInt> ints(std::initializer_list<long> xs) {
  std::vector<BigInt> out;
  for (long x : xs) out.push_back(x);
  return out;
}

}  // namespace oracle
