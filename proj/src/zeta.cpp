#include "qft/zeta.hpp"

#include <cmath>
#include <sstream>

#include "qft/kernels.hpp"

namespace qft {

PowerSeries zeta_from_counts(const std::vector<BigInt>& counts, int K) {
  PowerSeries s(K);
  for (int n = 1; n <= K && n <= static_cast<int>(counts.size()); ++n) {
    if (counts[static_cast<std::size_t>(n - 1)] < 0) throw SeriesError("periodic counts must be non-negative");
    s[n] = Rational(counts[static_cast<std::size_t>(n - 1)], BigInt(n));
  }
  return s.exp();
}

FirstReturnMatrix first_return_matrix(const GraphTruncation& g, const std::vector<std::size_t>& F, int K) {
  FirstReturnMatrix m;
  m.F = F;
  std::vector<char> in_F(g.size(), 0);
  std::vector<std::size_t> pos(g.size(), 0);
  for (std::size_t k = 0; k < F.size(); ++k) {
    if (F[k] >= g.size()) throw GraphError("F contains an unknown vertex");
    in_F[F[k]] = 1;
    pos[F[k]] = k;
  }
  m.L.assign(F.size(), std::vector<PowerSeries>(F.size(), PowerSeries(K)));
  for (std::size_t u = 0; u < F.size(); ++u) {
    std::vector<BigInt> cur(g.size()), next(g.size());
    cur[F[u]] = 1;
    for (int n = 1; n <= K; ++n) {
      std::fill(next.begin(), next.end(), BigInt(0));
      for (const auto& e : g.edges())
        if (cur[e.from] != 0) next[e.to] += e.mult * cur[e.from];
      for (std::size_t v = 0; v < g.size(); ++v)
        if (in_F[v] && next[v] != 0) {
          m.L[u][pos[v]][n] = Rational(next[v]);
          next[v] = 0;
        }
      cur.swap(next);
    }
  }
  return m;
}

PowerSeries series_determinant(std::vector<std::vector<PowerSeries>> M, int K) {
  const std::size_t n = M.size();
  if (n == 0) return PowerSeries::one(K);
  PowerSeries prev = PowerSeries::one(K);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M[k][k][0] == 0) throw SeriesError("determinant pivot without constant term");
    PowerSeries inv = prev.reciprocal();
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]) * inv;
      M[i][k] = PowerSeries(K);
    }
    prev = M[k][k];
  }
  return M[n - 1][n - 1];
}

PowerSeries semi_local_zeta_det(const GraphTruncation& g, const std::vector<std::size_t>& F, int K) {
  FirstReturnMatrix fr = first_return_matrix(g, F, K);
  const std::size_t n = F.size();
  std::vector<std::vector<PowerSeries>> M(n, std::vector<PowerSeries>(n, PowerSeries(K)));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) M[u][v] = (u == v ? PowerSeries::one(K) : PowerSeries(K)) - fr.L[u][v];
  return series_determinant(std::move(M), K).reciprocal();
}

BruteZeta semi_local_zeta_brute(const GraphTruncation& g, const std::vector<std::size_t>& F, int K) {
  BruteZeta out;
  std::vector<char> in_F(g.size(), 0);
  for (std::size_t v : F) {
    if (v >= g.size()) throw GraphError("F contains an unknown vertex");
    in_F[v] = 1;
  }
  auto c = kernels::omp::closed_walks_meeting(g, in_F, K);
  out.counts.assign(c.begin() + 1, c.end());
  out.zeta = zeta_from_counts(out.counts, K);
  if (auto L = g.completeness_bound(); L && *L < K)
    out.warning = "order " + std::to_string(K) + " exceeds the completeness bound " + std::to_string(*L) +
                  " of the graph truncation; counts above it may be incomplete";
  return out;
}

PowerSeries loop_graph_zeta(const PowerSeries& f) {
  if (f[0] != 0) throw SeriesError("loop series must have zero constant term");
  for (int n = 1; n <= f.order(); ++n)
    if (f[n] < 0 || denominator_of(f[n]) != 1) throw SeriesError("loop counts must be non-negative integers");
  return (PowerSeries::one(f.order()) - f).reciprocal();
}

std::pair<std::vector<BigInt>, std::vector<BigInt>> RationalFunction::integer_pair() const {
  BigInt l = 1;
  for (const auto* p : {&num, &den})
    for (const auto& c : p->coeffs()) l = boost::multiprecision::lcm(l, denominator_of(c));
  auto scale = [&](const RationalPolynomial& p) {
    std::vector<BigInt> z;
    for (const auto& c : p.coeffs()) z.push_back(numerator_of(c) * (l / denominator_of(c)));
    return z;
  };
  auto a = scale(num), b = scale(den);
  BigInt g = 0;
  for (const auto* v : {&a, &b})
    for (const auto& c : *v) g = boost::multiprecision::gcd(g, c);
  if (g > 1)
    for (auto* v : {&a, &b})
      for (auto& c : *v) c /= g;
  return {a, b};
}

std::string RationalFunction::to_string(const std::string& var) const {
  auto [a, b] = integer_pair();
  auto show = [&](const std::vector<BigInt>& z) {
    std::vector<Rational> r(z.begin(), z.end());
    return "(" + RationalPolynomial(r).to_string(var) + ")";
  };
  return show(a) + "/" + show(b);
}

namespace {

// Solves A x = b over Q; free variables are set to zero. Returns nullopt if inconsistent.
std::optional<std::vector<Rational>> solve(std::vector<std::vector<Rational>> A, std::vector<Rational> b) {
  const std::size_t rows = A.size(), cols = rows ? A[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && A[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(A[piv], A[r]);
    std::swap(b[piv], b[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || A[i][c] == 0) continue;
      Rational f = A[i][c] / A[r][c];
      for (std::size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<Rational> x(cols);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i] / A[i][pivot_col[i]];
  return x;
}

std::vector<std::string> quadratic_roots(const RationalPolynomial& p) {
  std::vector<std::string> out;
  auto d = [&](int k) { return p.coeff(k).convert_to<double>(); };
  auto fmt = [](double re, double im) {
    std::ostringstream os;
    os.precision(12);
    os << re;
    if (im != 0) os << (im < 0 ? " - " : " + ") << std::abs(im) << "i";
    return os.str();
  };
  if (p.degree() == 1) {
    out.push_back(fmt(-d(0) / d(1), 0));
  } else if (p.degree() == 2) {
    double a = d(2), b = d(1), c = d(0), disc = b * b - 4 * a * c;
    if (disc >= 0) {
      out.push_back(fmt((-b - std::sqrt(disc)) / (2 * a), 0));
      out.push_back(fmt((-b + std::sqrt(disc)) / (2 * a), 0));
    } else {
      out.push_back(fmt(-b / (2 * a), -std::sqrt(-disc) / (2 * a)));
      out.push_back(fmt(-b / (2 * a), std::sqrt(-disc) / (2 * a)));
    }
  }
  return out;
}

}  // namespace

PadeResult pade_pole_analysis(const PowerSeries& s, int num_deg, int den_deg) {
  const int K = s.order();
  if (num_deg < 0 || den_deg < 0) throw std::invalid_argument("negative Pade degree");
  if (num_deg + den_deg > K) throw NotRationalError("series order too small for the requested degrees");
  const auto m = static_cast<std::size_t>(num_deg), d = static_cast<std::size_t>(den_deg);
  auto coef = [&](long n) { return n < 0 ? Rational(0) : s[static_cast<int>(n)]; };

  // sum_{j=1}^d q_j s_{n-j} = -s_n for n = m+1..m+d
  std::vector<std::vector<Rational>> A(d, std::vector<Rational>(d));
  std::vector<Rational> b(d);
  for (std::size_t r = 0; r < d; ++r) {
    long n = static_cast<long>(m + 1 + r);
    for (std::size_t j = 1; j <= d; ++j) A[r][j - 1] = coef(n - static_cast<long>(j));
    b[r] = -coef(n);
  }
  auto sol = solve(A, b);
  if (!sol) throw NotRationalError("Hankel system is inconsistent at degrees (" + std::to_string(num_deg) + ", " +
                                   std::to_string(den_deg) + ")");
  std::vector<Rational> q{Rational(1)};
  q.insert(q.end(), sol->begin(), sol->end());
  auto conv = [&](long n) {
    Rational acc = 0;
    for (std::size_t j = 0; j < q.size(); ++j) acc += q[j] * coef(n - static_cast<long>(j));
    return acc;
  };
  for (long n = static_cast<long>(m) + 1; n <= K; ++n)
    if (conv(n) != 0)
      throw NotRationalError("not rational at degrees (" + std::to_string(num_deg) + ", " + std::to_string(den_deg) +
                             "): residual at z^" + std::to_string(n));
  std::vector<Rational> p;
  for (long n = 0; n <= static_cast<long>(m); ++n) p.push_back(conv(n));

  RationalPolynomial P(p), Q(q);
  PadeResult res;
  if (P.is_zero()) {
    res.fn = {RationalPolynomial(), RationalPolynomial::constant(1)};
    return res;
  }
  RationalPolynomial g = gcd(P, Q);
  P = divmod(P, g).quotient;
  Q = divmod(Q, g).quotient;
  Rational q0 = Q.coeff(0);
  P *= Rational(1 / q0);
  Q *= Rational(1 / q0);
  res.fn = {P, Q};

  RationalPolynomial rest = Q;
  for (const Rational& r : rational_roots(Q)) {
    RationalPolynomial lin({Rational(-r), Rational(1)});
    while (rest.degree() > 0) {
      auto dm = divmod(rest, lin);
      if (!dm.remainder.is_zero()) break;
      rest = dm.quotient;
      res.poles.push_back(Pole{r, std::nullopt, {}});
    }
  }
  if (rest.degree() > 0) res.poles.push_back(Pole{std::nullopt, rest.monic(), quadratic_roots(rest)});
  return res;
}

std::vector<Rational> periodic_empirical_measure(const GraphTruncation& g, int n) {
  if (g.completeness_bound()) throw GraphError("empirical measure needs a finite graph");
  auto table = kernels::omp::closed_walks(g, n);
  BigInt total = 0;
  for (const auto& row : table) total += row[static_cast<std::size_t>(n)];
  std::vector<Rational> out(g.size());
  if (total == 0) return out;
  for (std::size_t v = 0; v < g.size(); ++v) out[v] = Rational(table[v][static_cast<std::size_t>(n)], total);
  return out;
}

}  // namespace qft
