#include "qft/entropy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>

namespace qft {

bool in_bowen_ball(const Puzzle& p, PieceId center, PieceId w, DyadicDistance eps, int n) {
  int steps = std::min({n, p.order(center), p.order(w)});
  PieceId a = center, b = w;
  for (int k = 0; k < steps; ++k) {
    if (!(distance(p, a, b) < eps)) return false;
    if (k + 1 < steps) {
      a = p.f(a);
      b = p.f(b);
    }
  }
  return true;
}

namespace {

using Mask = std::uint32_t;

struct ExactCover {
  std::vector<Mask> balls;  // balls[c]: members of S covered by centre c
  std::vector<std::vector<int>> covering;  // covering[e]: centres whose ball holds e
  std::size_t best;
  std::vector<int> best_pick, pick;

  void search(Mask covered, Mask full) {
    if (covered == full) {
      if (pick.size() < best) {
        best = pick.size();
        best_pick = pick;
      }
      return;
    }
    if (pick.size() + 1 >= best) return;
    int e = std::countr_one(covered);
    for (int c : covering[static_cast<std::size_t>(e)]) {
      pick.push_back(c);
      search(covered | balls[static_cast<std::size_t>(c)], full);
      pick.pop_back();
    }
  }
};

}  // namespace

CoverResult covering_number(const Puzzle& p, std::span<const PieceId> S, DyadicDistance eps, int n,
                            std::size_t exact_limit) {
  CoverResult res;
  const std::size_t m = S.size();
  if (m == 0) return res;
  std::vector<std::vector<char>> inball(m, std::vector<char>(m, 0));
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t e = 0; e < m; ++e) inball[c][e] = in_bowen_ball(p, S[c], S[e], eps, n) ? 1 : 0;

  // greedy first: it is the answer beyond the limit and the bound inside it
  std::vector<char> covered(m, 0);
  std::size_t left = m;
  std::vector<int> greedy;
  while (left > 0) {
    std::size_t best_c = 0, best_gain = 0;
    for (std::size_t c = 0; c < m; ++c) {
      std::size_t gain = 0;
      for (std::size_t e = 0; e < m; ++e) gain += (inball[c][e] && !covered[e]) ? 1 : 0;
      if (gain > best_gain) {
        best_gain = gain;
        best_c = c;
      }
    }
    greedy.push_back(static_cast<int>(best_c));
    for (std::size_t e = 0; e < m; ++e)
      if (inball[best_c][e] && !covered[e]) {
        covered[e] = 1;
        --left;
      }
  }

  std::vector<int> chosen = greedy;
  res.exact = m <= exact_limit && m <= 32;
  if (res.exact) {
    ExactCover ec;
    ec.balls.assign(m, 0);
    ec.covering.assign(m, {});
    for (std::size_t c = 0; c < m; ++c)
      for (std::size_t e = 0; e < m; ++e)
        if (inball[c][e]) {
          ec.balls[c] |= Mask{1} << e;
          ec.covering[e].push_back(static_cast<int>(c));
        }
    ec.best = greedy.size();
    ec.best_pick = greedy;
    Mask full = m == 32 ? ~Mask{0} : ((Mask{1} << m) - 1);
    ec.search(0, full);
    chosen = ec.best_pick;
  }
  res.count = chosen.size();
  for (int c : chosen) res.centers.push_back(S[static_cast<std::size_t>(c)]);
  return res;
}

double EntropyTable::estimate(DyadicDistance eps) const {
  const EntropyCell* last = nullptr;
  for (const auto& c : cells)
    if (c.eps == eps && (!last || c.n > last->n)) last = &c;
  return last ? last->rate : 0.0;
}

double EntropyTable::max_rate(DyadicDistance eps) const {
  double r = 0.0;
  for (const auto& c : cells)
    if (c.eps == eps) r = std::max(r, c.rate);
  return r;
}

EntropyTable sequence_entropy(const Puzzle& p, const PieceFamily& S, const std::vector<DyadicDistance>& eps_list,
                              int n_lo, int n_hi) {
  EntropyTable t;
  if (n_hi < n_lo) return t;
  std::vector<std::vector<PieceId>> family;
  for (int n = n_lo; n <= n_hi; ++n) family.push_back(S(n));
  for (auto eps : eps_list)
    for (int n = n_lo; n <= n_hi; ++n) t.cells.push_back(EntropyCell{eps, n, 0, true, 0.0});

  const long cells = static_cast<long>(t.cells.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < cells; ++k) {
    EntropyCell& c = t.cells[static_cast<std::size_t>(k)];
    const auto& s = family[static_cast<std::size_t>(c.n - n_lo)];
    if (s.empty()) continue;
    CoverResult r = covering_number(p, s, c.eps, c.n);
    c.count = r.count;
    c.exact = r.exact;
    c.rate = c.n > 0 ? std::log(static_cast<double>(std::max<std::size_t>(r.count, 1))) / c.n : 0.0;
  }
  return t;
}

}  // namespace qft
