#include "qft/puzzle_zeta.hpp"

#include <atomic>
#include <stdexcept>

#include "qft/graph.hpp"
#include "qft/zeta.hpp"

namespace qft {

std::string_view to_string(PeriodicClass c) {
  switch (c) {
    case PeriodicClass::LowReturn: return "low-return";
    case PeriodicClass::High: return "high";
    case PeriodicClass::Undetermined: return "undetermined";
    case PeriodicClass::Unliftable: return "unliftable";
  }
  return "?";
}

namespace {

bool lift_from(const Puzzle& p, std::vector<std::vector<PieceId>>& levels, int M) {
  const auto& top = levels.back();
  const std::size_t n = top.size();
  if (p.order(top[0]) == M) return true;
  std::vector<std::vector<PieceId>> cand(n);
  for (std::size_t j = 0; j < n; ++j) {
    PieceId next = top[(j + 1) % n];
    for (PieceId c : p.i_children(top[j]))
      if (p.f(c) == next) cand[j].push_back(c);
    if (cand[j].empty()) return false;
  }
  std::vector<std::size_t> pick(n, 0);
  while (true) {
    std::vector<PieceId> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = cand[j][pick[j]];
    levels.push_back(std::move(row));
    if (lift_from(p, levels, M)) return true;
    levels.pop_back();
    std::size_t j = 0;
    while (j < n && ++pick[j] == cand[j].size()) pick[j++] = 0;
    if (j == n) return false;
  }
}

}  // namespace

std::optional<std::vector<std::vector<PieceId>>> lift_periodic(const Puzzle& p, const std::vector<PieceId>& alpha,
                                                                int M) {
  if (alpha.empty()) throw std::invalid_argument("empty periodic sequence");
  std::vector<std::vector<PieceId>> levels{alpha};
  if (!lift_from(p, levels, M)) return std::nullopt;
  return levels;
}

PuzzleZeta puzzle_zeta_N(const Puzzle& p, int N, int K, int M, std::size_t max_sequences) {
  if (!(N < M && M <= p.depth())) throw std::invalid_argument("puzzle_zeta_N needs N < M <= depth");
  GraphTruncation g = gamma_N(p, N);
  std::vector<PieceId> vertex_piece;
  for (PieceId v : p.level(N)) vertex_piece.push_back(v);
  Reducibility red(p);
  const int probe = M < p.depth() ? M : M - 1;  // deepest level with verdicts

  std::vector<std::vector<std::size_t>> succ(g.size());
  for (const auto& e : g.edges()) succ[e.from].push_back(e.to);

  PuzzleZeta out;
  out.counts.resize(static_cast<std::size_t>(K));
  std::size_t budget_used = 0;
  std::atomic<bool> over_budget{false};

#pragma omp parallel for schedule(dynamic) reduction(+ : budget_used)
  for (int n = 1; n <= K; ++n) {
    PeriodicCount pc;
    pc.n = n;
    std::vector<std::size_t> seq;
    std::size_t local = 0;
    auto classify = [&](const std::vector<std::size_t>& s) {
      std::vector<PieceId> alpha;
      for (std::size_t v : s) alpha.push_back(vertex_piece[v]);
      pc.total += 1;
      auto lift = lift_periodic(p, alpha, M);
      if (!lift) {
        pc.unliftable += 1;
        return;
      }
      pc.certified += 1;
      bool unknown = false, low = false;
      for (PieceId w : (*lift)[static_cast<std::size_t>(probe - N)]) {
        ReductionTarget t = reduction_target(red, w);
        if (t.status != ChainStatus::Ok) unknown = true;
        else if (p.order(t.target) < N) low = true;
      }
      if (low) pc.low += 1;
      else if (unknown) pc.undetermined += 1;
      else pc.high += 1;
    };
    // depth-first enumeration of closed walks x_0 -> ... -> x_{n-1} -> x_0
    auto rec = [&](auto&& self, std::size_t v) -> void {
      if (over_budget.load()) return;
      if (seq.size() == static_cast<std::size_t>(n)) {
        bool closes = false;
        for (std::size_t w : succ[v]) closes = closes || w == seq[0];
        if (closes) {
          if (++local > max_sequences) {
            over_budget.store(true);
            return;
          }
          classify(seq);
        }
        return;
      }
      for (std::size_t w : succ[v]) {
        seq.push_back(w);
        self(self, w);
        seq.pop_back();
      }
    };
    for (std::size_t s = 0; s < g.size(); ++s) {
      seq.assign(1, s);
      rec(rec, s);
    }
    budget_used += local;
    out.counts[static_cast<std::size_t>(n - 1)] = std::move(pc);
  }
  if (over_budget.load() || budget_used > max_sequences)
    throw std::length_error("puzzle_zeta_N: more than " + std::to_string(max_sequences) + " periodic sequences");

  std::vector<BigInt> cert;
  for (const auto& c : out.counts) cert.push_back(c.certified);
  out.zeta = zeta_from_counts(cert, K);
  return out;
}

}  // namespace qft
