#include "qft/reducibility.hpp"

#include <algorithm>

namespace qft {

std::size_t ITree::size() const {
  std::size_t n = 0;
  for (const auto& l : levels) n += l.size();
  return n;
}

ITree i_tree(const Puzzle& p, PieceId v, int max_levels) {
  ITree t;
  t.root = v;
  t.certified_depth = std::max(0, std::min(max_levels, p.depth() - p.order(v)));
  t.levels.push_back({v});
  for (int k = 1; k <= t.certified_depth; ++k) {
    std::vector<PieceId> next;
    for (PieceId u : t.levels.back())
      for (PieceId c : p.i_children(u)) next.push_back(c);
    t.levels.push_back(std::move(next));
  }
  return t;
}

std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Reducible: return "reducible";
    case VerdictStatus::IrreducibleR1: return "irreducible-R1";
    case VerdictStatus::IrreducibleR2: return "irreducible-R2";
    case VerdictStatus::UnknownBeyondDepth: return "unknown-beyond-depth";
  }
  return "?";
}

std::optional<int> r1_failure(const Puzzle& p, PieceId v) {
  const int levels = p.depth() - p.order(v);
  std::vector<PieceId> mine{v}, theirs{p.f(v)};
  std::vector<char> seen(p.size(), 0);
  for (int k = 1; k <= levels; ++k) {
    std::vector<PieceId> a, b;
    for (PieceId u : mine)
      for (PieceId c : p.i_children(u)) a.push_back(c);
    for (PieceId u : theirs)
      for (PieceId c : p.i_children(u)) b.push_back(c);
    if (a.size() != b.size()) return k;
    bool injective = true;
    for (PieceId c : a) {
      PieceId img = p.f(c);
      if (seen[index(img)]) injective = false;
      seen[index(img)] = 1;
    }
    for (PieceId c : a) seen[index(p.f(c))] = 0;
    if (!injective) return k;
    mine = std::move(a);
    theirs = std::move(b);
  }
  return std::nullopt;
}

namespace {

Verdict verdict_from(const Puzzle& p, PieceId v, const std::vector<std::optional<int>>& r1) {
  Verdict out;
  const int levels = p.depth() - p.order(v);
  out.certified_depth = levels;
  if (levels <= 0) return out;
  if (auto fail = r1[index(v)]) {
    out.status = VerdictStatus::IrreducibleR1;
    out.witness_level = *fail;
    return out;
  }
  PieceId iv = p.i(v), fv = p.f(v);
  // smallest competing sibling by (order, label)
  std::optional<PieceId> rival;
  for (PieceId w : p.i_children(iv)) {
    if (w == v || p.f(w) != fv || r1[index(w)]) continue;
    if (!rival || p.label(w) < p.label(*rival)) rival = w;
  }
  if (rival) {
    out.status = VerdictStatus::IrreducibleR2;
    out.witness_piece = *rival;
    return out;
  }
  out.status = VerdictStatus::Reducible;
  return out;
}

}  // namespace

Verdict is_reducible(const Puzzle& p, PieceId v) {
  if (p.order(v) < 1) throw PuzzleError("reducibility needs a piece of order >= 1");
  std::vector<std::optional<int>> r1(p.size());
  r1[index(v)] = r1_failure(p, v);
  if (p.order(v) < p.depth())
    for (PieceId w : p.i_children(p.i(v)))
      if (w != v && p.f(w) == p.f(v)) r1[index(w)] = r1_failure(p, w);
  return verdict_from(p, v, r1);
}

Reducibility::Reducibility(const Puzzle& p) : p_(&p), verdicts_(p.size()) {
  const long n = static_cast<long>(p.size());
  std::vector<std::optional<int>> r1(p.size());
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < n; ++k) {
    PieceId v = piece_id(static_cast<std::size_t>(k));
    if (p.order(v) >= 1 && p.order(v) < p.depth()) r1[static_cast<std::size_t>(k)] = r1_failure(p, v);
  }
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < n; ++k) {
    PieceId v = piece_id(static_cast<std::size_t>(k));
    if (p.order(v) >= 1) verdicts_[static_cast<std::size_t>(k)] = verdict_from(p, v, r1);
  }
}

const Verdict& Reducibility::verdict(PieceId v) const {
  if (p_->order(v) < 1) throw PuzzleError("the root has no reducibility verdict");
  return verdicts_[index(v)];
}

std::vector<PieceId> Reducibility::irreducible(int n) const {
  std::vector<PieceId> out;
  for (PieceId v : p_->level(n))
    if (verdicts_[index(v)].irreducible()) out.push_back(v);
  return out;
}

std::vector<PieceId> Reducibility::unknown(int n) const {
  std::vector<PieceId> out;
  for (PieceId v : p_->level(n))
    if (verdicts_[index(v)].status == VerdictStatus::UnknownBeyondDepth) out.push_back(v);
  return out;
}

std::vector<PieceId> Reducibility::reducible(int n) const {
  std::vector<PieceId> out;
  for (PieceId v : p_->level(n))
    if (verdicts_[index(v)].reducible()) out.push_back(v);
  return out;
}

bool Reducibility::is_vertex(PieceId v) const { return p_->order(v) == 0 || verdicts_[index(v)].irreducible(); }

ChainResult reduces(const Reducibility& r, PieceId v, int k) {
  const Puzzle& p = r.puzzle();
  if (k > p.order(v)) throw PuzzleError("reduction length exceeds the order of the piece");
  for (int j = 0; j < k; ++j) {
    const Verdict& vd = r.verdict(v);
    if (vd.status == VerdictStatus::UnknownBeyondDepth) return {ChainStatus::Unknown, std::nullopt};
    if (!vd.reducible()) return {ChainStatus::NotReducible, std::nullopt};
    v = p.f(v);
  }
  return {ChainStatus::Ok, v};
}

ReductionTarget reduction_target(const Reducibility& r, PieceId v) {
  const Puzzle& p = r.puzzle();
  ReductionTarget t{ChainStatus::Ok, v, 0};
  while (!r.is_vertex(t.target)) {
    if (r.verdict(t.target).status == VerdictStatus::UnknownBeyondDepth) {
      t.status = ChainStatus::Unknown;
      return t;
    }
    t.target = p.f(t.target);
    ++t.steps;
  }
  return t;
}

DeterminacyResult is_determined(const Reducibility& r) {
  const Puzzle& p = r.puzzle();
  DeterminacyResult res;
  res.checked_depth = p.depth();
  auto key = [&](PieceId a) { return std::pair{p.order(a), p.label(a)}; };
  for (int n = 2; n <= p.depth(); ++n) {
    std::vector<PieceId> red = r.reducible(n);
    std::sort(red.begin(), red.end(), [&](PieceId a, PieceId b) { return key(a) < key(b); });
    for (std::size_t x = 0; x < red.size(); ++x)
      for (std::size_t y = x + 1; y < red.size(); ++y) {
        PieceId u = red[x], v = red[y];
        if (p.f(u) == p.f(v) && p.ancestor(u, 1) == p.ancestor(v, 1)) {
          res.determined = false;
          res.counterexample = {u, v};
          return res;
        }
      }
  }
  return res;
}

EntropyTable constraint_entropy(const Reducibility& r, const std::vector<DyadicDistance>& eps_list, int n_lo,
                                int n_hi) {
  return sequence_entropy(
      r.puzzle(), [&](int n) { return r.irreducible(n); }, eps_list, n_lo, n_hi);
}

}  // namespace qft
