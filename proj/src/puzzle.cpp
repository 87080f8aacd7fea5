#include "qft/puzzle.hpp"

#include <algorithm>
#include <cmath>

namespace qft {

Puzzle::Puzzle(int depth, std::vector<Piece> pieces) : depth_(depth), pieces_(std::move(pieces)) {
  if (depth_ < 0) throw PuzzleError("negative depth");
  levels_.assign(static_cast<std::size_t>(depth_) + 1, {});
  i_children_.assign(pieces_.size(), {});
  for (std::size_t k = 0; k < pieces_.size(); ++k) {
    const Piece& pc = pieces_[k];
    if (index(pc.id) != k) throw PuzzleError("piece ids must be 0..n-1 in order");
    if (pc.order < 0 || pc.order > depth_)
      throw PuzzleError("piece '" + pc.label + "' has order outside 0.." + std::to_string(depth_));
    for (auto ref : {pc.i_parent, pc.f_image})
      if (ref && index(*ref) >= pieces_.size()) throw PuzzleError("piece '" + pc.label + "' references a missing piece");
    if (!by_label_.emplace(pc.label, pc.id).second) throw PuzzleError("duplicate label '" + pc.label + "'");
    levels_[static_cast<std::size_t>(pc.order)].push_back(pc.id);
  }
  for (const Piece& pc : pieces_)
    if (pc.i_parent) i_children_[index(*pc.i_parent)].push_back(pc.id);
}

std::span<const PieceId> Puzzle::level(int n) const {
  if (n < 0 || n > depth_) throw PuzzleError("level " + std::to_string(n) + " outside 0.." + std::to_string(depth_));
  return levels_[static_cast<std::size_t>(n)];
}

PieceId Puzzle::root() const {
  if (levels_.empty() || levels_[0].empty()) throw PuzzleError("puzzle has no root");
  return levels_[0].front();
}

std::optional<PieceId> Puzzle::find(std::string_view label) const {
  auto it = by_label_.find(std::string(label));
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

PieceId Puzzle::at(std::string_view label) const {
  auto v = find(label);
  if (!v) throw PuzzleError("unknown piece '" + std::string(label) + "'");
  return *v;
}

PieceId Puzzle::i(PieceId v) const {
  const Piece& pc = piece(v);
  if (!pc.i_parent) throw PuzzleError("i undefined on '" + pc.label + "'");
  return *pc.i_parent;
}

PieceId Puzzle::f(PieceId v) const {
  const Piece& pc = piece(v);
  if (!pc.f_image) throw PuzzleError("f undefined on '" + pc.label + "'");
  return *pc.f_image;
}

PieceId Puzzle::i_pow(PieceId v, int k) const {
  for (int j = 0; j < k; ++j) v = i(v);
  return v;
}

PieceId Puzzle::f_pow(PieceId v, int k) const {
  for (int j = 0; j < k; ++j) v = f(v);
  return v;
}

std::span<const PieceId> Puzzle::i_children(PieceId v) const { return i_children_[index(v)]; }

bool operator==(const Puzzle& a, const Puzzle& b) {
  if (a.depth_ != b.depth_ || a.pieces_.size() != b.pieces_.size()) return false;
  for (std::size_t k = 0; k < a.pieces_.size(); ++k) {
    const Piece& x = a.pieces_[k];
    const Piece& y = b.pieces_[k];
    if (x.order != y.order || x.label != y.label || x.i_parent != y.i_parent || x.f_image != y.f_image) return false;
  }
  return true;
}

PieceId PuzzleBuilder::add(std::string label, int order) {
  PieceId id = piece_id(pieces_.size());
  if (!by_label_.emplace(label, id).second) throw PuzzleError("duplicate label '" + label + "'");
  pieces_.push_back(Piece{id, order, std::nullopt, std::nullopt, std::move(label)});
  return id;
}

std::optional<PieceId> PuzzleBuilder::find(const std::string& label) const {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

Puzzle PuzzleBuilder::build() && { return Puzzle(depth_, std::move(pieces_)); }

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::MultiRoot: return "multi-root";
    case ViolationKind::MissingMap: return "missing-map";
    case ViolationKind::UnexpectedMap: return "unexpected-map";
    case ViolationKind::LevelSkip: return "level-skip";
    case ViolationKind::Commutation: return "commutation";
  }
  return "?";
}

std::size_t ValidationReport::count(ViolationKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; }));
}

ValidationReport validate(const Puzzle& p) {
  ValidationReport rep;
  auto lvl0 = p.level(0);
  if (lvl0.size() != 1) {
    Violation v{ViolationKind::MultiRoot, {}, "V_0 has " + std::to_string(lvl0.size()) + " pieces"};
    for (PieceId r : lvl0) v.pieces.push_back(p.label(r));
    rep.violations.push_back(std::move(v));
  }

  // consistent[k]: piece k has both maps present and landing one level down
  std::vector<char> consistent(p.size(), 0);
  for (const Piece& pc : p.pieces()) {
    if (pc.order == 0) {
      if (pc.i_parent || pc.f_image)
        rep.violations.push_back({ViolationKind::UnexpectedMap, {pc.label}, "order-0 piece carries i or f"});
      consistent[index(pc.id)] = 1;
      continue;
    }
    if (!pc.i_parent || !pc.f_image) {
      rep.violations.push_back({ViolationKind::MissingMap, {pc.label}, std::string(!pc.i_parent ? "i" : "f") + " undefined"});
      continue;
    }
    bool ok = true;
    for (auto [name, tgt] : {std::pair{"i", *pc.i_parent}, std::pair{"f", *pc.f_image}}) {
      if (p.order(tgt) != pc.order - 1) {
        rep.violations.push_back({ViolationKind::LevelSkip, {pc.label, p.label(tgt)},
                                  std::string(name) + " maps order " + std::to_string(pc.order) + " to order " +
                                      std::to_string(p.order(tgt))});
        ok = false;
      }
    }
    consistent[index(pc.id)] = ok ? 1 : 0;
  }

  for (const Piece& pc : p.pieces()) {
    if (pc.order < 2 || !consistent[index(pc.id)]) continue;
    PieceId a = *pc.i_parent, b = *pc.f_image;
    if (!consistent[index(a)] || !consistent[index(b)]) continue;
    PieceId fi = p.f(a), iff = p.i(b);
    if (fi != iff)
      rep.violations.push_back({ViolationKind::Commutation, {pc.label},
                                "f(i(v)) = " + p.label(fi) + " but i(f(v)) = " + p.label(iff)});
  }
  return rep;
}

Puzzle from_subshift(const std::set<std::string>& words, int depth, const std::string& root_label) {
  if (depth < 1) throw PuzzleError("depth must be >= 1");
  if (!words.contains("")) throw PuzzleError("word set lacks the empty word");
  std::vector<std::string> sorted;
  for (const auto& w : words)
    if (static_cast<int>(w.size()) <= depth) sorted.push_back(w);
  std::stable_sort(sorted.begin(), sorted.end(), [](const std::string& a, const std::string& b) { return a.size() < b.size(); });
  if (!root_label.empty() && root_label.size() <= static_cast<std::size_t>(depth) && words.contains(root_label))
    throw PuzzleError("root label '" + root_label + "' collides with a word");

  PuzzleBuilder b(depth);
  auto name = [&](const std::string& w) { return w.empty() ? root_label : w; };
  for (const auto& w : sorted) b.add(name(w), static_cast<int>(w.size()));
  for (const auto& w : sorted) {
    if (w.empty()) continue;
    std::string pre = w.substr(0, w.size() - 1), suf = w.substr(1);
    if (!words.contains(pre)) throw PuzzleError("word set not prefix closed: '" + w + "' lacks '" + pre + "'");
    if (!words.contains(suf)) throw PuzzleError("word set not suffix closed: '" + w + "' lacks '" + suf + "'");
    PieceId v = *b.find(w);
    b.set_i(v, *b.find(name(pre)));
    b.set_f(v, *b.find(name(suf)));
  }
  return std::move(b).build();
}

Puzzle from_refinement(const std::vector<std::vector<PartitionElement>>& partitions) {
  if (partitions.size() < 2) throw PuzzleError("depth must be >= 1: need at least P_0 and P_1");
  if (partitions[0].size() != 1) throw PuzzleError("P_0 must have exactly one element");
  int depth = static_cast<int>(partitions.size()) - 1;
  PuzzleBuilder b(depth);
  std::unordered_map<std::string, int> level_of;
  for (int n = 0; n <= depth; ++n)
    for (const auto& e : partitions[static_cast<std::size_t>(n)]) {
      b.add(e.label, n);
      level_of[e.label] = n;
    }
  for (int n = 1; n <= depth; ++n)
    for (const auto& e : partitions[static_cast<std::size_t>(n)]) {
      for (const std::string* ref : {&e.parent, &e.image}) {
        auto it = level_of.find(*ref);
        if (it == level_of.end()) throw PuzzleError("element '" + e.label + "' refers to unknown '" + *ref + "'");
        if (it->second != n - 1)
          throw PuzzleError("element '" + e.label + "' of P_" + std::to_string(n) + " refers to '" + *ref + "' in P_" +
                            std::to_string(it->second) + ": skips a level");
      }
      PieceId v = *b.find(e.label);
      b.set_i(v, *b.find(e.parent));
      b.set_f(v, *b.find(e.image));
    }
  return std::move(b).build();
}

Puzzle dual(const Puzzle& p) {
  std::vector<Piece> pieces = p.pieces();
  for (Piece& pc : pieces) std::swap(pc.i_parent, pc.f_image);
  return Puzzle(p.depth(), std::move(pieces));
}

int DyadicDistance::exponent() const {
  if (!exponent_) throw std::logic_error("zero distance has no exponent");
  return *exponent_;
}

double DyadicDistance::value() const { return exponent_ ? std::ldexp(1.0, -*exponent_) : 0.0; }

DyadicDistance DyadicDistance::doubled() const {
  if (!exponent_) return *this;
  return DyadicDistance(*exponent_ - 1);
}

std::strong_ordering operator<=>(const DyadicDistance& a, const DyadicDistance& b) {
  if (a.is_zero() || b.is_zero()) return b.is_zero() <=> a.is_zero();
  // larger exponent means smaller distance
  return b.exponent() <=> a.exponent();
}

std::string to_string(const DyadicDistance& d) {
  if (d.is_zero()) return "0";
  return "2^" + std::to_string(-d.exponent());
}

DyadicDistance distance(const Puzzle& p, PieceId v, PieceId w) {
  if (v == w) return DyadicDistance::zero();
  int m = std::min(p.order(v), p.order(w));
  PieceId a = p.ancestor(v, m), b = p.ancestor(w, m);
  int k = m;
  while (a != b) {
    a = p.i(a);
    b = p.i(b);
    --k;
  }
  return DyadicDistance::pow2_neg(k);
}

}  // namespace qft
