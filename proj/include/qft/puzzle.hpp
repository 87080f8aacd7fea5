#pragma once

// Finite-depth puzzles (V, i, f): leveled piece sets V_0..V_D with a
// refinement map i and a dynamics map f, both lowering the order by one.

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qft {

enum class PieceId : std::uint32_t {};

constexpr std::uint32_t index(PieceId p) { return static_cast<std::uint32_t>(p); }
constexpr PieceId piece_id(std::size_t k) { return static_cast<PieceId>(static_cast<std::uint32_t>(k)); }

/// Structural problems that make a piece table unusable (dangling ids,
/// duplicate labels). Axiom violations are reported by validate() instead.
class PuzzleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Piece {
  PieceId id{};
  int order = 0;
  std::optional<PieceId> i_parent;
  std::optional<PieceId> f_image;
  std::string label;
};

class Puzzle {
 public:
  Puzzle() = default;

  /// Pieces must be indexed 0..n-1 by id. Maps are not checked against
  /// the puzzle axioms here; see validate().
  Puzzle(int depth, std::vector<Piece> pieces);

  int depth() const { return depth_; }
  std::size_t size() const { return pieces_.size(); }

  const Piece& piece(PieceId v) const { return pieces_[index(v)]; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  std::span<const PieceId> level(int n) const;
  PieceId root() const;

  int order(PieceId v) const { return pieces_[index(v)].order; }
  const std::string& label(PieceId v) const { return pieces_[index(v)].label; }

  std::optional<PieceId> find(std::string_view label) const;
  /// Throws PuzzleError for unknown labels.
  PieceId at(std::string_view label) const;

  /// i and f on pieces of order >= 1. Throws PuzzleError on the root.
  PieceId i(PieceId v) const;
  PieceId f(PieceId v) const;

  /// i^k(v) and f^k(v); k must not exceed |v|.
  PieceId i_pow(PieceId v, int k) const;
  PieceId f_pow(PieceId v, int k) const;

  /// The ancestor i^{|v|-level}(v) of v at the given level.
  PieceId ancestor(PieceId v, int level) const { return i_pow(v, order(v) - level); }

  std::span<const PieceId> i_children(PieceId v) const;

  friend bool operator==(const Puzzle& a, const Puzzle& b);

 private:
  int depth_ = 0;
  std::vector<Piece> pieces_;
  std::vector<std::vector<PieceId>> levels_;
  std::vector<std::vector<PieceId>> i_children_;
  std::unordered_map<std::string, PieceId> by_label_;
};

/// Incremental construction with label-based wiring.
class PuzzleBuilder {
 public:
  explicit PuzzleBuilder(int depth) : depth_(depth) {}

  PieceId add(std::string label, int order);
  void set_i(PieceId v, PieceId parent) { pieces_[index(v)].i_parent = parent; }
  void set_f(PieceId v, PieceId image) { pieces_[index(v)].f_image = image; }
  std::optional<PieceId> find(const std::string& label) const;

  Puzzle build() &&;

 private:
  int depth_;
  std::vector<Piece> pieces_;
  std::unordered_map<std::string, PieceId> by_label_;
};

enum class ViolationKind { MultiRoot, MissingMap, UnexpectedMap, LevelSkip, Commutation };

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<std::string> pieces;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::size_t count(ViolationKind kind) const;
};

/// Lists every axiom violation. Commutation is only checked on pieces whose
/// maps are level-consistent, so a single level skip is reported once.
ValidationReport validate(const Puzzle& p);

/// Puzzle of a one-sided subshift from its language: V_n = words of length
/// n, i drops the last letter, f drops the first. Words are strings of
/// one-character symbols; the empty word becomes `root_label`.
/// Throws PuzzleError if the word set is not prefix/suffix closed.
Puzzle from_subshift(const std::set<std::string>& words, int depth, const std::string& root_label = "root");

struct PartitionElement {
  std::string label;
  std::string parent;  // containing element of the previous partition
  std::string image;   // element of the previous partition containing the image
};

/// Puzzle from a refining sequence of partitions P_0, P_1, ..., P_D.
/// P_0 must have one element; parent and image must live in the previous
/// partition. Throws PuzzleError otherwise.
Puzzle from_refinement(const std::vector<std::vector<PartitionElement>>& partitions);

/// (V, f, i): exchanges the two maps.
Puzzle dual(const Puzzle& p);

/// Value 2^{-exponent}, or zero for coincident pieces.
class DyadicDistance {
 public:
  static DyadicDistance zero() { return DyadicDistance(); }
  static DyadicDistance pow2_neg(int exponent) { return DyadicDistance(exponent); }

  bool is_zero() const { return !exponent_.has_value(); }
  /// Exponent n of 2^{-n}; throws on zero.
  int exponent() const;
  double value() const;
  /// 2·d; the exponent may become negative.
  DyadicDistance doubled() const;

  friend std::strong_ordering operator<=>(const DyadicDistance& a, const DyadicDistance& b);
  friend bool operator==(const DyadicDistance& a, const DyadicDistance& b) = default;

 private:
  DyadicDistance() = default;
  explicit DyadicDistance(int exponent) : exponent_(exponent) {}
  std::optional<int> exponent_;
};

std::string to_string(const DyadicDistance& d);

/// Combinatorial distance: 2^{-n} with n the deepest level at which the
/// i-ancestors of v and w agree; zero iff v == w.
DyadicDistance distance(const Puzzle& p, PieceId v, PieceId w);

}  // namespace qft
