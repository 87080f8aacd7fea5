#include <doctest.h>

#include <random>

#include "../support.hpp"
#include "qft/examples.hpp"
#include "qft/puzzle_zeta.hpp"
#include "qft/zeta.hpp"

using namespace qft;

namespace {

void check_classes_add_up(const PuzzleZeta& z) {
  for (const auto& c : z.counts) {
    CHECK(c.low + c.high + c.undetermined + c.unliftable == c.total);
    CHECK(c.certified + c.unliftable == c.total);
  }
}

}  // namespace

TEST_CASE("full shift") {
  Puzzle full = examples::full_shift(2, 5);
  PuzzleZeta z = puzzle_zeta_N(full, 1, 8, 4);
  check_classes_add_up(z);
  for (const auto& c : z.counts) {
    CHECK(c.total == pow_big(2, static_cast<unsigned>(c.n)));
    CHECK(c.certified == c.total);
  }
  CHECK(z.zeta == PowerSeries::from_rational(RationalPolynomial::constant(1),
                                             RationalPolynomial(std::vector<Rational>{1, -2}), 8));
}

TEST_CASE("golden mean at level two gives Lucas numbers") {
  Puzzle gm = examples::golden_mean(5);
  PuzzleZeta z = puzzle_zeta_N(gm, 2, 10, 4);
  check_classes_add_up(z);
  auto lucas = oracle::traces(oracle::to_matrix({{1, 1}, {1, 0}}), 10);
  for (const auto& c : z.counts) CHECK(c.certified == lucas[static_cast<std::size_t>(c.n - 1)]);
}

TEST_CASE("subshift puzzles lift every periodic sequence") {
  std::mt19937 rng(43);
  for (int t = 0; t < 10; ++t) {
    auto A = oracle::random_adjacency(rng, 3, 0.6);
    Puzzle p = examples::sft_puzzle(A, 4);
    PuzzleZeta z = puzzle_zeta_N(p, 1, 7, 3);
    auto ref = oracle::traces(oracle::to_matrix(A), 7);
    for (const auto& c : z.counts) {
      CHECK(c.total == ref[static_cast<std::size_t>(c.n - 1)]);
      CHECK(c.unliftable == 0);
    }
    CHECK(z.zeta == zeta_from_counts(ref, 7));
  }
}

TEST_CASE("bad-zeta puzzle") {
  Puzzle p = examples::bad_zeta_puzzle(5);
  PuzzleZeta z = puzzle_zeta_N(p, 1, 6, 3);
  check_classes_add_up(z);
  for (const auto& c : z.counts) CHECK(c.certified <= c.total);
}

TEST_CASE("lifts respect i and f") {
  Puzzle gm = examples::golden_mean(5);
  std::vector<PieceId> alpha{gm.at("0"), gm.at("1")};
  auto lift = lift_periodic(gm, alpha, 4);
  REQUIRE(lift);
  for (std::size_t m = 1; m < lift->size(); ++m)
    for (std::size_t j = 0; j < alpha.size(); ++j) {
      CHECK(gm.i((*lift)[m][j]) == (*lift)[m - 1][j]);
      CHECK(gm.f((*lift)[m][j]) == (*lift)[m - 1][(j + 1) % alpha.size()]);
    }
  CHECK_FALSE(lift_periodic(gm, {gm.at("1")}, 3));
}

TEST_CASE("preconditions") {
  Puzzle full = examples::full_shift(2, 4);
  CHECK_THROWS(puzzle_zeta_N(full, 3, 4, 3));
  CHECK_THROWS(puzzle_zeta_N(full, 1, 4, 5));
  CHECK_THROWS_AS(puzzle_zeta_N(full, 1, 20, 3, 1000), std::length_error);
}
