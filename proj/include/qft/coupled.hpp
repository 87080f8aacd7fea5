#pragma once

// Coupled quadratic maps F(x, y) = (a(1-4x^2) + c y^2 - 1/2, b(1-4y^2) + c x^2 - 1/2)
// on Q = [-1/2, 1/2]^2: exact box images, dyadic-grid cylinder covers,
// almost connected components, puzzle extraction, and the polynomial /
// resultant tools for orbits of the x-axis.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qft/numeric.hpp"
#include "qft/polynomial.hpp"
#include "qft/puzzle.hpp"

namespace qft::coupled {

struct Interval {
  Rational lo, hi;
};

struct Box {
  Interval x, y;
};

struct CouplingParams {
  Rational a, b, c;
  /// 0 < a, b, c < 1 and c < 4 - 4 max(a, b).
  bool in_omega() const;
};

/// Exact bounding box of F(box).
Box image_box(const CouplingParams& p, const Box& box);

/// Closures of the four sign quadrants, indexed q = sx + 2 sy with sx, sy in
/// {0: negative, 1: positive}.
std::vector<Box> sign_partition();

/// Components of boxes under "Euclidean distance < rho".
std::vector<std::vector<std::size_t>> almost_connected_components(const std::vector<Box>& boxes, const Rational& rho);

// ---- dyadic grid engine -------------------------------------------------

/// N = 2^r cells per axis on [-1/2, 1/2]^dim. dim = 1 runs the map
/// x -> a(1-4x^2) - 1/2 on the interval with two symbols.
struct Grid {
  int r = 0;
  int dim = 2;
  long N() const { return 1L << r; }
  long cells() const { return dim == 2 ? N() * N() : N(); }
  int symbols() const { return dim == 2 ? 4 : 2; }
  /// Partition element containing the cell closure.
  int symbol(long cell) const;
  Box cell_box(long cell) const;
};

/// Inclusive index ranges of the cells meeting the closed image of a cell.
struct CellRect {
  long i0 = 0, i1 = -1, j0 = 0, j1 = 0;
};

using Bitmap = std::vector<std::uint8_t>;

namespace serial {
std::vector<CellRect> image_rects(const CouplingParams& p, const Grid& g);
/// Cells of `symbol_cells` whose image rectangle meets `tail`.
Bitmap refine(const Grid& g, const std::vector<CellRect>& rects, const Bitmap& symbol_cells, const Bitmap& tail);
}  // namespace serial

namespace omp {
std::vector<CellRect> image_rects(const CouplingParams& p, const Grid& g);
Bitmap refine(const Grid& g, const std::vector<CellRect>& rects, const Bitmap& symbol_cells, const Bitmap& tail);
}  // namespace omp

/// Outer covers of every realizable itinerary of length 1..depth.
/// Itineraries are strings over '0'..'3' (or '0'..'1' in dimension 1).
struct CylinderCovers {
  Grid grid;
  int depth = 0;
  std::vector<CellRect> rects;
  std::vector<std::map<std::string, Bitmap>> levels;  // levels[n-1]: itineraries of length n
};

CylinderCovers refine_cylinders(const CouplingParams& p, int depth, int r, int dim = 2, bool parallel = true);

/// Components of a cover: cells at gap distance < rho are linked.
std::vector<std::vector<long>> grid_components(const Grid& g, const Bitmap& cover, const Rational& rho);

/// 2^{-r+2}.
Rational default_gap(int r);

struct ExtractedPuzzle {
  Puzzle puzzle;
  std::vector<std::size_t> pieces_per_level;  // index n: |V_n|
  std::size_t ambiguous_images = 0;           // f chosen by maximal overlap among several components
};

/// Pieces are almost connected components of the cylinder covers; i is
/// containment, f the component of maximal overlap with the image cells.
/// Throws PuzzleError on an overlap tie.
ExtractedPuzzle build_puzzle(const CouplingParams& p, int depth, int r, const Rational& rho, int dim = 2);

struct CoverChecks {
  std::size_t nesting_failures = 0;
  std::size_t soundness_failures = 0;
  std::size_t cells_checked = 0;
};

/// Nesting of covers in their prefix covers and exact soundness: the image
/// box of every retained cell meets a cell of the tail cover.
CoverChecks check_covers(const CouplingParams& p, const CylinderCovers& cov);

struct EstimateRow {
  int n = 0;
  std::size_t count = 0;
  double rate = 0.0;
};

/// Itineraries of length n whose cover contains a cell meeting the axes or dQ.
std::vector<EstimateRow> boundary_entropy_estimate(const CouplingParams& p, int n_max, int r, int dim = 2);

/// Maximum over grid vertices of the number of length-n cylinder covers
/// with a cell incident to the vertex.
std::vector<EstimateRow> multiplicity_estimate(const CouplingParams& p, int n_max, int r, int dim = 2);

// ---- polynomials --------------------------------------------------------

/// x-coordinate of F^k(x, 0) as a polynomial in x.
RationalPolynomial iterate_polynomial(const CouplingParams& p, int k);

/// Determinant of the Sylvester matrix. Throws std::domain_error on a zero input.
Rational sylvester_resultant(const RationalPolynomial& P, const RationalPolynomial& Q);

}  // namespace qft::coupled
