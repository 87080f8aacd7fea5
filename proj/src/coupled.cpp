#include "qft/coupled.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qft::coupled {

namespace {

const Rational kHalf(1, 2);

Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }
Rational rmin(const Rational& a, const Rational& b) { return a < b ? a : b; }

// range of alpha * t^2 over t in [lo, hi]
Interval square_range(const Rational& alpha, const Interval& t) {
  Rational lo2 = t.lo * t.lo, hi2 = t.hi * t.hi;
  Rational smax = rmax(lo2, hi2);
  Rational smin = (t.lo <= 0 && t.hi >= 0) ? Rational(0) : rmin(lo2, hi2);
  if (alpha >= 0) return {alpha * smin, alpha * smax};
  return {alpha * smax, alpha * smin};
}

Interval add(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }

BigInt floor_of(const Rational& q) {
  BigInt n = numerator_of(q), d = denominator_of(q);
  BigInt f = n / d;
  if (f * d > n) f -= 1;
  return f;
}

BigInt ceil_of(const Rational& q) { return -floor_of(Rational(-q)); }

// cells k with [-1/2 + k/N, -1/2 + (k+1)/N] meeting [lo, hi]; empty as (0, -1)
std::pair<long, long> index_range(const Interval& iv, long N) {
  BigInt lo = ceil_of(Rational((iv.lo + kHalf) * N)) - 1;
  BigInt hi = floor_of(Rational((iv.hi + kHalf) * N));
  if (hi < 0 || lo > N - 1 || hi < lo) return {0, -1};
  return {std::max<long>(0, lo.convert_to<long>()), std::min<long>(N - 1, hi.convert_to<long>())};
}

Interval image_1d(const CouplingParams& p, const Interval& x) {
  Interval q = square_range(Rational(-4 * p.a), x);
  return {p.a + q.lo - kHalf, p.a + q.hi - kHalf};
}

CellRect rect_of(const CouplingParams& p, const Grid& g, long cell) {
  Box b = g.cell_box(cell);
  CellRect r;
  if (g.dim == 1) {
    auto [i0, i1] = index_range(image_1d(p, b.x), g.N());
    r.i0 = i0;
    r.i1 = i1;
    return r;
  }
  Box im = image_box(p, b);
  auto [i0, i1] = index_range(im.x, g.N());
  auto [j0, j1] = index_range(im.y, g.N());
  if (i1 < i0 || j1 < j0) return CellRect{};
  return {i0, i1, j0, j1};
}

struct PrefixSum {
  long N = 0;
  int dim = 2;
  std::vector<long> s;  // (N+1)^dim

  PrefixSum(const Grid& g, const Bitmap& b) : N(g.N()), dim(g.dim) {
    if (dim == 1) {
      s.assign(static_cast<std::size_t>(N + 1), 0);
      for (long i = 0; i < N; ++i) s[static_cast<std::size_t>(i + 1)] = s[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)];
      return;
    }
    s.assign(static_cast<std::size_t>((N + 1) * (N + 1)), 0);
    for (long j = 0; j < N; ++j)
      for (long i = 0; i < N; ++i)
        at(i + 1, j + 1) = at(i, j + 1) + at(i + 1, j) - at(i, j) + b[static_cast<std::size_t>(i + N * j)];
  }
  long& at(long i, long j) { return s[static_cast<std::size_t>(i + (N + 1) * j)]; }
  long get(long i, long j) const { return s[static_cast<std::size_t>(i + (N + 1) * j)]; }

  long count(const CellRect& r) const {
    if (r.i1 < r.i0) return 0;
    if (dim == 1) return s[static_cast<std::size_t>(r.i1 + 1)] - s[static_cast<std::size_t>(r.i0)];
    return get(r.i1 + 1, r.j1 + 1) - get(r.i0, r.j1 + 1) - get(r.i1 + 1, r.j0) + get(r.i0, r.j0);
  }
};

bool boxes_meet(const Box& a, const Box& b) {
  return a.x.lo <= b.x.hi && b.x.lo <= a.x.hi && a.y.lo <= b.y.hi && b.y.lo <= a.y.hi;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

bool CouplingParams::in_omega() const {
  auto unit = [](const Rational& t) { return t > 0 && t < 1; };
  return unit(a) && unit(b) && unit(c) && c < 4 - 4 * rmax(a, b);
}

Box image_box(const CouplingParams& p, const Box& box) {
  Interval fx = add(square_range(Rational(-4 * p.a), box.x), square_range(p.c, box.y));
  Interval fy = add(square_range(Rational(-4 * p.b), box.y), square_range(p.c, box.x));
  Rational sx = p.a - kHalf, sy = p.b - kHalf;
  return {{fx.lo + sx, fx.hi + sx}, {fy.lo + sy, fy.hi + sy}};
}

std::vector<Box> sign_partition() {
  std::vector<Box> out;
  Interval neg{-kHalf, 0}, pos{0, kHalf};
  for (int q = 0; q < 4; ++q) out.push_back({(q & 1) ? pos : neg, (q & 2) ? pos : neg});
  return out;
}

std::vector<std::vector<std::size_t>> almost_connected_components(const std::vector<Box>& boxes, const Rational& rho) {
  if (rho <= 0) throw std::invalid_argument("gap must be positive");
  UnionFind uf(boxes.size());
  Rational rho2 = rho * rho;
  auto gap = [](const Interval& a, const Interval& b) { return rmax(Rational(0), rmax(Rational(a.lo - b.hi), Rational(b.lo - a.hi))); };
  for (std::size_t u = 0; u < boxes.size(); ++u)
    for (std::size_t v = u + 1; v < boxes.size(); ++v) {
      Rational dx = gap(boxes[u].x, boxes[v].x), dy = gap(boxes[u].y, boxes[v].y);
      if (dx * dx + dy * dy < rho2) uf.unite(u, v);
    }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t u = 0; u < boxes.size(); ++u) groups[uf.find(u)].push_back(u);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

int Grid::symbol(long cell) const {
  long h = N() / 2;
  if (dim == 1) return cell >= h ? 1 : 0;
  long i = cell % N(), j = cell / N();
  return (i >= h ? 1 : 0) + (j >= h ? 2 : 0);
}

Box Grid::cell_box(long cell) const {
  long i = dim == 1 ? cell : cell % N();
  long j = dim == 1 ? 0 : cell / N();
  Rational w(1, N());
  Interval x{-kHalf + w * i, -kHalf + w * (i + 1)};
  Interval y = dim == 1 ? Interval{0, 0} : Interval{-kHalf + w * j, -kHalf + w * (j + 1)};
  return {x, y};
}

namespace serial {

std::vector<CellRect> image_rects(const CouplingParams& p, const Grid& g) {
  std::vector<CellRect> out(static_cast<std::size_t>(g.cells()));
  for (long c = 0; c < g.cells(); ++c) out[static_cast<std::size_t>(c)] = rect_of(p, g, c);
  return out;
}

Bitmap refine(const Grid& g, const std::vector<CellRect>& rects, const Bitmap& symbol_cells, const Bitmap& tail) {
  PrefixSum ps(g, tail);
  Bitmap out(symbol_cells.size(), 0);
  for (long c = 0; c < g.cells(); ++c) {
    auto k = static_cast<std::size_t>(c);
    if (symbol_cells[k] && ps.count(rects[k]) > 0) out[k] = 1;
  }
  return out;
}

}  // namespace serial

namespace omp {

std::vector<CellRect> image_rects(const CouplingParams& p, const Grid& g) {
  std::vector<CellRect> out(static_cast<std::size_t>(g.cells()));
  const long n = g.cells();
#pragma omp parallel for schedule(static)
  for (long c = 0; c < n; ++c) out[static_cast<std::size_t>(c)] = rect_of(p, g, c);
  return out;
}

Bitmap refine(const Grid& g, const std::vector<CellRect>& rects, const Bitmap& symbol_cells, const Bitmap& tail) {
  PrefixSum ps(g, tail);
  Bitmap out(symbol_cells.size(), 0);
  const long n = g.cells();
#pragma omp parallel for schedule(static)
  for (long c = 0; c < n; ++c) {
    auto k = static_cast<std::size_t>(c);
    if (symbol_cells[k] && ps.count(rects[k]) > 0) out[k] = 1;
  }
  return out;
}

}  // namespace omp

CylinderCovers refine_cylinders(const CouplingParams& p, int depth, int r, int dim, bool parallel) {
  if (r < 1) throw std::invalid_argument("grid resolution must be >= 1");
  if (dim != 1 && dim != 2) throw std::invalid_argument("dimension must be 1 or 2");
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  CylinderCovers cov;
  cov.grid = Grid{r, dim};
  cov.depth = depth;
  const Grid& g = cov.grid;
  cov.rects = parallel ? omp::image_rects(p, g) : serial::image_rects(p, g);

  std::vector<Bitmap> symbol_cells(static_cast<std::size_t>(g.symbols()), Bitmap(static_cast<std::size_t>(g.cells()), 0));
  for (long c = 0; c < g.cells(); ++c) symbol_cells[static_cast<std::size_t>(g.symbol(c))][static_cast<std::size_t>(c)] = 1;

  cov.levels.resize(static_cast<std::size_t>(depth));
  for (int s = 0; s < g.symbols(); ++s) cov.levels[0][std::string(1, static_cast<char>('0' + s))] = symbol_cells[static_cast<std::size_t>(s)];
  for (int n = 2; n <= depth; ++n) {
    auto& cur = cov.levels[static_cast<std::size_t>(n - 1)];
    for (const auto& [tail, cells] : cov.levels[static_cast<std::size_t>(n - 2)])
      for (int s = 0; s < g.symbols(); ++s) {
        const Bitmap& sym = symbol_cells[static_cast<std::size_t>(s)];
        Bitmap b = parallel ? omp::refine(g, cov.rects, sym, cells) : serial::refine(g, cov.rects, sym, cells);
        if (std::any_of(b.begin(), b.end(), [](std::uint8_t x) { return x != 0; }))
          cur[static_cast<char>('0' + s) + tail] = std::move(b);
      }
  }
  return cov;
}

Rational default_gap(int r) {
  if (r >= 2) return Rational(1, BigInt(1) << (r - 2));
  return Rational(BigInt(1) << (2 - r));
}

std::vector<std::vector<long>> grid_components(const Grid& g, const Bitmap& cover, const Rational& rho) {
  if (rho <= 0) throw std::invalid_argument("gap must be positive");
  const long N = g.N();
  const Rational T = rho * rho * N * N;  // linked iff gx^2 + gy^2 < T (gaps in cells)
  long gmax = 0;
  while (Rational((gmax + 1) * (gmax + 1)) < T) ++gmax;
  const long reach = gmax + 1;

  UnionFind uf(static_cast<std::size_t>(g.cells()));
  auto on = [&](long i, long j) {
    if (i < 0 || i >= N) return false;
    if (g.dim == 1) return cover[static_cast<std::size_t>(i)] != 0;
    if (j < 0 || j >= N) return false;
    return cover[static_cast<std::size_t>(i + N * j)] != 0;
  };
  const long jmax = g.dim == 1 ? 1 : N;
  for (long j = 0; j < jmax; ++j)
    for (long i = 0; i < N; ++i) {
      if (!on(i, j)) continue;
      long here = g.dim == 1 ? i : i + N * j;
      for (long dj = (g.dim == 1 ? 0 : -reach); dj <= (g.dim == 1 ? 0 : reach); ++dj)
        for (long di = -reach; di <= reach; ++di) {
          if (!on(i + di, j + dj)) continue;
          long gx = std::max(0L, std::labs(di) - 1), gy = std::max(0L, std::labs(dj) - 1);
          if (Rational(gx * gx + gy * gy) < T) {
            long there = g.dim == 1 ? i + di : (i + di) + N * (j + dj);
            uf.unite(static_cast<std::size_t>(here), static_cast<std::size_t>(there));
          }
        }
    }
  std::map<std::size_t, std::vector<long>> groups;
  for (long c = 0; c < g.cells(); ++c)
    if (cover[static_cast<std::size_t>(c)]) groups[uf.find(static_cast<std::size_t>(c))].push_back(c);
  std::vector<std::vector<long>> out;
  for (auto& [root, cells] : groups) out.push_back(std::move(cells));
  return out;
}

ExtractedPuzzle build_puzzle(const CouplingParams& p, int depth, int r, const Rational& rho, int dim) {
  CylinderCovers cov = refine_cylinders(p, depth, r, dim);
  const Grid& g = cov.grid;
  const std::string root = dim == 2 ? "Q" : "I";

  // comp_of[n-1][itinerary][cell] = component index or -1
  std::vector<std::map<std::string, std::vector<int>>> comp_of(static_cast<std::size_t>(depth));
  std::vector<std::map<std::string, std::vector<std::vector<long>>>> comps(static_cast<std::size_t>(depth));
  for (int n = 1; n <= depth; ++n)
    for (const auto& [itin, cover] : cov.levels[static_cast<std::size_t>(n - 1)]) {
      auto cs = grid_components(g, cover, rho);
      std::vector<int> owner(static_cast<std::size_t>(g.cells()), -1);
      for (std::size_t k = 0; k < cs.size(); ++k)
        for (long c : cs[k]) owner[static_cast<std::size_t>(c)] = static_cast<int>(k);
      comp_of[static_cast<std::size_t>(n - 1)][itin] = std::move(owner);
      comps[static_cast<std::size_t>(n - 1)][itin] = std::move(cs);
    }

  auto label = [](const std::string& itin, std::size_t k) { return itin + "." + std::to_string(k); };
  ExtractedPuzzle out;
  std::vector<std::vector<PartitionElement>> parts(static_cast<std::size_t>(depth) + 1);
  parts[0].push_back({root, "", ""});
  out.pieces_per_level.push_back(1);

  std::vector<int> stamp(static_cast<std::size_t>(g.cells()), -1);
  int stamp_id = 0;
  for (int n = 1; n <= depth; ++n) {
    auto& level = parts[static_cast<std::size_t>(n)];
    for (const auto& [itin, cs] : comps[static_cast<std::size_t>(n - 1)])
      for (std::size_t k = 0; k < cs.size(); ++k) {
        PartitionElement e{label(itin, k), root, root};
        if (n > 1) {
          std::string prefix = itin.substr(0, itin.size() - 1), tail = itin.substr(1);
          const auto& up = comp_of[static_cast<std::size_t>(n - 2)].at(prefix);
          int parent = up[static_cast<std::size_t>(cs[k][0])];
          for (long c : cs[k])
            if (up[static_cast<std::size_t>(c)] != parent)
              throw PuzzleError("component " + e.label + " straddles components of " + prefix);
          e.parent = label(prefix, static_cast<std::size_t>(parent));

          const auto& tail_owner = comp_of[static_cast<std::size_t>(n - 2)].at(tail);
          std::map<int, long> overlap;
          ++stamp_id;
          for (long c : cs[k]) {
            const CellRect& rc = cov.rects[static_cast<std::size_t>(c)];
            for (long j = rc.j0; j <= rc.j1; ++j)
              for (long i = rc.i0; i <= rc.i1; ++i) {
                long t = g.dim == 1 ? i : i + g.N() * j;
                auto ti = static_cast<std::size_t>(t);
                if (stamp[ti] == stamp_id) continue;
                stamp[ti] = stamp_id;
                if (tail_owner[ti] >= 0) ++overlap[tail_owner[ti]];
              }
          }
          if (overlap.empty()) throw PuzzleError("component " + e.label + " has no image in " + tail);
          long best = 0;
          for (const auto& [comp, cnt] : overlap) best = std::max(best, cnt);
          std::vector<int> winners;
          for (const auto& [comp, cnt] : overlap)
            if (cnt == best) winners.push_back(comp);
          if (winners.size() > 1)
            throw PuzzleError("overlap tie assigning f for component " + e.label + " among " +
                              std::to_string(winners.size()) + " components of " + tail);
          if (overlap.size() > 1) ++out.ambiguous_images;
          e.image = label(tail, static_cast<std::size_t>(winners[0]));
        }
        level.push_back(std::move(e));
      }
    out.pieces_per_level.push_back(level.size());
  }
  out.puzzle = from_refinement(parts);
  return out;
}

CoverChecks check_covers(const CouplingParams& p, const CylinderCovers& cov) {
  CoverChecks chk;
  const Grid& g = cov.grid;
  for (int n = 2; n <= cov.depth; ++n)
    for (const auto& [itin, cover] : cov.levels[static_cast<std::size_t>(n - 1)]) {
      const Bitmap& parent = cov.levels[static_cast<std::size_t>(n - 2)].at(itin.substr(0, itin.size() - 1));
      auto tail_it = cov.levels[static_cast<std::size_t>(n - 2)].find(itin.substr(1));
      std::vector<Box> tail_boxes;
      if (tail_it != cov.levels[static_cast<std::size_t>(n - 2)].end())
        for (long t = 0; t < g.cells(); ++t)
          if (tail_it->second[static_cast<std::size_t>(t)]) tail_boxes.push_back(g.cell_box(t));
      for (long c = 0; c < g.cells(); ++c) {
        if (!cover[static_cast<std::size_t>(c)]) continue;
        ++chk.cells_checked;
        if (!parent[static_cast<std::size_t>(c)]) ++chk.nesting_failures;
        Box im;
        if (g.dim == 1) {
          Box b = g.cell_box(c);
          Interval q = square_range(Rational(-4 * p.a), b.x);
          im = {{p.a + q.lo - kHalf, p.a + q.hi - kHalf}, {0, 0}};
        } else {
          im = image_box(p, g.cell_box(c));
        }
        bool hit = std::any_of(tail_boxes.begin(), tail_boxes.end(), [&](const Box& b) { return boxes_meet(im, b); });
        if (!hit) ++chk.soundness_failures;
      }
    }
  return chk;
}

namespace {

double rate(std::size_t count, int n) { return count > 0 ? std::log(static_cast<double>(count)) / n : 0.0; }

}  // namespace

std::vector<EstimateRow> boundary_entropy_estimate(const CouplingParams& p, int n_max, int r, int dim) {
  CylinderCovers cov = refine_cylinders(p, n_max, r, dim);
  const Grid& g = cov.grid;
  const long N = g.N(), h = N / 2;
  auto edge = [&](long k) { return k == 0 || k == N - 1 || k == h - 1 || k == h; };
  std::vector<EstimateRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    std::size_t count = 0;
    for (const auto& [itin, cover] : cov.levels[static_cast<std::size_t>(n - 1)]) {
      bool meets = false;
      for (long c = 0; c < g.cells() && !meets; ++c) {
        if (!cover[static_cast<std::size_t>(c)]) continue;
        long i = dim == 1 ? c : c % N, j = dim == 1 ? -1 : c / N;
        meets = edge(i) || (dim == 2 && edge(j));
      }
      if (meets) ++count;
    }
    rows.push_back({n, count, rate(count, n)});
  }
  return rows;
}

std::vector<EstimateRow> multiplicity_estimate(const CouplingParams& p, int n_max, int r, int dim) {
  CylinderCovers cov = refine_cylinders(p, n_max, r, dim);
  const Grid& g = cov.grid;
  const long N = g.N();
  const long V = dim == 1 ? N + 1 : (N + 1) * (N + 1);
  std::vector<EstimateRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    std::vector<std::size_t> hits(static_cast<std::size_t>(V), 0);
    std::vector<int> stamp(static_cast<std::size_t>(V), -1);
    int id = 0;
    for (const auto& [itin, cover] : cov.levels[static_cast<std::size_t>(n - 1)]) {
      ++id;
      for (long c = 0; c < g.cells(); ++c) {
        if (!cover[static_cast<std::size_t>(c)]) continue;
        long i = dim == 1 ? c : c % N, j = dim == 1 ? 0 : c / N;
        for (long dj = 0; dj <= (dim == 1 ? 0 : 1); ++dj)
          for (long di = 0; di <= 1; ++di) {
            long v = dim == 1 ? i + di : (i + di) + (N + 1) * (j + dj);
            auto vi = static_cast<std::size_t>(v);
            if (stamp[vi] == id) continue;
            stamp[vi] = id;
            ++hits[vi];
          }
      }
    }
    std::size_t best = *std::max_element(hits.begin(), hits.end());
    rows.push_back({n, best, rate(best, n)});
  }
  return rows;
}

RationalPolynomial iterate_polynomial(const CouplingParams& p, int k) {
  if (k < 1) throw std::invalid_argument("iterate_polynomial needs k >= 1");
  using RP = RationalPolynomial;
  RP X = RP::x(), Y;
  const RP half = RP::constant(kHalf), one = RP::constant(1);
  for (int s = 0; s < k; ++s) {
    RP nx = p.a * (one - Rational(4) * X * X) + p.c * Y * Y - half;
    RP ny = p.b * (one - Rational(4) * Y * Y) + p.c * X * X - half;
    X = std::move(nx);
    Y = std::move(ny);
  }
  return X;
}

Rational sylvester_resultant(const RationalPolynomial& P, const RationalPolynomial& Q) {
  if (P.is_zero() || Q.is_zero()) throw std::domain_error("resultant of a zero polynomial");
  const int p = P.degree(), q = Q.degree();
  const int n = p + q;
  std::vector<std::vector<Rational>> M(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
  for (int row = 0; row < q; ++row)
    for (int k = 0; k <= p; ++k) M[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + k)] = P.coeff(p - k);
  for (int row = 0; row < p; ++row)
    for (int k = 0; k <= q; ++k) M[static_cast<std::size_t>(q + row)][static_cast<std::size_t>(row + k)] = Q.coeff(q - k);
  Rational det = 1;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    while (piv < n && M[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)] == 0) ++piv;
    if (piv == n) return Rational(0);
    if (piv != c) {
      std::swap(M[static_cast<std::size_t>(piv)], M[static_cast<std::size_t>(c)]);
      det = -det;
    }
    const Rational pv = M[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
    det *= pv;
    for (int r = c + 1; r < n; ++r) {
      Rational f = M[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] / pv;
      if (f == 0) continue;
      for (int k = c; k < n; ++k)
        M[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] -= f * M[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)];
    }
  }
  return det;
}

}  // namespace qft::coupled
