// One line per acceptance criterion. Exit status is non-zero when a
// criterion fails unexpectedly or a known failure starts passing.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "../support.hpp"
#include "qft/coupled.hpp"
#include "qft/examples.hpp"
#include "qft/markov_diagram.hpp"
#include "qft/puzzle_zeta.hpp"
#include "qft/reducibility.hpp"
#include "qft/zeta.hpp"

using namespace qft;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

PowerSeries rational_series(const std::vector<Rational>& num, const std::vector<Rational>& den, int K) {
  return PowerSeries(oracle::expand(num, den, K), K);
}

std::vector<BigInt> powers(long b, int K) {
  std::vector<BigInt> v;
  for (int n = 1; n <= K; ++n) v.push_back(pow_big(b, static_cast<unsigned>(n)));
  return v;
}

// ---------------------------------------------------------------------------

void k3_zeta(Outcome& o) {
  GraphTruncation k3 = complete_graph(3);
  PowerSeries one = semi_local_zeta_det(k3, {0}, 12);
  PowerSeries all = semi_local_zeta_det(k3, {0, 1, 2}, 12);
  o.require(one == rational_series({1, -2}, {1, -3}, 12), "F={0} vs (1-2z)/(1-3z)");
  o.require(all == rational_series({1}, {1, -3}, 12), "F=all vs 1/(1-3z)");
  o.detail << "z^12 coefficient " << to_string(one[12]) << ", full " << to_string(all[12]);
}

void det_vs_brute(Outcome& o) {
  std::mt19937 rng(2024);
  int mismatches = 0, oracle_mismatches = 0;
  for (int t = 0; t < 50; ++t) {
    auto A = oracle::random_adjacency(rng, 6, 0.45);
    GraphTruncation g = sft_graph(A);
    std::vector<std::size_t> F;
    std::vector<char> in_F(g.size(), 0);
    for (std::size_t v = 0; v < g.size(); ++v)
      if (rng() % 2) F.push_back(v), in_F[v] = 1;
    if (F.empty()) F.push_back(0), in_F[0] = 1;
    PowerSeries det = semi_local_zeta_det(g, F, 10);
    if (!(det == semi_local_zeta_brute(g, F, 10).zeta)) ++mismatches;
    if (!(det == zeta_from_counts(oracle::meeting_counts(oracle::to_matrix(A), in_F, 10), 10))) ++oracle_mismatches;
  }
  o.require(mismatches == 0, "determinant vs brute force");
  o.require(oracle_mismatches == 0, "determinant vs trace oracle");
  o.detail << "50 graphs, " << mismatches << " det/brute mismatches, " << oracle_mismatches << " oracle mismatches";
}

void appendix_graph(Outcome& o) {
  const int L = 20, K = 12;
  // b = 2z^2, s = z^2, t = z^4, q = s t / (1 - b) = z^6 / (1 - 2z^2), a_n = 5^n - q_n
  std::vector<BigInt> a(L), b{0, 2}, s{0, 1}, t{0, 0, 0, 1};
  for (int n = 1; n <= L; ++n) {
    BigInt q = (n >= 6 && n % 2 == 0) ? pow_big(2, static_cast<unsigned>((n - 6) / 2)) : BigInt(0);
    a[static_cast<std::size_t>(n - 1)] = pow_big(5, static_cast<unsigned>(n)) - q;
  }
  GraphTruncation g = appendix_a_graph(a, b, s, t, L);
  std::size_t va = g.at("a"), vb = g.at("b");

  o.require(oracle::first_returns(g, va, K) == powers(5, K), "first returns at a vs 5^n");
  PowerSeries za = semi_local_zeta_det(g, {va}, K);
  o.require(za == rational_series({1, -5}, {1, -10}, K), "zeta_a vs (1-5z)/(1-10z)");
  PadeResult pr = pade_pole_analysis(za, 1, 1);
  bool pole = pr.poles.size() == 1 && pr.poles[0].exact && *pr.poles[0].exact == Rational(1, 10);
  o.require(pole, "pole 1/10");

  GurevichTable gt = gurevich_entropy_estimate(g, va, 10);
  double loop_rate = gt.loops[9].rate, periodic_rate = gt.periodic[9].rate;
  auto loops = oracle::loops_at(g, va, 10);
  o.require(gt.loops[9].count == loops[9], "loop count vs matrix-power oracle");
  o.require(std::abs(loop_rate - std::log(10.0)) < 0.05, "loop-count rate at n=10 within 0.05 of log 10");

  auto inf = entropy_at_infinity_estimate(g, {va, vb}, L);
  double inf_rate = inf[static_cast<std::size_t>(L - 1)].rate;
  o.require(std::abs(inf_rate - std::log(5.0)) < 0.02, "avoid-{a,b} rate at n=20");

  char buf[256];
  std::snprintf(buf, sizeof buf,
                "loop rate(10)=%.4f (log 10=%.4f, diff %.4f); periodic-meeting-a rate(10)=%.4f; "
                "avoid-{a,b} rate(20)=%.4f (log 5=%.4f)",
                loop_rate, std::log(10.0), std::abs(loop_rate - std::log(10.0)), periodic_rate, inf_rate, std::log(5.0));
  o.detail << buf;
}

void loop_graph_identity(Outcome& o) {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> len(1, 6), cnt(0, 3);
  const int K = 12;
  int bad = 0;
  for (int t = 0; t < 50; ++t) {
    std::vector<BigInt> f(static_cast<std::size_t>(len(rng)));
    for (auto& x : f) x = cnt(rng);
    if (std::all_of(f.begin(), f.end(), [](const BigInt& x) { return x == 0; })) f.back() = 1;
    GraphTruncation g = loop_graph(f, Materialization::Explicit);
    auto loops = oracle::loops_at(g, g.at("a"), K);
    std::vector<Rational> den{1};
    for (const auto& x : f) den.push_back(-Rational(x));
    auto ref = oracle::expand({1}, den, K);
    for (int n = 1; n <= K; ++n)
      if (Rational(loops[static_cast<std::size_t>(n - 1)]) != ref[static_cast<std::size_t>(n)]) {
        ++bad;
        break;
      }
  }
  o.require(bad == 0, "loop counts vs 1/(1-f)");
  o.detail << "50 first-return vectors, " << bad << " mismatches";
}

void full_shift_pipeline(Outcome& o) {
  std::set<std::string> lang;
  for (int n = 0; n <= 5; ++n)
    for (const auto& x : oracle::words("01", n)) lang.insert(x);
  Puzzle p = from_subshift(lang, 5);
  Reducibility r(p);
  std::set<std::string> c1;
  for (PieceId v : r.irreducible(1)) c1.insert(p.label(v));
  o.require(c1 == std::set<std::string>{"0", "1"}, "C_1 = {0,1}");
  for (int n = 2; n <= 4; ++n) {
    o.require(r.irreducible(n).empty(), "C_" + std::to_string(n) + " empty");
    o.require(r.unknown(n).empty(), "C_" + std::to_string(n) + " certified");
  }

  MarkovDiagram d = build_diagram(p, 4);
  std::set<std::string> verts;
  for (PieceId v : d.vertices()) verts.insert(p.label(v));
  std::set<std::pair<std::string, std::string>> inner;
  bool into_root = false;
  for (const auto& a : d.arrows()) {
    if (a.to == p.root()) into_root = true;
    if (a.from != p.root()) inner.insert({p.label(a.from), p.label(a.to)});
  }
  o.require(verts == std::set<std::string>{"root", "0", "1"}, "diagram vertices");
  o.require(inner == std::set<std::pair<std::string, std::string>>{{"0", "0"}, {"0", "1"}, {"1", "0"}, {"1", "1"}},
            "complete 2-graph on {0,1}");
  o.require(!into_root, "no arrow returns to the root");

  PuzzleZeta z = puzzle_zeta_N(p, 1, 10, 5);
  for (const auto& c : z.counts)
    o.require(c.certified == pow_big(2, static_cast<unsigned>(c.n)) && c.unliftable == 0 && c.undetermined == 0,
              "count 2^" + std::to_string(c.n));
  o.require(z.zeta == rational_series({1}, {1, -2}, 10), "zeta = 1/(1-2z)");
  o.detail << "C_1={0,1}, C_2..C_4 empty, diagram K2 below the root, counts 2^n to n=10";
}

void golden_mean_pipeline(Outcome& o) {
  Puzzle p = examples::golden_mean(5);
  PuzzleZeta z = puzzle_zeta_N(p, 2, 10, 5);
  auto lucas = oracle::traces(oracle::to_matrix({{1, 1}, {1, 0}}), 10);
  auto gamma = oracle::traces(oracle::adjacency(gamma_N(p, 2)), 10);
  for (const auto& c : z.counts) {
    o.require(c.certified == lucas[static_cast<std::size_t>(c.n - 1)], "Lucas n=" + std::to_string(c.n));
    o.require(c.total == gamma[static_cast<std::size_t>(c.n - 1)], "Gamma_2 n=" + std::to_string(c.n));
  }
  o.detail << "certified counts " << to_string(z.counts[0].certified) << ".." << to_string(z.counts.back().certified);
}

std::vector<Puzzle> example_puzzles(int depth) {
  std::vector<Puzzle> out{examples::full_shift(2, depth), examples::full_shift(3, depth), examples::golden_mean(depth),
                          examples::nasty_puzzle(depth),  examples::bad_zeta_puzzle(depth)};
  if (depth == 4) out.push_back(examples::non_determined_puzzle());
  std::mt19937 rng(5);
  for (int t = 0; t < 10; ++t) out.push_back(examples::sft_puzzle(oracle::random_adjacency(rng, 3, 0.6), depth));
  return out;
}

void reducibility_lemmas(Outcome& o) {
  std::size_t parent_violations = 0, uniqueness_violations = 0, reductions = 0, sibling_pairs = 0;
  auto puzzles = example_puzzles(4);
  for (const Puzzle& p : puzzles) {
    Reducibility r(p);
    for (int n = 2; n <= p.depth(); ++n)
      for (PieceId u : r.irreducible(n))
        if (!r.verdict(p.i(u)).irreducible()) ++parent_violations;
    // siblings reducing to a common target: equal step counts and equal pieces
    for (int n = 1; n <= p.depth(); ++n) {
      std::map<PieceId, std::vector<std::pair<PieceId, int>>> hits;  // target -> (u, k)
      for (PieceId u : p.level(n))
        for (int k = 0; k <= n; ++k) {
          ChainResult c = reduces(r, u, k);
          if (c.status != ChainStatus::Ok) break;
          hits[*c.target].push_back({u, k});
          ++reductions;
        }
      for (const auto& [w, list] : hits)
        for (std::size_t x = 0; x < list.size(); ++x)
          for (std::size_t y = x + 1; y < list.size(); ++y) {
            auto [u, k] = list[x];
            auto [v, l] = list[y];
            if (p.i(u) != p.i(v)) continue;
            ++sibling_pairs;
            if (k != l || u != v) ++uniqueness_violations;
          }
    }
  }
  o.require(parent_violations == 0, "irreducible pieces with reducible i-parent");
  o.require(uniqueness_violations == 0, "sibling reductions to a common target");
  o.detail << puzzles.size() << " puzzles, " << parent_violations << " parent violations, " << reductions
           << " reductions checked, " << sibling_pairs << " distinct siblings sharing a target";
}

void pullback_properties(Outcome& o) {
  std::mt19937 rng(99);
  std::vector<Puzzle> puzzles{examples::full_shift(2, 7), examples::golden_mean(7),
                              examples::sft_puzzle({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}, 7), examples::bad_zeta_puzzle(7)};
  std::vector<MarkovDiagram> diagrams;
  for (const auto& p : puzzles) diagrams.push_back(build_diagram(p, 3));
  int paths = 0, violations = 0, exhausted = 0, attempts = 0;
  while (paths < 200 && attempts < 5000) {
    ++attempts;
    const MarkovDiagram& d = diagrams[rng() % diagrams.size()];
    const Puzzle& p = d.puzzle();
    std::vector<PieceId> path{d.vertices()[rng() % d.vertices().size()]};
    int n = static_cast<int>(rng() % 5);
    for (int k = 0; k < n; ++k) {
      auto out = d.arrows_from(path.back());
      if (out.empty()) break;
      path.push_back(out[rng() % out.size()]->to);
    }
    try {
      std::vector<PieceId> chain;
      for (std::size_t j = 1; j <= path.size(); ++j)
        chain.push_back(path_to_piece(d, std::vector<PieceId>(path.begin(), path.begin() + static_cast<long>(j))));
      PathCheck c = check_path_piece(d, path, chain.back());
      bool coherent = true;
      for (std::size_t j = 1; j < chain.size(); ++j) coherent = coherent && p.i(chain[j]) == chain[j - 1];
      if (!c.i_ok || c.reduction_failures > 0 || !coherent) ++violations;
      ++paths;
    } catch (const DepthExhausted&) {
      ++exhausted;
    }
  }
  o.require(paths == 200, "200 paths inside the truncation");
  o.require(violations == 0, "pullback properties");
  o.detail << paths << " paths, " << violations << " violations, " << exhausted << " left the truncation and were redrawn";
}

void determinacy(Outcome& o) {
  std::mt19937 rng(13);
  int tested = 0, failed = 0;
  for (int t = 0; t < 20; ++t, ++tested)
    if (!is_determined(Reducibility(examples::sft_puzzle(oracle::random_adjacency(rng, 4, 0.5), 5))).determined) ++failed;
  for (const Puzzle& p : {examples::full_shift(2, 5), examples::golden_mean(5)}) {
    ++tested;
    if (!is_determined(Reducibility(p)).determined) ++failed;
  }
  o.require(failed == 0, "subshift puzzles determined");
  Puzzle bz = examples::bad_zeta_puzzle(5);
  o.require(is_determined(Reducibility(bz)).determined, "bad-zeta construction at depth 5");

  Puzzle nd = examples::non_determined_puzzle();
  Reducibility r(nd);
  DeterminacyResult d = is_determined(r);
  o.require(!d.determined && d.counterexample.has_value(), "hand-built puzzle rejected");
  if (d.counterexample) {
    auto [u, v] = *d.counterexample;
    ChainResult cu = reduces(r, u, 1), cv = reduces(r, v, 1);
    auto level1 = [&](PieceId x) {
      while (nd.order(x) > 1) x = nd.i(x);
      return x;
    };
    bool valid = u != v && nd.order(u) == nd.order(v) && cu.status == ChainStatus::Ok && cv.status == ChainStatus::Ok &&
                 *cu.target == *cv.target && level1(u) == level1(v);
    o.require(valid, "counterexample pair is a genuine violation");
    o.detail << tested << " subshift puzzles determined; counterexample (" << nd.label(u) << ", " << nd.label(v) << ")";
  }
}

void equidistribution(Outcome& o) {
  // Parry measure of [0]: u_0 v_0 / <u, v> from the Perron vectors by power iteration
  double A[2][2] = {{1, 1}, {1, 0}};
  double v[2] = {1, 1};
  for (int it = 0; it < 200; ++it) {
    double w[2] = {A[0][0] * v[0] + A[0][1] * v[1], A[1][0] * v[0] + A[1][1] * v[1]};
    double s = w[0] + w[1];
    v[0] = w[0] / s, v[1] = w[1] / s;
  }
  double parry = v[0] * v[0] / (v[0] * v[0] + v[1] * v[1]);  // symmetric matrix: left = right
  auto m = periodic_empirical_measure(sft_graph({{1, 1}, {1, 0}}), 12);
  double freq = m[0].convert_to<double>();
  o.require(std::abs(freq - parry) < 0.02, "frequency of [0] within 0.02 of Parry");
  char buf[128];
  std::snprintf(buf, sizeof buf, "n=12 frequency %.5f, Parry %.5f", freq, parry);
  o.detail << buf;
}

void polynomials(Outcome& o) {
  using RP = RationalPolynomial;
  coupled::CouplingParams p{1, 1, 0};
  RP P1 = coupled::iterate_polynomial(p, 1), P2 = coupled::iterate_polynomial(p, 2);
  RP expect1(std::vector<Rational>{Rational(1, 2), 0, -4});
  o.require(P1 == expect1, "P1 = 1/2 - 4x^2");
  o.require(P2 == RP::constant(Rational(1, 2)) - RP::constant(4) * expect1 * expect1, "P2 = 1/2 - 4 P1^2");
  Rational res = coupled::sylvester_resultant(P1, P2);
  o.require(res != 0, "Res(P1, P2) != 0");

  std::mt19937 rng(8);
  std::uniform_int_distribution<int> coef(-5, 5), deg(1, 4);
  auto rand_poly = [&] {
    std::vector<Rational> c(static_cast<std::size_t>(deg(rng) + 1));
    for (auto& x : c) x = coef(rng);
    if (c.back() == 0) c.back() = 1;
    return RP(c);
  };
  int self_bad = 0, pair_bad = 0;
  for (int t = 0; t < 20; ++t) {
    RP a = rand_poly();
    if (coupled::sylvester_resultant(a, a) != 0) ++self_bad;
  }
  for (int t = 0; t < 50; ++t) {
    RP a = rand_poly(), b = rand_poly();
    if (t % 3 == 0) b = b * rand_poly() * a;
    if ((coupled::sylvester_resultant(a, b) == 0) != (gcd(a, b).degree() > 0)) ++pair_bad;
  }
  o.require(self_bad == 0, "Res(P, P) = 0");
  o.require(pair_bad == 0, "resultant vs gcd");
  o.detail << "Res(P1,P2) = " << to_string(res) << "; " << self_bad << " + " << pair_bad << " random mismatches";
}

void coupled_extraction(Outcome& o) {
  coupled::CouplingParams p{1, 1, 0};
  Rational rho = coupled::default_gap(6);
  coupled::ExtractedPuzzle two = coupled::build_puzzle(p, 2, 6, rho);
  coupled::ExtractedPuzzle one = coupled::build_puzzle(p, 2, 6, rho, 1);
  o.require(validate(two.puzzle).ok(), "2D puzzle validates");
  bool product = two.pieces_per_level.size() == one.pieces_per_level.size();
  for (std::size_t n = 0; product && n < one.pieces_per_level.size(); ++n)
    product = two.pieces_per_level[n] == one.pieces_per_level[n] * one.pieces_per_level[n];
  o.require(product, "2D counts = (1D counts)^2");
  coupled::CoverChecks c = coupled::check_covers(p, coupled::refine_cylinders(p, 2, 6));
  o.require(c.nesting_failures == 0 && c.soundness_failures == 0, "nesting and soundness");
  o.detail << "pieces 2D [";
  for (std::size_t n = 0; n < two.pieces_per_level.size(); ++n) o.detail << (n ? "," : "") << two.pieces_per_level[n];
  o.detail << "] 1D [";
  for (std::size_t n = 0; n < one.pieces_per_level.size(); ++n) o.detail << (n ? "," : "") << one.pieces_per_level[n];
  o.detail << "], " << c.cells_checked << " cells checked";
}

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds, 0 for none
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  // Criteria whose literal threshold cannot hold; they must still report FAIL.
  const std::set<int> known_failures{3};

  std::vector<Criterion> criteria{
      {1, "K3 semi-local zeta", 1, k3_zeta},
      {2, "determinant vs brute force on random digraphs", 30, det_vs_brute},
      {3, "composite loop graph with first returns 5z/(1-5z)", 120, appendix_graph},
      {4, "loop-graph identity", 0, loop_graph_identity},
      {5, "full-shift puzzle pipeline", 0, full_shift_pipeline},
      {6, "golden-mean puzzle pipeline", 0, golden_mean_pipeline},
      {7, "reducibility lemmas on example puzzles", 0, reducibility_lemmas},
      {8, "pullback properties on random diagram paths", 0, pullback_properties},
      {9, "determinacy", 0, determinacy},
      {10, "equidistribution on the golden-mean graph", 0, equidistribution},
      {11, "orbit polynomials and resultants", 0, polynomials},
      {12, "coupled-map puzzle extraction", 0, coupled_extraction},
  };

  int unexpected = 0;
  for (const auto& c : criteria) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0 && secs > c.time_limit) o.require(false, "time limit");
    bool known = known_failures.count(c.id) > 0;
    if (o.pass == known) ++unexpected;
    std::printf("%s %2d %s (%.2fs): %s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.str().c_str(),
                !o.pass && known ? " [known failure]" : (o.pass && known ? " [known failure now passes]" : ""));
  }
  std::printf("%d unexpected result(s)\n", unexpected);
  return unexpected == 0 ? 0 : 1;
}
