#include "qft/markov_diagram.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

#include "qft/kernels.hpp"
#include "qft/zeta.hpp"

namespace qft {

bool MarkovDiagram::has_vertex(PieceId v) const {
  return std::find(vertices_.begin(), vertices_.end(), v) != vertices_.end();
}

const Arrow* MarkovDiagram::arrow(PieceId from, PieceId to) const {
  for (const auto& a : arrows_)
    if (a.from == from && a.to == to) return &a;
  return nullptr;
}

std::vector<const Arrow*> MarkovDiagram::arrows_from(PieceId v) const {
  std::vector<const Arrow*> out;
  for (const auto& a : arrows_)
    if (a.from == v) out.push_back(&a);
  return out;
}

GraphTruncation MarkovDiagram::to_graph() const {
  GraphTruncation g;
  std::map<PieceId, std::size_t> idx;
  for (PieceId v : vertices_) idx[v] = g.add_vertex(puzzle().label(v));
  for (const auto& a : arrows_) g.add_edge(idx.at(a.from), idx.at(a.to));
  return g;
}

std::string MarkovDiagram::to_dot() const {
  const Puzzle& p = puzzle();
  std::ostringstream os;
  os << "digraph markov_diagram {\n";
  for (PieceId v : vertices_)
    os << "  p" << index(v) << " [label=\"" << p.label(v) << "|" << p.order(v) << "\"];\n";
  for (const auto& a : arrows_)
    os << "  p" << index(a.from) << " -> p" << index(a.to) << " [label=\"" << p.label(a.witness) << "\"];\n";
  for (const auto& f : frontier_)
    os << "  // frontier " << p.label(f.from) << " via " << p.label(f.witness) << ": "
       << (f.reason == FrontierMarker::Reason::UnknownReduction ? "unknown reduction" : "beyond cutoff") << "\n";
  os << "}\n";
  return os.str();
}

MarkovDiagram build_diagram(const Puzzle& p, int cutoff) {
  if (cutoff < 0 || cutoff > p.depth() - 1)
    throw std::invalid_argument("diagram cutoff must lie in 0..depth-1 (got " + std::to_string(cutoff) + ")");
  MarkovDiagram d;
  d.red_ = std::make_shared<const Reducibility>(p);
  d.cutoff_ = cutoff;
  const Reducibility& r = *d.red_;
  for (int n = 0; n <= cutoff; ++n)
    for (PieceId v : p.level(n))
      if (r.is_vertex(v)) d.vertices_.push_back(v);

  for (PieceId v : d.vertices_)
    for (PieceId u : p.i_children(v)) {
      ReductionTarget t = reduction_target(r, u);
      if (t.status != ChainStatus::Ok) {
        d.frontier_.push_back({v, u, FrontierMarker::Reason::UnknownReduction, t.target});
        continue;
      }
      if (p.order(t.target) > cutoff) {
        d.frontier_.push_back({v, u, FrontierMarker::Reason::BeyondCutoff, t.target});
        continue;
      }
      Arrow a{v, t.target, u, t.steps};
      if (const Arrow* prev = d.arrow(v, t.target))
        d.conflicts_.emplace_back(*prev, a);
      else
        d.arrows_.push_back(a);
    }
  return d;
}

PieceId path_to_piece(const MarkovDiagram& d, const std::vector<PieceId>& path) {
  if (path.empty()) throw std::invalid_argument("empty diagram path");
  const Puzzle& p = d.puzzle();
  const std::size_t n = path.size() - 1;
  PieceId w = path[n];
  for (std::size_t j = 1; j <= n; ++j) {
    const Arrow* a = d.arrow(path[n - j], path[n - j + 1]);
    if (!a) throw std::invalid_argument("no arrow " + p.label(path[n - j]) + " -> " + p.label(path[n - j + 1]));
    // chain[t]: ancestor of w at depth t below path[n-j+1]
    std::vector<PieceId> chain(j);
    chain[j - 1] = w;
    for (std::size_t t = j - 1; t > 0; --t) chain[t - 1] = p.i(chain[t]);
    PieceId x = a->witness;
    for (std::size_t t = 1; t < j; ++t) {
      if (p.order(x) >= p.depth())
        throw DepthExhausted("depth exhausted pulling back below " + p.label(x));
      std::optional<PieceId> next;
      for (PieceId c : p.i_children(x))
        if (p.f_pow(c, a->steps) == chain[t]) {
          next = c;
          break;
        }
      if (!next) throw DepthExhausted("no preimage of " + p.label(chain[t]) + " below " + p.label(x));
      x = *next;
    }
    w = x;
  }
  PathCheck chk = check_path_piece(d, path, w);
  if (!chk.i_ok || chk.reduction_failures > 0)
    throw std::logic_error("pullback of a diagram path violates its defining properties");
  return w;
}

PathCheck check_path_piece(const MarkovDiagram& d, const std::vector<PieceId>& path, PieceId w) {
  const Puzzle& p = d.puzzle();
  PathCheck c;
  const int n = static_cast<int>(path.size()) - 1;
  if (p.order(w) != p.order(path[0]) + n) {
    c.i_ok = false;
    return c;
  }
  c.i_ok = p.i_pow(w, n) == path[0];
  PieceId x = w;
  for (int k = 0; k <= n; ++k) {
    ReductionTarget t = reduction_target(d.reducibility(), x);
    if (t.status != ChainStatus::Ok)
      ++c.reduction_unknown;
    else if (t.target != path[static_cast<std::size_t>(n - k)])
      ++c.reduction_failures;
    if (k < n) x = p.i(x);
  }
  return c;
}

ProjectedPath project_path(const MarkovDiagram& d, const std::vector<PieceId>& path) {
  const Puzzle& p = d.puzzle();
  ProjectedPath out;
  const int m = p.order(path.at(0));
  for (std::size_t j = 0; j < path.size(); ++j) {
    std::vector<PieceId> prefix(path.begin(), path.begin() + static_cast<long>(j) + 1);
    PieceId x = path_to_piece(d, prefix);
    out.x.push_back(x);
    out.pi.push_back(p.f_pow(x, m));
  }
  return out;
}

std::vector<SCC> scc_decomposition(const GraphTruncation& g) {
  const std::size_t V = g.size();
  std::vector<std::vector<std::size_t>> succ(V);
  for (const auto& e : g.edges()) succ[e.from].push_back(e.to);

  // iterative Tarjan
  std::vector<long> idx(V, -1), low(V, 0);
  std::vector<char> on_stack(V, 0);
  std::vector<std::size_t> stack;
  std::vector<std::size_t> comp(V, 0);
  std::vector<SCC> out;
  long counter = 0;
  for (std::size_t root = 0; root < V; ++root) {
    if (idx[root] >= 0) continue;
    std::vector<std::pair<std::size_t, std::size_t>> call{{root, 0}};
    idx[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, k] = call.back();
      if (k < succ[v].size()) {
        std::size_t w = succ[v][k++];
        if (idx[w] < 0) {
          idx[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], idx[w]);
        }
        continue;
      }
      if (low[v] == idx[v]) {
        SCC c;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = out.size();
          c.vertices.push_back(w);
        } while (w != v);
        std::sort(c.vertices.begin(), c.vertices.end());
        out.push_back(std::move(c));
      }
      std::size_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }

  for (std::size_t ci = 0; ci < out.size(); ++ci) {
    SCC& c = out[ci];
    std::size_t r = c.vertices[0];
    std::map<std::size_t, long> level{{r, 0}};
    std::queue<std::size_t> q;
    q.push(r);
    long per = 0;
    while (!q.empty()) {
      std::size_t u = q.front();
      q.pop();
      for (std::size_t w : succ[u]) {
        if (comp[w] != ci) continue;
        auto it = level.find(w);
        if (it == level.end()) {
          level[w] = level[u] + 1;
          q.push(w);
        } else {
          per = std::gcd(per, std::abs(level[u] + 1 - it->second));
        }
      }
    }
    c.period = static_cast<int>(per);
    c.trivial = per == 0;
  }
  return out;
}

namespace {

double rate_of(const BigInt& count, int n) { return count > 0 ? log_of(count) / n : 0.0; }

}  // namespace

GurevichTable gurevich_entropy_estimate(const GraphTruncation& g, std::size_t a, int L) {
  if (a >= g.size()) throw GraphError("base vertex out of range");
  GurevichTable t;
  std::vector<BigInt> cur(g.size()), next;
  cur[a] = 1;
  for (int n = 1; n <= L; ++n) {
    kernels::omp::step(g, cur, next);
    t.loops.push_back({n, next[a], rate_of(next[a], n)});
    cur.swap(next);
  }
  std::vector<char> in_F(g.size(), 0);
  in_F[a] = 1;
  auto per = kernels::omp::closed_walks_meeting(g, in_F, L);
  for (int n = 1; n <= L; ++n) t.periodic.push_back({n, per[static_cast<std::size_t>(n)], rate_of(per[static_cast<std::size_t>(n)], n)});
  return t;
}

std::vector<InfinityRow> entropy_at_infinity_estimate(const GraphTruncation& g, const std::vector<std::size_t>& F,
                                                      int L) {
  if (F.empty()) throw std::invalid_argument("F must be nonempty");
  FirstReturnMatrix m = first_return_matrix(g, F, L);
  std::vector<InfinityRow> rows;
  for (int n = 1; n <= L; ++n) {
    InfinityRow row{n, BigInt(0), F[0], F[0], 0.0};
    for (std::size_t u = 0; u < F.size(); ++u)
      for (std::size_t v = 0; v < F.size(); ++v) {
        BigInt c = numerator_of(m.L[u][v][n]);
        if (c > row.best) {
          row.best = c;
          row.u = F[u];
          row.v = F[v];
        }
      }
    row.rate = rate_of(row.best, n);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qft
