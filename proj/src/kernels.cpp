#include "qft/kernels.hpp"

namespace qft::kernels {

namespace {

BigInt pull(const GraphTruncation& g, const std::vector<BigInt>& cur, std::size_t v) {
  BigInt acc = 0;
  for (std::size_t e : g.in_edges(v)) {
    const Edge& ed = g.edges()[e];
    if (cur[ed.from] != 0) acc += ed.mult * cur[ed.from];
  }
  return acc;
}

std::vector<BigInt> closed_from(const GraphTruncation& g, std::size_t s, int K) {
  std::vector<BigInt> out(static_cast<std::size_t>(K + 1)), cur(g.size()), next(g.size());
  cur[s] = 1;
  for (int n = 1; n <= K; ++n) {
    serial::step(g, cur, next);
    out[static_cast<std::size_t>(n)] = next[s];
    cur.swap(next);
  }
  return out;
}

// Closed walks from s whose first n vertices meet F. Walks are tracked in
// two layers: not yet met F (miss) and already met (hit).
std::vector<BigInt> meeting_from(const GraphTruncation& g, const std::vector<char>& in_F, std::size_t s, int K) {
  const std::size_t V = g.size();
  std::vector<BigInt> out(static_cast<std::size_t>(K + 1));
  std::vector<BigInt> miss(V), hit(V), miss2(V), hit2(V);
  (in_F[s] ? hit : miss)[s] = 1;
  for (int n = 1; n <= K; ++n) {
    for (std::size_t v = 0; v < V; ++v) {
      BigInt from_miss = pull(g, miss, v);
      BigInt from_hit = pull(g, hit, v);
      if (in_F[v]) {
        hit2[v] = from_miss + from_hit;
        miss2[v] = 0;
      } else {
        hit2[v] = from_hit;
        miss2[v] = from_miss;
      }
    }
    // x_n = x_0 = s, whose membership was recorded at step 0
    out[static_cast<std::size_t>(n)] = hit2[s];
    miss.swap(miss2);
    hit.swap(hit2);
  }
  return out;
}

}  // namespace

namespace serial {

void step(const GraphTruncation& g, const std::vector<BigInt>& cur, std::vector<BigInt>& next,
          const std::vector<char>& allowed) {
  next.assign(g.size(), BigInt(0));
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (!allowed.empty() && !allowed[v]) continue;
    next[v] = pull(g, cur, v);
  }
}

ClosedWalkTable closed_walks(const GraphTruncation& g, int K) {
  ClosedWalkTable t(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) t[v] = closed_from(g, v, K);
  return t;
}

Counts closed_walks_meeting(const GraphTruncation& g, const std::vector<char>& in_F, int K) {
  Counts total(static_cast<std::size_t>(K + 1));
  for (std::size_t s = 0; s < g.size(); ++s) {
    auto c = meeting_from(g, in_F, s, K);
    for (int n = 1; n <= K; ++n) total[static_cast<std::size_t>(n)] += c[static_cast<std::size_t>(n)];
  }
  return total;
}

}  // namespace serial

namespace omp {

void step(const GraphTruncation& g, const std::vector<BigInt>& cur, std::vector<BigInt>& next,
          const std::vector<char>& allowed) {
  next.assign(g.size(), BigInt(0));
  const long V = static_cast<long>(g.size());
#pragma omp parallel for schedule(static)
  for (long v = 0; v < V; ++v) {
    auto u = static_cast<std::size_t>(v);
    if (!allowed.empty() && !allowed[u]) continue;
    next[u] = pull(g, cur, u);
  }
}

ClosedWalkTable closed_walks(const GraphTruncation& g, int K) {
  ClosedWalkTable t(g.size());
  const long V = static_cast<long>(g.size());
#pragma omp parallel for schedule(dynamic)
  for (long v = 0; v < V; ++v) t[static_cast<std::size_t>(v)] = closed_from(g, static_cast<std::size_t>(v), K);
  return t;
}

Counts closed_walks_meeting(const GraphTruncation& g, const std::vector<char>& in_F, int K) {
  std::vector<std::vector<BigInt>> per(g.size());
  const long V = static_cast<long>(g.size());
#pragma omp parallel for schedule(dynamic)
  for (long s = 0; s < V; ++s) per[static_cast<std::size_t>(s)] = meeting_from(g, in_F, static_cast<std::size_t>(s), K);
  // fixed summation order keeps the result independent of the schedule
  Counts total(static_cast<std::size_t>(K + 1));
  for (const auto& c : per)
    for (int n = 1; n <= K; ++n) total[static_cast<std::size_t>(n)] += c[static_cast<std::size_t>(n)];
  return total;
}

}  // namespace omp

Counts traces(const ClosedWalkTable& t, int K) {
  Counts c(static_cast<std::size_t>(K + 1));
  for (const auto& row : t)
    for (int n = 1; n <= K; ++n) c[static_cast<std::size_t>(n)] += row[static_cast<std::size_t>(n)];
  return c;
}

}  // namespace qft::kernels
