#include "qft/graph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "qft/series.hpp"

namespace qft {

std::size_t GraphTruncation::add_vertex(std::string label) {
  if (!index_.emplace(label, labels_.size()).second) throw GraphError("duplicate vertex '" + label + "'");
  labels_.push_back(std::move(label));
  in_.emplace_back();
  out_.emplace_back();
  return labels_.size() - 1;
}

void GraphTruncation::add_edge(std::size_t from, std::size_t to, const BigInt& mult) {
  if (from >= size() || to >= size()) throw GraphError("edge endpoint out of range");
  if (mult < 0) throw GraphError("negative edge multiplicity");
  if (mult == 0) return;
  for (std::size_t e : out_[from])
    if (edges_[e].to == to) {
      edges_[e].mult += mult;
      return;
    }
  edges_.push_back(Edge{from, to, mult});
  out_[from].push_back(edges_.size() - 1);
  in_[to].push_back(edges_.size() - 1);
}

std::optional<std::size_t> GraphTruncation::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t GraphTruncation::at(const std::string& label) const {
  auto v = find(label);
  if (!v) throw GraphError("unknown vertex '" + label + "'");
  return *v;
}

BigInt GraphTruncation::edge_count() const {
  BigInt n = 0;
  for (const auto& e : edges_) n += e.mult;
  return n;
}

void GraphTruncation::mark_distinguished(std::size_t v) {
  if (std::find(distinguished_.begin(), distinguished_.end(), v) == distinguished_.end()) distinguished_.push_back(v);
}

GraphTruncation GraphTruncation::induced(const std::vector<char>& keep) const {
  GraphTruncation g;
  std::vector<std::size_t> map(size(), size());
  for (std::size_t v = 0; v < size(); ++v)
    if (keep[v]) map[v] = g.add_vertex(labels_[v]);
  for (const auto& e : edges_)
    if (keep[e.from] && keep[e.to]) g.add_edge(map[e.from], map[e.to], e.mult);
  for (std::size_t v : distinguished_)
    if (keep[v]) g.mark_distinguished(map[v]);
  g.bound_ = bound_;
  return g;
}

GraphTruncation complete_graph(int d) {
  if (d < 1) throw GraphError("complete_graph needs d >= 1");
  GraphTruncation g;
  for (int v = 0; v < d; ++v) g.add_vertex(std::to_string(v));
  for (int u = 0; u < d; ++u)
    for (int v = 0; v < d; ++v) g.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
  return g;
}

GraphTruncation sft_graph(const std::vector<std::vector<int>>& A) {
  GraphTruncation g;
  for (std::size_t v = 0; v < A.size(); ++v) g.add_vertex(std::to_string(v));
  for (std::size_t u = 0; u < A.size(); ++u) {
    if (A[u].size() != A.size()) throw GraphError("adjacency matrix is not square");
    for (std::size_t v = 0; v < A.size(); ++v) {
      if (A[u][v] != 0 && A[u][v] != 1) throw GraphError("adjacency matrix must be 0/1");
      if (A[u][v]) g.add_edge(u, v);
    }
  }
  return g;
}

namespace {

// count paths of length n from `from` to `to` through fresh interior vertices
void add_paths(GraphTruncation& g, std::size_t from, std::size_t to, int n, const BigInt& count,
               const std::string& prefix, Materialization m) {
  if (count == 0) return;
  if (n == 1) {
    g.add_edge(from, to, count);
    return;
  }
  auto chain = [&](const std::string& tag, const BigInt& mult) {
    std::size_t prev = from;
    for (int k = 1; k < n; ++k) {
      std::size_t x = g.add_vertex(prefix + "." + std::to_string(n) + tag + "." + std::to_string(k));
      g.add_edge(prev, x, k == 1 ? mult : BigInt(1));
      prev = x;
    }
    g.add_edge(prev, to);
  };
  if (m == Materialization::Bundled) {
    chain("", count);
  } else {
    if (count > 100000) throw GraphError("explicit materialization of more than 100000 paths");
    for (long j = 0; j < count.convert_to<long>(); ++j) chain("#" + std::to_string(j), 1);
  }
}

PowerSeries series_of(const std::vector<BigInt>& c, int K) {
  PowerSeries s(K);
  for (std::size_t k = 0; k < c.size() && static_cast<int>(k) + 1 <= K; ++k) s[static_cast<int>(k) + 1] = Rational(c[k]);
  return s;
}

// first-return counts at v: paths v -> v of length n avoiding v in between
std::vector<BigInt> first_returns(const GraphTruncation& g, std::size_t v, int L) {
  std::vector<BigInt> out(static_cast<std::size_t>(L + 1)), cur(g.size()), next(g.size());
  cur[v] = 1;
  for (int n = 1; n <= L; ++n) {
    std::fill(next.begin(), next.end(), BigInt(0));
    for (const auto& e : g.edges())
      if (cur[e.from] != 0) next[e.to] += e.mult * cur[e.from];
    out[static_cast<std::size_t>(n)] = next[v];
    next[v] = 0;
    cur.swap(next);
  }
  return out;
}

}  // namespace

GraphTruncation loop_graph(const std::vector<BigInt>& f, Materialization m) {
  GraphTruncation g;
  std::size_t a = g.add_vertex("a");
  g.mark_distinguished(a);
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f[k] < 0) throw GraphError("negative loop count");
    add_paths(g, a, a, static_cast<int>(k) + 1, f[k], "a", m);
  }
  g.set_completeness_bound(static_cast<int>(f.size()));
  return g;
}

GraphTruncation appendix_a_graph(const std::vector<BigInt>& a, const std::vector<BigInt>& b,
                                 const std::vector<BigInt>& s, const std::vector<BigInt>& t, int L,
                                 Materialization m) {
  for (const auto* v : {&a, &b, &s, &t}) {
    if (static_cast<int>(v->size()) > L) throw GraphError("count vector longer than L");
    for (const auto& c : *v)
      if (c < 0) throw GraphError("negative count");
  }
  GraphTruncation g;
  std::size_t va = g.add_vertex("a"), vb = g.add_vertex("b");
  g.mark_distinguished(va);
  g.mark_distinguished(vb);
  auto attach = [&](const std::vector<BigInt>& c, std::size_t from, std::size_t to, const std::string& tag) {
    for (std::size_t k = 0; k < c.size(); ++k) add_paths(g, from, to, static_cast<int>(k) + 1, c[k], tag, m);
  };
  attach(a, va, va, "a");
  attach(b, vb, vb, "b");
  attach(s, va, vb, "s");
  attach(t, vb, va, "t");
  g.set_completeness_bound(L);

  PowerSeries expect = series_of(a, L) + series_of(s, L) * series_of(t, L) * (PowerSeries::one(L) - series_of(b, L)).reciprocal();
  auto measured = first_returns(g, va, L);
  for (int n = 1; n <= L; ++n)
    if (Rational(measured[static_cast<std::size_t>(n)]) != expect[n])
      throw GraphError("first-return series at a disagrees with a + st/(1-b) at z^" + std::to_string(n));
  return g;
}

GraphTruncation gamma_N(const Puzzle& p, int N) {
  if (N < 0 || N >= p.depth())
    throw GraphError("gamma_N needs 0 <= N < depth (level N+1 must exist); got N = " + std::to_string(N));
  GraphTruncation g;
  std::map<PieceId, std::size_t> idx;
  for (PieceId v : p.level(N)) idx[v] = g.add_vertex(p.label(v));
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (PieceId w : p.level(N + 1)) {
    auto e = std::pair{idx.at(p.i(w)), idx.at(p.f(w))};
    if (seen.insert(e).second) g.add_edge(e.first, e.second);
  }
  return g;
}

std::vector<BigInt> counts_from_json(const nlohmann::json& arr) {
  if (!arr.is_array()) throw GraphError("expected an array of counts");
  std::vector<BigInt> out;
  for (const auto& x : arr) {
    if (x.is_number_integer())
      out.emplace_back(x.get<long long>());
    else if (x.is_string()) {
      Rational r = parse_rational(x.get<std::string>());
      if (denominator_of(r) != 1) throw GraphError("count must be an integer");
      out.push_back(numerator_of(r));
    } else
      throw GraphError("count must be an integer or a decimal string");
  }
  return out;
}

GraphTruncation graph_from_spec(const nlohmann::json& spec) {
  if (!spec.is_object()) throw GraphError("graph spec must be a JSON object");
  std::string kind = spec.value("kind", std::string(spec.contains("vertices") ? "explicit" : ""));
  Materialization m = spec.value("materialize", std::string("bundled")) == "explicit" ? Materialization::Explicit
                                                                                       : Materialization::Bundled;
  GraphTruncation g;
  if (kind == "loop_graph") {
    g = loop_graph(counts_from_json(spec.at("f")), m);
  } else if (kind == "appendix_a") {
    auto a = counts_from_json(spec.at("a")), b = counts_from_json(spec.at("b"));
    auto s = counts_from_json(spec.at("s")), t = counts_from_json(spec.at("t"));
    int L = spec.value("L", static_cast<int>(std::max({a.size(), b.size(), s.size(), t.size()})));
    g = appendix_a_graph(a, b, s, t, L, m);
  } else if (kind == "adjacency") {
    g = sft_graph(spec.at("matrix").get<std::vector<std::vector<int>>>());
  } else if (kind == "complete") {
    g = complete_graph(spec.at("d").get<int>());
  } else if (kind == "explicit") {
    for (const auto& v : spec.at("vertices")) g.add_vertex(v.is_string() ? v.get<std::string>() : v.dump());
    for (const auto& e : spec.at("edges")) {
      auto name = [](const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
      BigInt mult = e.size() > 2 ? counts_from_json(nlohmann::json::array({e[2]}))[0] : BigInt(1);
      g.add_edge(g.at(name(e.at(0))), g.at(name(e.at(1))), mult);
    }
  } else {
    throw GraphError("unknown graph kind '" + kind + "'");
  }
  if (spec.contains("distinguished"))
    for (const auto& v : spec.at("distinguished")) g.mark_distinguished(g.at(v.is_string() ? v.get<std::string>() : v.dump()));
  return g;
}

std::string to_dot(const GraphTruncation& g, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n";
  for (std::size_t v = 0; v < g.size(); ++v) {
    os << "  v" << v << " [label=\"" << g.label(v) << "\"";
    if (std::find(g.distinguished().begin(), g.distinguished().end(), v) != g.distinguished().end())
      os << ", shape=doublecircle";
    os << "];\n";
  }
  for (const auto& e : g.edges()) {
    os << "  v" << e.from << " -> v" << e.to;
    if (e.mult != 1) os << " [label=\"x" << e.mult.str() << "\"]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

nlohmann::json to_json(const GraphTruncation& g) {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (std::size_t v = 0; v < g.size(); ++v) j["vertices"].push_back(g.label(v));
  j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges()) {
    nlohmann::json ed = {g.label(e.from), g.label(e.to)};
    if (e.mult != 1) ed.push_back(e.mult.str());
    j["edges"].push_back(ed);
  }
  if (!g.distinguished().empty()) {
    j["distinguished"] = nlohmann::json::array();
    for (std::size_t v : g.distinguished()) j["distinguished"].push_back(g.label(v));
  }
  if (g.completeness_bound()) j["completeness_bound"] = *g.completeness_bound();
  return j;
}

}  // namespace qft
