#include "qft/cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "qft/coupled.hpp"
#include "qft/examples.hpp"
#include "qft/graph.hpp"
#include "qft/markov_diagram.hpp"
#include "qft/puzzle_zeta.hpp"
#include "qft/reducibility.hpp"
#include "qft/zeta.hpp"

namespace qft {

const char* const kToolVersion = "0.1.0";

using nlohmann::json;

json puzzle_to_json(const Puzzle& p) {
  json doc;
  doc["depth"] = p.depth();
  doc["levels"] = json::array();
  json i = json::object(), f = json::object();
  for (int n = 0; n <= p.depth(); ++n) {
    json lvl = json::array();
    for (PieceId v : p.level(n)) {
      lvl.push_back(p.label(v));
      const Piece& pc = p.piece(v);
      if (pc.i_parent) i[pc.label] = p.label(*pc.i_parent);
      if (pc.f_image) f[pc.label] = p.label(*pc.f_image);
    }
    doc["levels"].push_back(std::move(lvl));
  }
  doc["i"] = std::move(i);
  doc["f"] = std::move(f);
  return doc;
}

Puzzle puzzle_from_json(const json& doc) {
  try {
    const int depth = doc.at("depth").get<int>();
    const auto& levels = doc.at("levels");
    if (!levels.is_array() || static_cast<int>(levels.size()) != depth + 1)
      throw PuzzleError("\"levels\" must list depth + 1 levels");
    PuzzleBuilder b(depth);
    for (int n = 0; n <= depth; ++n)
      for (const auto& lbl : levels[static_cast<std::size_t>(n)]) b.add(lbl.get<std::string>(), n);
    auto wire = [&](const char* key, bool is_i) {
      if (!doc.contains(key)) return;
      for (const auto& [from, to] : doc.at(key).items()) {
        auto u = b.find(from), v = b.find(to.get<std::string>());
        if (!u || !v) throw PuzzleError(std::string("\"") + key + "\" refers to an unknown label: " + from);
        if (is_i) b.set_i(*u, *v);
        else b.set_f(*u, *v);
      }
    };
    wire("i", true);
    wire("f", false);
    return std::move(b).build();
  } catch (const json::exception& e) {
    throw PuzzleError(std::string("malformed puzzle document: ") + e.what());
  }
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

json RunManifest::to_json() const {
  return json{{"command", command},
              {"parameters", parameters},
              {"inputs", inputs},
              {"truncation", truncation},
              {"tool_version", tool_version}};
}

std::string RunManifest::line() const { return to_json().dump(); }

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  RunManifest manifest;
  std::string out_path;
  int trunc = 16;

  std::string read_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string bytes = ss.str();
    std::ostringstream hex;
    hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a(bytes);
    manifest.inputs[path] = "fnv1a:" + hex.str();
    return bytes;
  }

  json read_json(const std::string& path) {
    std::string bytes = read_input(path);
    try {
      return json::parse(bytes);
    } catch (const json::exception& e) {
      throw InputError("malformed JSON in '" + path + "': " + e.what());
    }
  }

  Puzzle read_puzzle(const std::string& path) {
    json doc = read_json(path);
    try {
      return puzzle_from_json(doc);
    } catch (const PuzzleError& e) {
      throw InputError(e.what());
    }
  }

  GraphTruncation read_graph(const std::string& path) {
    json doc = read_json(path);
    try {
      return graph_from_spec(doc);
    } catch (const GraphError& e) {
      throw InputError(e.what());
    } catch (const json::exception& e) {
      throw InputError(std::string("malformed graph spec: ") + e.what());
    }
  }

  void emit(const std::string& body) {
    if (out_path.empty()) {
      out << body;
      return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + out_path + "'");
    f << body;
  }

  void emit_json(json doc) {
    doc["manifest"] = manifest.to_json();
    emit(doc.dump(2) + "\n");
  }

  void emit_csv(const std::string& rows) { emit("# manifest: " + manifest.line() + "\n" + rows); }

  void emit_dot(const std::string& dot) { emit("// manifest: " + manifest.line() + "\n" + dot); }

  void warn(const std::string& msg) { err << "warning: " << msg << "\n"; }
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

PieceId piece_at(const Puzzle& p, const std::string& label) {
  auto v = p.find(label);
  if (!v) throw InputError("unknown piece '" + label + "'");
  return *v;
}

std::vector<std::size_t> vertex_set(const GraphTruncation& g, const std::string& spec) {
  std::vector<std::size_t> F;
  if (spec == "all") {
    for (std::size_t v = 0; v < g.size(); ++v) F.push_back(v);
    return F;
  }
  if (spec.empty()) {
    if (g.distinguished().empty()) throw InputError("no vertex set given and the graph has no distinguished vertices");
    return g.distinguished();
  }
  for (const auto& lbl : split(spec, ',')) {
    auto v = g.find(lbl);
    if (!v) throw InputError("unknown vertex '" + lbl + "'");
    F.push_back(*v);
  }
  return F;
}

json verdict_json(const Puzzle& p, PieceId v, const Verdict& vd) {
  json j{{"piece", p.label(v)}, {"order", p.order(v)}, {"status", std::string(to_string(vd.status))},
         {"certified_depth", vd.certified_depth}};
  if (vd.witness_level) j["witness_level"] = *vd.witness_level;
  if (vd.witness_piece) j["witness_piece"] = p.label(*vd.witness_piece);
  return j;
}

json labels(const Puzzle& p, const std::vector<PieceId>& vs) {
  json a = json::array();
  for (PieceId v : vs) a.push_back(p.label(v));
  return a;
}

Puzzle named_example(const std::string& name, int depth, int symbols) {
  if (name == "full-shift") return examples::full_shift(symbols, depth);
  if (name == "golden-mean") return examples::golden_mean(depth);
  if (name == "nasty") return examples::nasty_puzzle(depth);
  if (name == "bad-zeta") return examples::bad_zeta_puzzle(depth);
  if (name == "non-determined") return examples::non_determined_puzzle();
  throw InputError("unknown example '" + name + "'");
}

std::string zeta_csv(const PowerSeries& z, const std::vector<BigInt>& counts, const std::vector<bool>& certified,
                     const std::string& extra_header = "", const std::vector<std::string>& extra = {}) {
  std::ostringstream os;
  os << "n,count,certified,coeff_num,coeff_den" << extra_header << "\n";
  for (int n = 0; n <= z.order(); ++n) {
    os << n << ",";
    if (n >= 1 && static_cast<std::size_t>(n) <= counts.size()) os << counts[static_cast<std::size_t>(n - 1)];
    else os << 0;
    bool cert = n == 0 || (static_cast<std::size_t>(n) <= certified.size() && certified[static_cast<std::size_t>(n - 1)]);
    os << "," << (cert ? 1 : 0) << "," << numerator_of(z[n]) << "," << denominator_of(z[n]);
    if (n >= 1 && static_cast<std::size_t>(n) <= extra.size()) os << "," << extra[static_cast<std::size_t>(n - 1)];
    else os << std::string(static_cast<std::size_t>(std::count(extra_header.begin(), extra_header.end(), ',')), ',');
    os << "\n";
  }
  return os.str();
}

std::string fixed(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Puzzles, Markov diagrams and semi-local zeta functions", "qft"};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = 0;
  Context ctx{out, err, {}, {}, 16};
  app.add_option("--threads", threads, "OpenMP threads (0: runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--trunc", ctx.trunc, "Series truncation order")->check(CLI::PositiveNumber);
  app.add_option("-o,--out", ctx.out_path, "Write the result to a file instead of stdout");

  std::string in, piece, spec, subset, method = "det", format = "dot", example;
  int level = 1, cutoff = -1, N = 1, M = -1, order = -1, length = 12, depth = 2, symbols = 2, res = 6, n_iter = 1,
      m_iter = 2, dim = 2;
  std::size_t budget = 2000000;
  std::string a_str = "1", b_str = "1", c_str = "0", gap_str, vertex;

  auto* puzzle = app.add_subcommand("puzzle", "Puzzle operations")->require_subcommand(1);
  auto* p_validate = puzzle->add_subcommand("validate", "Check the puzzle axioms");
  auto* p_irr = puzzle->add_subcommand("irreducibles", "Irreducible pieces of one order");
  auto* p_verdict = puzzle->add_subcommand("verdict", "Reducibility verdict of one piece");
  auto* p_det = puzzle->add_subcommand("determined", "Determinacy check");
  auto* p_diag = puzzle->add_subcommand("diagram", "Markov diagram as DOT");
  auto* p_zeta = puzzle->add_subcommand("zeta", "Zeta function of the level-N periodic sequences");
  auto* p_example = puzzle->add_subcommand("example", "Write a built-in example puzzle");
  for (auto* s : {p_validate, p_irr, p_verdict, p_det, p_diag, p_zeta})
    s->add_option("--in", in, "Puzzle JSON")->required();
  p_irr->add_option("--level", level)->required()->check(CLI::NonNegativeNumber);
  p_verdict->add_option("--piece", piece)->required();
  p_diag->add_option("--cutoff", cutoff, "Largest vertex order (default depth - 1)");
  p_zeta->add_option("--N", N, "Level of the transition graph");
  p_zeta->add_option("--M", M, "Lift level (default depth)");
  p_zeta->add_option("--order", order, "Series order (default --trunc)");
  p_zeta->add_option("--budget", budget, "Maximum number of enumerated sequences");
  p_example->add_option("--name", example, "full-shift | golden-mean | nasty | bad-zeta | non-determined")->required();
  p_example->add_option("--depth", depth)->check(CLI::PositiveNumber);
  p_example->add_option("--symbols", symbols)->check(CLI::Range(1, 10));

  auto* graph = app.add_subcommand("graph", "Graph operations")->require_subcommand(1);
  auto* g_build = graph->add_subcommand("build", "Materialize a graph spec");
  auto* g_zeta = graph->add_subcommand("zeta", "Semi-local zeta function");
  auto* g_entropy = graph->add_subcommand("entropy", "Loop growth at a vertex");
  auto* g_hinf = graph->add_subcommand("hinf", "Growth of excursions avoiding a vertex set");
  for (auto* s : {g_build, g_zeta, g_entropy, g_hinf}) s->add_option("--spec", spec, "Graph spec JSON")->required();
  g_build->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));
  g_zeta->add_option("--subset", subset, "Comma-separated vertex labels or 'all' (default: distinguished)");
  g_zeta->add_option("--order", order, "Series order (default --trunc)");
  g_zeta->add_option("--method", method)->check(CLI::IsMember({"det", "brute"}));
  g_entropy->add_option("--vertex", vertex, "Base vertex label (default: first distinguished)");
  g_entropy->add_option("--length", length)->check(CLI::PositiveNumber);
  g_hinf->add_option("--avoid", subset, "Comma-separated vertex labels (default: distinguished)");
  g_hinf->add_option("--length", length)->check(CLI::PositiveNumber);

  auto* coupled = app.add_subcommand("coupled", "Coupled quadratic maps")->require_subcommand(1);
  auto* c_build = coupled->add_subcommand("build", "Extract a puzzle from cylinder covers");
  auto* c_res = coupled->add_subcommand("resultant", "Resultant of the x-axis orbit polynomials");
  for (auto* s : {c_build, c_res}) {
    s->add_option("--a", a_str);
    s->add_option("--b", b_str);
    s->add_option("--c", c_str);
  }
  c_build->add_option("--depth", depth)->check(CLI::PositiveNumber);
  c_build->add_option("--res", res, "Grid resolution r (2^r cells per axis)")->check(CLI::Range(1, 12));
  c_build->add_option("--gap", gap_str, "Almost-connectivity gap (default 2^(2-res))");
  c_build->add_option("--dim", dim)->check(CLI::IsMember({1, 2}));
  c_res->add_option("--n", n_iter)->check(CLI::PositiveNumber);
  c_res->add_option("--m", m_iter)->check(CLI::PositiveNumber);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  }
  if (threads > 0) omp_set_num_threads(threads);

  auto leaf = [&]() -> CLI::App* {
    CLI::App* a = &app;
    while (!a->get_subcommands().empty()) a = a->get_subcommands().front();
    return a;
  };
  CLI::App* cmd = leaf();
  ctx.manifest.command = cmd->get_parent()->get_name() + " " + cmd->get_name();
  ctx.manifest.tool_version = kToolVersion;
  for (const auto* opt : cmd->get_options())
    if (opt->count() > 0 && opt->get_name() != "--help") ctx.manifest.parameters[opt->get_name()] = opt->as<std::string>();

  try {
    if (cmd == p_example) {
      ctx.emit(puzzle_to_json(named_example(example, depth, symbols)).dump(2) + "\n");
    } else if (cmd == p_validate) {
      Puzzle p = ctx.read_puzzle(in);
      ValidationReport rep = validate(p);
      json v = json::array();
      for (const auto& x : rep.violations)
        v.push_back({{"kind", std::string(to_string(x.kind))}, {"pieces", x.pieces}, {"detail", x.detail}});
      ctx.emit_json({{"ok", rep.ok()}, {"violations", v}});
      return rep.ok() ? 0 : 1;
    } else if (cmd == p_irr || cmd == p_verdict || cmd == p_det) {
      Puzzle p = ctx.read_puzzle(in);
      Reducibility r(p);
      if (cmd == p_irr) {
        if (level > p.depth()) throw std::invalid_argument("level exceeds the puzzle depth");
        std::vector<json> records;
        if (level >= 1)
          for (PieceId v : p.level(level)) {
            const Verdict& vd = r.verdict(v);
            if (!vd.reducible()) records.push_back(verdict_json(p, v, vd));
          }
        auto unk = level >= 1 ? r.unknown(level) : std::vector<PieceId>{};
        if (!unk.empty()) ctx.warn(std::to_string(unk.size()) + " pieces of order " + std::to_string(level) + " are unknown beyond depth");
        ctx.emit_json({{"level", level},
                       {"irreducible", labels(p, level >= 1 ? r.irreducible(level) : std::vector<PieceId>{})},
                       {"unknown", labels(p, unk)},
                       {"records", records}});
      } else if (cmd == p_verdict) {
        PieceId v = piece_at(p, piece);
        if (p.order(v) == 0) throw std::invalid_argument("the root has no verdict");
        ctx.emit_json(verdict_json(p, v, r.verdict(v)));
      } else {
        DeterminacyResult d = is_determined(r);
        json j{{"determined", d.determined}, {"checked_depth", d.checked_depth}};
        if (d.counterexample) j["counterexample"] = {p.label(d.counterexample->first), p.label(d.counterexample->second)};
        ctx.emit_json(j);
      }
    } else if (cmd == p_diag) {
      Puzzle p = ctx.read_puzzle(in);
      if (cutoff < 0) cutoff = p.depth() - 1;
      ctx.manifest.truncation["cutoff"] = std::to_string(cutoff);
      MarkovDiagram d = build_diagram(p, cutoff);
      if (!d.frontier().empty()) ctx.warn(std::to_string(d.frontier().size()) + " frontier markers (truncated arrows)");
      if (!d.witness_conflicts().empty())
        ctx.warn(std::to_string(d.witness_conflicts().size()) + " arrows carry more than one witness");
      ctx.emit_dot(d.to_dot());
    } else if (cmd == p_zeta) {
      Puzzle p = ctx.read_puzzle(in);
      if (M < 0) M = p.depth();
      if (order < 0) order = ctx.trunc;
      ctx.manifest.truncation = {{"order", std::to_string(order)}, {"M", std::to_string(M)}};
      PuzzleZeta z = puzzle_zeta_N(p, N, order, M, budget);
      std::vector<BigInt> counts;
      std::vector<bool> cert;
      std::vector<std::string> extra;
      for (const auto& c : z.counts) {
        counts.push_back(c.certified);
        cert.push_back(c.unliftable == 0 && c.undetermined == 0);
        extra.push_back(to_string(c.total) + "," + to_string(c.low) + "," + to_string(c.high) + "," +
                        to_string(c.undetermined) + "," + to_string(c.unliftable));
      }
      ctx.emit_csv(zeta_csv(z.zeta, counts, cert, ",total,low_return,high,undetermined,unliftable", extra));
    } else if (cmd == g_build) {
      GraphTruncation g = ctx.read_graph(spec);
      if (format == "json") ctx.emit_json(to_json(g));
      else ctx.emit_dot(to_dot(g));
    } else if (cmd == g_zeta) {
      GraphTruncation g = ctx.read_graph(spec);
      if (order < 0) order = ctx.trunc;
      ctx.manifest.truncation["order"] = std::to_string(order);
      auto F = vertex_set(g, subset);
      PowerSeries z(order);
      std::vector<BigInt> counts;
      if (method == "brute") {
        BruteZeta b = semi_local_zeta_brute(g, F, order);
        if (b.warning) ctx.warn(*b.warning);
        z = b.zeta;
        counts = b.counts;
      } else {
        z = semi_local_zeta_det(g, F, order);
        PowerSeries dlog = z.log().derivative();  // sum p_n z^{n-1}
        for (int n = 1; n <= order; ++n) counts.push_back(numerator_of(dlog[n - 1]));
      }
      std::vector<bool> cert;
      for (int n = 1; n <= order; ++n) cert.push_back(!g.completeness_bound() || n <= *g.completeness_bound());
      if (g.completeness_bound() && order > *g.completeness_bound())
        ctx.warn("coefficients beyond n = " + std::to_string(*g.completeness_bound()) + " depend on the truncation");
      ctx.emit_csv(zeta_csv(z, counts, cert));
    } else if (cmd == g_entropy) {
      GraphTruncation g = ctx.read_graph(spec);
      std::size_t a;
      if (!vertex.empty()) a = vertex_set(g, vertex).at(0);
      else a = vertex_set(g, "").at(0);
      ctx.manifest.truncation["length"] = std::to_string(length);
      GurevichTable t = gurevich_entropy_estimate(g, a, length);
      std::ostringstream os;
      os << "n,loops,loops_rate_estimate,periodic,periodic_rate_estimate\n";
      for (std::size_t k = 0; k < t.loops.size(); ++k)
        os << t.loops[k].n << "," << t.loops[k].count << "," << fixed(t.loops[k].rate) << "," << t.periodic[k].count << ","
           << fixed(t.periodic[k].rate) << "\n";
      ctx.emit_csv(os.str());
    } else if (cmd == g_hinf) {
      GraphTruncation g = ctx.read_graph(spec);
      auto F = vertex_set(g, subset);
      ctx.manifest.truncation["length"] = std::to_string(length);
      auto rows = entropy_at_infinity_estimate(g, F, length);
      std::ostringstream os;
      os << "n,count,from,to,rate_estimate\n";
      for (const auto& r : rows) os << r.n << "," << r.best << "," << g.label(r.u) << "," << g.label(r.v) << "," << fixed(r.rate) << "\n";
      ctx.emit_csv(os.str());
    } else if (cmd == c_build || cmd == c_res) {
      coupled::CouplingParams cp;
      try {
        cp = {parse_rational(a_str), parse_rational(b_str), parse_rational(c_str)};
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      if (cmd == c_build) {
        Rational gap = gap_str.empty() ? coupled::default_gap(res) : parse_rational(gap_str);
        ctx.manifest.parameters["--gap"] = to_string(gap);
        ctx.manifest.truncation = {{"depth", std::to_string(depth)}, {"res", std::to_string(res)}};
        if (!cp.in_omega()) ctx.warn("parameters lie outside the open parameter region");
        coupled::ExtractedPuzzle ep = coupled::build_puzzle(cp, depth, res, gap, dim);
        ctx.warn("outer approximation: pieces may merge true components");
        if (ep.ambiguous_images > 0)
          ctx.warn(std::to_string(ep.ambiguous_images) + " pieces had images meeting several components");
        json doc = puzzle_to_json(ep.puzzle);
        doc["pieces_per_level"] = ep.pieces_per_level;
        ctx.emit_json(doc);
      } else {
        RationalPolynomial P = coupled::iterate_polynomial(cp, n_iter), Q = coupled::iterate_polynomial(cp, m_iter);
        Rational res_value = coupled::sylvester_resultant(P, Q);
        ctx.emit_json({{"P_n", P.to_string()}, {"P_m", Q.to_string()}, {"resultant", to_string(res_value)},
                       {"nonzero", res_value != 0}});
      }
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "precondition violation: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace qft
