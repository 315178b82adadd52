#include "multicut/instance.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

namespace multicut {

namespace {

int walk_tail(const EmbeddedPlanarGraph& g, const FaceEntry& fe) {
  return fe.forward ? g.edges[fe.edge].first : g.edges[fe.edge].second;
}

int walk_head(const EmbeddedPlanarGraph& g, const FaceEntry& fe) {
  return fe.forward ? g.edges[fe.edge].second : g.edges[fe.edge].first;
}

}  // namespace

EmbeddedPlanarGraph EmbeddedPlanarGraph::build(int num_nodes,
                                               std::vector<std::pair<int, int>> edges,
                                               std::vector<std::vector<FaceEntry>> faces) {
  EmbeddedPlanarGraph g;
  g.num_nodes = num_nodes;
  g.edges = std::move(edges);
  g.faces = std::move(faces);

  if (num_nodes <= 0) throw MulticutError("graph must have at least one node");
  const int m = g.num_edges();
  for (int e = 0; e < m; ++e) {
    auto [u, v] = g.edges[e];
    if (u < 0 || u >= num_nodes || v < 0 || v >= num_nodes)
      throw MulticutError("edge " + std::to_string(e) + " has an endpoint out of range");
    if (u == v) throw MulticutError("edge " + std::to_string(e) + " is a self-loop");
  }

  g.adjacency.assign(num_nodes, {});
  for (int e = 0; e < m; ++e) {
    g.adjacency[g.edges[e].first].emplace_back(g.edges[e].second, e);
    g.adjacency[g.edges[e].second].emplace_back(g.edges[e].first, e);
  }

  // connectivity
  std::vector<char> seen(num_nodes, 0);
  std::vector<int> stack = {0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (auto [v, e] : g.adjacency[u]) {
      (void)e;
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  if (reached != num_nodes) throw MulticutError("graph is not connected");

  // Euler formula for a connected planar embedding
  if (num_nodes - m + g.num_faces() != 2)
    throw MulticutError("Euler formula violated: |V| - |E| + |F| = " +
                        std::to_string(num_nodes - m + g.num_faces()) + ", expected 2");

  // each orientation of each edge appears exactly once across all face walks,
  // and every face walk is closed
  g.edge_faces.assign(m, {-1, -1});
  for (int f = 0; f < g.num_faces(); ++f) {
    const auto& walk = g.faces[f];
    if (walk.empty()) throw MulticutError("face " + std::to_string(f) + " is empty");
    for (size_t i = 0; i < walk.size(); ++i) {
      const FaceEntry& fe = walk[i];
      if (fe.edge < 0 || fe.edge >= m)
        throw MulticutError("face " + std::to_string(f) + " references edge out of range");
      int& slot = fe.forward ? g.edge_faces[fe.edge].first : g.edge_faces[fe.edge].second;
      if (slot != -1)
        throw MulticutError("edge " + std::to_string(fe.edge) +
                            " traversed twice in the same orientation");
      slot = f;
      const FaceEntry& next = walk[(i + 1) % walk.size()];
      if (walk_head(g, fe) != walk_tail(g, next))
        throw MulticutError("face " + std::to_string(f) + " is not a closed walk");
    }
  }
  for (int e = 0; e < m; ++e) {
    if (g.edge_faces[e].first == -1 || g.edge_faces[e].second == -1)
      throw MulticutError("edge " + std::to_string(e) +
                          " must appear in exactly two face slots (once per orientation)");
  }
  return g;
}

ThetaSplit split_theta(const std::vector<double>& theta) {
  ThetaSplit s;
  s.pos.resize(theta.size());
  s.neg_mag.resize(theta.size());
  for (size_t e = 0; e < theta.size(); ++e) {
    s.pos[e] = std::max(theta[e], 0.0);
    s.neg_mag[e] = std::max(-theta[e], 0.0);
  }
  return s;
}

MulticutLabeling labeling_from_cut(const EmbeddedPlanarGraph& graph,
                                   std::vector<std::uint8_t> edge_cut) {
  if (static_cast<int>(edge_cut.size()) != graph.num_edges())
    throw MulticutError("edge cut size does not match edge count");
  MulticutLabeling out;
  out.edge_cut = std::move(edge_cut);
  out.component_of.assign(graph.num_nodes, -1);
  int next = 0;
  std::vector<int> stack;
  for (int s = 0; s < graph.num_nodes; ++s) {
    if (out.component_of[s] != -1) continue;
    out.component_of[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (auto [v, e] : graph.adjacency[u]) {
        if (out.edge_cut[e]) continue;
        if (out.component_of[v] == -1) {
          out.component_of[v] = next;
          stack.push_back(v);
        }
      }
    }
    ++next;
  }
  return out;
}

bool labeling_is_consistent(const EmbeddedPlanarGraph& graph, const MulticutLabeling& labeling) {
  if (static_cast<int>(labeling.edge_cut.size()) != graph.num_edges()) return false;
  if (static_cast<int>(labeling.component_of.size()) != graph.num_nodes) return false;
  for (int e = 0; e < graph.num_edges(); ++e) {
    auto [u, v] = graph.edges[e];
    bool crosses = labeling.component_of[u] != labeling.component_of[v];
    if (crosses != static_cast<bool>(labeling.edge_cut[e])) return false;
  }
  return true;
}

double multicut_cost(const std::vector<double>& theta, const std::vector<std::uint8_t>& edge_cut) {
  if (theta.size() != edge_cut.size()) throw MulticutError("theta/cut size mismatch");
  double cost = 0.0;
  for (size_t e = 0; e < theta.size(); ++e)
    if (edge_cut[e]) cost += theta[e];
  return cost;
}

bool separates_all_pairs(const MulticutLabeling& labeling,
                         const std::vector<std::pair<int, int>>& pairs) {
  for (auto [a, b] : pairs)
    if (labeling.component_of[a] == labeling.component_of[b]) return false;
  return true;
}

// -- parsing ------------------------------------------------------------------

namespace {

// face tokens carry an explicit orientation sign; "-0" must stay distinguishable
// from "+0", so the sign is peeled off textually before integer conversion
FaceEntry parse_face_token(const std::string& tok, int line) {
  std::string body = tok;
  bool forward = true;
  if (!body.empty() && (body[0] == '+' || body[0] == '-')) {
    forward = body[0] == '+';
    body = body.substr(1);
  }
  if (body.empty() || !std::all_of(body.begin(), body.end(), [](unsigned char c) {
        return std::isdigit(c);
      }))
    throw ParseError("bad face token '" + tok + "'", line);
  return {std::stoi(body), forward};
}

}  // namespace

ProblemInstance parse_instance(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;

  auto next_line = [&](std::string& out) -> bool {
    while (std::getline(in, raw)) {
      ++line_no;
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      bool blank = std::all_of(raw.begin(), raw.end(),
                               [](unsigned char c) { return std::isspace(c); });
      if (blank) continue;
      out = raw;
      return true;
    }
    return false;
  };

  std::string line;
  if (!next_line(line)) throw ParseError("empty input, expected header");
  std::istringstream hdr(line);
  std::string kw_nodes, kw_edges, kw_faces, kw_pairs;
  int n = 0, m = 0, k = 0, p = 0;
  if (!(hdr >> kw_nodes >> n >> kw_edges >> m >> kw_faces >> k >> kw_pairs >> p) ||
      kw_nodes != "nodes" || kw_edges != "edges" || kw_faces != "faces" || kw_pairs != "pairs")
    throw ParseError("malformed header, expected 'nodes N edges M faces K pairs P'", line_no);
  if (n <= 0 || m < 0 || k < 0 || p < 0) throw ParseError("negative or zero header count", line_no);

  std::vector<std::pair<int, int>> edges(m, {-1, -1});
  std::vector<double> theta(m, 0.0);
  std::vector<char> edge_seen(m, 0);
  std::vector<std::vector<FaceEntry>> faces(k);
  std::vector<char> face_seen(k, 0);
  std::vector<std::pair<int, int>> pairs;

  for (int i = 0; i < m; ++i) {
    if (!next_line(line)) throw ParseError("unexpected end of input, expected edge line");
    std::istringstream ls(line);
    std::string kw, wtok;
    int id, u, v;
    if (!(ls >> kw >> id >> u >> v >> wtok) || kw != "edge")
      throw ParseError("malformed edge line", line_no);
    // stream extraction rejects "inf"/"nan" outright; parse the token with
    // strtod so non-finite weights get the dedicated message below
    char* wend = nullptr;
    const double w = std::strtod(wtok.c_str(), &wend);
    if (wend != wtok.c_str() + wtok.size()) throw ParseError("malformed edge line", line_no);
    if (id < 0 || id >= m) throw ParseError("edge id out of range", line_no);
    if (edge_seen[id]) throw ParseError("duplicate edge id " + std::to_string(id), line_no);
    if (!std::isfinite(w)) throw ParseError("edge weight must be finite", line_no);
    edge_seen[id] = 1;
    edges[id] = {u, v};
    theta[id] = w;
  }

  for (int i = 0; i < k; ++i) {
    if (!next_line(line)) throw ParseError("unexpected end of input, expected face line");
    std::istringstream ls(line);
    std::string kw;
    int id;
    if (!(ls >> kw >> id) || kw != "face") throw ParseError("malformed face line", line_no);
    if (id < 0 || id >= k) throw ParseError("face id out of range", line_no);
    if (face_seen[id]) throw ParseError("duplicate face id " + std::to_string(id), line_no);
    face_seen[id] = 1;
    std::string tok;
    while (ls >> tok) faces[id].push_back(parse_face_token(tok, line_no));
    if (faces[id].empty()) throw ParseError("face without edges", line_no);
  }

  for (int i = 0; i < p; ++i) {
    if (!next_line(line)) throw ParseError("unexpected end of input, expected pair line");
    std::istringstream ls(line);
    std::string kw;
    int a, b;
    if (!(ls >> kw >> a >> b) || kw != "pair") throw ParseError("malformed pair line", line_no);
    if (a < 0 || a >= n || b < 0 || b >= n) throw ParseError("pair node out of range", line_no);
    if (a == b) throw ParseError("pair must name two distinct nodes", line_no);
    pairs.emplace_back(a, b);
  }

  if (next_line(line)) throw ParseError("trailing content after instance", line_no);

  ProblemInstance inst;
  inst.graph = EmbeddedPlanarGraph::build(n, std::move(edges), std::move(faces));
  inst.theta = std::move(theta);
  inst.pairs = std::move(pairs);
  return inst;
}

ProblemInstance parse_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string serialize_instance(const ProblemInstance& instance) {
  const auto& g = instance.graph;
  std::ostringstream out;
  out << "nodes " << g.num_nodes << " edges " << g.num_edges() << " faces " << g.num_faces()
      << " pairs " << instance.pairs.size() << "\n";
  char buf[64];
  for (int e = 0; e < g.num_edges(); ++e) {
    std::snprintf(buf, sizeof(buf), "%.17g", instance.theta[e]);
    out << "edge " << e << " " << g.edges[e].first << " " << g.edges[e].second << " " << buf
        << "\n";
  }
  for (int f = 0; f < g.num_faces(); ++f) {
    out << "face " << f;
    for (const FaceEntry& fe : g.faces[f]) out << " " << (fe.forward ? '+' : '-') << fe.edge;
    out << "\n";
  }
  for (auto [a, b] : instance.pairs) out << "pair " << a << " " << b << "\n";
  return out.str();
}

void write_instance_file(const ProblemInstance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw MulticutError("cannot write '" + path + "'");
  out << serialize_instance(instance);
}

// -- grid + synthetic generator -----------------------------------------------

EmbeddedPlanarGraph make_grid_graph(int rows, int cols) {
  if (rows < 1 || cols < 1 || static_cast<long long>(rows) * cols < 2)
    throw MulticutError("grid must have at least two nodes");
  auto node = [cols](int i, int j) { return i * cols + j; };

  std::vector<std::pair<int, int>> edges;
  // right[i][j]: (i,j)-(i,j+1); down[i][j]: (i,j)-(i+1,j); cells in row-major order
  std::vector<std::vector<int>> right(rows, std::vector<int>(cols, -1));
  std::vector<std::vector<int>> down(rows, std::vector<int>(cols, -1));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (j + 1 < cols) {
        right[i][j] = static_cast<int>(edges.size());
        edges.emplace_back(node(i, j), node(i, j + 1));
      }
      if (i + 1 < rows) {
        down[i][j] = static_cast<int>(edges.size());
        edges.emplace_back(node(i, j), node(i + 1, j));
      }
    }
  }

  std::vector<std::vector<FaceEntry>> faces;
  // interior unit squares, clockwise in matrix coordinates
  for (int i = 0; i + 1 < rows; ++i)
    for (int j = 0; j + 1 < cols; ++j)
      faces.push_back({{right[i][j], true},
                       {down[i][j + 1], true},
                       {right[i + 1][j], false},
                       {down[i][j], false}});
  // outer face: down the left side, right along the bottom, up the right side,
  // left along the top; degenerate single-row/column grids walk out and back
  std::vector<FaceEntry> outer;
  for (int i = 0; i + 1 < rows; ++i) outer.push_back({down[i][0], true});
  for (int j = 0; j + 1 < cols; ++j) outer.push_back({right[rows - 1][j], true});
  for (int i = rows - 1; i > 0; --i) outer.push_back({down[i - 1][cols - 1], false});
  for (int j = cols - 1; j > 0; --j) outer.push_back({right[0][j - 1], false});
  faces.push_back(std::move(outer));

  return EmbeddedPlanarGraph::build(rows * cols, std::move(edges), std::move(faces));
}

ProblemInstance generate_synthetic(std::uint64_t seed, int rows, int cols, double noise,
                                   int num_pairs) {
  if (noise < 0.0 || noise > 1.0) throw MulticutError("noise must lie in [0, 1]");
  if (num_pairs < 0) throw MulticutError("num_pairs must be nonnegative");
  EmbeddedPlanarGraph graph = make_grid_graph(rows, cols);
  Rng rng(seed);
  const int n = graph.num_nodes;

  // ground truth: multi-source BFS region growing from k random seeds
  int k = std::max(2, static_cast<int>(std::lround(std::sqrt(static_cast<double>(n)) * 0.8)));
  k = std::min(k, n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.uniform_int(0, i)]);
  std::vector<int> region(n, -1);
  std::vector<int> queue;
  for (int s = 0; s < k; ++s) {
    region[order[s]] = s;
    queue.push_back(order[s]);
  }
  for (size_t head = 0; head < queue.size(); ++head) {
    int u = queue[head];
    for (auto [v, e] : graph.adjacency[u]) {
      (void)e;
      if (region[v] == -1) {
        region[v] = region[u];
        queue.push_back(v);
      }
    }
  }

  std::vector<double> theta(graph.num_edges());
  for (int e = 0; e < graph.num_edges(); ++e) {
    auto [u, v] = graph.edges[e];
    double base = region[u] == region[v] ? 1.0 : -1.0;
    // triangular(-2, 2) jitter; sign flips become possible beyond noise = 0.5
    double jitter = 2.0 * (rng.uniform() + rng.uniform() - 1.0);
    theta[e] = base + noise * jitter;
  }

  // pairs drawn from distinct ground-truth regions, without repetition
  std::vector<std::pair<int, int>> candidates;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (region[a] != region[b]) candidates.emplace_back(a, b);
  if (num_pairs > static_cast<int>(candidates.size()))
    throw MulticutError("requested " + std::to_string(num_pairs) + " pairs but only " +
                        std::to_string(candidates.size()) +
                        " cross-region pairs are available");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < num_pairs; ++i) {
    int j = rng.uniform_int(i, static_cast<int>(candidates.size()) - 1);
    std::swap(candidates[i], candidates[j]);
    pairs.push_back(candidates[i]);
  }

  ProblemInstance inst;
  inst.graph = std::move(graph);
  inst.theta = std::move(theta);
  inst.pairs = std::move(pairs);
  return inst;
}

}  // namespace multicut
