#include "ctx/kspec.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace ctx {

Graph Graph::make(std::vector<std::string> vertices,
                  const std::vector<std::pair<std::string, std::string>>& edges) {
  std::map<std::string, int> idx;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (!idx.emplace(vertices[i], static_cast<int>(i)).second)
      throw std::invalid_argument("graph: duplicate vertex " + vertices[i]);
  Graph g;
  g.vertices = std::move(vertices);
  for (const auto& [a, b] : edges) {
    auto ia = idx.find(a), ib = idx.find(b);
    if (ia == idx.end() || ib == idx.end())
      throw std::invalid_argument("graph: edge references unknown vertex");
    if (ia->second == ib->second)
      throw std::invalid_argument("graph: self-loop at " + a);
    g.edges.emplace_back(std::min(ia->second, ib->second),
                         std::max(ia->second, ib->second));
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  return g;
}

std::vector<Bits> Graph::adjacency() const {
  std::vector<Bits> adj(vertices.size(), Bits(vertices.size()));
  for (const auto& [a, b] : edges) {
    adj[a].set(b);
    adj[b].set(a);
  }
  return adj;
}

int Graph::vertex_index(std::string_view label) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == label) return static_cast<int>(i);
  return -1;
}

VectorFamily VectorFamily::make(std::vector<std::string> labels,
                                std::vector<std::vector<long long>> vectors) {
  if (labels.size() != vectors.size())
    throw std::invalid_argument("vector family: label/vector count mismatch");
  if (vectors.empty())
    throw std::invalid_argument("vector family: empty");
  const std::size_t d = vectors.front().size();
  std::map<std::string, int> seen;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (!seen.emplace(labels[i], 1).second)
      throw std::invalid_argument("vector family: duplicate label " + labels[i]);
    if (vectors[i].size() != d)
      throw std::invalid_argument("vector family: dimension mismatch at " + labels[i]);
    bool zero = true;
    for (long long x : vectors[i]) zero &= x == 0;
    if (zero)
      throw std::invalid_argument("vector family: zero vector at " + labels[i]);
  }
  VectorFamily f;
  f.labels = std::move(labels);
  f.vectors = std::move(vectors);
  return f;
}

int VectorFamily::dimension() const {
  return static_cast<int>(vectors.front().size());
}

ParityVerdict parity_obstruction(const Scenario& scenario) {
  const int n = scenario.measurement_count();
  std::vector<std::uint64_t> counts(n, 0);
  for (const auto& c : scenario.cover())
    for (int m : c) ++counts[m];
  std::uint64_t g = 0;
  for (auto v : counts) g = std::gcd(g, v);
  ParityVerdict verdict;
  verdict.divisor = g;
  verdict.cover_size = scenario.cover().size();
  verdict.obstructed = g != 0 && verdict.cover_size % g != 0;
  return verdict;
}

OneSectionResult one_section_exists(const Scenario& scenario) {
  const int n = scenario.measurement_count();
  const auto& cover = scenario.cover();

  // running ones-count and undecided-count per context
  std::vector<int> ones(cover.size(), 0), open(cover.size(), 0);
  std::vector<std::vector<std::size_t>> member(n);
  for (std::size_t c = 0; c < cover.size(); ++c) {
    open[c] = static_cast<int>(cover[c].size());
    for (int m : cover[c]) member[m].push_back(c);
  }

  OneSectionResult res;
  std::vector<int> assign(n, 0);

  auto recurse = [&](auto&& self, int m) -> bool {
    ++res.nodes_explored;
    if (m == n) return true;
    for (int v = 1; v >= 0; --v) {
      assign[m] = v;
      bool ok = true;
      for (std::size_t c : member[m]) {
        ones[c] += v;
        --open[c];
        if (ones[c] > 1 || (open[c] == 0 && ones[c] != 1)) ok = false;
      }
      if (ok && self(self, m + 1)) return true;
      for (std::size_t c : member[m]) {
        ones[c] -= v;
        ++open[c];
      }
    }
    return false;
  };
  res.exists = recurse(recurse, 0);
  if (res.exists) res.witness = assign;
  return res;
}

namespace {

void bron_kerbosch(const std::vector<Bits>& adj, Bits r, Bits p, Bits x,
                   std::vector<std::vector<int>>& out) {
  if (p.none() && x.none()) {
    std::vector<int> clique;
    r.for_each([&](std::size_t v) { clique.push_back(static_cast<int>(v)); });
    out.push_back(std::move(clique));
    return;
  }
  // pivot maximizing |P & N(u)|
  std::size_t pivot = 0, best = 0;
  bool have = false;
  auto consider = [&](std::size_t u) {
    const std::size_t k = p.count_and(adj[u]);
    if (!have || k > best) {
      have = true;
      best = k;
      pivot = u;
    }
  };
  p.for_each(consider);
  x.for_each(consider);

  std::vector<std::size_t> candidates;
  p.for_each([&](std::size_t v) {
    if (!adj[pivot].test(v)) candidates.push_back(v);
  });
  for (std::size_t v : candidates) {
    Bits r2 = r;
    r2.set(v);
    bron_kerbosch(adj, r2, p & adj[v], x & adj[v], out);
    p.set(v, false);
    x.set(v);
  }
}

}  // namespace

std::vector<std::vector<int>> maximal_cliques(const Graph& g) {
  if (g.vertices.empty())
    throw std::invalid_argument("maximal_cliques: empty graph");
  const auto adj = g.adjacency();
  Bits p(g.vertices.size());
  for (std::size_t v = 0; v < g.vertices.size(); ++v) p.set(v);
  std::vector<std::vector<int>> out;
  bron_kerbosch(adj, Bits(g.vertices.size()), p, Bits(g.vertices.size()), out);
  std::sort(out.begin(), out.end());
  return out;
}

std::shared_ptr<const Scenario> clique_cover_scenario(const Graph& g) {
  std::vector<std::vector<std::string>> cover;
  for (const auto& clique : maximal_cliques(g)) {
    std::vector<std::string> ctx;
    for (int v : clique) ctx.push_back(g.vertices[v]);
    cover.push_back(std::move(ctx));
  }
  return Scenario::make(g.vertices, {"0", "1"}, std::move(cover));
}

TransversalResult stable_transversal(const Graph& g) {
  const auto cliques = maximal_cliques(g);
  const std::size_t n = g.vertices.size();

  // vertices in degree-descending order (ties by index) for early failure
  std::vector<int> degree(n, 0);
  for (const auto& [a, b] : g.edges) {
    ++degree[a];
    ++degree[b];
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (degree[a] != degree[b]) return degree[a] > degree[b];
    return a < b;
  });

  std::vector<std::vector<std::size_t>> member(n);
  for (std::size_t c = 0; c < cliques.size(); ++c)
    for (int v : cliques[c]) member[v].push_back(c);

  std::vector<int> hits(cliques.size(), 0), open(cliques.size(), 0);
  for (std::size_t c = 0; c < cliques.size(); ++c)
    open[c] = static_cast<int>(cliques[c].size());

  std::vector<char> chosen(n, 0);
  auto recurse = [&](auto&& self, std::size_t k) -> bool {
    if (k == n) return true;
    const int v = order[k];
    for (int take = 1; take >= 0; --take) {
      chosen[v] = static_cast<char>(take);
      bool ok = true;
      for (std::size_t c : member[v]) {
        hits[c] += take;
        --open[c];
        if (hits[c] > 1 || (open[c] == 0 && hits[c] != 1)) ok = false;
      }
      if (ok && self(self, k + 1)) return true;
      for (std::size_t c : member[v]) {
        hits[c] -= take;
        ++open[c];
      }
    }
    chosen[v] = 0;
    return false;
  };

  TransversalResult res;
  res.exists = recurse(recurse, 0);
  if (res.exists) {
    for (std::size_t v = 0; v < n; ++v)
      if (chosen[v]) res.witness.push_back(static_cast<int>(v));
    // a stable transversal is independent: any edge inside S would extend to
    // a maximal clique met twice
    const auto adj = g.adjacency();
    for (std::size_t i = 0; i < res.witness.size(); ++i)
      for (std::size_t j = i + 1; j < res.witness.size(); ++j)
        if (adj[res.witness[i]].test(res.witness[j]))
          throw std::logic_error("stable_transversal: witness not independent");
  }
  return res;
}

Graph orthogonality_graph(const VectorFamily& family) {
  Graph g;
  g.vertices = family.labels;
  const std::size_t n = family.vectors.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      long long dot = 0;
      for (std::size_t k = 0; k < family.vectors[i].size(); ++k)
        dot += family.vectors[i][k] * family.vectors[j][k];
      if (dot == 0) g.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  return g;
}

bool cliques_all_of_size(const Graph& g, int d) {
  for (const auto& clique : maximal_cliques(g))
    if (clique.size() != static_cast<std::size_t>(d)) return false;
  return true;
}

Graph co_context_graph(const Scenario& scenario) {
  Graph g;
  g.vertices = scenario.measurements();
  std::vector<std::pair<int, int>> edges;
  for (const auto& c : scenario.cover())
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j)
        edges.emplace_back(c[i], c[j]);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges = std::move(edges);
  return g;
}

BellTypeResult is_bell_type(const Scenario& scenario) {
  const Graph g = co_context_graph(scenario);
  const int n = static_cast<int>(g.vertices.size());
  const auto adj = g.adjacency();

  // complement relation (plus the diagonal) must be an equivalence
  std::vector<int> part(n, -1);
  std::vector<std::vector<int>> parts;
  for (int v = 0; v < n; ++v) {
    if (part[v] >= 0) continue;
    std::vector<int> cls{v};
    part[v] = static_cast<int>(parts.size());
    for (int w = v + 1; w < n; ++w)
      if (part[w] < 0 && !adj[v].test(w)) {
        part[w] = part[v];
        cls.push_back(w);
      }
    parts.push_back(std::move(cls));
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if ((part[a] == part[b]) == adj[a].test(b)) return {false, {}};

  // and the cover must be exactly the maximal cliques (the transversals)
  auto cliques = maximal_cliques(g);
  auto cover = scenario.cover();
  std::sort(cover.begin(), cover.end());
  if (cliques != cover) return {false, {}};
  return {true, std::move(parts)};
}

// ---- plain-text formats -----------------------------------------------------

namespace {

bool content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

Graph read_graph(std::istream& in) {
  std::string line;
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
  bool have_vertices = false;
  while (content_line(in, line)) {
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "vertices") {
      std::string v;
      while (ls >> v) vertices.push_back(v);
      have_vertices = true;
    } else if (head == "edge") {
      std::string a, b;
      if (!(ls >> a >> b))
        throw std::invalid_argument("graph file: malformed edge line: " + line);
      edges.emplace_back(a, b);
    } else {
      throw std::invalid_argument("graph file: unknown directive: " + head);
    }
  }
  if (!have_vertices)
    throw std::invalid_argument("graph file: missing 'vertices' line");
  return Graph::make(std::move(vertices), edges);
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "vertices";
  for (const auto& v : g.vertices) out << ' ' << v;
  out << '\n';
  for (const auto& [a, b] : g.edges)
    out << "edge " << g.vertices[a] << ' ' << g.vertices[b] << '\n';
}

VectorFamily read_vector_family(std::istream& in) {
  std::string line;
  std::vector<std::string> labels;
  std::vector<std::vector<long long>> vectors;
  while (content_line(in, line)) {
    std::istringstream ls(line);
    std::string label;
    ls >> label;
    std::vector<long long> v;
    long long x;
    while (ls >> x) v.push_back(x);
    if (v.empty())
      throw std::invalid_argument("vector file: no coordinates on line: " + line);
    labels.push_back(std::move(label));
    vectors.push_back(std::move(v));
  }
  return VectorFamily::make(std::move(labels), std::move(vectors));
}

void write_vector_family(std::ostream& out, const VectorFamily& family) {
  for (std::size_t i = 0; i < family.labels.size(); ++i) {
    out << family.labels[i];
    for (long long x : family.vectors[i]) out << ' ' << x;
    out << '\n';
  }
}

}  // namespace ctx
