#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctx/bits.hpp"
#include "ctx/scenario.hpp"

namespace ctx {

// Undirected graph over labelled vertices. Edges are canonical (a < b),
// sorted, without self-loops.
struct Graph {
  std::vector<std::string> vertices;
  std::vector<std::pair<int, int>> edges;

  static Graph make(std::vector<std::string> vertices,
                    const std::vector<std::pair<std::string, std::string>>& edges);
  std::vector<Bits> adjacency() const;
  int vertex_index(std::string_view label) const;  // -1 if unknown
};

// Labelled integer vectors of a common dimension. Integer coordinates keep
// orthogonality exact; all the standard KS sets have integer realizations.
struct VectorFamily {
  std::vector<std::string> labels;
  std::vector<std::vector<long long>> vectors;

  static VectorFamily make(std::vector<std::string> labels,
                           std::vector<std::vector<long long>> vectors);
  int dimension() const;
};

// gcd of the context-membership counts |M(m)| versus |M|: if a global
// assignment picks exactly one measurement per context, every common divisor
// of the |M(m)| divides |M|. Failure of the divisibility is a sufficient
// (parity-style) obstruction.
struct ParityVerdict {
  bool obstructed = false;
  std::uint64_t divisor = 0;     // gcd of the membership counts
  std::uint64_t cover_size = 0;  // |M|
};

ParityVerdict parity_obstruction(const Scenario& scenario);

// Exhaustive backtracking for an assignment X -> {0,1} with exactly one 1
// per context.
struct OneSectionResult {
  bool exists = false;
  std::vector<int> witness;          // 0/1 per measurement when exists
  std::uint64_t nodes_explored = 0;  // completed-search certificate
};

OneSectionResult one_section_exists(const Scenario& scenario);

// All maximal cliques (pivoting Bron-Kerbosch), each sorted, the list sorted
// lexicographically. Isolated vertices yield singleton cliques.
std::vector<std::vector<int>> maximal_cliques(const Graph& g);

// The clique cover of a graph as a scenario with outcomes {"0","1"}.
std::shared_ptr<const Scenario> clique_cover_scenario(const Graph& g);

// S with |S ∩ C| = 1 for every maximal clique, or certified absence.
// Vertices are tried in degree-descending order with per-clique pruning.
// Any witness is necessarily an independent set (asserted).
struct TransversalResult {
  bool exists = false;
  std::vector<int> witness;  // vertex indices, sorted
};

TransversalResult stable_transversal(const Graph& g);

// Edge iff the exact integer dot product is zero.
Graph orthogonality_graph(const VectorFamily& family);

// The side condition on KS graphs: every maximal clique has size d.
bool cliques_all_of_size(const Graph& g, int d);

// Co-context graph of a cover: edge iff two measurements share a context.
Graph co_context_graph(const Scenario& scenario);

// A cover is Bell-type iff the complement of its co-context relation is an
// equivalence relation whose transversals are exactly the cover (equivalently
// the cover is the maximal-clique family of the complement-of-an-equivalence
// graph). The witness is the part partition.
struct BellTypeResult {
  bool bell_type = false;
  std::vector<std::vector<int>> parts;
};

BellTypeResult is_bell_type(const Scenario& scenario);

// ---- plain-text formats -----------------------------------------------------
// Graph file:      "vertices a b c" then "edge a b" lines.
// Vector file:     one "label x1 x2 ... xd" line per vector.
// '#' starts a comment line in both.

Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);
VectorFamily read_vector_family(std::istream& in);
void write_vector_family(std::ostream& out, const VectorFamily& family);

}  // namespace ctx
