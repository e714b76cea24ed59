#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctx/model.hpp"
#include "ctx/solve.hpp"

namespace ctx {

// Strength hierarchy of obstructions to a global section. Strong
// contextuality implies possibilistic non-extendability implies
// probabilistic non-extendability.
enum class Level {
  Local,               // non-negative global section exists
  ProbNonExtendable,   // no non-negative section, support boolean-solvable
  PossNonExtendable,   // support not boolean-solvable, S_e non-empty
  StronglyContextual,  // S_e empty
};

const char* to_string(Level level);
int exit_code(Level level);  // 0 / 10 / 11 / 12

struct NcfDecomposition {
  SparseWeights local_weights;  // the global distribution behind L (sums to 1)
  EmpiricalModel local;         // L
  EmpiricalModel residual;      // q, no-signalling
};

struct NcfResult {
  Rational lambda;  // the non-contextual fraction, attained exactly
  // Present exactly when 0 < lambda < 1; e = lambda L + (1-lambda) q holds
  // with exact weights and q passes the compatibility check.
  std::optional<NcfDecomposition> decomposition;
};

struct ClassificationReport {
  Level level = Level::Local;
  bool nonneg_feasible = false;
  std::optional<SparseWeights> global_distribution;  // witness when Local
  BooleanSolution boolean_outcome;                   // on the support
  std::vector<std::uint64_t> se;                     // canonical order
  bool se_search_exhaustive = true;  // emptiness certificate for the top level
  NcfResult ncf;
};

// Runs all three tests (non-negative solvability, boolean solvability of the
// support, S_e enumeration) plus the non-contextual fraction, regardless of
// which level already decides the verdict, so reports carry every witness.
// Requires a compatible non-negative model; throws std::invalid_argument
// otherwise.
ClassificationReport classify(const EmpiricalModel& model);

// lambda* = max sum(x) s.t. tableau x <= V, x >= 0. The supremum over convex
// decompositions e = lambda L + (1-lambda) q is attained on this closed
// rational polytope; the residual is checked no-signalling rather than
// constrained to be.
NcfResult noncontextual_fraction(const EmpiricalModel& model);

// ---- CSP / formula exports -----------------------------------------------------

struct CSPConstraint {
  std::vector<std::string> scope;                      // context labels
  std::vector<std::vector<std::string>> allowed;       // supported sections
};

struct CSPInstance {
  std::vector<std::string> variables;
  std::vector<std::string> values;
  std::vector<CSPConstraint> constraints;  // scopes are exactly the cover
};

CSPInstance to_csp(const EmpiricalModel& model);
std::string to_text(const CSPInstance& csp);  // structured text export

// phi_e: conjunction over contexts of disjunctions of cubes, one cube per
// supported section. Tautological clauses (full-support contexts) are
// omitted. Dichotomic outcomes only; outcome index 1 reads as "true".
struct CubeFormula {
  struct Cube {
    std::vector<std::pair<int, bool>> literals;  // (measurement, positive)
  };
  struct Clause {
    std::size_t context_idx;
    std::vector<Cube> cubes;
  };
  std::vector<std::string> variables;  // measurement labels
  std::vector<Clause> clauses;
};

CubeFormula to_formula(const EmpiricalModel& model);  // throws unless |O| == 2
std::string to_text(const CubeFormula& formula);
// DIMACS CNF, cubes Tseitin-expanded: variables 1..|X| are the measurements,
// one auxiliary variable per cube.
std::string to_dimacs(const CubeFormula& formula);

}  // namespace ctx
