#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ctx/tableau.hpp"

namespace ctx {

// ---- dense exact linear algebra --------------------------------------------

struct LinearSystem {
  std::vector<std::vector<Rational>> lhs;
  std::vector<Rational> rhs;
};

// Materializes a tableau system as a dense rational matrix. Guarded: meant
// for desk-size systems (rows * cols <= 1<<22).
LinearSystem materialize(const TableauSystem& system);

// y with y^T A = 0 and y^T b != 0; witnesses that A X = b has no solution.
struct InconsistencyCertificate {
  std::vector<Rational> row_multipliers;
  Rational value;
};

struct SignedSolution {
  std::vector<Rational> particular;  // free variables at zero
  std::uint64_t rank = 0;
  std::uint64_t nullity = 0;
};

struct SignedOutcome {
  std::optional<SignedSolution> solution;
  std::optional<InconsistencyCertificate> certificate;
  bool solvable() const { return solution.has_value(); }
};

// Gaussian elimination with exact pivots.
SignedOutcome solve_signed(const LinearSystem& system);

// Sparse vector over global assignments: (column index, weight) pairs.
using SparseWeights = std::vector<std::pair<std::uint64_t, Rational>>;

struct TableauSignedOutcome {
  std::optional<SparseWeights> solution;
  std::uint64_t rank = 0;
  std::uint64_t nullity = 0;  // columns - rank
  std::optional<InconsistencyCertificate> certificate;
  bool solvable() const { return solution.has_value(); }
};

// Signed solve of an incidence system. Unknowns outside a combinatorial
// spanning set of columns (the assignments that take a non-first outcome on
// one partial context and the first outcome elsewhere, whose columns are
// linearly independent and span the full column space) are fixed to zero,
// which keeps elimination at rank scale. Certificates are produced for
// systems up to 1024 rows and hold for the full column set.
TableauSignedOutcome solve_signed(const TableauSystem& system);

// ---- exact LP ----------------------------------------------------------------

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPOutcome {
  LPStatus status = LPStatus::Infeasible;
  Rational optimum;
  std::vector<Rational> witness;
};

enum class Cmp { LE, EQ, GE };

struct LPConstraint {
  std::vector<Rational> coeffs;
  Cmp cmp = Cmp::LE;
  Rational rhs;
};

// maximize objective . x subject to the constraints and x >= 0.
// Exact simplex with Bland's anti-cycling rule.
struct LinearProgram {
  std::vector<Rational> objective;
  std::vector<LPConstraint> constraints;
};

LPOutcome maximize(const LinearProgram& lp);

// Non-negative feasibility of M X = V (phase-I simplex). Zero-rhs rows first
// force every incident unknown to zero, so the simplex only ever sees the
// assignments consistent with the support.
struct NonNegOutcome {
  bool feasible = false;
  SparseWeights witness;
};

struct SolveOptions {
  std::uint64_t max_lp_columns = 1 << 12;
};

NonNegOutcome solve_nonneg(const TableauSystem& system, SolveOptions options = {});

// ---- boolean system ----------------------------------------------------------

struct BooleanSolution {
  bool solvable = false;
  std::vector<std::uint64_t> witness;  // admissible global assignments
};

// Closed form: a column is admissible iff its support lies inside the
// vector's support (its assignment is consistent with every context's
// support); the system is solvable iff the admissible columns cover the
// vector. The witness is the full admissible set.
BooleanSolution solve_boolean(const IncidenceTableau& tableau,
                              const Bits& support_vector);

// S_e: all global assignments whose restriction to every context lies in the
// support of that context's table. Backtracking over measurements in global
// order, pruning as soon as a context is complete; output sorted in canonical
// assignment order.
std::vector<std::uint64_t> enumerate_se(const EmpiricalModel& model);

// Bridges between the two indexings of O^X: tableau columns use the
// scenario's assignment key, distributions over the full measurement set use
// plain section indexing.
Distribution to_global_distribution(const Scenario& scenario, Semiring semiring,
                                    const SparseWeights& weights);
std::vector<Rational> to_column_weights(const Scenario& scenario,
                                        const Distribution& global);

}  // namespace ctx
