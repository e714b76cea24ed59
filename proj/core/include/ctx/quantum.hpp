#pragma once

#include <Eigen/Dense>

#include <complex>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ctx/kspec.hpp"
#include "ctx/model.hpp"

namespace ctx {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Operator-identity tolerance and support threshold. The smallest support
// weight at desk scale (2^{1-n} for the parity models) sits orders of
// magnitude above both.
inline constexpr double kOperatorTol = 1e-9;
inline constexpr double kSupportEps = 1e-6;

// A dichotomic observable as its two spectral projectors. Validated:
// each P idempotent and self-adjoint within tol, P0 + P1 = I within tol.
struct DichotomicObservable {
  std::string label;
  CMatrix p0;
  CMatrix p1;
};

DichotomicObservable make_observable(std::string label, CMatrix p0, CMatrix p1,
                                     double tol = kOperatorTol);

// Density matrix: self-adjoint, trace one, positive semidefinite within tol.
struct QuantumState {
  CMatrix rho;
};

QuantumState make_state(CMatrix rho, double tol = kOperatorTol);
QuantumState pure_state(const CVector& psi);  // normalizes

double commutator_norm(const CMatrix& a, const CMatrix& b);  // max |entry|

// Cover of maximal commuting subsets: the maximal cliques of the graph whose
// edges join observables with commuting outcome projectors.
std::shared_ptr<const Scenario> commuting_cover(
    const std::vector<DichotomicObservable>& observables,
    double tol = kOperatorTol);

// A float-weight model: one row of Born weights per context.
struct BornModel {
  std::shared_ptr<const Scenario> scenario;
  std::vector<std::vector<double>> tables;
};

// rho_C(s) = Tr(rho P_s) with P_s the product of the per-measurement outcome
// projectors in context order. Each context must pairwise commute within tol;
// weights must be non-negative within tol and sum to one within tol.
BornModel born_model(const QuantumState& state,
                     const std::vector<DichotomicObservable>& observables,
                     std::shared_ptr<const Scenario> cover,
                     double tol = kOperatorTol);

struct BornViolation {
  std::size_t context_a;
  std::size_t context_b;
  std::vector<int> overlap;
  std::uint64_t overlap_section;
  double left;
  double right;
};

struct BornCompatReport {
  std::vector<BornViolation> violations;
  bool compatible() const { return violations.empty(); }
};

// Pairwise marginal comparison with tolerance. Born models always pass: the
// marginal over the rest of a commuting family telescopes to the identity.
BornCompatReport check_generalized_no_signalling(const BornModel& model,
                                                 double tol = kOperatorTol);

// (|up...up> + |down...down>)/sqrt(2) as a pure density matrix, n >= 2.
QuantumState ghz_state(int n);

// Per part i: tensor-extended X and Y spin observables, labelled "X1","Y1",...
// Outcome 0 is spin right/forward, outcome 1 left/back; the corresponding
// down-coefficients are +1/-1 for X and +i/-i for Y.
std::vector<DichotomicObservable> ghz_observables(int n);

// Projector observables of a vector family: outcome 1 means "this ray fired".
// Every vector must lie in at least one full-dimension orthogonal basis
// within the family; the cover is the commuting cover of the observables.
struct KsObservables {
  std::vector<DichotomicObservable> observables;
  std::shared_ptr<const Scenario> cover;
};

KsObservables ks_observables(const VectorFamily& family);

// Support extraction at threshold eps, as a boolean model.
EmpiricalModel support_of(const BornModel& model, double eps = kSupportEps);

// Exact model from a float one: each weight rounded to the best fraction
// with denominator <= max_denominator, then every table re-validated to sum
// to one and the family re-checked compatible, exactly. Failure is reported,
// never silently accepted.
struct RationalizeOutcome {
  std::optional<EmpiricalModel> model;
  std::string error;
};

RationalizeOutcome rationalize(const BornModel& model,
                               std::uint64_t max_denominator = 1 << 20);

// "dim" header then row-major "re,im" entries, whitespace separated.
CMatrix read_cmatrix(std::istream& in);
void write_cmatrix(std::ostream& out, const CMatrix& m);

}  // namespace ctx
