#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ctx/model.hpp"

namespace ctx {

// A hidden-variable model: a finite label set Lambda, a context-independent
// prior on it (lambda-independence), and per-lambda tables over every
// context. Each per-lambda family must be compatible (parameter
// independence); construction rejects violations.
class HiddenVariableModel {
 public:
  static HiddenVariableModel make(
      std::shared_ptr<const Scenario> scenario, Semiring semiring,
      std::vector<std::string> lambda_labels, std::vector<Rational> prior,
      std::vector<std::vector<Distribution>> tables);  // tables[lambda][context]

  const Scenario& scenario() const { return *scenario_; }
  const std::shared_ptr<const Scenario>& scenario_ptr() const { return scenario_; }
  Semiring semiring() const { return semiring_; }
  std::size_t lambda_count() const { return lambda_labels_.size(); }
  const std::vector<std::string>& lambda_labels() const { return lambda_labels_; }
  const std::vector<Rational>& prior() const { return prior_; }
  const Distribution& table(std::size_t lambda, std::size_t context_idx) const {
    return tables_[lambda][context_idx];
  }

 private:
  HiddenVariableModel() = default;

  std::shared_ptr<const Scenario> scenario_;
  Semiring semiring_ = Semiring::NonNegRational;
  std::vector<std::string> lambda_labels_;
  std::vector<Rational> prior_;
  std::vector<std::vector<Distribution>> tables_;
};

struct FactorizabilityCounterexample {
  std::size_t lambda;
  std::size_t context_idx;
  std::uint64_t section_idx;
  Rational table_weight;
  Rational product_weight;
};

struct FactorizabilityResult {
  bool factorizable = false;
  std::optional<FactorizabilityCounterexample> counterexample;
};

// Exact check of h^l_C(s) = prod_m h^l_C|{m}(s|m) for every lambda, context
// and section; reports the first failure.
FactorizabilityResult is_factorizable(const HiddenVariableModel& h);

// e_C(s) = sum_l h^l_C(s) * prior(l). Compatibility is inherited lambda-wise.
EmpiricalModel realize(const HiddenVariableModel& h);

// Deterministic hidden variables from a global distribution: Lambda is the
// support of d, the prior its weights, and each table the point distribution
// of the restricted assignment. Factorizable, and realizes the marginal
// family of d.
HiddenVariableModel hv_from_global_section(
    std::shared_ptr<const Scenario> scenario, const Distribution& global);

// The converse construction: per-lambda products of the single-measurement
// marginals glued over all of X (well-defined by compatibility), averaged by
// the prior. The result restricts to realize(h)'s table on every context.
// Throws std::invalid_argument when h is not factorizable.
Distribution global_section_from_factorizable(const HiddenVariableModel& h);

}  // namespace ctx
