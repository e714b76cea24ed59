#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ctx/distribution.hpp"
#include "ctx/scenario.hpp"

namespace ctx {

struct CompatibilityViolation {
  std::size_t context_a;
  std::size_t context_b;
  std::vector<int> overlap;
  std::vector<int> overlap_outcomes;  // the section over the overlap
  Rational left;                      // marginal of table a
  Rational right;                     // marginal of table b
};

struct CompatibilityReport {
  std::vector<CompatibilityViolation> violations;
  bool compatible() const { return violations.empty(); }
  std::string to_string() const;
};

// One distribution per context, in cover order. make() enforces the
// compatibility (no-signalling) condition; make_raw() stores the family
// unchecked, so that signalling families remain expressible.
class EmpiricalModel {
 public:
  static EmpiricalModel make(std::shared_ptr<const Scenario> scenario,
                             std::vector<Distribution> tables);
  static EmpiricalModel make_raw(std::shared_ptr<const Scenario> scenario,
                                 std::vector<Distribution> tables);

  const Scenario& scenario() const { return *scenario_; }
  const std::shared_ptr<const Scenario>& scenario_ptr() const { return scenario_; }
  Semiring semiring() const { return semiring_; }
  const Distribution& table(std::size_t context_idx) const {
    return tables_[context_idx];
  }
  const std::vector<Distribution>& tables() const { return tables_; }
  bool raw() const { return raw_; }

 private:
  EmpiricalModel() = default;

  std::shared_ptr<const Scenario> scenario_;
  Semiring semiring_ = Semiring::NonNegRational;
  std::vector<Distribution> tables_;
  bool raw_ = false;
};

// Exact pairwise comparison of marginals on every context overlap.
CompatibilityReport check_no_signalling(const EmpiricalModel& model);

// Boolean model of supports, table by table. Compatible whenever the input
// is. Throws std::domain_error on signed input.
EmpiricalModel support_model(const EmpiricalModel& model);

// Local-by-construction model: every table is the product of the given
// per-measurement factors (one single-measurement distribution per
// measurement of the scenario).
EmpiricalModel product_model(std::shared_ptr<const Scenario> scenario,
                             const std::vector<Distribution>& factors);

}  // namespace ctx
