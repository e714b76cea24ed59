#include "ctx/model.hpp"

#include <algorithm>
#include <sstream>

namespace ctx {

namespace {

void check_tables(const Scenario& scenario,
                  const std::vector<Distribution>& tables) {
  if (tables.size() != scenario.context_count())
    throw std::invalid_argument("model: one table per context required");
  for (std::size_t c = 0; c < tables.size(); ++c) {
    if (tables[c].context() != scenario.cover()[c])
      throw std::invalid_argument("model: table context does not match the cover");
    if (tables[c].outcome_count() != scenario.outcome_count())
      throw std::invalid_argument("model: table outcome set does not match");
    if (c > 0 && tables[c].semiring() != tables[0].semiring())
      throw std::invalid_argument("model: mixed semirings across tables");
  }
}

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

}  // namespace

std::string CompatibilityReport::to_string() const {
  if (compatible()) return "compatible";
  std::ostringstream os;
  os << violations.size() << " violation(s); first at contexts ("
     << violations[0].context_a << "," << violations[0].context_b
     << "), overlap size " << violations[0].overlap.size();
  return os.str();
}

EmpiricalModel EmpiricalModel::make_raw(std::shared_ptr<const Scenario> scenario,
                                        std::vector<Distribution> tables) {
  check_tables(*scenario, tables);
  EmpiricalModel m;
  m.scenario_ = std::move(scenario);
  m.semiring_ = tables.empty() ? Semiring::NonNegRational : tables[0].semiring();
  m.tables_ = std::move(tables);
  m.raw_ = true;
  return m;
}

EmpiricalModel EmpiricalModel::make(std::shared_ptr<const Scenario> scenario,
                                    std::vector<Distribution> tables) {
  EmpiricalModel m = make_raw(std::move(scenario), std::move(tables));
  for (const auto& t : m.tables_)
    if (!t.normalized())
      throw std::invalid_argument("model: table is not normalized");
  CompatibilityReport rep = check_no_signalling(m);
  if (!rep.compatible())
    throw std::invalid_argument("model: family is not compatible: " +
                                rep.to_string());
  m.raw_ = false;
  return m;
}

CompatibilityReport check_no_signalling(const EmpiricalModel& model) {
  CompatibilityReport rep;
  const auto& cover = model.scenario().cover();
  for (std::size_t a = 0; a < cover.size(); ++a) {
    for (std::size_t b = a + 1; b < cover.size(); ++b) {
      std::vector<int> overlap = intersect(cover[a], cover[b]);
      if (overlap.empty()) continue;  // trivially compatible
      Distribution ma = marginalize(model.table(a), overlap);
      Distribution mb = marginalize(model.table(b), overlap);
      for (std::uint64_t s = 0; s < ma.size(); ++s) {
        if (ma.weight(s) != mb.weight(s)) {
          rep.violations.push_back(
              {a, b, overlap,
               model.scenario().section_outcomes(overlap, s), ma.weight(s),
               mb.weight(s)});
        }
      }
    }
  }
  return rep;
}

EmpiricalModel support_model(const EmpiricalModel& model) {
  if (model.semiring() == Semiring::SignedRational)
    throw std::domain_error("support_model: undefined for signed models");
  std::vector<Distribution> tables;
  tables.reserve(model.tables().size());
  for (const auto& t : model.tables()) tables.push_back(to_boolean(t));
  return model.raw()
             ? EmpiricalModel::make_raw(model.scenario_ptr(), std::move(tables))
             : EmpiricalModel::make(model.scenario_ptr(), std::move(tables));
}

EmpiricalModel product_model(std::shared_ptr<const Scenario> scenario,
                             const std::vector<Distribution>& factors) {
  if (factors.size() != static_cast<std::size_t>(scenario->measurement_count()))
    throw std::invalid_argument("product_model: one factor per measurement");
  std::vector<Distribution> tables;
  for (const auto& context : scenario->cover()) {
    std::vector<Distribution> ctx_factors;
    for (int m : context) ctx_factors.push_back(factors[m]);
    tables.push_back(product_over_singletons(ctx_factors, context));
  }
  return EmpiricalModel::make(std::move(scenario), std::move(tables));
}

}  // namespace ctx
