#include "ctx/hidden.hpp"

#include <algorithm>
#include <stdexcept>

namespace ctx {

HiddenVariableModel HiddenVariableModel::make(
    std::shared_ptr<const Scenario> scenario, Semiring semiring,
    std::vector<std::string> lambda_labels, std::vector<Rational> prior,
    std::vector<std::vector<Distribution>> tables) {
  if (semiring == Semiring::Boolean)
    throw std::invalid_argument("hidden-variable model: rational semirings only");
  if (lambda_labels.empty())
    throw std::invalid_argument("hidden-variable model: empty hidden-variable set");
  if (prior.size() != lambda_labels.size() || tables.size() != lambda_labels.size())
    throw std::invalid_argument("hidden-variable model: shape mismatch");

  Rational total = 0;
  for (const auto& w : prior) {
    if (semiring == Semiring::NonNegRational && w < 0)
      throw std::invalid_argument("hidden-variable model: negative prior weight");
    total += w;
  }
  if (total != 1)
    throw std::invalid_argument("hidden-variable model: prior is not normalized");

  // per-lambda compatibility = parameter independence; rejected here because
  // the construction of a glued global section depends on it
  for (std::size_t l = 0; l < tables.size(); ++l) {
    EmpiricalModel family = EmpiricalModel::make_raw(scenario, tables[l]);
    for (const auto& t : tables[l])
      if (t.semiring() != semiring || !t.normalized())
        throw std::invalid_argument(
            "hidden-variable model: table semiring/normalization mismatch");
    CompatibilityReport rep = check_no_signalling(family);
    if (!rep.compatible())
      throw std::invalid_argument(
          "hidden-variable model: per-lambda family is not compatible (lambda " +
          lambda_labels[l] + ")");
  }

  HiddenVariableModel h;
  h.scenario_ = std::move(scenario);
  h.semiring_ = semiring;
  h.lambda_labels_ = std::move(lambda_labels);
  h.prior_ = std::move(prior);
  h.tables_ = std::move(tables);
  return h;
}

FactorizabilityResult is_factorizable(const HiddenVariableModel& h) {
  const auto& cover = h.scenario().cover();
  for (std::size_t l = 0; l < h.lambda_count(); ++l) {
    for (std::size_t c = 0; c < cover.size(); ++c) {
      const Distribution& table = h.table(l, c);
      std::vector<Distribution> factors;
      for (int m : cover[c])
        factors.push_back(marginalize(table, std::span(&m, 1)));
      const Distribution product = product_over_singletons(factors, cover[c]);
      for (std::uint64_t s = 0; s < table.size(); ++s) {
        if (table.weight(s) != product.weight(s)) {
          return {false,
                  FactorizabilityCounterexample{l, c, s, table.weight(s),
                                                product.weight(s)}};
        }
      }
    }
  }
  return {true, std::nullopt};
}

EmpiricalModel realize(const HiddenVariableModel& h) {
  const auto& cover = h.scenario().cover();
  std::vector<Distribution> tables;
  for (std::size_t c = 0; c < cover.size(); ++c) {
    std::vector<Rational> weights(h.table(0, c).size(), Rational(0));
    for (std::size_t l = 0; l < h.lambda_count(); ++l) {
      if (h.prior()[l] == 0) continue;
      for (std::uint64_t s = 0; s < weights.size(); ++s)
        weights[s] += h.prior()[l] * h.table(l, c).weight(s);
    }
    tables.push_back(Distribution::make(h.semiring(), cover[c],
                                        h.scenario().outcome_count(),
                                        std::move(weights)));
  }
  return EmpiricalModel::make(h.scenario_ptr(), std::move(tables));
}

HiddenVariableModel hv_from_global_section(
    std::shared_ptr<const Scenario> scenario, const Distribution& global) {
  std::vector<int> all(scenario->measurement_count());
  for (int m = 0; m < scenario->measurement_count(); ++m) all[m] = m;
  if (global.context() != all)
    throw std::invalid_argument("hv_from_global_section: not a global distribution");
  if (global.semiring() == Semiring::Boolean)
    throw std::invalid_argument("hv_from_global_section: rational semirings only");

  std::vector<std::string> labels;
  std::vector<Rational> prior;
  std::vector<std::vector<Distribution>> tables;
  for (std::uint64_t s = 0; s < global.size(); ++s) {
    if (!global.possible(s)) continue;
    labels.push_back("t" + std::to_string(s));
    prior.push_back(global.weight(s));
    std::vector<Distribution> row;
    for (const auto& context : scenario->cover()) {
      std::vector<int> ctx_outcomes;
      std::uint64_t rest = s;
      std::vector<int> digits(all.size());
      for (std::size_t i = 0; i < all.size(); ++i) {
        digits[i] = static_cast<int>(rest % scenario->outcome_count());
        rest /= scenario->outcome_count();
      }
      for (int m : context) ctx_outcomes.push_back(digits[m]);
      row.push_back(delta_distribution(global.semiring(), context,
                                       scenario->outcome_count(), ctx_outcomes));
    }
    tables.push_back(std::move(row));
  }
  return HiddenVariableModel::make(std::move(scenario), global.semiring(),
                                   std::move(labels), std::move(prior),
                                   std::move(tables));
}

Distribution global_section_from_factorizable(const HiddenVariableModel& h) {
  const FactorizabilityResult fact = is_factorizable(h);
  if (!fact.factorizable)
    throw std::invalid_argument(
        "global_section_from_factorizable: model is not factorizable");

  const Scenario& sc = h.scenario();
  std::vector<int> all(sc.measurement_count());
  for (int m = 0; m < sc.measurement_count(); ++m) all[m] = m;

  // first cover element containing each measurement; compatibility makes the
  // choice irrelevant
  std::vector<std::size_t> home(sc.measurement_count());
  for (int m = 0; m < sc.measurement_count(); ++m)
    for (std::size_t c = 0; c < sc.cover().size(); ++c) {
      const auto& ctx = sc.cover()[c];
      if (std::find(ctx.begin(), ctx.end(), m) != ctx.end()) {
        home[m] = c;
        break;
      }
    }

  std::vector<Rational> weights(sc.assignment_count(), Rational(0));
  for (std::size_t l = 0; l < h.lambda_count(); ++l) {
    if (h.prior()[l] == 0) continue;
    std::vector<Distribution> factors;
    for (int m : all)
      factors.push_back(marginalize(h.table(l, home[m]), std::span(&m, 1)));
    const Distribution glued = product_over_singletons(factors, all);
    for (std::uint64_t s = 0; s < glued.size(); ++s)
      weights[s] += h.prior()[l] * glued.weight(s);
  }
  return Distribution::make(h.semiring(), all, sc.outcome_count(),
                            std::move(weights));
}

}  // namespace ctx
