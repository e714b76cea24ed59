#include "doctest.h"

#include "ctx/catalog.hpp"
#include "ctx/hidden.hpp"
#include "ctx/solve.hpp"
#include "fixtures.hpp"

#include <random>

using namespace ctx;

namespace {

// random factorizable hidden-variable model: per lambda, independent
// single-measurement tables multiplied over each context
HiddenVariableModel random_factorizable(std::shared_ptr<const Scenario> sc,
                                        std::mt19937_64& rng,
                                        std::size_t lambdas = 3) {
  std::vector<std::string> labels;
  std::vector<std::vector<Distribution>> tables;
  for (std::size_t l = 0; l < lambdas; ++l) {
    labels.push_back("l" + std::to_string(l));
    std::vector<Distribution> factors;
    for (int m = 0; m < sc->measurement_count(); ++m)
      factors.push_back(Distribution::make(
          Semiring::NonNegRational, {m}, sc->outcome_count(),
          fixtures::random_weights(rng, sc->outcome_count())));
    std::vector<Distribution> row;
    for (const auto& context : sc->cover()) {
      std::vector<Distribution> ctx_factors;
      for (int m : context) ctx_factors.push_back(factors[m]);
      row.push_back(product_over_singletons(ctx_factors, context));
    }
    tables.push_back(std::move(row));
  }
  auto prior = fixtures::random_weights(rng, lambdas);
  return HiddenVariableModel::make(std::move(sc), Semiring::NonNegRational,
                                   std::move(labels), std::move(prior),
                                   std::move(tables));
}

HiddenVariableModel pr_row_hv(std::shared_ptr<const Scenario> sc) {
  // single lambda whose tables are the PR box itself
  auto pr = catalog::pr_box(0);
  std::vector<std::vector<Distribution>> tables{pr.model->tables()};
  return HiddenVariableModel::make(sc, Semiring::NonNegRational, {"l0"},
                                   {Rational(1)}, std::move(tables));
}

}  // namespace

TEST_CASE("construction validates the prior and per-lambda compatibility") {
  auto sc = catalog::bell().scenario;
  auto pr = catalog::pr_box(0);

  CHECK_THROWS_AS(
      HiddenVariableModel::make(sc, Semiring::NonNegRational, {"l0"},
                                {Rational(1, 2)},
                                {pr.model->tables()}),
      std::invalid_argument);

  // a per-lambda family that signals is rejected outright
  std::mt19937_64 rng(3);
  auto raw = fixtures::signalling_perturbation(*catalog::bell().model, rng);
  CHECK_THROWS_AS(HiddenVariableModel::make(sc, Semiring::NonNegRational,
                                            {"l0"}, {Rational(1)},
                                            {raw.tables()}),
                  std::invalid_argument);
}

TEST_CASE("factorizability: deterministic yes, PR row no") {
  auto sc = catalog::bell().scenario;

  const std::vector<int> all{0, 1, 2, 3};
  auto det = hv_from_global_section(
      sc, delta_distribution(Semiring::NonNegRational, all, 2,
                             std::vector<int>{1, 0, 1, 0}));
  CHECK(is_factorizable(det).factorizable);

  auto pr = pr_row_hv(sc);
  auto res = is_factorizable(pr);
  CHECK_FALSE(res.factorizable);
  REQUIRE(res.counterexample.has_value());
  // marginals of the (1/2,0,0,1/2) row are uniform, the product is 1/4
  CHECK(res.counterexample->product_weight == Rational(1, 4));

  // single lambda, uniform tables: factorizable
  std::vector<Distribution> uniform_tables;
  for (const auto& context : sc->cover())
    uniform_tables.push_back(Distribution::make(
        Semiring::NonNegRational, context, 2,
        std::vector<Rational>(4, Rational(1, 4))));
  auto uniform = HiddenVariableModel::make(sc, Semiring::NonNegRational, {"l0"},
                                           {Rational(1)},
                                           {std::move(uniform_tables)});
  CHECK(is_factorizable(uniform).factorizable);
}

TEST_CASE("realize: delta prior picks out one lambda's tables") {
  auto sc = catalog::bell().scenario;
  std::mt19937_64 rng(5);
  auto h2 = random_factorizable(sc, rng, 2);
  auto h = HiddenVariableModel::make(
      sc, Semiring::NonNegRational, {"l0", "l1"}, {Rational(1), Rational(0)},
      {{h2.table(0, 0), h2.table(0, 1), h2.table(0, 2), h2.table(0, 3)},
       {h2.table(1, 0), h2.table(1, 1), h2.table(1, 2), h2.table(1, 3)}});
  auto e = realize(h);
  for (std::size_t c = 0; c < 4; ++c) CHECK(e.table(c) == h.table(0, c));
  CHECK(check_no_signalling(e).compatible());
}

TEST_CASE("realize: uniform mixture of the eight parity instruction sets") {
  // deterministic assignments over GHZ(3) satisfying the three two-Y parity
  // constraints; averaging them realizes those rows exactly
  auto entry = catalog::ghz(3);
  auto sc = entry.scenario;
  const std::vector<int> all{0, 1, 2, 3, 4, 5};
  std::vector<std::uint64_t> sets;
  for (std::uint64_t g = 0; g < sc->assignment_count(); ++g) {
    const auto outs = sc->assignment_outcomes(g);
    bool ok = true;
    for (std::size_t c = 0; c < sc->cover().size(); ++c) {
      const auto& context = sc->cover()[c];
      int ys = 0, ones = 0;
      for (int m : context) {
        if (sc->measurements()[m][0] == 'Y') ++ys;
        ones += outs[m];
      }
      if (ys == 2 && ones % 2 == 0) ok = false;
    }
    if (ok) sets.push_back(g);
  }
  REQUIRE(sets.size() == 8);

  std::vector<Rational> w(sc->assignment_count(), Rational(0));
  std::vector<int> all_idx(sc->measurement_count());
  std::iota(all_idx.begin(), all_idx.end(), 0);
  for (auto g : sets) {
    const auto outs = sc->assignment_outcomes(g);
    w[sc->section_index(all_idx, outs)] = Rational(1, 8);
  }
  auto d = Distribution::make(Semiring::NonNegRational, all_idx, 2, w);
  auto h = hv_from_global_section(sc, d);
  auto e = realize(h);

  // independent 8-term average per cell
  for (std::size_t c = 0; c < sc->cover().size(); ++c) {
    const auto& context = sc->cover()[c];
    for (std::uint64_t s = 0; s < e.table(c).size(); ++s) {
      Rational expect = 0;
      for (auto g : sets) {
        const auto outs = sc->assignment_outcomes(g);
        std::uint64_t idx = 0;
        for (std::size_t i = context.size(); i-- > 0;)
          idx = idx * 2 + outs[context[i]];
        if (idx == s) expect += Rational(1, 8);
      }
      CHECK(e.table(c).weight(s) == expect);
    }
  }
  // the two-Y rows of the parity model are realized exactly
  for (std::size_t c = 0; c < sc->cover().size(); ++c) {
    int ys = 0;
    for (int m : sc->cover()[c])
      if (sc->measurements()[m][0] == 'Y') ++ys;
    if (ys == 2) CHECK(e.table(c) == entry.model->table(c));
  }
}

TEST_CASE("theorem round trip: factorizable models glue to global sections") {
  std::mt19937_64 rng(7);
  for (const char* name : {"bell", "triangle"}) {
    auto sc = catalog::by_name(name)->scenario;
    for (int trial = 0; trial < 20; ++trial) {
      auto h = random_factorizable(sc, rng);
      REQUIRE(is_factorizable(h).factorizable);
      auto d = global_section_from_factorizable(h);
      CHECK(d.normalized());
      auto e = realize(h);
      for (std::size_t c = 0; c < sc->cover().size(); ++c)
        CHECK(marginalize(d, sc->cover()[c]) == e.table(c));
    }
  }
}

TEST_CASE("theorem round trip: global sections induce factorizable models") {
  std::mt19937_64 rng(13);
  for (const char* name : {"bell", "triangle"}) {
    auto sc = catalog::by_name(name)->scenario;
    std::vector<int> all(sc->measurement_count());
    std::iota(all.begin(), all.end(), 0);
    for (int trial = 0; trial < 20; ++trial) {
      auto d = Distribution::make(
          Semiring::NonNegRational, all, 2,
          fixtures::random_weights(rng, sc->assignment_count()));
      auto h = hv_from_global_section(sc, d);
      CHECK(is_factorizable(h).factorizable);
      auto e = realize(h);
      for (std::size_t c = 0; c < sc->cover().size(); ++c)
        CHECK(e.table(c) == marginalize(d, sc->cover()[c]));
      CHECK(check_no_signalling(e).compatible());
    }
  }
}

TEST_CASE("deterministic-support distributions round-trip exactly") {
  auto sc = catalog::bell().scenario;
  const std::vector<int> all{0, 1, 2, 3};
  for (std::uint64_t s = 0; s < 16; ++s) {
    std::vector<Rational> w(16, Rational(0));
    w[s] = 1;
    auto d = Distribution::make(Semiring::NonNegRational, all, 2, w);
    auto back = global_section_from_factorizable(hv_from_global_section(sc, d));
    CHECK(back == d);
  }
}

TEST_CASE("a nonneg witness for a product model realizes it exactly") {
  auto sc = catalog::bell().scenario;
  std::vector<Distribution> factors;
  for (int m = 0; m < 4; ++m)
    factors.push_back(Distribution::make(Semiring::NonNegRational, {m}, 2,
                                         {Rational(2, 5), Rational(3, 5)}));
  auto model = product_model(sc, factors);
  auto tableau = IncidenceTableau::build(sc);
  auto nn = solve_nonneg(plain_system(tableau, model_vector(*tableau, model)));
  REQUIRE(nn.feasible);
  auto d = to_global_distribution(*sc, Semiring::NonNegRational, nn.witness);
  auto h = hv_from_global_section(sc, d);
  auto e = realize(h);
  for (std::size_t c = 0; c < 4; ++c) CHECK(e.table(c) == model.table(c));
}
