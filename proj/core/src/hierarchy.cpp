#include "ctx/hierarchy.hpp"

#include <algorithm>
#include <sstream>

namespace ctx {

const char* to_string(Level level) {
  switch (level) {
    case Level::Local: return "local";
    case Level::ProbNonExtendable: return "probabilistically-non-extendable";
    case Level::PossNonExtendable: return "possibilistically-non-extendable";
    case Level::StronglyContextual: return "strongly-contextual";
  }
  return "?";
}

int exit_code(Level level) {
  switch (level) {
    case Level::Local: return 0;
    case Level::ProbNonExtendable: return 10;
    case Level::PossNonExtendable: return 11;
    case Level::StronglyContextual: return 12;
  }
  return 1;
}

namespace {

void require_probabilistic(const EmpiricalModel& model, const char* who) {
  if (model.semiring() != Semiring::NonNegRational)
    throw std::invalid_argument(std::string(who) +
                                ": requires a non-negative rational model");
  CompatibilityReport rep = check_no_signalling(model);
  if (!rep.compatible())
    throw std::invalid_argument(std::string(who) + ": incompatible model: " +
                                rep.to_string());
}

// Tables of the (sub-normalized) global weight vector x: row (C,s) carries
// the sum of x over the assignments restricting to s.
std::vector<std::vector<Rational>> tables_of(const IncidenceTableau& tableau,
                                             const SparseWeights& x) {
  const auto& cover = tableau.scenario().cover();
  std::vector<std::vector<Rational>> tables;
  tables.reserve(cover.size());
  for (std::size_t c = 0; c < cover.size(); ++c)
    tables.emplace_back(tableau.scenario().section_count(cover[c]), Rational(0));
  for (const auto& [g, w] : x) {
    const auto sections = tableau.column_sections(g);
    for (std::size_t c = 0; c < sections.size(); ++c) tables[c][sections[c]] += w;
  }
  return tables;
}

NcfResult ncf_impl(const EmpiricalModel& model,
                   const std::shared_ptr<const IncidenceTableau>& tableau) {
  const ModelVector v = model_vector(*tableau, model);

  // zero-weight rows force their assignments out entirely
  Bits killed(tableau->cols());
  for (std::size_t r = 0; r < tableau->rows(); ++r)
    if (v.weights[r] == 0) killed |= tableau->row_bits(r);
  std::vector<std::uint64_t> live;
  for (std::uint64_t g = 0; g < tableau->cols(); ++g)
    if (!killed.test(g)) live.push_back(g);

  NcfResult result;
  if (live.empty()) {
    result.lambda = 0;
    return result;
  }

  std::vector<std::uint64_t> pos(tableau->cols(), 0);
  for (std::size_t k = 0; k < live.size(); ++k) pos[live[k]] = k;

  LinearProgram lp;
  lp.objective.assign(live.size(), Rational(1));
  for (std::size_t r = 0; r < tableau->rows(); ++r) {
    if (v.weights[r] == 0) continue;
    LPConstraint c;
    c.coeffs.assign(live.size(), Rational(0));
    tableau->row_bits(r).for_each([&](std::size_t g) {
      if (!killed.test(g)) c.coeffs[pos[g]] = 1;
    });
    c.cmp = Cmp::LE;
    c.rhs = v.weights[r];
    lp.constraints.push_back(std::move(c));
  }

  LPOutcome out = maximize(lp);
  if (out.status != LPStatus::Optimal)
    throw std::logic_error("ncf: the LP is bounded and feasible by construction");
  result.lambda = out.optimum;

  if (result.lambda == 0 || result.lambda == 1) return result;

  SparseWeights x;
  for (std::size_t k = 0; k < live.size(); ++k)
    if (out.witness[k] != 0) x.emplace_back(live[k], out.witness[k]);

  const Rational lambda = result.lambda;
  const Rational rest = Rational(1) - lambda;
  const auto xt = tables_of(*tableau, x);

  std::vector<Distribution> local_tables, residual_tables;
  const auto& cover = tableau->scenario().cover();
  for (std::size_t c = 0; c < cover.size(); ++c) {
    std::vector<Rational> lw(xt[c].size()), qw(xt[c].size());
    for (std::size_t s = 0; s < xt[c].size(); ++s) {
      lw[s] = xt[c][s] / lambda;
      qw[s] = (model.table(c).weight(s) - xt[c][s]) / rest;
    }
    local_tables.push_back(Distribution::make(Semiring::NonNegRational,
                                              cover[c],
                                              model.scenario().outcome_count(),
                                              std::move(lw)));
    residual_tables.push_back(Distribution::make(
        Semiring::NonNegRational, cover[c],
        model.scenario().outcome_count(), std::move(qw)));
  }
  // make() re-checks normalization and compatibility of both parts exactly
  EmpiricalModel local =
      EmpiricalModel::make(model.scenario_ptr(), std::move(local_tables));
  EmpiricalModel residual =
      EmpiricalModel::make(model.scenario_ptr(), std::move(residual_tables));

  // e = lambda L + (1 - lambda) q, exactly
  for (std::size_t c = 0; c < cover.size(); ++c)
    for (std::uint64_t s = 0; s < local.table(c).size(); ++s)
      if (model.table(c).weight(s) != lambda * local.table(c).weight(s) +
                                          rest * residual.table(c).weight(s))
        throw std::logic_error("ncf: decomposition identity failed");

  SparseWeights lw;
  for (auto& [g, w] : x) lw.emplace_back(g, w / lambda);
  result.decomposition =
      NcfDecomposition{std::move(lw), std::move(local), std::move(residual)};
  return result;
}

}  // namespace

NcfResult noncontextual_fraction(const EmpiricalModel& model) {
  require_probabilistic(model, "noncontextual_fraction");
  auto tableau = IncidenceTableau::build(model.scenario_ptr());
  return ncf_impl(model, tableau);
}

ClassificationReport classify(const EmpiricalModel& model) {
  require_probabilistic(model, "classify");
  auto tableau = IncidenceTableau::build(model.scenario_ptr());

  ClassificationReport rep;

  NonNegOutcome nn = solve_nonneg(plain_system(tableau, model_vector(*tableau, model)));
  rep.nonneg_feasible = nn.feasible;
  if (nn.feasible) rep.global_distribution = std::move(nn.witness);

  rep.boolean_outcome = solve_boolean(*tableau, support_bits(*tableau, model));
  rep.se = enumerate_se(model);
  rep.ncf = ncf_impl(model, tableau);

  if (nn.feasible)
    rep.level = Level::Local;
  else if (rep.boolean_outcome.solvable)
    rep.level = Level::ProbNonExtendable;
  else if (!rep.se.empty())
    rep.level = Level::PossNonExtendable;
  else
    rep.level = Level::StronglyContextual;
  return rep;
}

CSPInstance to_csp(const EmpiricalModel& model) {
  const Scenario& sc = model.scenario();
  CSPInstance csp;
  csp.variables = sc.measurements();
  csp.values = sc.outcomes();
  for (std::size_t c = 0; c < sc.cover().size(); ++c) {
    CSPConstraint constraint;
    for (int m : sc.cover()[c]) constraint.scope.push_back(sc.measurements()[m]);
    const auto& table = model.table(c);
    for (std::uint64_t s = 0; s < table.size(); ++s) {
      if (!table.possible(s)) continue;
      std::vector<std::string> tuple;
      for (int o : sc.section_outcomes(sc.cover()[c], s))
        tuple.push_back(sc.outcomes()[o]);
      constraint.allowed.push_back(std::move(tuple));
    }
    csp.constraints.push_back(std::move(constraint));
  }
  return csp;
}

std::string to_text(const CSPInstance& csp) {
  std::ostringstream os;
  os << "variables:";
  for (const auto& v : csp.variables) os << ' ' << v;
  os << "\nvalues:";
  for (const auto& v : csp.values) os << ' ' << v;
  os << '\n';
  for (const auto& c : csp.constraints) {
    os << "constraint";
    for (const auto& v : c.scope) os << ' ' << v;
    os << " :";
    for (const auto& t : c.allowed) {
      os << ' ';
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) os << ',';
        os << t[i];
      }
    }
    os << '\n';
  }
  return os.str();
}

CubeFormula to_formula(const EmpiricalModel& model) {
  const Scenario& sc = model.scenario();
  if (sc.outcome_count() != 2)
    throw std::domain_error("to_formula: defined for dichotomic outcomes only");
  CubeFormula f;
  f.variables = sc.measurements();
  for (std::size_t c = 0; c < sc.cover().size(); ++c) {
    const auto& table = model.table(c);
    const Bits supp = table.support();
    if (supp.count() == table.size()) continue;  // tautological clause
    CubeFormula::Clause clause;
    clause.context_idx = c;
    supp.for_each([&](std::size_t s) {
      CubeFormula::Cube cube;
      const auto outs = sc.section_outcomes(sc.cover()[c], s);
      for (std::size_t i = 0; i < outs.size(); ++i)
        cube.literals.emplace_back(sc.cover()[c][i], outs[i] == 1);
      clause.cubes.push_back(std::move(cube));
    });
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

std::string to_text(const CubeFormula& f) {
  std::ostringstream os;
  if (f.clauses.empty()) return "true\n";
  for (const auto& clause : f.clauses) {
    os << "( ";
    for (std::size_t k = 0; k < clause.cubes.size(); ++k) {
      if (k) os << " | ";
      os << '(';
      const auto& cube = clause.cubes[k];
      for (std::size_t i = 0; i < cube.literals.size(); ++i) {
        if (i) os << " & ";
        if (!cube.literals[i].second) os << '!';
        os << f.variables[cube.literals[i].first];
      }
      os << ')';
    }
    os << " )\n";
  }
  return os.str();
}

std::string to_dimacs(const CubeFormula& f) {
  // variables 1..n are the measurements; one Tseitin variable per cube
  const int n = static_cast<int>(f.variables.size());
  int next = n + 1;
  std::ostringstream body;
  int clause_count = 0;
  for (const auto& clause : f.clauses) {
    std::vector<int> selectors;
    for (const auto& cube : clause.cubes) {
      const int z = next++;
      selectors.push_back(z);
      for (const auto& [m, positive] : cube.literals) {
        body << -z << ' ' << (positive ? m + 1 : -(m + 1)) << " 0\n";
        ++clause_count;
      }
    }
    for (int z : selectors) body << z << ' ';
    body << "0\n";
    ++clause_count;
  }
  std::ostringstream out;
  out << "c cube clauses expanded with one selector variable per cube\n";
  out << "p cnf " << next - 1 << ' ' << clause_count << '\n';
  out << body.str();
  return out.str();
}

}  // namespace ctx
