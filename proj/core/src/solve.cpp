#include "ctx/solve.hpp"

#include <algorithm>
#include <numeric>

namespace ctx {

namespace {

constexpr std::size_t kCertificateRowLimit = 1024;

// Global assignments taking a non-first outcome on one partial context and
// the first outcome everywhere else. There are D of them, their columns are
// linearly independent, and they span the whole column space of the
// incidence matrix (its rank is D), so fixing every other unknown to zero
// loses no solution and no inconsistency.
std::vector<std::uint64_t> spanning_columns(const Scenario& scenario) {
  const auto fam = scenario.partial_contexts();
  const int l = scenario.outcome_count();
  const int n = scenario.measurement_count();
  std::vector<std::uint64_t> cols;
  std::vector<int> outcomes(n, 0);
  for (const auto& level : fam.by_size) {
    for (const auto& u : level) {
      if (!u.empty() && l < 2) continue;  // no non-first outcome to place
      // enumerate s : u -> {1,...,l-1}
      std::vector<int> digits(u.size(), 1);
      while (true) {
        std::fill(outcomes.begin(), outcomes.end(), 0);
        for (std::size_t i = 0; i < u.size(); ++i) outcomes[u[i]] = digits[i];
        cols.push_back(scenario.assignment_index(outcomes));
        std::size_t i = 0;
        while (i < u.size() && ++digits[i] == l) {
          digits[i] = 1;
          ++i;
        }
        if (i == u.size()) break;
      }
    }
  }
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  return cols;
}

struct EliminationResult {
  std::vector<Rational> particular;
  std::uint64_t rank = 0;
  bool consistent = true;
  std::optional<InconsistencyCertificate> certificate;
};

// Full reduction with optional multiplier tracking for certificates.
EliminationResult eliminate(std::vector<std::vector<Rational>> a,
                            std::vector<Rational> b, bool track) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::vector<std::vector<Rational>> mult;
  if (track) {
    mult.assign(rows, std::vector<Rational>(rows, Rational(0)));
    for (std::size_t i = 0; i < rows; ++i) mult[i][i] = 1;
  }

  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    if (track) std::swap(mult[p], mult[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j)
        if (a[r][j] != 0) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
      if (track)
        for (std::size_t j = 0; j < rows; ++j)
          if (mult[r][j] != 0) mult[i][j] -= f * mult[r][j];
    }
    pivots.emplace_back(r, c);
    ++r;
  }

  EliminationResult res;
  res.rank = pivots.size();
  for (std::size_t i = r; i < rows; ++i) {
    if (b[i] != 0) {
      res.consistent = false;
      if (track)
        res.certificate = InconsistencyCertificate{mult[i], b[i]};
      return res;
    }
  }
  res.particular.assign(cols, Rational(0));
  for (const auto& [pr, pc] : pivots) res.particular[pc] = b[pr] / a[pr][pc];
  return res;
}

}  // namespace

LinearSystem materialize(const TableauSystem& system) {
  const std::size_t rows = system.rows();
  const std::uint64_t cols = system.cols();
  if (static_cast<std::uint64_t>(rows) * cols > (std::uint64_t{1} << 22))
    throw SizeBoundError("materialize: dense system too large");
  LinearSystem out;
  out.lhs.assign(rows, std::vector<Rational>(cols, Rational(0)));
  const auto& t = *system.tableau;
  for (std::size_t r = 0; r < t.rows(); ++r)
    t.row_bits(r).for_each([&](std::size_t c) { out.lhs[r][c] = 1; });
  out.rhs = system.rhs.weights;
  if (system.augmented) {
    std::fill(out.lhs[rows - 1].begin(), out.lhs[rows - 1].end(), Rational(1));
    out.rhs.push_back(1);
  }
  return out;
}

SignedOutcome solve_signed(const LinearSystem& system) {
  const std::size_t cols = system.lhs.empty() ? 0 : system.lhs[0].size();
  EliminationResult res = eliminate(system.lhs, system.rhs,
                                    system.lhs.size() <= kCertificateRowLimit);
  SignedOutcome out;
  if (!res.consistent) {
    out.certificate = std::move(res.certificate);
    return out;
  }
  out.solution = SignedSolution{std::move(res.particular), res.rank,
                                cols - res.rank};
  return out;
}

TableauSignedOutcome solve_signed(const TableauSystem& system) {
  const auto& tableau = *system.tableau;
  const auto cols = spanning_columns(tableau.scenario());

  const std::size_t rows = system.rows();
  std::vector<std::vector<Rational>> a(
      rows, std::vector<Rational>(cols.size(), Rational(0)));
  for (std::size_t r = 0; r < tableau.rows(); ++r)
    for (std::size_t k = 0; k < cols.size(); ++k)
      if (tableau.entry(r, cols[k])) a[r][k] = 1;
  std::vector<Rational> b = system.rhs.weights;
  if (system.augmented) {
    std::fill(a[rows - 1].begin(), a[rows - 1].end(), Rational(1));
    b.push_back(1);
  }

  EliminationResult res = eliminate(std::move(a), std::move(b),
                                    rows <= kCertificateRowLimit);
  TableauSignedOutcome out;
  out.rank = res.rank;
  out.nullity = tableau.cols() - res.rank;
  if (!res.consistent) {
    out.certificate = std::move(res.certificate);
    return out;
  }
  SparseWeights sol;
  for (std::size_t k = 0; k < cols.size(); ++k)
    if (res.particular[k] != 0) sol.emplace_back(cols[k], res.particular[k]);
  out.solution = std::move(sol);
  return out;
}

// ---- exact simplex -----------------------------------------------------------

namespace {

// Dense simplex dictionary over exact rationals, Bland's rule throughout.
class Simplex {
 public:
  // rows already normalized to b >= 0; every variable is >= 0.
  Simplex(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
          std::vector<std::size_t> basis, std::size_t n_total)
      : a_(std::move(a)), b_(std::move(b)), basis_(std::move(basis)),
        n_(n_total) {}

  // maximize c.x; returns false when unbounded.
  bool run(const std::vector<Rational>& c) {
    while (true) {
      int enter = -1;
      Rational best;
      for (std::size_t j = 0; j < n_; ++j) {
        if (is_basic(j)) continue;
        Rational red = c[j];
        for (std::size_t i = 0; i < a_.size(); ++i)
          if (c[basis_[i]] != 0 && a_[i][j] != 0) red -= c[basis_[i]] * a_[i][j];
        if (red > 0) {
          enter = static_cast<int>(j);
          break;  // Bland: smallest improving index
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational ratio;
      for (std::size_t i = 0; i < a_.size(); ++i) {
        if (a_[i][enter] <= 0) continue;
        Rational r = b_[i] / a_[i][enter];
        if (leave < 0 || r < ratio ||
            (r == ratio && basis_[i] < basis_[leave])) {
          leave = static_cast<int>(i);
          ratio = r;
        }
      }
      if (leave < 0) return false;  // unbounded
      pivot(leave, enter);
    }
  }

  Rational objective(const std::vector<Rational>& c) const {
    Rational v = 0;
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (c[basis_[i]] != 0) v += c[basis_[i]] * b_[i];
    return v;
  }

  std::vector<Rational> values() const {
    std::vector<Rational> x(n_, Rational(0));
    for (std::size_t i = 0; i < a_.size(); ++i) x[basis_[i]] = b_[i];
    return x;
  }

  const std::vector<std::size_t>& basis() const { return basis_; }

  void pivot(std::size_t row, std::size_t col) {
    const Rational p = a_[row][col];
    for (auto& v : a_[row]) v /= p;
    b_[row] /= p;
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (i == row || a_[i][col] == 0) continue;
      const Rational f = a_[i][col];
      for (std::size_t j = 0; j < n_; ++j)
        if (a_[row][j] != 0) a_[i][j] -= f * a_[row][j];
      a_[i][col] = 0;
      b_[i] -= f * b_[row];
    }
    basis_[row] = col;
  }

  bool drive_out_artificials(std::size_t first_artificial) {
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (basis_[i] < first_artificial) continue;
      // basic artificial at level zero: swap in any real column
      std::size_t j = 0;
      for (; j < first_artificial; ++j)
        if (a_[i][j] != 0) break;
      if (j < first_artificial) {
        pivot(i, j);
      } else {
        // redundant row
        a_.erase(a_.begin() + i);
        b_.erase(b_.begin() + i);
        basis_.erase(basis_.begin() + i);
        --i;
      }
    }
    return true;
  }

  void truncate_columns(std::size_t n) {
    for (auto& row : a_) row.resize(n);
    n_ = n;
  }

 private:
  bool is_basic(std::size_t j) const {
    return std::find(basis_.begin(), basis_.end(), j) != basis_.end();
  }

  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> b_;
  std::vector<std::size_t> basis_;
  std::size_t n_;
};

}  // namespace

LPOutcome maximize(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  const std::size_t m = lp.constraints.size();
  for (const auto& c : lp.constraints)
    if (c.coeffs.size() != n)
      throw std::invalid_argument("maximize: constraint width mismatch");

  // normalize to equalities with slack columns, b >= 0
  std::size_t n_slack = 0;
  for (const auto& c : lp.constraints)
    if (c.cmp != Cmp::EQ) ++n_slack;
  const std::size_t n_art = m;  // one artificial per row, unused ones pruned
  const std::size_t total = n + n_slack + n_art;

  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(total, Rational(0)));
  std::vector<Rational> b(m);
  std::vector<std::size_t> basis(m);
  std::size_t slack_at = n;
  const std::size_t art_at = n + n_slack;

  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = lp.constraints[i];
    Rational rhs = c.rhs;
    int sign = 1;
    Cmp cmp = c.cmp;
    if (rhs < 0) {
      sign = -1;
      rhs = -rhs;
      if (cmp == Cmp::LE)
        cmp = Cmp::GE;
      else if (cmp == Cmp::GE)
        cmp = Cmp::LE;
    }
    for (std::size_t j = 0; j < n; ++j) a[i][j] = sign * c.coeffs[j];
    b[i] = rhs;
    if (cmp == Cmp::LE) {
      a[i][slack_at] = 1;
      basis[i] = slack_at++;
    } else if (cmp == Cmp::GE) {
      a[i][slack_at++] = -1;
      a[i][art_at + i] = 1;
      basis[i] = art_at + i;
    } else {
      a[i][art_at + i] = 1;
      basis[i] = art_at + i;
    }
  }

  Simplex sx(std::move(a), std::move(b), std::move(basis), total);

  // phase I
  bool need_phase1 = false;
  std::vector<Rational> c1(total, Rational(0));
  for (std::size_t i = 0; i < m; ++i) c1[art_at + i] = -1;
  for (std::size_t i = 0; i < m; ++i)
    if (lp.constraints[i].cmp != Cmp::LE || lp.constraints[i].rhs < 0)
      need_phase1 = true;
  if (need_phase1) {
    sx.run(c1);  // bounded by construction
    if (sx.objective(c1) != 0) return {LPStatus::Infeasible, Rational(0), {}};
    sx.drive_out_artificials(art_at);
  }
  sx.truncate_columns(art_at);

  // phase II
  std::vector<Rational> c2(art_at, Rational(0));
  for (std::size_t j = 0; j < n; ++j) c2[j] = lp.objective[j];
  if (!sx.run(c2)) return {LPStatus::Unbounded, Rational(0), {}};

  LPOutcome out;
  out.status = LPStatus::Optimal;
  out.optimum = sx.objective(c2);
  auto x = sx.values();
  x.resize(n);
  out.witness = std::move(x);
  return out;
}

// ---- non-negative feasibility over an incidence system ------------------------

NonNegOutcome solve_nonneg(const TableauSystem& system, SolveOptions options) {
  const auto& tableau = *system.tableau;
  const auto& rhs = system.rhs.weights;

  for (const auto& v : rhs)
    if (v < 0) return {false, {}};

  // zero-rhs rows force every incident unknown to zero
  Bits killed(tableau.cols());
  for (std::size_t r = 0; r < tableau.rows(); ++r)
    if (rhs[r] == 0) killed |= tableau.row_bits(r);

  std::vector<std::uint64_t> live;
  for (std::uint64_t g = 0; g < tableau.cols(); ++g)
    if (!killed.test(g)) live.push_back(g);

  if (live.size() > options.max_lp_columns)
    throw SizeBoundError("solve_nonneg: " + std::to_string(live.size()) +
                         " surviving unknowns exceed the LP bound");

  std::vector<std::size_t> live_rows;
  for (std::size_t r = 0; r < tableau.rows(); ++r)
    if (rhs[r] != 0) live_rows.push_back(r);

  // a supported section no surviving assignment restricts to: infeasible
  std::vector<std::uint64_t> pos(tableau.cols(), 0);
  for (std::size_t k = 0; k < live.size(); ++k) pos[live[k]] = k;

  LinearProgram lp;
  lp.objective.assign(live.size(), Rational(0));
  for (std::size_t r : live_rows) {
    LPConstraint c;
    c.coeffs.assign(live.size(), Rational(0));
    bool any = false;
    tableau.row_bits(r).for_each([&](std::size_t g) {
      if (!killed.test(g)) {
        c.coeffs[pos[g]] = 1;
        any = true;
      }
    });
    if (!any) return {false, {}};
    c.cmp = Cmp::EQ;
    c.rhs = rhs[r];
    lp.constraints.push_back(std::move(c));
  }
  if (system.augmented) {
    LPConstraint c;
    c.coeffs.assign(live.size(), Rational(1));
    c.cmp = Cmp::EQ;
    c.rhs = 1;
    lp.constraints.push_back(std::move(c));
  }
  if (live.empty())
    return {lp.constraints.empty(), {}};

  LPOutcome out = maximize(lp);
  if (out.status != LPStatus::Optimal) return {false, {}};
  SparseWeights witness;
  for (std::size_t k = 0; k < live.size(); ++k)
    if (out.witness[k] != 0) witness.emplace_back(live[k], out.witness[k]);
  return {true, std::move(witness)};
}

// ---- boolean system ------------------------------------------------------------

BooleanSolution solve_boolean(const IncidenceTableau& tableau,
                              const Bits& support_vector) {
  if (support_vector.size() != tableau.rows())
    throw std::invalid_argument("solve_boolean: support vector length mismatch");
  BooleanSolution out;
  Bits covered(tableau.rows());
  for (std::uint64_t g = 0; g < tableau.cols(); ++g) {
    const auto sections = tableau.column_sections(g);
    bool admissible = true;
    for (std::size_t c = 0; c < sections.size() && admissible; ++c)
      admissible = support_vector.test(tableau.row_of(c, sections[c]));
    if (!admissible) continue;
    out.witness.push_back(g);
    for (std::size_t c = 0; c < sections.size(); ++c)
      covered.set(tableau.row_of(c, sections[c]));
  }
  out.solvable = covered == support_vector;
  if (!out.solvable) out.witness.clear();
  return out;
}

std::vector<std::uint64_t> enumerate_se(const EmpiricalModel& model) {
  const Scenario& sc = model.scenario();
  const int n = sc.measurement_count();
  const int l = sc.outcome_count();
  const auto& cover = sc.cover();

  // contexts become checkable once their largest measurement is assigned
  std::vector<std::vector<std::size_t>> closing(n);
  for (std::size_t c = 0; c < cover.size(); ++c)
    closing[cover[c].back()].push_back(c);

  std::vector<int> outcomes(n, 0);
  std::vector<std::uint64_t> found;

  auto consistent_at = [&](int m) {
    for (std::size_t c : closing[m]) {
      std::uint64_t idx = 0;
      for (std::size_t i = cover[c].size(); i-- > 0;)
        idx = idx * l + outcomes[cover[c][i]];
      if (!model.table(c).possible(idx)) return false;
    }
    return true;
  };

  auto recurse = [&](auto&& self, int m) -> void {
    if (m == n) {
      found.push_back(sc.assignment_index(outcomes));
      return;
    }
    for (int o = 0; o < l; ++o) {
      outcomes[m] = o;
      if (consistent_at(m)) self(self, m + 1);
    }
  };
  recurse(recurse, 0);
  std::sort(found.begin(), found.end());
  return found;
}

Distribution to_global_distribution(const Scenario& scenario, Semiring semiring,
                                    const SparseWeights& weights) {
  std::vector<int> all(scenario.measurement_count());
  std::iota(all.begin(), all.end(), 0);
  std::vector<Rational> w(scenario.assignment_count(), Rational(0));
  for (const auto& [g, v] : weights) {
    const auto outs = scenario.assignment_outcomes(g);
    w[scenario.section_index(all, outs)] += v;
  }
  return Distribution::make(semiring, all, scenario.outcome_count(),
                            std::move(w));
}

std::vector<Rational> to_column_weights(const Scenario& scenario,
                                        const Distribution& global) {
  std::vector<int> all(scenario.measurement_count());
  std::iota(all.begin(), all.end(), 0);
  if (global.context() != all)
    throw std::invalid_argument("to_column_weights: not a global distribution");
  std::vector<Rational> w(scenario.assignment_count(), Rational(0));
  for (std::uint64_t s = 0; s < global.size(); ++s) {
    const Rational v = global.weight(s);
    if (v == 0) continue;
    const auto outs = scenario.section_outcomes(all, s);
    w[scenario.assignment_index(outs)] = v;
  }
  return w;
}

}  // namespace ctx
