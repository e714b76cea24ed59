#include "ctx/tableau.hpp"

#include <algorithm>

namespace ctx {

std::shared_ptr<const IncidenceTableau> IncidenceTableau::build(
    std::shared_ptr<const Scenario> scenario, TableauOptions options) {
  const std::uint64_t cols = scenario->assignment_count();
  if (cols > options.max_columns)
    throw SizeBoundError("incidence tableau: " + std::to_string(cols) +
                         " columns exceed the configured bound of " +
                         std::to_string(options.max_columns));

  auto t = std::shared_ptr<IncidenceTableau>(new IncidenceTableau());
  t->scenario_ = std::move(scenario);
  t->cols_ = cols;
  const auto& cover = t->scenario_->cover();
  for (std::size_t c = 0; c < cover.size(); ++c) {
    t->row_offsets_.push_back(t->row_ids_.size());
    const std::uint64_t n = t->scenario_->section_count(cover[c]);
    for (std::uint64_t s = 0; s < n; ++s) {
      t->row_ids_.emplace_back(c, s);
      t->rows_.emplace_back(cols);
    }
  }
  // column sweep: one section per context per assignment
  const int l = t->scenario_->outcome_count();
  const std::vector<int> all(t->scenario_->measurement_count());
  for (std::uint64_t g = 0; g < cols; ++g) {
    const std::vector<int> out = t->scenario_->assignment_outcomes(g);
    for (std::size_t c = 0; c < cover.size(); ++c) {
      std::uint64_t idx = 0;
      for (std::size_t i = cover[c].size(); i-- > 0;)
        idx = idx * l + out[cover[c][i]];
      t->rows_[t->row_offsets_[c] + idx].set(g);
    }
  }
  return t;
}

std::vector<std::uint64_t> IncidenceTableau::column_sections(
    std::uint64_t col) const {
  const auto& cover = scenario_->cover();
  const int l = scenario_->outcome_count();
  const std::vector<int> out = scenario_->assignment_outcomes(col);
  std::vector<std::uint64_t> sections(cover.size());
  for (std::size_t c = 0; c < cover.size(); ++c) {
    std::uint64_t idx = 0;
    for (std::size_t i = cover[c].size(); i-- > 0;)
      idx = idx * l + out[cover[c][i]];
    sections[c] = idx;
  }
  return sections;
}

std::vector<std::string> IncidenceTableau::dump_rows() const {
  std::vector<std::string> out;
  out.reserve(rows());
  for (std::size_t r = 0; r < rows(); ++r) {
    std::string line(cols_, '0');
    rows_[r].for_each([&](std::size_t c) { line[c] = '1'; });
    out.push_back(std::move(line));
  }
  return out;
}

ModelVector model_vector(const IncidenceTableau& tableau,
                         const EmpiricalModel& model) {
  if (&tableau.scenario() != &model.scenario() &&
      !(tableau.scenario().measurements() == model.scenario().measurements() &&
        tableau.scenario().cover() == model.scenario().cover() &&
        tableau.scenario().outcomes() == model.scenario().outcomes()))
    throw std::invalid_argument("model_vector: scenario mismatch");
  ModelVector v;
  v.weights.reserve(tableau.rows());
  for (std::size_t r = 0; r < tableau.rows(); ++r) {
    const auto [c, s] = tableau.row_id(r);
    v.weights.push_back(model.table(c).weight(s));
  }
  return v;
}

Bits support_bits(const IncidenceTableau& tableau, const EmpiricalModel& model) {
  Bits b(tableau.rows());
  for (std::size_t r = 0; r < tableau.rows(); ++r) {
    const auto [c, s] = tableau.row_id(r);
    if (model.table(c).possible(s)) b.set(r);
  }
  return b;
}

TableauSystem augment(std::shared_ptr<const IncidenceTableau> tableau,
                      ModelVector rhs) {
  if (rhs.weights.size() != tableau->rows())
    throw std::invalid_argument("augment: rhs length mismatch");
  return TableauSystem{std::move(tableau), std::move(rhs), true};
}

TableauSystem plain_system(std::shared_ptr<const IncidenceTableau> tableau,
                           ModelVector rhs) {
  if (rhs.weights.size() != tableau->rows())
    throw std::invalid_argument("plain_system: rhs length mismatch");
  return TableauSystem{std::move(tableau), std::move(rhs), false};
}

namespace {

// Rank by rational Gaussian elimination on a dense matrix.
std::uint64_t dense_rank(std::vector<std::vector<Rational>> m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[r]);
    const Rational inv = m[r][c];
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c] / inv;
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

// Fraction-free (Bareiss) rank of an integer matrix.
std::uint64_t bareiss_rank(std::vector<std::vector<BigInt>> m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j)
        m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

}  // namespace

std::uint64_t rank(const IncidenceTableau& tableau) {
  const std::size_t p = tableau.rows();
  const std::uint64_t q = tableau.cols();
  if (q <= 2048 || q <= p) {
    std::vector<std::vector<Rational>> m(p, std::vector<Rational>(q, Rational(0)));
    for (std::size_t r = 0; r < p; ++r)
      tableau.row_bits(r).for_each([&](std::size_t c) { m[r][c] = 1; });
    return dense_rank(std::move(m));
  }
  // Gram trick for wide matrices: rank(M M^T) = rank(M) over the rationals,
  // and M M^T is p x p with fast bitwise dot products.
  std::vector<std::vector<BigInt>> g(p, std::vector<BigInt>(p));
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i; j < p; ++j) {
      const BigInt d = tableau.row_bits(i).count_and(tableau.row_bits(j));
      g[i][j] = d;
      g[j][i] = d;
    }
  return bareiss_rank(std::move(g));
}

std::vector<Rational> marginals_of(const IncidenceTableau& tableau,
                            const std::vector<Rational>& column_weights) {
  if (column_weights.size() != tableau.cols())
    throw std::invalid_argument("apply: weight vector length mismatch");
  std::vector<Rational> out(tableau.rows(), Rational(0));
  for (std::size_t r = 0; r < tableau.rows(); ++r) {
    Rational sum = 0;
    tableau.row_bits(r).for_each(
        [&](std::size_t c) { sum += column_weights[c]; });
    out[r] = std::move(sum);
  }
  return out;
}

}  // namespace ctx
