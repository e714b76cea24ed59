#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ctx/bits.hpp"
#include "ctx/model.hpp"

namespace ctx {

struct SizeBoundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TableauOptions {
  std::uint64_t max_columns = std::uint64_t{1} << 20;
};

// The 0/1 incidence matrix of a cover: rows indexed by (context, section)
// pairs - contexts in cover order, sections in canonical order - and columns
// by global assignments in canonical order. entry[(C,s), t] = 1 iff t|C = s.
// Acting on a distribution over global assignments it computes all context
// marginals at once.
class IncidenceTableau {
 public:
  static std::shared_ptr<const IncidenceTableau> build(
      std::shared_ptr<const Scenario> scenario, TableauOptions options = {});

  const Scenario& scenario() const { return *scenario_; }
  const std::shared_ptr<const Scenario>& scenario_ptr() const { return scenario_; }

  std::size_t rows() const { return row_ids_.size(); }
  std::uint64_t cols() const { return cols_; }

  bool entry(std::size_t row, std::uint64_t col) const {
    return rows_[row].test(col);
  }
  const Bits& row_bits(std::size_t row) const { return rows_[row]; }
  // (context index, section index) of a row
  std::pair<std::size_t, std::uint64_t> row_id(std::size_t row) const {
    return row_ids_[row];
  }
  std::size_t row_of(std::size_t context_idx, std::uint64_t section_idx) const {
    return row_offsets_[context_idx] + section_idx;
  }

  // Per-column section indices, one per context: the restrictions t|C.
  std::vector<std::uint64_t> column_sections(std::uint64_t col) const;

  // Plain-text dump, one row of '0'/'1' characters per line.
  std::vector<std::string> dump_rows() const;

 private:
  IncidenceTableau() = default;

  std::shared_ptr<const Scenario> scenario_;
  std::uint64_t cols_ = 0;
  std::vector<Bits> rows_;
  std::vector<std::pair<std::size_t, std::uint64_t>> row_ids_;
  std::vector<std::size_t> row_offsets_;
};

// The model read off in tableau row order: V[(C,s)] = e_C(s).
struct ModelVector {
  std::vector<Rational> weights;
};

ModelVector model_vector(const IncidenceTableau& tableau,
                         const EmpiricalModel& model);

// Row-wise support bits of a boolean (or support) model vector.
Bits support_bits(const IncidenceTableau& tableau, const EmpiricalModel& model);

// The linear system M X = V, optionally with the normalization row
// X_1 + ... + X_q = 1 appended (matrix row of ones, rhs entry 1).
struct TableauSystem {
  std::shared_ptr<const IncidenceTableau> tableau;
  ModelVector rhs;
  bool augmented = false;

  std::size_t rows() const {
    return tableau->rows() + (augmented ? 1 : 0);
  }
  std::uint64_t cols() const { return tableau->cols(); }
};

TableauSystem augment(std::shared_ptr<const IncidenceTableau> tableau,
                      ModelVector rhs);
TableauSystem plain_system(std::shared_ptr<const IncidenceTableau> tableau,
                           ModelVector rhs);

// Exact rank over the rationals. Must always equal Scenario::dimension().
std::uint64_t rank(const IncidenceTableau& tableau);

// tableau * weights: all context marginals of a global weight vector at once.
std::vector<Rational> marginals_of(const IncidenceTableau& tableau,
                            const std::vector<Rational>& column_weights);

}  // namespace ctx
