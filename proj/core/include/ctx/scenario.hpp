#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctx {

// A section assigns one outcome to each measurement of a context.
// Measurement indices are strictly increasing (the global order restricted
// to the context); outcomes are indices into the scenario's outcome list.
struct Section {
  std::vector<int> measurements;
  std::vector<int> outcomes;

  bool operator==(const Section&) const = default;
};

struct ValidationIssue {
  enum class Kind {
    DuplicateMeasurement,
    DuplicateOutcome,
    NoOutcomes,
    UnknownLabel,
    EmptyContext,
    DuplicateInContext,
    CoverGap,
    AntichainViolation,
  };
  Kind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
  std::string to_string() const;
};

// Partial contexts: every subset of some cover element, grouped by size.
// For homogeneous covers (all contexts the same size n, and every size-j
// partial context contained in the same number N_j of contexts) the counts
// p, n and N_j are recorded.
struct PartialContextFamily {
  std::vector<std::vector<std::vector<int>>> by_size;  // [j] -> sorted subsets
  bool homogeneous = false;
  std::size_t cover_size = 0;                   // p
  std::size_t context_size = 0;                 // n (when homogeneous)
  std::vector<std::uint64_t> containment;       // N_j (when homogeneous)

  std::size_t total() const;
};

// A measurement scenario: measurements X, outcomes O and a measurement
// cover M (an anti-chain of subsets of X whose union is X). Contexts are
// stored canonically: sorted by global measurement order.
//
// Enumeration conventions (fixed so tables and matrices are reproducible):
//  * sections over a context (m_1,...,m_r) are numbered with the outcome of
//    m_1 varying fastest: index = sum_i outcome(m_i) * l^i;
//  * global assignments are numbered little-endian over an assignment key.
//    For Bell-type covers (detected from the cover structure) the key lists
//    each part's last measurement first, i.e. round-robin over the parts with
//    the within-part index descending; for every other cover the key is the
//    global measurement order. For the standard bipartite (a,a',b,b') cover
//    this gives index = o(a') + 2 o(b') + 4 o(a) + 8 o(b).
//
// Immutable after construction; all member functions are const and pure.
class Scenario {
 public:
  // Validates and canonicalizes; throws std::invalid_argument carrying the
  // validation report when the cover is not a measurement cover.
  static std::shared_ptr<const Scenario> make(
      std::vector<std::string> measurements, std::vector<std::string> outcomes,
      std::vector<std::vector<std::string>> cover);

  // Reporting variant of the checks performed by make().
  static ValidationReport validate(
      const std::vector<std::string>& measurements,
      const std::vector<std::string>& outcomes,
      const std::vector<std::vector<std::string>>& cover);

  // Bell-type scenario: one measurement per part in every context. Contexts
  // enumerate in product order with the first part varying fastest. Parts
  // must be disjoint and non-empty.
  static std::shared_ptr<const Scenario> bell(
      const std::vector<std::vector<std::string>>& parts,
      const std::vector<std::string>& outcomes);

  const std::vector<std::string>& measurements() const { return measurements_; }
  const std::vector<std::string>& outcomes() const { return outcomes_; }
  const std::vector<std::vector<int>>& cover() const { return cover_; }
  int measurement_count() const { return static_cast<int>(measurements_.size()); }
  int outcome_count() const { return static_cast<int>(outcomes_.size()); }
  std::size_t context_count() const { return cover_.size(); }

  int measurement_index(std::string_view label) const;  // -1 if unknown
  int outcome_index(std::string_view label) const;      // -1 if unknown

  // ---- sections over a context -------------------------------------------
  std::uint64_t section_count(std::span<const int> context) const;
  std::vector<int> section_outcomes(std::span<const int> context,
                                    std::uint64_t index) const;
  std::uint64_t section_index(std::span<const int> context,
                              std::span<const int> outcomes) const;
  // all l^|C| sections in canonical order
  std::vector<Section> sections(std::span<const int> context) const;

  // ---- global assignments --------------------------------------------------
  // The assignment key described above (a permutation of 0..|X|-1; entry k is
  // the measurement whose outcome carries weight l^k).
  const std::vector<int>& assignment_key() const { return assignment_key_; }
  std::uint64_t assignment_count() const;  // l^|X|, throws if it overflows
  // outcome per measurement, indexed by measurement (not key position)
  std::vector<int> assignment_outcomes(std::uint64_t index) const;
  std::uint64_t assignment_index(std::span<const int> outcomes) const;

  // ---- partial contexts and the dimension formula -------------------------
  PartialContextFamily partial_contexts() const;
  // D = sum over partial contexts U of (l-1)^|U|; when the cover is
  // homogeneous the closed form sum_j C(n,j) p (l-1)^j / N_j is evaluated as
  // well and the two are required to agree.
  std::uint64_t dimension() const;
  // Closed form only; throws std::domain_error on non-homogeneous covers.
  std::uint64_t homogeneous_dimension() const;

  // Detected Bell partition (parts in first-occurrence order), if any.
  const std::optional<std::vector<std::vector<int>>>& bell_parts() const {
    return bell_parts_;
  }

 private:
  Scenario() = default;

  std::vector<std::string> measurements_;
  std::vector<std::string> outcomes_;
  std::vector<std::vector<int>> cover_;
  std::vector<int> assignment_key_;
  std::optional<std::vector<std::vector<int>>> bell_parts_;
};

// s restricted to target (target must be a subset of s.measurements).
Section restrict_section(const Section& s, std::span<const int> target);

// Restriction at the index level: the section index over `target` of the
// restriction of the section with index `section_idx` over `context`.
std::uint64_t restrict_section_index(std::span<const int> context,
                                     std::uint64_t section_idx,
                                     std::span<const int> target,
                                     int outcome_count);

}  // namespace ctx
