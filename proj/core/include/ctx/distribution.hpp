#pragma once

#include <span>
#include <variant>
#include <vector>

#include "ctx/bits.hpp"
#include "ctx/rational.hpp"

namespace ctx {

// The three weight semirings: booleans (or / and), non-negative rationals and
// signed rationals. Rationals stand in for the reals; every computation in
// scope is rational.
enum class Semiring { Boolean, NonNegRational, SignedRational };

const char* to_string(Semiring s);

// A finite distribution over the sections of one context: one weight per
// section in canonical section order, summing to the semiring's one (for the
// booleans: a non-empty support). Boolean weights are stored as a bit vector.
class Distribution {
 public:
  // Checked constructors; throw std::invalid_argument on carrier or
  // normalization violations.
  static Distribution make(Semiring semiring, std::vector<int> context,
                           int outcome_count, std::vector<Rational> weights);
  static Distribution make_boolean(std::vector<int> context, int outcome_count,
                                   Bits support);
  // Skips the sum-to-one check (still enforces the carrier). Exists so that
  // deliberately broken tables - signalling perturbations - can be expressed.
  static Distribution make_raw(Semiring semiring, std::vector<int> context,
                               int outcome_count, std::vector<Rational> weights);

  Semiring semiring() const { return semiring_; }
  const std::vector<int>& context() const { return context_; }
  int outcome_count() const { return outcome_count_; }
  std::uint64_t size() const { return size_; }

  Rational weight(std::uint64_t section_idx) const;
  bool possible(std::uint64_t section_idx) const;  // weight != 0
  Bits support() const;
  bool normalized() const;

  bool operator==(const Distribution&) const = default;

 private:
  Distribution() = default;

  Semiring semiring_ = Semiring::NonNegRational;
  std::vector<int> context_;
  int outcome_count_ = 0;
  std::uint64_t size_ = 0;
  std::vector<Rational> weights_;  // rational semirings
  Bits bits_;                      // boolean semiring
};

// Marginal d|U: weight of a target section is the semiring sum of the weights
// of all sections restricting to it. target must be a subset of d's context.
Distribution marginalize(const Distribution& d, std::span<const int> target);

// Point distribution on one section.
Distribution delta_distribution(Semiring semiring, std::span<const int> context,
                                int outcome_count, std::span<const int> outcomes);

// Support of a non-negative (or boolean) distribution as a boolean
// distribution. Throws std::domain_error for signed input: there is no
// semiring homomorphism from the signed rationals to the booleans.
Distribution to_boolean(const Distribution& d);

// Product of single-measurement factors over a context: the weight of a
// section is the product of the factor weights at its per-measurement
// restrictions. One factor per context measurement, in context order, all of
// the same semiring.
Distribution product_over_singletons(const std::vector<Distribution>& factors,
                                     std::span<const int> context);

}  // namespace ctx
