#include "ctx/distribution.hpp"

#include <algorithm>
#include <stdexcept>

namespace ctx {

namespace {

std::uint64_t pow_u64(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > (std::uint64_t{1} << 62) / base)
      throw std::overflow_error("distribution: domain size overflows");
    r *= base;
  }
  return r;
}

void check_sorted_context(const std::vector<int>& context) {
  for (std::size_t i = 1; i < context.size(); ++i)
    if (context[i - 1] >= context[i])
      throw std::invalid_argument("distribution: context must be sorted and duplicate-free");
}

// positions of target within context, or throw
std::vector<std::size_t> positions(const std::vector<int>& context,
                                   std::span<const int> target) {
  std::vector<std::size_t> pos;
  std::size_t j = 0;
  for (int t : target) {
    while (j < context.size() && context[j] < t) ++j;
    if (j == context.size() || context[j] != t)
      throw std::invalid_argument("marginalize: target is not a subset of the context");
    pos.push_back(j);
  }
  return pos;
}

}  // namespace

const char* to_string(Semiring s) {
  switch (s) {
    case Semiring::Boolean: return "boolean";
    case Semiring::NonNegRational: return "nonneg";
    case Semiring::SignedRational: return "signed";
  }
  return "?";
}

Distribution Distribution::make_raw(Semiring semiring, std::vector<int> context,
                                    int outcome_count,
                                    std::vector<Rational> weights) {
  check_sorted_context(context);
  if (outcome_count <= 0)
    throw std::invalid_argument("distribution: outcome_count must be positive");
  const std::uint64_t n = pow_u64(outcome_count, context.size());
  if (weights.size() != n)
    throw std::invalid_argument("distribution: wrong number of weights");

  Distribution d;
  d.semiring_ = semiring;
  d.context_ = std::move(context);
  d.outcome_count_ = outcome_count;
  d.size_ = n;
  if (semiring == Semiring::Boolean) {
    d.bits_ = Bits(n);
    for (std::uint64_t i = 0; i < n; ++i) {
      if (weights[i] != 0 && weights[i] != 1)
        throw std::invalid_argument("distribution: boolean weight outside {0,1}");
      if (weights[i] == 1) d.bits_.set(i);
    }
  } else {
    if (semiring == Semiring::NonNegRational)
      for (const auto& w : weights)
        if (w < 0)
          throw std::invalid_argument("distribution: negative weight in a non-negative distribution");
    d.weights_ = std::move(weights);
  }
  return d;
}

Distribution Distribution::make(Semiring semiring, std::vector<int> context,
                                int outcome_count,
                                std::vector<Rational> weights) {
  Distribution d = make_raw(semiring, std::move(context), outcome_count,
                            std::move(weights));
  if (!d.normalized())
    throw std::invalid_argument("distribution: weights do not sum to one");
  return d;
}

Distribution Distribution::make_boolean(std::vector<int> context,
                                        int outcome_count, Bits support) {
  check_sorted_context(context);
  const std::uint64_t n = pow_u64(outcome_count, context.size());
  if (support.size() != n)
    throw std::invalid_argument("distribution: support size mismatch");
  if (!support.any())
    throw std::invalid_argument("distribution: boolean support must be non-empty");
  Distribution d;
  d.semiring_ = Semiring::Boolean;
  d.context_ = std::move(context);
  d.outcome_count_ = outcome_count;
  d.size_ = n;
  d.bits_ = std::move(support);
  return d;
}

Rational Distribution::weight(std::uint64_t i) const {
  if (semiring_ == Semiring::Boolean) return bits_.test(i) ? 1 : 0;
  return weights_[i];
}

bool Distribution::possible(std::uint64_t i) const {
  if (semiring_ == Semiring::Boolean) return bits_.test(i);
  return weights_[i] != 0;
}

Bits Distribution::support() const {
  if (semiring_ == Semiring::Boolean) return bits_;
  Bits b(size_);
  for (std::uint64_t i = 0; i < size_; ++i)
    if (weights_[i] != 0) b.set(i);
  return b;
}

bool Distribution::normalized() const {
  if (semiring_ == Semiring::Boolean) return bits_.any();
  Rational sum = 0;
  for (const auto& w : weights_) sum += w;
  return sum == 1;
}

Distribution marginalize(const Distribution& d, std::span<const int> target) {
  const auto pos = positions(d.context(), target);
  const std::uint64_t l = d.outcome_count();

  // digit-extraction map source section -> target section
  const std::uint64_t src_n = d.size();
  std::vector<int> context_target(target.begin(), target.end());

  if (d.semiring() == Semiring::Boolean) {
    std::uint64_t dst_n = 1;
    for (std::size_t i = 0; i < target.size(); ++i) dst_n *= l;
    Bits out(dst_n);
    for (std::uint64_t s = 0; s < src_n; ++s) {
      if (!d.possible(s)) continue;
      std::uint64_t rest = s, idx = 0;
      std::vector<std::uint64_t> digits(d.context().size());
      for (std::size_t i = 0; i < d.context().size(); ++i) {
        digits[i] = rest % l;
        rest /= l;
      }
      for (std::size_t i = pos.size(); i-- > 0;) idx = idx * l + digits[pos[i]];
      out.set(idx);
    }
    return Distribution::make_boolean(std::move(context_target),
                                      d.outcome_count(), std::move(out));
  }

  std::uint64_t dst_n = 1;
  for (std::size_t i = 0; i < target.size(); ++i) dst_n *= l;
  std::vector<Rational> out(dst_n, Rational(0));
  std::vector<std::uint64_t> digits(d.context().size());
  for (std::uint64_t s = 0; s < src_n; ++s) {
    const Rational w = d.weight(s);
    if (w == 0) continue;
    std::uint64_t rest = s;
    for (std::size_t i = 0; i < d.context().size(); ++i) {
      digits[i] = rest % l;
      rest /= l;
    }
    std::uint64_t idx = 0;
    for (std::size_t i = pos.size(); i-- > 0;) idx = idx * l + digits[pos[i]];
    out[idx] += w;
  }
  return Distribution::make_raw(d.semiring(), std::move(context_target),
                                d.outcome_count(), std::move(out));
}

Distribution delta_distribution(Semiring semiring, std::span<const int> context,
                                int outcome_count,
                                std::span<const int> outcomes) {
  if (outcomes.size() != context.size())
    throw std::invalid_argument("delta: outcome tuple length mismatch");
  std::uint64_t idx = 0;
  for (std::size_t i = context.size(); i-- > 0;) {
    if (outcomes[i] < 0 || outcomes[i] >= outcome_count)
      throw std::invalid_argument("delta: outcome out of range");
    idx = idx * outcome_count + outcomes[i];
  }
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < context.size(); ++i) n *= outcome_count;
  if (semiring == Semiring::Boolean) {
    Bits b(n);
    b.set(idx);
    return Distribution::make_boolean({context.begin(), context.end()},
                                      outcome_count, std::move(b));
  }
  std::vector<Rational> w(n, Rational(0));
  w[idx] = 1;
  return Distribution::make(semiring, {context.begin(), context.end()},
                            outcome_count, std::move(w));
}

Distribution to_boolean(const Distribution& d) {
  if (d.semiring() == Semiring::SignedRational)
    throw std::domain_error(
        "to_boolean: no semiring homomorphism from the signed rationals to the booleans");
  if (d.semiring() == Semiring::Boolean) return d;
  return Distribution::make_boolean(d.context(), d.outcome_count(), d.support());
}

Distribution product_over_singletons(const std::vector<Distribution>& factors,
                                     std::span<const int> context) {
  if (factors.size() != context.size())
    throw std::invalid_argument("product: one factor per context measurement required");
  if (factors.empty())
    throw std::invalid_argument("product: empty context");
  const Semiring semiring = factors.front().semiring();
  const int l = factors.front().outcome_count();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].semiring() != semiring)
      throw std::invalid_argument("product: mixed semirings");
    if (factors[i].outcome_count() != l)
      throw std::invalid_argument("product: mixed outcome sets");
    if (factors[i].context().size() != 1 || factors[i].context()[0] != context[i])
      throw std::invalid_argument("product: factor does not match its measurement");
  }

  std::uint64_t n = 1;
  for (std::size_t i = 0; i < context.size(); ++i) n *= l;
  if (semiring == Semiring::Boolean) {
    Bits out(n);
    for (std::uint64_t s = 0; s < n; ++s) {
      std::uint64_t rest = s;
      bool all = true;
      for (const auto& f : factors) {
        all &= f.possible(rest % l);
        rest /= l;
      }
      if (all) out.set(s);
    }
    return Distribution::make_boolean({context.begin(), context.end()}, l,
                                      std::move(out));
  }
  std::vector<Rational> out(n);
  for (std::uint64_t s = 0; s < n; ++s) {
    Rational w = 1;
    std::uint64_t rest = s;
    for (const auto& f : factors) {
      w *= f.weight(rest % l);
      rest /= l;
    }
    out[s] = std::move(w);
  }
  return Distribution::make(semiring, {context.begin(), context.end()}, l,
                            std::move(out));
}

}  // namespace ctx
