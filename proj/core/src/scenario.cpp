#include "ctx/scenario.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace ctx {

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp,
                          const char* what) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > (std::uint64_t{1} << 62) / base)
      throw std::overflow_error(std::string(what) + ": size overflows");
    r *= base;
  }
  return r;
}

// Positions of `target` inside `context`; both strictly increasing.
// Throws unless target is a subset of context.
std::vector<std::size_t> subset_positions(std::span<const int> context,
                                          std::span<const int> target,
                                          const char* what) {
  std::vector<std::size_t> pos;
  pos.reserve(target.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    while (j < context.size() && context[j] < target[i]) ++j;
    if (j == context.size() || context[j] != target[i])
      throw std::invalid_argument(std::string(what) +
                                  ": target is not a subset of the context");
    pos.push_back(j);
  }
  return pos;
}

// Bell-type detection: the complement of the co-context relation must be an
// equivalence relation and the cover must be exactly its transversals.
std::optional<std::vector<std::vector<int>>> detect_bell_parts(
    int n_meas, const std::vector<std::vector<int>>& cover) {
  std::vector<std::vector<char>> co(n_meas, std::vector<char>(n_meas, 0));
  for (const auto& c : cover)
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j)
        co[c[i]][c[j]] = co[c[j]][c[i]] = 1;

  // complement relation (with the diagonal): same-part candidates
  std::vector<int> part(n_meas, -1);
  std::vector<std::vector<int>> parts;
  for (int m = 0; m < n_meas; ++m) {
    if (part[m] >= 0) continue;
    std::vector<int> cls{m};
    part[m] = static_cast<int>(parts.size());
    for (int m2 = m + 1; m2 < n_meas; ++m2)
      if (part[m2] < 0 && !co[m][m2]) {
        part[m2] = part[m];
        cls.push_back(m2);
      }
    parts.push_back(std::move(cls));
  }
  // equivalence check: classes must be mutually non-co-context and pairwise
  // co-context across classes
  for (int a = 0; a < n_meas; ++a)
    for (int b = a + 1; b < n_meas; ++b) {
      bool same = part[a] == part[b];
      if (same == static_cast<bool>(co[a][b])) return std::nullopt;
    }
  // the cover must be all transversals: count and shape
  std::uint64_t expected = 1;
  for (const auto& p : parts) {
    if (expected > (std::uint64_t{1} << 40) / p.size()) return std::nullopt;
    expected *= p.size();
  }
  if (expected != cover.size()) return std::nullopt;
  for (const auto& c : cover) {
    if (c.size() != parts.size()) return std::nullopt;
    std::vector<char> seen(parts.size(), 0);
    for (int m : c) {
      if (seen[part[m]]) return std::nullopt;
      seen[part[m]] = 1;
    }
  }
  return parts;
}

std::vector<int> make_assignment_key(
    int n_meas, const std::optional<std::vector<std::vector<int>>>& parts) {
  std::vector<int> key;
  key.reserve(n_meas);
  if (parts) {
    std::size_t kmax = 0;
    for (const auto& p : *parts) kmax = std::max(kmax, p.size());
    for (std::size_t r = kmax; r-- > 0;)
      for (const auto& p : *parts)
        if (r < p.size()) key.push_back(p[r]);
  } else {
    key.resize(n_meas);
    std::iota(key.begin(), key.end(), 0);
  }
  return key;
}

const char* issue_name(ValidationIssue::Kind k) {
  using K = ValidationIssue::Kind;
  switch (k) {
    case K::DuplicateMeasurement: return "duplicate measurement";
    case K::DuplicateOutcome: return "duplicate outcome";
    case K::NoOutcomes: return "no outcomes";
    case K::UnknownLabel: return "unknown label";
    case K::EmptyContext: return "empty context";
    case K::DuplicateInContext: return "duplicate measurement in context";
    case K::CoverGap: return "cover gap";
    case K::AntichainViolation: return "anti-chain violation";
  }
  return "?";
}

}  // namespace

std::string ValidationReport::to_string() const {
  if (ok()) return "valid";
  std::ostringstream os;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i) os << "; ";
    os << issue_name(issues[i].kind) << ": " << issues[i].detail;
  }
  return os.str();
}

ValidationReport Scenario::validate(
    const std::vector<std::string>& measurements,
    const std::vector<std::string>& outcomes,
    const std::vector<std::vector<std::string>>& cover) {
  using K = ValidationIssue::Kind;
  ValidationReport rep;
  auto add = [&](K k, std::string d) { rep.issues.push_back({k, std::move(d)}); };

  std::map<std::string, int> meas_idx;
  for (std::size_t i = 0; i < measurements.size(); ++i)
    if (!meas_idx.emplace(measurements[i], static_cast<int>(i)).second)
      add(K::DuplicateMeasurement, measurements[i]);
  std::set<std::string> outs;
  for (const auto& o : outcomes)
    if (!outs.insert(o).second) add(K::DuplicateOutcome, o);
  if (outcomes.empty()) add(K::NoOutcomes, "outcome list is empty");

  std::vector<std::set<int>> ctxs;
  std::set<int> covered;
  for (const auto& c : cover) {
    if (c.empty()) add(K::EmptyContext, "empty context in cover");
    std::set<int> ctx;
    for (const auto& label : c) {
      auto it = meas_idx.find(label);
      if (it == meas_idx.end()) {
        add(K::UnknownLabel, label);
        continue;
      }
      if (!ctx.insert(it->second).second) add(K::DuplicateInContext, label);
      covered.insert(it->second);
    }
    ctxs.push_back(std::move(ctx));
  }
  for (std::size_t i = 0; i < measurements.size(); ++i)
    if (!covered.count(static_cast<int>(i)))
      add(K::CoverGap, measurements[i] + " is not covered");
  for (std::size_t i = 0; i < ctxs.size(); ++i)
    for (std::size_t j = 0; j < ctxs.size(); ++j) {
      if (i == j) continue;
      if (std::includes(ctxs[j].begin(), ctxs[j].end(), ctxs[i].begin(),
                        ctxs[i].end())) {
        std::ostringstream os;
        os << "context " << i << " is contained in context " << j;
        add(K::AntichainViolation, os.str());
        goto done;  // one witness suffices
      }
    }
done:
  return rep;
}

std::shared_ptr<const Scenario> Scenario::make(
    std::vector<std::string> measurements, std::vector<std::string> outcomes,
    std::vector<std::vector<std::string>> cover) {
  ValidationReport rep = validate(measurements, outcomes, cover);
  if (!rep.ok())
    throw std::invalid_argument("invalid scenario: " + rep.to_string());

  auto s = std::shared_ptr<Scenario>(new Scenario());
  s->measurements_ = std::move(measurements);
  s->outcomes_ = std::move(outcomes);
  std::map<std::string, int> idx;
  for (std::size_t i = 0; i < s->measurements_.size(); ++i)
    idx[s->measurements_[i]] = static_cast<int>(i);
  for (const auto& c : cover) {
    std::vector<int> ctx;
    ctx.reserve(c.size());
    for (const auto& label : c) ctx.push_back(idx.at(label));
    std::sort(ctx.begin(), ctx.end());
    s->cover_.push_back(std::move(ctx));
  }
  s->bell_parts_ = detect_bell_parts(s->measurement_count(), s->cover_);
  s->assignment_key_ = make_assignment_key(s->measurement_count(), s->bell_parts_);
  return s;
}

std::shared_ptr<const Scenario> Scenario::bell(
    const std::vector<std::vector<std::string>>& parts,
    const std::vector<std::string>& outcomes) {
  if (parts.empty()) throw std::invalid_argument("bell: no parts");
  std::vector<std::string> measurements;
  for (const auto& p : parts) {
    if (p.empty()) throw std::invalid_argument("bell: empty part");
    measurements.insert(measurements.end(), p.begin(), p.end());
  }
  // transversals in product order, first part varying fastest
  std::vector<std::vector<std::string>> cover;
  std::vector<std::size_t> choice(parts.size(), 0);
  while (true) {
    std::vector<std::string> ctx;
    for (std::size_t i = 0; i < parts.size(); ++i)
      ctx.push_back(parts[i][choice[i]]);
    cover.push_back(std::move(ctx));
    std::size_t i = 0;
    while (i < parts.size() && ++choice[i] == parts[i].size()) {
      choice[i] = 0;
      ++i;
    }
    if (i == parts.size()) break;
  }
  auto s = make(std::move(measurements), outcomes, std::move(cover));
  if (!s->bell_parts_)
    throw std::invalid_argument("bell: parts overlap");
  return s;
}

int Scenario::measurement_index(std::string_view label) const {
  for (std::size_t i = 0; i < measurements_.size(); ++i)
    if (measurements_[i] == label) return static_cast<int>(i);
  return -1;
}

int Scenario::outcome_index(std::string_view label) const {
  for (std::size_t i = 0; i < outcomes_.size(); ++i)
    if (outcomes_[i] == label) return static_cast<int>(i);
  return -1;
}

std::uint64_t Scenario::section_count(std::span<const int> context) const {
  return checked_pow(outcomes_.size(), context.size(), "section_count");
}

std::vector<int> Scenario::section_outcomes(std::span<const int> context,
                                            std::uint64_t index) const {
  const std::uint64_t l = outcomes_.size();
  std::vector<int> out(context.size());
  for (std::size_t i = 0; i < context.size(); ++i) {
    out[i] = static_cast<int>(index % l);
    index /= l;
  }
  return out;
}

std::uint64_t Scenario::section_index(std::span<const int> context,
                                      std::span<const int> outcomes) const {
  const std::uint64_t l = outcomes_.size();
  std::uint64_t idx = 0;
  for (std::size_t i = context.size(); i-- > 0;) idx = idx * l + outcomes[i];
  return idx;
}

std::vector<Section> Scenario::sections(std::span<const int> context) const {
  std::vector<Section> out;
  const std::uint64_t n = section_count(context);
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i)
    out.push_back(Section{{context.begin(), context.end()},
                          section_outcomes(context, i)});
  return out;
}

std::uint64_t Scenario::assignment_count() const {
  return checked_pow(outcomes_.size(), measurements_.size(), "assignment_count");
}

std::vector<int> Scenario::assignment_outcomes(std::uint64_t index) const {
  const std::uint64_t l = outcomes_.size();
  std::vector<int> out(measurements_.size());
  for (int m : assignment_key_) {
    out[m] = static_cast<int>(index % l);
    index /= l;
  }
  return out;
}

std::uint64_t Scenario::assignment_index(std::span<const int> outcomes) const {
  const std::uint64_t l = outcomes_.size();
  std::uint64_t idx = 0;
  for (std::size_t k = assignment_key_.size(); k-- > 0;)
    idx = idx * l + outcomes[assignment_key_[k]];
  return idx;
}

std::size_t PartialContextFamily::total() const {
  std::size_t n = 0;
  for (const auto& level : by_size) n += level.size();
  return n;
}

PartialContextFamily Scenario::partial_contexts() const {
  std::set<std::vector<int>> subsets;
  for (const auto& c : cover_) {
    const std::size_t k = c.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      std::vector<int> u;
      for (std::size_t i = 0; i < k; ++i)
        if (mask >> i & 1) u.push_back(c[i]);
      subsets.insert(std::move(u));
    }
  }
  PartialContextFamily fam;
  fam.cover_size = cover_.size();
  std::size_t max_size = 0;
  for (const auto& c : cover_) max_size = std::max(max_size, c.size());
  fam.by_size.resize(max_size + 1);
  for (const auto& u : subsets) fam.by_size[u.size()].push_back(u);

  bool same_n = true;
  for (const auto& c : cover_) same_n &= c.size() == max_size;
  fam.homogeneous = same_n;
  if (fam.homogeneous) {
    fam.context_size = max_size;
    fam.containment.assign(max_size + 1, 0);
    for (std::size_t j = 0; j <= max_size && fam.homogeneous; ++j) {
      std::uint64_t common = 0;
      for (const auto& u : fam.by_size[j]) {
        std::uint64_t n = 0;
        for (const auto& c : cover_)
          if (std::includes(c.begin(), c.end(), u.begin(), u.end())) ++n;
        if (common == 0)
          common = n;
        else if (common != n) {
          fam.homogeneous = false;
          break;
        }
      }
      fam.containment[j] = common;
    }
    if (!fam.homogeneous) fam.containment.clear();
  }
  return fam;
}

std::uint64_t Scenario::dimension() const {
  const auto fam = partial_contexts();
  const std::uint64_t lm1 = outcomes_.size() - 1;
  std::uint64_t d = 0;
  for (std::size_t j = 0; j < fam.by_size.size(); ++j)
    d += fam.by_size[j].size() * checked_pow(lm1, j, "dimension");
  if (fam.homogeneous) {
    const std::uint64_t closed = homogeneous_dimension();
    if (closed != d)
      throw std::logic_error("dimension: closed form disagrees with enumeration");
  }
  return d;
}

std::uint64_t Scenario::homogeneous_dimension() const {
  const auto fam = partial_contexts();
  if (!fam.homogeneous)
    throw std::domain_error("homogeneous_dimension: cover is not homogeneous");
  const std::uint64_t lm1 = outcomes_.size() - 1;
  const std::size_t n = fam.context_size;
  std::uint64_t d = 0;
  for (std::size_t j = 0; j <= n; ++j) {
    // C(n,j) * p * (l-1)^j / N_j, exact
    std::uint64_t binom = 1;
    for (std::size_t i = 0; i < j; ++i) binom = binom * (n - i) / (i + 1);
    const std::uint64_t num =
        binom * fam.cover_size * checked_pow(lm1, j, "homogeneous_dimension");
    if (num % fam.containment[j] != 0)
      throw std::logic_error("homogeneous_dimension: non-integral term");
    d += num / fam.containment[j];
  }
  return d;
}

Section restrict_section(const Section& s, std::span<const int> target) {
  const auto pos = subset_positions(s.measurements, target, "restrict_section");
  Section out;
  out.measurements.assign(target.begin(), target.end());
  out.outcomes.reserve(target.size());
  for (std::size_t p : pos) out.outcomes.push_back(s.outcomes[p]);
  return out;
}

std::uint64_t restrict_section_index(std::span<const int> context,
                                     std::uint64_t section_idx,
                                     std::span<const int> target,
                                     int outcome_count) {
  const auto pos = subset_positions(context, target, "restrict_section_index");
  const std::uint64_t l = outcome_count;
  std::vector<std::uint64_t> digits(context.size());
  for (std::size_t i = 0; i < context.size(); ++i) {
    digits[i] = section_idx % l;
    section_idx /= l;
  }
  std::uint64_t idx = 0;
  for (std::size_t i = pos.size(); i-- > 0;) idx = idx * l + digits[pos[i]];
  return idx;
}

}  // namespace ctx
