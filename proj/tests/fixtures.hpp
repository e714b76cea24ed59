#pragma once

// Shared fixtures and independent test oracles. Everything here stays off the
// library's solve paths on purpose: plain loops over O^X, subset enumeration
// and tight-constraint inspection, so the fast implementations have something
// honest to disagree with.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "ctx/catalog.hpp"
#include "ctx/model.hpp"
#include "ctx/solve.hpp"
#include "ctx/tableau.hpp"

namespace fixtures {

using namespace ctx;

// A no-signalling probabilistic completion of the possibilistic Hardy table.
// Any completion with that support shares the possibilistic verdicts.
inline EmpiricalModel hardy_probabilistic() {
  auto sc = catalog::hardy_support().scenario;
  auto row = [&](std::size_t c, std::vector<Rational> w) {
    return Distribution::make(Semiring::NonNegRational, sc->cover()[c], 2,
                              std::move(w));
  };
  std::vector<Distribution> tables;
  tables.push_back(row(0, {Rational(1, 8), Rational(1, 4), Rational(1, 4), Rational(3, 8)}));
  tables.push_back(row(1, {0, Rational(3, 8), Rational(9, 16), Rational(1, 16)}));
  tables.push_back(row(2, {0, Rational(9, 16), Rational(3, 8), Rational(1, 16)}));
  tables.push_back(row(3, {Rational(1, 8), Rational(7, 16), Rational(7, 16), 0}));
  return EmpiricalModel::make(sc, std::move(tables));
}

// Exhaustive S_e: plain loop over all of O^X, no pruning, no shared code with
// enumerate_se.
inline std::vector<std::uint64_t> se_brute_force(const EmpiricalModel& model) {
  const Scenario& sc = model.scenario();
  std::vector<std::uint64_t> out;
  for (std::uint64_t g = 0; g < sc.assignment_count(); ++g) {
    const auto outs = sc.assignment_outcomes(g);
    bool ok = true;
    for (std::size_t c = 0; c < sc.cover().size() && ok; ++c) {
      std::uint64_t idx = 0;
      for (std::size_t i = sc.cover()[c].size(); i-- > 0;)
        idx = idx * sc.outcome_count() + outs[sc.cover()[c][i]];
      ok = model.table(c).possible(idx);
    }
    if (ok) out.push_back(g);
  }
  return out;
}

// Random rational in [0,1] with denominator <= max_den.
inline Rational random_rational(std::mt19937_64& rng, int max_den) {
  std::uniform_int_distribution<int> den_dist(1, max_den);
  const int den = den_dist(rng);
  std::uniform_int_distribution<int> num_dist(0, den);
  return Rational(num_dist(rng), den);
}

// Random distribution over n slots, exact, denominators bounded-ish.
inline std::vector<Rational> random_weights(std::mt19937_64& rng, std::size_t n,
                                            int max_den = 8) {
  std::vector<Rational> w(n);
  Rational total = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Rational room = Rational(1) - total;
    Rational u = random_rational(rng, max_den) * room;
    w[i] = u;
    total += u;
  }
  w[n - 1] = Rational(1) - total;
  return w;
}

// Random compatible (2,2,2) model: a convex mixture of deterministic models
// and PR boxes, all of which are no-signalling.
inline EmpiricalModel random_chsh_mixture(std::mt19937_64& rng) {
  auto sc = catalog::bell().scenario;
  // component tables, as model vectors over the 4 contexts x 4 sections
  std::vector<std::vector<Rational>> components;
  for (std::uint64_t g = 0; g < 16; ++g) {
    std::vector<Rational> v(16, Rational(0));
    const auto outs = sc->assignment_outcomes(g);
    for (std::size_t c = 0; c < 4; ++c) {
      const auto& ctx = sc->cover()[c];
      const std::uint64_t idx = outs[ctx[0]] + 2 * outs[ctx[1]];
      v[4 * c + idx] = 1;
    }
    components.push_back(std::move(v));
  }
  for (int p = 0; p < 8; ++p) {
    auto entry = catalog::pr_box(p);
    std::vector<Rational> v;
    for (std::size_t c = 0; c < 4; ++c)
      for (std::uint64_t s = 0; s < 4; ++s)
        v.push_back(entry.model->table(c).weight(s));
    components.push_back(std::move(v));
  }
  const auto mix = random_weights(rng, components.size());
  std::vector<Rational> v(16, Rational(0));
  for (std::size_t k = 0; k < components.size(); ++k)
    for (std::size_t i = 0; i < 16; ++i) v[i] += mix[k] * components[k][i];

  std::vector<Distribution> tables;
  for (std::size_t c = 0; c < 4; ++c)
    tables.push_back(Distribution::make(
        Semiring::NonNegRational, sc->cover()[c], 2,
        {v[4 * c], v[4 * c + 1], v[4 * c + 2], v[4 * c + 3]}));
  return EmpiricalModel::make(sc, std::move(tables));
}

// Sparse variant: only a few mixture components, so the support (and with it
// the reduced LP the vertex oracle sees) stays small.
inline EmpiricalModel sparse_chsh_mixture(std::mt19937_64& rng) {
  auto sc = catalog::bell().scenario;
  std::vector<std::vector<Rational>> components;
  std::set<std::uint64_t> picked;
  while (picked.size() < 3) picked.insert(rng() % 16);
  for (std::uint64_t g : picked) {
    std::vector<Rational> v(16, Rational(0));
    const auto outs = sc->assignment_outcomes(g);
    for (std::size_t c = 0; c < 4; ++c) {
      const auto& ctx = sc->cover()[c];
      v[4 * c + outs[ctx[0]] + 2 * outs[ctx[1]]] = 1;
    }
    components.push_back(std::move(v));
  }
  {
    auto entry = catalog::pr_box(static_cast<int>(rng() % 8));
    std::vector<Rational> v;
    for (std::size_t c = 0; c < 4; ++c)
      for (std::uint64_t s = 0; s < 4; ++s)
        v.push_back(entry.model->table(c).weight(s));
    components.push_back(std::move(v));
  }
  const auto mix = random_weights(rng, components.size());
  std::vector<Rational> v(16, Rational(0));
  for (std::size_t k = 0; k < components.size(); ++k)
    for (std::size_t i = 0; i < 16; ++i) v[i] += mix[k] * components[k][i];
  std::vector<Distribution> tables;
  for (std::size_t c = 0; c < 4; ++c)
    tables.push_back(Distribution::make(
        Semiring::NonNegRational, sc->cover()[c], 2,
        {v[4 * c], v[4 * c + 1], v[4 * c + 2], v[4 * c + 3]}));
  return EmpiricalModel::make(sc, std::move(tables));
}

// Shift weight inside one row between two sections that differ on an overlap
// with a neighbouring context; breaks no-signalling while keeping every row
// normalized. Returns a raw model.
inline EmpiricalModel signalling_perturbation(const EmpiricalModel& model,
                                              std::mt19937_64& rng) {
  const Scenario& sc = model.scenario();
  std::uniform_int_distribution<std::size_t> ctx_dist(0, sc.cover().size() - 1);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const std::size_t c = ctx_dist(rng);
    const auto& context = sc.cover()[c];
    // an overlapped measurement of this context
    std::vector<int> overlapped;
    for (std::size_t c2 = 0; c2 < sc.cover().size(); ++c2) {
      if (c2 == c) continue;
      for (int m : sc.cover()[c2])
        if (std::find(context.begin(), context.end(), m) != context.end())
          overlapped.push_back(m);
    }
    if (overlapped.empty()) continue;
    const int m = overlapped[rng() % overlapped.size()];

    const auto& table = model.table(c);
    std::vector<std::uint64_t> donors;
    for (std::uint64_t s = 0; s < table.size(); ++s)
      if (table.weight(s) > 0) donors.push_back(s);
    std::shuffle(donors.begin(), donors.end(), rng);
    for (std::uint64_t s1 : donors) {
      for (std::uint64_t s2 = 0; s2 < table.size(); ++s2) {
        if (s2 == s1) continue;
        const int pos =
            static_cast<int>(std::find(context.begin(), context.end(), m) -
                             context.begin());
        std::uint64_t d1 = s1, d2 = s2;
        for (int i = 0; i < pos; ++i) {
          d1 /= sc.outcome_count();
          d2 /= sc.outcome_count();
        }
        if (d1 % sc.outcome_count() == d2 % sc.outcome_count()) continue;
        // transfer half of s1's weight to s2
        const Rational eps = table.weight(s1) / 2;
        if (eps == 0) continue;
        std::vector<Distribution> tables;
        for (std::size_t cc = 0; cc < sc.cover().size(); ++cc) {
          if (cc != c) {
            tables.push_back(model.table(cc));
            continue;
          }
          std::vector<Rational> w;
          for (std::uint64_t s = 0; s < table.size(); ++s) w.push_back(table.weight(s));
          w[s1] -= eps;
          w[s2] += eps;
          tables.push_back(Distribution::make(Semiring::NonNegRational,
                                              sc.cover()[cc],
                                              sc.outcome_count(), std::move(w)));
        }
        EmpiricalModel raw =
            EmpiricalModel::make_raw(model.scenario_ptr(), std::move(tables));
        if (!check_no_signalling(raw).compatible()) return raw;
      }
    }
  }
  throw std::runtime_error("could not build a signalling perturbation");
}

// Small exact fraction for the vertex-inspection oracle: the systems it sees
// have tiny entries, and the oracle grinds through hundreds of thousands of
// basis candidates, which arbitrary-precision rationals would make painful.
struct Frac {
  long long n = 0;
  long long d = 1;

  static Frac of(long long n, long long d = 1) {
    Frac f{n, d};
    f.reduce();
    return f;
  }
  void reduce() {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    if (n == 0) d = 1;
  }
  static long long checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
      throw std::overflow_error("oracle fraction overflow");
    return static_cast<long long>(v);
  }
  friend Frac operator+(const Frac& a, const Frac& b) {
    return Frac::of(checked(static_cast<__int128>(a.n) * b.d +
                            static_cast<__int128>(b.n) * a.d),
                    checked(static_cast<__int128>(a.d) * b.d));
  }
  friend Frac operator-(const Frac& a, const Frac& b) {
    return a + Frac{-b.n, b.d};
  }
  friend Frac operator*(const Frac& a, const Frac& b) {
    return Frac::of(checked(static_cast<__int128>(a.n) * b.n),
                    checked(static_cast<__int128>(a.d) * b.d));
  }
  friend Frac operator/(const Frac& a, const Frac& b) {
    return Frac::of(checked(static_cast<__int128>(a.n) * b.d),
                    checked(static_cast<__int128>(a.d) * b.n));
  }
  friend bool operator==(const Frac& a, const Frac& b) {
    return a.n == b.n && a.d == b.d;
  }
  friend bool operator<(const Frac& a, const Frac& b) {
    return static_cast<__int128>(a.n) * b.d < static_cast<__int128>(b.n) * a.d;
  }
  friend bool operator>(const Frac& a, const Frac& b) { return b < a; }
  Rational to_rational() const { return Rational(n, d); }
};

inline Frac to_frac(const Rational& r) {
  return Frac{static_cast<long long>(numerator(r)),
              static_cast<long long>(denominator(r))};
}

// Exact LP oracle by vertex inspection: maximize sum(x) over x >= 0,
// A x <= b (b >= 0), enumerating every choice of n tight constraints among
// the rows and the coordinate hyperplanes. Exponential and proud of it.
inline Rational vertex_inspection_max_sum(
    const std::vector<std::vector<Rational>>& a_in,
    const std::vector<Rational>& b_in) {
  const std::size_t n = a_in.empty() ? 0 : a_in[0].size();
  const std::size_t m = a_in.size();
  const std::size_t total = m + n;  // rows then coordinate planes
  if (n == 0) return Rational(0);

  std::vector<std::vector<Frac>> a(m, std::vector<Frac>(n));
  std::vector<Frac> b(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = to_frac(a_in[i][j]);
    b[i] = to_frac(b_in[i]);
  }

  Frac best{0, 1};  // x = 0 is feasible
  std::vector<std::size_t> pick(n);
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<std::vector<Frac>> sys(n, std::vector<Frac>(n + 1));
  std::vector<Frac> x(n);
  std::vector<int> pivot_col(n);

  auto solve_and_score = [&](const std::vector<std::size_t>& tight) {
    for (std::size_t i = 0; i < n; ++i) {
      if (tight[i] < m) {
        for (std::size_t j = 0; j < n; ++j) sys[i][j] = a[tight[i]][j];
        sys[i][n] = b[tight[i]];
      } else {
        for (std::size_t j = 0; j <= n; ++j) sys[i][j] = Frac{0, 1};
        sys[i][tight[i] - m] = Frac{1, 1};
      }
    }
    std::size_t row = 0;
    for (std::size_t cc = 0; cc < n && row < n; ++cc) {
      std::size_t p = row;
      while (p < n && sys[p][cc].n == 0) ++p;
      if (p == n) continue;
      std::swap(sys[p], sys[row]);
      for (std::size_t i = 0; i < n; ++i) {
        if (i == row || sys[i][cc].n == 0) continue;
        const Frac f = sys[i][cc] / sys[row][cc];
        for (std::size_t j = cc; j <= n; ++j)
          if (sys[row][j].n != 0) sys[i][j] = sys[i][j] - f * sys[row][j];
      }
      pivot_col[row] = static_cast<int>(cc);
      ++row;
    }
    if (row < n) return;  // singular: not a vertex
    for (std::size_t i = 0; i < n; ++i) x[pivot_col[i]] = sys[i][n] / sys[i][pivot_col[i]];
    for (std::size_t j = 0; j < n; ++j)
      if (x[j].n < 0) return;
    for (std::size_t i = 0; i < m; ++i) {
      Frac lhs{0, 1};
      for (std::size_t j = 0; j < n; ++j)
        if (a[i][j].n != 0 && x[j].n != 0) lhs = lhs + a[i][j] * x[j];
      if (b[i] < lhs) return;
    }
    Frac score{0, 1};
    for (const auto& v : x) score = score + v;
    if (best < score) best = score;
  };

  auto next_combination = [&]() {
    std::size_t i = n;
    while (i-- > 0) {
      if (pick[i] != i + total - n) {
        ++pick[i];
        for (std::size_t j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  do {
    solve_and_score(pick);
  } while (next_combination());
  return best.to_rational();
}

// The non-contextual-fraction LP for a model, reduced to the assignments
// consistent with the support (forced in any solution), then handed to the
// vertex-inspection oracle. Independent of the simplex path.
inline Rational ncf_oracle(const EmpiricalModel& model) {
  const Scenario& sc = model.scenario();
  const auto se = se_brute_force(model);
  if (se.empty()) return Rational(0);

  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  for (std::size_t c = 0; c < sc.cover().size(); ++c) {
    const auto& context = sc.cover()[c];
    for (std::uint64_t s = 0; s < model.table(c).size(); ++s) {
      if (model.table(c).weight(s) == 0) continue;  // S_e columns never hit it
      std::vector<Rational> row(se.size(), Rational(0));
      for (std::size_t k = 0; k < se.size(); ++k) {
        const auto outs = sc.assignment_outcomes(se[k]);
        std::uint64_t idx = 0;
        for (std::size_t i = context.size(); i-- > 0;)
          idx = idx * sc.outcome_count() + outs[context[i]];
        if (idx == s) row[k] = 1;
      }
      a.push_back(std::move(row));
      b.push_back(model.table(c).weight(s));
    }
  }
  return vertex_inspection_max_sum(a, b);
}

}  // namespace fixtures
