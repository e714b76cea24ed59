#include "ctx/catalog.hpp"

#include <bit>
#include <charconv>

namespace ctx {
namespace catalog {

namespace {

std::shared_ptr<const Scenario> chsh_scenario() {
  return Scenario::bell({{"a", "a'"}, {"b", "b'"}}, {"0", "1"});
}

EmpiricalModel chsh_model(std::shared_ptr<const Scenario> sc,
                          const std::vector<std::vector<Rational>>& rows) {
  std::vector<Distribution> tables;
  for (std::size_t c = 0; c < rows.size(); ++c)
    tables.push_back(Distribution::make(Semiring::NonNegRational,
                                        sc->cover()[c], 2, rows[c]));
  return EmpiricalModel::make(std::move(sc), std::move(tables));
}

}  // namespace

CatalogEntry bell() {
  auto sc = chsh_scenario();
  const Rational h(1, 2), e(1, 8), t(3, 8);
  EmpiricalModel model = chsh_model(sc, {{h, 0, 0, h},
                                         {t, e, e, t},
                                         {t, e, e, t},
                                         {e, t, t, e}});
  return {"bell", "bipartite CHSH-style table with one perfectly correlated row",
          sc, std::move(model)};
}

CatalogEntry hardy_support() {
  auto sc = chsh_scenario();
  std::vector<std::vector<Rational>> rows = {
      {1, 1, 1, 1}, {0, 1, 1, 1}, {0, 1, 1, 1}, {1, 1, 1, 0}};
  std::vector<Distribution> tables;
  for (std::size_t c = 0; c < rows.size(); ++c)
    tables.push_back(
        Distribution::make(Semiring::Boolean, sc->cover()[c], 2, rows[c]));
  EmpiricalModel model = EmpiricalModel::make(sc, std::move(tables));
  return {"hardy", "possibilistic Hardy table", sc, std::move(model)};
}

CatalogEntry pr_box(int variant) {
  if (variant < 0 || variant > 7)
    throw std::invalid_argument("pr_box: variant must be in 0..7");
  const int alpha = variant & 1, beta = (variant >> 1) & 1, gamma = (variant >> 2) & 1;
  auto sc = chsh_scenario();
  std::vector<std::vector<Rational>> rows;
  for (int c = 0; c < 4; ++c) {
    const int x = c & 1, y = (c >> 1) & 1;
    const int parity = (x & y) ^ (alpha & x) ^ (beta & y) ^ gamma;
    std::vector<Rational> row(4, Rational(0));
    for (int s = 0; s < 4; ++s) {
      const int o1 = s & 1, o2 = (s >> 1) & 1;
      if ((o1 ^ o2) == parity) row[s] = Rational(1, 2);
    }
    rows.push_back(std::move(row));
  }
  EmpiricalModel model = chsh_model(sc, rows);
  return {"pr" + std::to_string(variant),
          "Popescu-Rohrlich box, outcome-relabelling variant " +
              std::to_string(variant),
          sc, std::move(model)};
}

CatalogEntry ghz(int n) {
  if (n < 3) throw std::invalid_argument("ghz: n >= 3 required");
  std::vector<std::vector<std::string>> parts;
  for (int i = 1; i <= n; ++i)
    parts.push_back({"X" + std::to_string(i), "Y" + std::to_string(i)});
  auto sc = Scenario::bell(parts, {"0", "1"});

  std::vector<Distribution> tables;
  for (std::size_t c = 0; c < sc->cover().size(); ++c) {
    const auto& context = sc->cover()[c];
    int y_count = 0;
    for (int m : context)
      if (sc->measurements()[m][0] == 'Y') ++y_count;
    const std::uint64_t size = sc->section_count(context);
    std::vector<Rational> row(size, Rational(0));
    if (y_count % 2 == 1) {
      const Rational w(1, static_cast<long long>(size));
      for (std::uint64_t s = 0; s < size; ++s) row[s] = w;
    } else {
      const int want_odd = (y_count % 4 == 2) ? 1 : 0;
      const Rational w(2, static_cast<long long>(size));
      for (std::uint64_t s = 0; s < size; ++s)
        if (std::popcount(s) % 2 == want_odd) row[s] = w;
    }
    tables.push_back(Distribution::make(Semiring::NonNegRational, context, 2,
                                        std::move(row)));
  }
  EmpiricalModel model = EmpiricalModel::make(sc, std::move(tables));
  return {"ghz" + std::to_string(n),
          std::to_string(n) + "-partite parity model on X/Y measurements", sc,
          std::move(model)};
}

CatalogEntry peres_mermin_cover() {
  auto sc = Scenario::make(
      {"A", "B", "C", "D", "E", "F", "G", "H", "I"}, {"0", "1"},
      {{"A", "B", "C"},
       {"D", "E", "F"},
       {"G", "H", "I"},
       {"A", "D", "G"},
       {"B", "E", "H"},
       {"C", "F", "I"}});
  return {"peres-mermin", "rows and columns of the 3x3 magic square", sc,
          std::nullopt};
}

CatalogEntry cabello18_cover() {
  auto m = [](int i) { return "m" + std::to_string(i); };
  std::vector<std::vector<std::string>> cover = {
      {m(1), m(2), m(3), m(4)},   {m(1), m(5), m(6), m(7)},
      {m(8), m(9), m(3), m(10)},  {m(8), m(11), m(7), m(12)},
      {m(2), m(5), m(13), m(14)}, {m(9), m(11), m(14), m(15)},
      {m(16), m(17), m(4), m(10)}, {m(16), m(18), m(6), m(12)},
      {m(17), m(18), m(13), m(15)}};
  std::vector<std::string> measurements;
  for (int i = 1; i <= 18; ++i) measurements.push_back(m(i));
  auto sc = Scenario::make(std::move(measurements), {"0", "1"}, std::move(cover));
  return {"cabello18",
          "nine four-element contexts of the 18-ray Kochen-Specker cover", sc,
          std::nullopt};
}

CatalogEntry triangle_cover() {
  auto sc = Scenario::make({"a", "b", "c"}, {"0", "1"},
                           {{"a", "b"}, {"b", "c"}, {"a", "c"}});
  return {"triangle", "three pairwise-overlapping two-element contexts", sc,
          std::nullopt};
}

std::optional<CatalogEntry> by_name(const std::string& name) {
  if (name == "bell") return bell();
  if (name == "hardy") return hardy_support();
  if (name == "peres-mermin") return peres_mermin_cover();
  if (name == "cabello18") return cabello18_cover();
  if (name == "triangle") return triangle_cover();
  if (name.starts_with("pr") && name.size() == 3 && name[2] >= '0' && name[2] <= '7')
    return pr_box(name[2] - '0');
  if (name.starts_with("ghz")) {
    int n = 0;
    const char* first = name.data() + 3;
    const char* last = name.data() + name.size();
    auto [p, ec] = std::from_chars(first, last, n);
    if (ec == std::errc() && p == last && n >= 3) return ghz(n);
  }
  return std::nullopt;
}

std::vector<std::string> names() {
  return {"bell",      "hardy",    "pr0..pr7", "ghz<N>",
          "peres-mermin", "cabello18", "triangle"};
}

}  // namespace catalog
}  // namespace ctx
