#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ctx/model.hpp"

namespace ctx {
namespace catalog {

// Canonical scenarios and models, reproduced bit-exactly in canonical order.
// Every entry validates and every model passes the compatibility check.
struct CatalogEntry {
  std::string name;
  std::string note;
  std::shared_ptr<const Scenario> scenario;
  std::optional<EmpiricalModel> model;
};

// The CHSH-style bipartite table whose row (a,b) is (1/2,0,0,1/2) and whose
// other rows mix 3/8 and 1/8.
CatalogEntry bell();

// The possibilistic Hardy table (boolean weights).
CatalogEntry hardy_support();

// Popescu-Rohrlich boxes. The variant bits (alpha, beta, gamma) of v in 0..7
// select the box with support o1 xor o2 = x.y xor alpha.x xor beta.y xor
// gamma over contexts (x,y); variant 0 is the standard table (three
// correlated contexts, (a',b') anti-correlated). The eight variants are the
// orbit of variant 0 under per-measurement outcome relabelling.
CatalogEntry pr_box(int variant);

// n-partite parity model (n >= 3), measurements X/Y per part: contexts with
// an odd number of Y are uniform on all outcomes; #Y = 0 mod 4 is uniform
// (weight 2^{1-n}) on even-parity outcomes; #Y = 2 mod 4 on odd-parity ones.
CatalogEntry ghz(int n);

// Rows and columns of the 3x3 magic square (cover only).
CatalogEntry peres_mermin_cover();

// The 18-measurement, 9-context cover of the four-dimensional 18-ray
// Kochen-Specker proof (cover only; the rays themselves are input data).
CatalogEntry cabello18_cover();

// {a,b}, {b,c}, {a,c} (cover only).
CatalogEntry triangle_cover();

// Lookup by name: "bell", "hardy", "pr0".."pr7", "ghz<N>", "peres-mermin",
// "cabello18", "triangle".
std::optional<CatalogEntry> by_name(const std::string& name);
std::vector<std::string> names();

}  // namespace catalog
}  // namespace ctx
