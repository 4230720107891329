#pragma once
// JSON and CSV interchange: model complexes, south-west regions, invariant
// reports, and bound reports.  Rationals travel as plain integers when the
// denominator is one and as "p/q" strings otherwise; all emitters produce
// deterministic, byte-stable output.

#include "floerlat/bounds.hpp"
#include "floerlat/complex.hpp"
#include "floerlat/invariants.hpp"
#include "floerlat/region.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace floerlat {

struct JsonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// {"name", "n_components", "generators":[{"id","maslov","alexander"},...],
//  "edges":[["from","to"],...]} with edges referring to generator ids.
std::string complex_to_json(const ModelComplex& c, int indent = 2);
ModelComplex complex_from_json(const std::string& text);

// Full form {"primitives":[[{"a","b","c","strict"},...],...]} (a disjunction
// of conjunctions of half-planes), or one of the shortcuts {"At": t},
// {"Vk": k}, {"Wk": k}, {"corners":[[j,A],...]}.
std::string region_to_json(const SouthWestRegion& s, int indent = 2);
SouthWestRegion region_from_json(const std::string& text);

// {"name","tau","tau_star","nu_plus","nu_hat","nu_check",
//  "upsilon":[{"t","value"},...],"upsilon_star":[...],"upsilon_set":[...],
//  "fingerprint":{"window":{...},"dims0":[...],"dims1":[...]}}
std::string report_to_json(const InvariantReport& r, int indent = 2);

// {"g4_lower":[...], "gamma4":{"k":k,"bounds":[...]} | null,
//  "witnesses":[...]}; witnesses list the g4 items first, then the gamma4
// items, in computation order.
struct BoundReport {
  std::vector<BoundItem> g4;
  std::optional<int> k;              // surface components, when supplied
  std::vector<BoundItem> gamma4;     // meaningful when k is set
};
std::string bound_report_to_json(const BoundReport& r, int indent = 2);

// "t,upsilon,upsilon_star" rows over the union of both breakpoint grids,
// exact rational rendering.
std::string upsilon_csv(const PLFunction& upsilon,
                        const PLFunction& upsilon_star);

}  // namespace floerlat
