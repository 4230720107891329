#pragma once
// The example library: named complexes and grid diagrams compiled into the
// binary from data/ so golden paths need no filesystem, plus composite
// families assembled from the library entries.

#include "floerlat/complex.hpp"
#include "floerlat/grid.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace floerlat {

struct UnknownBuiltin : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Canonical names, sorted.  The aliases trefoil+/trefoil-/hopf+/hopf- resolve
// too but are not listed.
std::vector<std::string> builtin_complex_names();
ModelComplex builtin_complex(const std::string& name);

std::vector<std::string> builtin_grid_names();
// Grid text in the parse_grid format, exactly as shipped.
const std::string& builtin_grid_text(const std::string& name);
GridDiagram builtin_grid(const std::string& name);

// t24m ⊗ t34^(⊗n): the two-component family with signature 3 - 6n backing
// the builtins l0..l3.
ModelComplex l_n_complex(int n);

}  // namespace floerlat
