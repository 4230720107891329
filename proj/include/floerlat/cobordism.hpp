#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "floerlat/complex.hpp"
#include "floerlat/grid.hpp"

namespace floerlat {

struct CobordismError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One matrix entry of a map: src generator |-> U^power * (tgt generator).
struct MapEntry {
  int src = 0;
  int tgt = 0;
  long long power = 0;
  auto operator<=>(const MapEntry&) const = default;
};

// A GF(2)[U]-linear map between two complexes, stored on basis generators.
// Exactly one of the (model_src, model_tgt) / (prime_src, prime_tgt) pairs
// is populated.  Declared grading shifts are entry-wise sharp upper bounds:
// no entry exceeds a declared shift and at least one entry attains it.
// Entry shifts are measured on the image term U^power * tgt:
//   model:  dM = M(tgt) - 2 power - M(src),  dA = A(tgt) - power - A(src),
//           dj = -power (generators sit at j-level 0);
//   prime:  ddelta = delta(tgt) - power - delta(src).
struct ChainMap {
  std::optional<ModelComplex> model_src, model_tgt;
  std::optional<PrimeComplex> prime_src, prime_tgt;
  std::vector<MapEntry> entries;  // sorted, mod-2 reduced
  std::optional<long long> dM, dA, dj, ddelta;
};

// Checks that the map commutes with the differentials (formal U-power
// bookkeeping, mod 2) and that every declared shift is an entry-wise sharp
// bound.  Throws CobordismError on any violation.
void verify_chain_map(const ChainMap& f);

// g after f.  Requires f's target complex to equal g's source.  The
// composite carries no declared shifts; declare and verify at the call
// site.
ChainMap compose(const ChainMap& g, const ChainMap& f);

// True when the map is x |-> U x on every generator (same index both
// sides).
bool is_multiplication_by_u(const ChainMap& f);

// GF(2) matrix of a model-flavor map on the degree-d bases, valid for every
// d of the given source parity: rows are indexed like the target's
// parity_gens(source_parity + dM), columns like the source's
// parity_gens(source_parity).  Requires every entry to carry the same
// Maslov shift.
f2::Matrix parity_matrix(const ChainMap& f, int source_parity);

// Identity-on-states map induced by a band move.  The two diagrams must
// share size, O-markings and special rows, and their X-markings must agree
// except on two adjacent rows r, r+1 where the X's occupy a 2x2 block of
// adjacent columns, anti-diagonally in one diagram and diagonally in the
// other.  The differentials and Maslov gradings then coincide; the map is
// the identity with dM = dj = 0 and an entry-wise Alexander shift bounded
// by allowed_dA (the declared dA is the observed sharp maximum).
ChainMap band_identity_map(const GridDiagram& g1, const GridDiagram& g2,
                           long long allowed_dA = 0);

// Split move at the lattice corner c = (col, row): the diagrams share size
// and X-markings; their O's agree except on rows row-1, row where the two
// O's fill the 2x2 block of squares cornered at c, anti-diagonally in g1
// and diagonally in g2; g2 has exactly one more special row (one of the two
// block rows, the other being special already in g1) and one more
// component.  The map sends a state x to x when x contains c and to U x
// otherwise; dM = -1 on every entry, dA <= 0, dj <= 0, and the entries are
// a bijection on states.
ChainMap split_map(const GridDiagram& g1, const GridDiagram& g2, int col,
                   int row);

// Unoriented saddle maps on the delta-graded complexes.  The diagrams share
// size and O-markings and their X's differ by swapping the columns of two
// rows.  The annular region A is an arc of lattice points on one column
// line, found by a deterministic scan; nu multiplies a state by U exactly
// when the state meets A, nu_prime (in the opposite direction) exactly when
// it does not, so nu_prime after nu and nu after nu_prime are both
// multiplication by U.  Both maps are chain maps with a constant
// delta-shift each.  Throws CobordismError ("fragment mismatch") when no
// arc works.
struct NuMaps {
  ChainMap nu;        // C'(g1) -> C'(g2)
  ChainMap nu_prime;  // C'(g2) -> C'(g1)
  int column = 0;     // the column line carrying the arc
  int arc_row = 0;    // first lattice row of the arc
  int arc_len = 0;    // number of consecutive lattice points
};
NuMaps nu_maps(const GridDiagram& g1, const GridDiagram& g2);

// Computes the invariant report of the peeled complex of g and of every
// legal NE-stabilization of g, and checks they are all equal (names
// normalized).  Returns the number of stabilizations checked; throws
// CobordismError on any mismatch.
int stabilization_invariance_check(const GridDiagram& g);

}  // namespace floerlat
