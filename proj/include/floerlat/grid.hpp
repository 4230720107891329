#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "floerlat/complex.hpp"

namespace floerlat {

struct GridError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The W-factor peeling step of grid_complex failed; the raw complex is still
// available through grid_raw_complex.
struct GridPeelError : GridError {
  using GridError::GridError;
};

// Toroidal grid presentation of an oriented link.  Rows are indexed bottom to
// top, columns left to right, both 0-based; row r carries the O-marking in
// column o_col[r] and the X-marking in column x_col[r].  Exactly one O per
// link component is special.  An O and an X may share a square only when
// allow_doubly is set (split/birth diagrams).
struct GridDiagram {
  int size = 0;
  int components = 0;
  std::vector<int> o_col;
  std::vector<int> x_col;
  std::vector<bool> special;
  bool allow_doubly = false;
};

// Builds and fully validates a diagram: o_col/x_col are permutations, doubly
// squares only when allowed, the traced component count matches, and each
// component carries exactly one special O.  special_rows are 0-based,
// bottom-up row indices.
GridDiagram make_grid(int size, int components, std::vector<int> o_col,
                      std::vector<int> x_col,
                      const std::vector<int>& special_rows,
                      bool allow_doubly = false);

void validate_grid(const GridDiagram& g);

// Text format (rows listed top to bottom, columns 1-based):
//   grid <size> <components> [!]
//   <O column of top row> ... <O column of bottom row>
//   <X column of top row> ... <X column of bottom row>
//   <special O rows, 1-based from the top>
// The optional "!" allows doubly-marked squares.
GridDiagram parse_grid(const std::string& text);
std::string serialize_grid(const GridDiagram& g);

// Component id per row, 0-based in order of first appearance from the top row
// downward.  Throws GridError when markings do not close up.
std::vector<int> trace_components(const GridDiagram& g);

// Repositions the X-markings (keeping O's and the special set) so the diagram
// presents the unlink with one component per special O: walking downward from
// each special O, every O gets an X just below it, and the last O of the run
// closes up into the special row.  A run of length one yields a doubly-marked
// square, so the result generally has allow_doubly set.
GridDiagram unlink_markings(const GridDiagram& g);

// NE-stabilization at the X-marking of row r (which must not share its square
// with an O): a new row above r and a new column right of the X are inserted,
// the X is replaced by the three markings X(r, c+1), X(r+1, c), O(r+1, c+1),
// and the new O is not special.
GridDiagram stabilize_ne(const GridDiagram& g, int row);

struct GridGradings {
  long long M = 0;
  long long A = 0;
  long long delta = 0;  // M - A
};

// Gradings of a grid state (state[c] = row of the point on column line c):
// M from the symmetrized strict-southwest pair count against the O-markings,
// A = (M_O - M_X - (size - components)) / 2, both integers.
GridGradings grid_gradings(const GridDiagram& g, const std::vector<int>& state);

// Hard size limit for full state enumeration (size! generators).
inline constexpr int kGridSizeLimit = 7;

// The full state complex: one generator per grid state, one edge per pair of
// states connected by an odd number of empty rectangles (no state point in
// the interior; markings allowed), U-power = O-count of the rectangle.  The
// homology has rank 2^(size-1), which the complex declares by setting
// n_components to the grid size; peeling the surplus tensor factors is
// grid_complex's job.
ModelComplex grid_raw_complex(const GridDiagram& g);

// grid_raw_complex, reduced and with the surplus rank-two tensor factor
// peeled off size - components times; declares the true component count.
// Throws GridPeelError when the peel cannot be certified.
ModelComplex grid_complex(const GridDiagram& g);

// delta-graded complex of grid_complex(g); homology rank 2^(components-1).
PrimeComplex prime_complex(const GridDiagram& g);

struct IMapReport {
  long long states = 0;
  long long edges = 0;
  bool ok = false;
};

// Consistency of the two grid complexes: builds the raw bifiltered complex
// and, by an independent rectangle count (U-power = O-count + X-count), the
// raw delta-graded complex, then checks that rescaling each generator by
// U^(-A) intertwines them edge for edge: delta(x) = M(x) - A(x) and
// k' = 2k + A(x) - A(y) on every edge.  Throws GridError on mismatch.
IMapReport i_map_check(const GridDiagram& g);

// ---- shared with the cobordism module ----

// Enumerated differential of the state complex with both U-power counts.
struct GridEdgeData {
  int from = 0;  // state indices into grid_states' ordering
  int to = 0;
  long long o_count = 0;
  long long ox_count = 0;
};

// All size! states in lexicographic order (state = col -> row permutation).
std::vector<std::vector<int>> grid_states(int size);

// Net (mod 2) empty-rectangle edges of the state complex of g.
std::vector<GridEdgeData> grid_edges(const GridDiagram& g);

// Raw delta-graded complex on all states, U-power = O+X count per rectangle.
PrimeComplex grid_raw_prime_complex(const GridDiagram& g);

// Signed planar crossing data of the diagram: vertical segments (oriented
// X -> O) always cross over horizontal ones (oriented O -> X).
struct GridCrossingData {
  long long writhe = 0;  // all crossings, signed
  // inter[i][j]: signed crossings between components i and j (i != j); the
  // linking number lk(i, j) is inter[i][j] / 2.
  std::vector<std::vector<long long>> inter;
};
GridCrossingData grid_crossings(const GridDiagram& g);

}  // namespace floerlat
