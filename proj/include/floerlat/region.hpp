#pragma once
// South-west regions of the (j, A) plane: finite unions of intersections of
// closed/open half-planes a·j + b·A ≤ c (a, b ≥ 0, not both zero).  These index
// the joint algebraic/Alexander filtration; all arithmetic is exact rational.

#include "floerlat/pl_function.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace floerlat {

struct RegionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnsupportedFamily : RegionError {
  using RegionError::RegionError;
};

// Half-plane {(j, A) : a*j + b*A <= c}, or strict "<" when strict is set.
struct HalfPlane {
  Q a, b, c;
  bool strict = false;
};

// Intersection of half-planes.
struct Primitive {
  std::vector<HalfPlane> planes;
};

class SouthWestRegion {
public:
  SouthWestRegion() = default;
  SouthWestRegion(std::vector<Primitive> primitives, std::string label);

  const std::vector<Primitive>& primitives() const { return prims_; }
  const std::string& label() const { return label_; }

  bool member(const Q& j, const Q& A) const;

  // S_k = {(j, A) : (j + k/2, A + k/2) in S}; positive k shrinks the region.
  SouthWestRegion shifted(const Q& k) const;
  // Reflection across the diagonal j = A (swap the roles of j and A).
  SouthWestRegion reflected() const;
  // Closure of iota(S) = {p : -p not in S}.
  SouthWestRegion iota_closure() const;

  // Sanity: proper (neither empty nor everything), probed out to radius 1e6,
  // and down-closed on integer probes in [-20, 20]^2.  Throws RegionError.
  void check_proper() const;

  // For basis positions: smallest k such that p lies on the boundary of some
  // shifted plane, i.e. the contact value 2(c - a*j - b*A)/(a + b) per plane.
  std::vector<Q> contact_values(const std::vector<std::pair<Q, Q>>& points) const;

private:
  std::vector<Primitive> prims_;
  std::string label_;
};

// --- constructors ---------------------------------------------------------
// A_t = {(t/2)·A + (1 - t/2)·j <= 0}, t rational in [0, 2].
SouthWestRegion region_At(const Q& t);
// V_k = {j <= 0, A <= k}.
SouthWestRegion region_Vk(const Q& k);
// W_k = {j <= 0} ∪ {A <= -k}  (the iota-closure of V_k).
SouthWestRegion region_Wk(const Q& k);
// V_{t,s} = {j <= t, A <= s};  W_{t,s} = {j <= t} ∪ {A <= s}.
SouthWestRegion region_Vts(const Q& t, const Q& s);
SouthWestRegion region_Wts(const Q& t, const Q& s);
// Union of quadrants {j <= x_i, A <= y_i}; corners must be strictly monotone
// (x increasing, y decreasing).
SouthWestRegion staircase_region(const std::vector<std::pair<Q, Q>>& corners);

// --- envelope and h --------------------------------------------------------
struct HValue {
  bool infinite = false;
  long long value = 0;  // meaningful when !infinite
};

// Coordinate-wise sumset S + S for supported families (single convex
// primitive: 2S; staircase quadrant unions: pairwise corner sums; unions of
// single half-planes in different directions: the whole plane marker).
// Throws UnsupportedFamily otherwise.
SouthWestRegion envelope(const SouthWestRegion& s);

// h(S) = inf{k in N : S_{-k} ⊇ env(S)}; infinite when env(S) is the plane.
HValue region_h(const SouthWestRegion& s);

// h_S(m) = inf{k : (0, m) in S_{-k}}, exact rational.  Requires h_S(0) = 0
// ("centered"); throws RegionError otherwise.
Q region_h_point(const SouthWestRegion& s, const Q& m);

}  // namespace floerlat
