#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "floerlat/invariants.hpp"
#include "floerlat/pl_function.hpp"

namespace floerlat {

struct BoundsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Euler number of the local-saddle fragment: e = writhe1 - writhe2 + epsilon,
// with epsilon = +1 or -1 according to the fragment's direction.  The formula
// only applies to planar-local fragments.  When the caller knows the saddle
// is orientable (e must vanish) a nonzero value is flagged as a warning
// rather than an error, since writhes are caller-supplied data.
struct EulerNumber {
  long long value = 0;
  std::optional<std::string> warning;
};
EulerNumber euler_number(long long writhe1, long long writhe2, int epsilon,
                         bool expect_orientable = false);

// One lower bound together with the exact value it was rounded from and the
// inequality that produced it.  Rounding only ever goes up.
struct BoundItem {
  long long value = 0;
  Q exact = Q(0);
  std::string witness;
};

// Integer lower bounds on the slice genus g4 of an n-component link from a
// computed report: ceil(-upsilon(t)/t) - n + 1 and ceil(-upsilon*(t)/t) at
// every breakpoint t in (0,1] of the respective function (both quotients are
// piecewise monotone, so breakpoints and t = 1 realize the suprema), plus
// tau - n + 1, tau*, nu+ - n + 1 and nu-check.
std::vector<BoundItem> slice_genus_bounds(const InvariantReport& r, int n);

// Largest lower bound of the list (at least 0: the empty surface convention
// never produces negative genus).
long long best_bound(const std::vector<BoundItem>& items);

// Whether the computed functions are consistent with the link bounding a
// planar surface in the four-ball: upsilon(t) <= 0 and upsilon*(t) >= 0
// throughout the domain.
bool planar_bounding_consistent(const InvariantReport& r);

// Topological inputs for the crosscap-number bounds.  The upsilon values are
// the plain (unnormalized) set; the signature dependence is explicit in the
// inequalities.
struct BoundInput {
  int n = 1;  // link components
  int k = 1;  // surface components
  long long sigma = 0;
  long long upsilon_max = 0;
  long long upsilon_min = 0;
  std::vector<long long> upsilon_set;  // full set; used when k == 1
  std::optional<long long> e_bar;      // ebar(F) = e(F) - 2*lambda(L)
};

// Convenience: fill the upsilon fields from a computed report.
BoundInput bound_input_from(const InvariantReport& r, int n, int k,
                            long long sigma);

// Integer lower bounds on gamma4^(k), the smallest first Betti number of a
// k-component unoriented four-ball filling:
//   |k - 1 - umax + umin|                         (wideness),
//   |umax - (sigma+k-n)/2|,  |umin - 1 - (sigma-k-n)/2|   (ceilings),
//   |u_i - (sigma+1-n)/2| for every set element when k == 1,
//   |sigma - ebar/2| when ebar is supplied.
std::vector<BoundItem> crosscap_bounds(const BoundInput& in);

// First Betti number of a genus-g surface with k connected components and v
// non-orientable saddles in total, bounding an n-component link.
long long first_betti(long long g, long long v, int n, int k);

// Exact endpoints (times 4, so they are integers) of the intervals that umax
// and umin must satisfy when the link bounds a k-component surface of total
// genus g with v non-orientable saddles and twisted Euler number ebar:
//   -g - v/2 + (k-n) + ebar/4 <= umax <= g + v/2 + ebar/4
//   -g - v/2 + (1-n) + ebar/4 <= umin <= g + v/2 + (1-k) + ebar/4
// With v = 0 (hence ebar = 0) they reduce to the oriented-cobordism bounds
// -g + k - n <= umax <= g and -g + 1 - n <= umin <= g + 1 - k.
struct UnorientedIntervals {
  long long max_lo4 = 0, max_hi4 = 0;
  long long min_lo4 = 0, min_hi4 = 0;
};
UnorientedIntervals unoriented_intervals(long long g, long long v,
                                         long long e_bar, int n, int k);

// Evaluates the interval inequalities on supplied surface data and reports
// satisfaction per inequality.  The guarantee only holds for some
// orientations of the link, so a violation is a reportable fact about the
// chosen orientation, never a universally quantified contradiction.
struct IntervalCheck {
  bool max_ok = false;
  bool min_ok = false;
  std::string detail;
};
IntervalCheck unoriented_interval_check(const BoundInput& in, long long g,
                                        long long v, long long e_bar);

// Maximal Euler characteristic of an unoriented four-ball filling of a link
// with a thin upsilon set (wideness zero): chi(F) = 2k - n - 2g - v <= 1.
// Among fillings by a disks and n - a Mobius strips this forces a <= 1.
// Throws BoundsError when the set is not thin.
int chi_max_report(const BoundInput& in);

}  // namespace floerlat
