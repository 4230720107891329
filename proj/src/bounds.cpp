#include "floerlat/bounds.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace floerlat {

namespace {

// Half-integer given as twice its value.
Q half(long long twice) { return Q(twice, 2); }

BoundItem item(const Q& exact, std::string witness) {
  BoundItem b;
  b.exact = exact;
  b.value = qceil(exact);
  b.witness = std::move(witness);
  return b;
}

// Breakpoints of f in (0, 1], together with t = 1 when it is interior to the
// domain.  -f(t)/t is a quotient of affine functions on each linear segment,
// hence monotone there, so these points realize its supremum over (0, 1].
std::vector<Q> slope_candidates(const PLFunction& f) {
  std::set<Q> ts;
  for (const auto& [t, value] : f.breakpoints())
    if (t > Q(0) && t <= Q(1)) ts.insert(t);
  if (f.domain_max() >= Q(1)) ts.insert(Q(1));
  return {ts.begin(), ts.end()};
}

}  // namespace

EulerNumber euler_number(long long writhe1, long long writhe2, int epsilon,
                         bool expect_orientable) {
  if (epsilon != 1 && epsilon != -1)
    throw BoundsError("epsilon of the local saddle fragment must be +1 or -1");
  EulerNumber e;
  e.value = writhe1 - writhe2 + epsilon;
  if (expect_orientable && e.value != 0) {
    std::ostringstream os;
    os << "orientable saddle should have Euler number 0, formula gives "
       << e.value << "; check the supplied writhes";
    e.warning = os.str();
  }
  return e;
}

std::vector<BoundItem> slice_genus_bounds(const InvariantReport& r, int n) {
  if (n < 1) throw BoundsError("a link has at least one component");
  std::vector<BoundItem> out;
  for (const Q& t : slope_candidates(r.upsilon)) {
    std::ostringstream os;
    os << "-upsilon(t) <= t*(g4 + n - 1) at t = " << to_string(t);
    out.push_back(item(-r.upsilon.eval(t) / t - (n - 1), os.str()));
  }
  for (const Q& t : slope_candidates(r.upsilon_star)) {
    std::ostringstream os;
    os << "-upsilon*(t) <= t*g4 at t = " << to_string(t);
    out.push_back(item(-r.upsilon_star.eval(t) / t, os.str()));
  }
  out.push_back(item(Q(r.tau - (n - 1)), "tau <= g4 + n - 1"));
  out.push_back(item(Q(r.tau_star), "tau* <= g4"));
  out.push_back(item(Q(r.nu_plus - (n - 1)), "nu+ <= g4 + n - 1"));
  out.push_back(item(Q(r.nu_check), "nu-check <= g4"));
  return out;
}

long long best_bound(const std::vector<BoundItem>& items) {
  long long best = 0;
  for (const BoundItem& b : items) best = std::max(best, b.value);
  return best;
}

bool planar_bounding_consistent(const InvariantReport& r) {
  for (const auto& [t, value] : r.upsilon.breakpoints())
    if (value > Q(0)) return false;
  for (const auto& [t, value] : r.upsilon_star.breakpoints())
    if (value < Q(0)) return false;
  return true;
}

BoundInput bound_input_from(const InvariantReport& r, int n, int k,
                            long long sigma) {
  BoundInput in;
  in.n = n;
  in.k = k;
  in.sigma = sigma;
  in.upsilon_max = r.upsilon_set.max_value();
  in.upsilon_min = r.upsilon_set.min_value();
  in.upsilon_set = r.upsilon_set.values();
  return in;
}

std::vector<BoundItem> crosscap_bounds(const BoundInput& in) {
  if (in.n < 1 || in.k < 1)
    throw BoundsError("component counts must be positive");
  std::vector<BoundItem> out;
  const long long wideness = in.k - 1 - in.upsilon_max + in.upsilon_min;
  out.push_back(item(Q(std::llabs(wideness)), "|k - 1 - umax + umin|"));
  out.push_back(item(half(std::llabs(2 * in.upsilon_max -
                                     (in.sigma + in.k - in.n))),
                     "|umax - (sigma+k-n)/2|"));
  out.push_back(item(half(std::llabs(2 * (in.upsilon_min - 1) -
                                     (in.sigma - in.k - in.n))),
                     "|umin - 1 - (sigma-k-n)/2|"));
  if (in.k == 1) {
    for (long long u : in.upsilon_set) {
      std::ostringstream os;
      os << "|u_i - (sigma+1-n)/2| at u_i = " << u;
      out.push_back(item(half(std::llabs(2 * u - (in.sigma + 1 - in.n))),
                         os.str()));
    }
  }
  if (in.e_bar)
    out.push_back(item(half(std::llabs(2 * in.sigma - *in.e_bar)),
                       "|sigma - ebar/2|"));
  return out;
}

long long first_betti(long long g, long long v, int n, int k) {
  return 2 * g + v + n - k;
}

UnorientedIntervals unoriented_intervals(long long g, long long v,
                                         long long e_bar, int n, int k) {
  UnorientedIntervals iv;
  iv.max_lo4 = -4 * g - 2 * v + 4 * (k - n) + e_bar;
  iv.max_hi4 = 4 * g + 2 * v + e_bar;
  iv.min_lo4 = -4 * g - 2 * v + 4 * (1 - n) + e_bar;
  iv.min_hi4 = 4 * g + 2 * v + 4 * (1 - k) + e_bar;
  return iv;
}

IntervalCheck unoriented_interval_check(const BoundInput& in, long long g,
                                        long long v, long long e_bar) {
  const UnorientedIntervals iv =
      unoriented_intervals(g, v, e_bar, in.n, in.k);
  IntervalCheck c;
  c.max_ok = iv.max_lo4 <= 4 * in.upsilon_max &&
             4 * in.upsilon_max <= iv.max_hi4;
  c.min_ok = iv.min_lo4 <= 4 * in.upsilon_min &&
             4 * in.upsilon_min <= iv.min_hi4;
  std::ostringstream os;
  os << "umax: " << to_string(Q(iv.max_lo4, 4)) << " <= " << in.upsilon_max
     << " <= " << to_string(Q(iv.max_hi4, 4))
     << (c.max_ok ? " (ok)" : " (violated)") << "; umin: "
     << to_string(Q(iv.min_lo4, 4)) << " <= " << in.upsilon_min << " <= "
     << to_string(Q(iv.min_hi4, 4)) << (c.min_ok ? " (ok)" : " (violated)");
  c.detail = os.str();
  return c;
}

int chi_max_report(const BoundInput& in) {
  if (in.upsilon_max != in.upsilon_min)
    throw BoundsError(
        "chi bound requires a thin upsilon set (wideness zero)");
  return 1;
}

}  // namespace floerlat
