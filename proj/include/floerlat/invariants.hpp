#pragma once
// Numerical concordance invariants of a ModelComplex: the region family
// Upsilon_S and its dual, the classical piecewise-linear Upsilon functions,
// tau, the local h-invariants V(k)/W(k) with the nu family, secondary
// Upsilon correction terms, and the integer upsilon-set.

#include "floerlat/complex.hpp"
#include "floerlat/pl_function.hpp"
#include "floerlat/region.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace floerlat {

struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// A required homology class is missing (validation should have caught this).
struct NoGenerator : InvariantError {
  using InvariantError::InvariantError;
};
// A filtration-level dimension disagrees with the component-count binomials.
struct DimensionMismatch : InvariantError {
  using InvariantError::InvariantError;
};

// primary reads the distinguished degree-0 class; star reads the dual family
// in degree 1 - n.  For knots (n = 1) the two flavours coincide.
enum class Flavor { primary, star };

// Homological degree where the flavour's reference class lives.
long long flavor_degree(const ModelComplex& c, Flavor f);

// primary: a cycle in F^{j<=0} C_0 that generates F^{j<=0} H_0.
// star: a cycle in F^{j<=0} C_{1-n} whose class is nonzero modulo
// F^{j<=-1} H_{1-n}.  Coordinates refer to basis(flavor_degree).
f2::Vec reference_class(const ModelComplex& c, Flavor f);

struct UpsilonValue {
  Q value = Q(0);
  // Whether the supremum over shift levels is realized at `value`; it can
  // fail to be realized only for regions with strict boundary pieces.
  bool attained = true;
  // A cycle realizing the value, present when attained.
  std::optional<f2::Vec> witness;
};

// Upsilon_S: the largest shift level k such that, for the primary flavour,
// the reference class is represented by a cycle supported in F^{S_k} C_0,
// and for the star flavour F^{S_k} H_{1-n} is not contained in
// F^{j<=-1} H_{1-n}.  Requires S centered (h_S(0) = 0).  Membership of the
// finitely many basis positions changes only at the plane-contact values, so
// a scan over contacts and gap midpoints is exact.
UpsilonValue upsilon_region_detail(const ModelComplex& c,
                                   const SouthWestRegion& s,
                                   Flavor f = Flavor::primary);
Q upsilon_region(const ModelComplex& c, const SouthWestRegion& s,
                 Flavor f = Flavor::primary);

// Exact reconstruction of t -> Upsilon_{A_t} on [0, 2]: sample every rational
// with denominator at most 2*(Alexander span) + 1, fit, then verify the value
// at 0, the t <-> 2-t symmetry, integer slopes, and that each breakpoint t0
// with slope jump s1 -> s2 has t0 * |s2 - s1| integral.  Throws PLError on
// any failure.
PLFunction upsilon_function(const ModelComplex& c, Flavor f = Flavor::primary);

// Negative of the initial slope of the respective Upsilon function.
long long tau(const ModelComplex& c);
long long tau_star(const ModelComplex& c);

// Local h-invariants V(k) = -Upsilon_{V_k}/2 and W(k) = -Upsilon_{W_k}/2,
// for k >= 0 (the regions are centered only there).
Q V_of(const ModelComplex& c, long long k);
Q W_of(const ModelComplex& c, long long k);
// nu+ = min{k >= 0 : V(k) = 0}; nu-hat = max over the complex and its mirror
// of nu+; nu-check is the analogue built from W.
long long nu_plus(const ModelComplex& c);
long long nu_hat(const ModelComplex& c);
long long nu_check(const ModelComplex& c);

struct SecondaryValue {
  bool infinite = false;
  Q value = Q(0);  // meaningful only when !infinite
  bool operator==(const SecondaryValue&) const = default;
  std::string to_string() const;
};

// Secondary correction term Upsilon^(2)_{S+,S-,S} = -Upsilon_S + sup{k}:
// the supremum of integer k admitting cycles x1 in F^{S+_{g+}} C_0 and
// x2 in F^{S-_{g-}} C_0, each homologous to the reference class, together
// with a in F^{S_k union S+_{g+} union S-_{g-}} C_1 with da = x1 + x2.
// Returns +infinity when a single cycle works as both x1 and x2; the k-scan
// is clamped to twice the lattice diameter and larger values are reported
// as +infinity.  All three regions must be centered and the levels g+, g-
// must be attained.
SecondaryValue upsilon_secondary(const ModelComplex& c,
                                 const SouthWestRegion& s_plus,
                                 const SouthWestRegion& s_minus,
                                 const SouthWestRegion& s,
                                 Flavor f = Flavor::primary);

// Multiset of 2^(n-1) integers: for each degree d in {0, -1, ..., 1-n}, the
// jump levels of the A_1-contact filtration on F^{j<=0}H_d / F^{j<=-1}H_d
// (a space of dimension binom(n-1, -d)), each shifted by d.  The first and
// last blocks are singletons identified with Upsilon(1) and
// Upsilon*(1) + 1 - n.
struct UpsilonSet {
  std::vector<std::vector<long long>> by_degree;  // degree 0 block first

  std::vector<long long> values() const;  // flattened, blocks in order
  long long first() const { return by_degree.front().front(); }
  long long last() const { return by_degree.back().front(); }
  long long min_value() const;
  long long max_value() const;
  bool operator==(const UpsilonSet&) const = default;
  std::string to_string() const;
};

UpsilonSet upsilon_set(const ModelComplex& c);

// The upsilon-set with (sigma + h) / 2 subtracted from every element.  The
// signature sigma is an input, never computed here.
std::vector<Q> normalized_upsilon_set(const ModelComplex& c, long long sigma,
                                      long long h);

// delta-graded route to the same multiset: the value d occurs with
// multiplicity dim F^{j<=0}H_d(P) - dim F^{j<=-1}H_d(P), scanned over
// d in [d_lo, d_hi].
std::vector<long long> prime_upsilon_multiset(const PrimeComplex& p,
                                              long long d_lo, long long d_hi);
// Runs the delta route on prime_of_model(c) over a window wide enough to
// hold every generator's delta-grading; checks the total count 2^(n-1).
std::vector<long long> upsilon_set_via_prime(const ModelComplex& c);

struct InvariantReport {
  std::string name;
  long long tau = 0, tau_star = 0;
  long long nu_plus = 0, nu_hat = 0, nu_check = 0;
  PLFunction upsilon, upsilon_star;
  UpsilonSet upsilon_set;
  Fingerprint fingerprint;
  bool operator==(const InvariantReport&) const = default;
};

InvariantReport compute_report(const ModelComplex& c);

}  // namespace floerlat
