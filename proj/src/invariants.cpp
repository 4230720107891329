#include "floerlat/invariants.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace floerlat {

namespace {

using Basis = std::vector<ModelComplex::BasisElement>;

std::vector<std::pair<Q, Q>> basis_points(const Basis& bas) {
  std::vector<std::pair<Q, Q>> pts;
  pts.reserve(bas.size());
  for (const auto& b : bas) pts.emplace_back(Q(b.j), Q(b.A));
  return pts;
}

std::vector<int> coords_in(const SouthWestRegion& s, const Basis& bas) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(bas.size()); ++i)
    if (s.member(Q(bas[i].j), Q(bas[i].A))) out.push_back(i);
  return out;
}

void require_centered(const SouthWestRegion& s) {
  region_h_point(s, Q(0));  // throws RegionError when h_S(0) != 0
}

long long alexander_span(const ModelComplex& c) {
  long long lo = std::numeric_limits<long long>::max();
  long long hi = std::numeric_limits<long long>::min();
  for (const auto& g : c.gens()) {
    lo = std::min(lo, g.A);
    hi = std::max(hi, g.A);
  }
  if (c.size() == 0) throw InvariantError("complex has no generators");
  return hi - lo;
}

// The class subspace of F^{j<=-1} H_d plus boundaries, in degree-d
// coordinates: (ker /\ {j<=-1}) + im.
f2::Subspace deep_class_space(const ModelComplex& c, long long d,
                              const Basis& bas) {
  const int p = ModelComplex::parity_of(d);
  const int m = static_cast<int>(bas.size());
  std::vector<int> j1;
  for (int i = 0; i < m; ++i)
    if (bas[i].j <= -1) j1.push_back(i);
  return intersect(c.kernel(p), coordinate_subspace(m, j1)) + c.image_into(p);
}

}  // namespace

long long flavor_degree(const ModelComplex& c, Flavor f) {
  return f == Flavor::primary ? 0 : 1 - c.n_components();
}

f2::Vec reference_class(const ModelComplex& c, Flavor f) {
  const long long d = flavor_degree(c, f);
  const int p = ModelComplex::parity_of(d);
  const Basis bas = c.basis(d);
  const int m = static_cast<int>(bas.size());
  std::vector<int> j0;
  for (int i = 0; i < m; ++i)
    if (bas[i].j <= 0) j0.push_back(i);
  f2::Subspace candidates =
      intersect(c.kernel(p), coordinate_subspace(m, j0));
  if (f == Flavor::primary) {
    const f2::Subspace& im = c.image_into(p);
    for (const auto& v : candidates.basis())
      if (!im.contains(v)) return v;
  } else {
    f2::Subspace deep = deep_class_space(c, d, bas);
    for (const auto& v : candidates.basis())
      if (!deep.contains(v)) return v;
  }
  throw NoGenerator("no reference cycle in degree " + std::to_string(d) +
                    " of '" + c.name() + "'");
}

UpsilonValue upsilon_region_detail(const ModelComplex& c,
                                   const SouthWestRegion& s, Flavor f) {
  require_centered(s);
  const long long d = flavor_degree(c, f);
  const Basis bas = c.basis(d);
  const int m = static_cast<int>(bas.size());
  if (m == 0)
    throw InvariantError("no basis positions in degree " + std::to_string(d));
  const std::vector<Q> contacts = s.contact_values(basis_points(bas));
  if (contacts.empty()) throw InvariantError("empty candidate set for " + s.label());

  // Test levels: a guard below every contact, each contact, each gap
  // midpoint, and a guard above.  Basis-position membership is constant
  // between consecutive contacts, so feasibility on this list determines the
  // supremum exactly.
  std::vector<Q> levels;
  levels.push_back(contacts.front() - 1);
  for (size_t i = 0; i < contacts.size(); ++i) {
    levels.push_back(contacts[i]);
    if (i + 1 < contacts.size())
      levels.push_back((contacts[i] + contacts[i + 1]) / 2);
  }
  levels.push_back(contacts.back() + 1);

  const f2::Matrix& from_above = c.boundary(ModelComplex::parity_of(d + 1));
  const int p = ModelComplex::parity_of(d);
  std::optional<f2::Vec> x0;
  std::optional<f2::Subspace> deep;
  if (f == Flavor::primary) {
    x0 = reference_class(c, f);
  } else {
    deep = deep_class_space(c, d, bas);
  }

  // Feasibility is monotone decreasing in the shift level (the regions are
  // nested), so binary search over the test levels is sound.
  std::optional<f2::Vec> last_witness;
  auto feasible = [&](const Q& k) -> bool {
    f2::Subspace span =
        coordinate_subspace(m, coords_in(s.shifted(k), bas));
    if (f == Flavor::primary) {
      auto sol = f2::solve_in_subspace(from_above, *x0, span);
      if (!sol) return false;
      last_witness = sol->first;
      return true;
    }
    f2::Subspace cycles = intersect(c.kernel(p), span);
    for (const auto& v : cycles.basis())
      if (!deep->contains(v)) {
        last_witness = v;
        return true;
      }
    return false;
  };

  if (!feasible(levels.front()))
    throw InvariantError("reference class unrepresentable below every contact of " +
                         s.label());
  if (feasible(levels.back()))
    throw InvariantError("upsilon unbounded over " + s.label());
  size_t lo = 0, hi = levels.size() - 1;
  while (hi - lo > 1) {
    size_t mid = (lo + hi) / 2;
    (feasible(levels[mid]) ? lo : hi) = mid;
  }

  UpsilonValue out;
  const Q best = levels[lo];
  if (std::binary_search(contacts.begin(), contacts.end(), best)) {
    out.value = best;
    out.attained = true;
    feasible(best);  // recapture the witness at the winning level
    out.witness = last_witness;
  } else {
    // A guard or midpoint: the supremum is the next contact up, unattained.
    out.value = *std::upper_bound(contacts.begin(), contacts.end(), best);
    out.attained = false;
  }
  return out;
}

Q upsilon_region(const ModelComplex& c, const SouthWestRegion& s, Flavor f) {
  return upsilon_region_detail(c, s, f).value;
}

PLFunction upsilon_function(const ModelComplex& c, Flavor f) {
  const long long q_max = 2 * alexander_span(c) + 1;
  std::map<Q, Q> samples;
  for (const Q& t : farey_grid(Q(0), Q(2), q_max))
    samples[t] = upsilon_region(c, region_At(t), f);
  PLFunction fitted = PLFunction::fit(samples);

  const auto& pts = fitted.breakpoints();
  if (fitted.eval(Q(0)) != 0)
    throw PLError("reconstruction ambiguity: nonzero value at 0 for '" +
                  c.name() + "'");
  for (const auto& [t, v] : pts)
    if (fitted.eval(2 - t) != v)
      throw PLError("reconstruction ambiguity: asymmetric upsilon for '" +
                    c.name() + "'");
  std::vector<Q> slopes;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    Q slope = (pts[i + 1].second - pts[i].second) /
              (pts[i + 1].first - pts[i].first);
    if (slope.denominator() != 1)
      throw PLError("reconstruction ambiguity: non-integer slope for '" +
                    c.name() + "'");
    slopes.push_back(slope);
  }
  for (size_t i = 1; i + 1 < pts.size(); ++i) {
    const Q jump = qabs(slopes[i] - slopes[i - 1]);
    if (jump == 0) continue;
    if ((pts[i].first * jump).denominator() != 1)
      throw PLError("reconstruction ambiguity: breakpoint " +
                    to_string(pts[i].first) + " incompatible with slope jump " +
                    to_string(jump) + " for '" + c.name() + "'");
  }
  return fitted;
}

namespace {

long long neg_initial_slope(const PLFunction& u, const char* what) {
  const Q slope = u.slope_right(Q(0));
  if (slope.denominator() != 1)
    throw PLError(std::string(what) + ": initial slope is not an integer");
  return -slope.numerator();
}

}  // namespace

long long tau(const ModelComplex& c) {
  return neg_initial_slope(upsilon_function(c, Flavor::primary), "tau");
}

long long tau_star(const ModelComplex& c) {
  return neg_initial_slope(upsilon_function(c, Flavor::star), "tau*");
}

Q V_of(const ModelComplex& c, long long k) {
  return -upsilon_region(c, region_Vk(Q(k)), Flavor::primary) / 2;
}

Q W_of(const ModelComplex& c, long long k) {
  return -upsilon_region(c, region_Wk(Q(k)), Flavor::primary) / 2;
}

namespace {

long long first_vanishing(const ModelComplex& c, Q (*h)(const ModelComplex&, long long)) {
  const long long cap = alexander_span(c) + 4;
  for (long long k = 0; k <= cap; ++k)
    if (h(c, k) == 0) return k;
  throw InvariantError("local h-invariant nonzero beyond the Alexander span of '" +
                       c.name() + "'");
}

}  // namespace

long long nu_plus(const ModelComplex& c) { return first_vanishing(c, V_of); }

long long nu_hat(const ModelComplex& c) {
  return std::max(nu_plus(c), nu_plus(mirror(c)));
}

long long nu_check(const ModelComplex& c) {
  return std::max(first_vanishing(c, W_of),
                  first_vanishing(mirror(c), W_of));
}

std::string SecondaryValue::to_string() const {
  return infinite ? "+inf" : floerlat::to_string(value);
}

SecondaryValue upsilon_secondary(const ModelComplex& c,
                                 const SouthWestRegion& s_plus,
                                 const SouthWestRegion& s_minus,
                                 const SouthWestRegion& s, Flavor f) {
  require_centered(s_plus);
  require_centered(s_minus);
  require_centered(s);
  const long long d0 = flavor_degree(c, f);
  const long long d1 = d0 + 1;
  const Basis bas0 = c.basis(d0);
  const Basis bas1 = c.basis(d1);
  const int m0 = static_cast<int>(bas0.size());
  const int m1 = static_cast<int>(bas1.size());
  const f2::Matrix& B1 = c.boundary(ModelComplex::parity_of(d1));
  const f2::Vec x0 = reference_class(c, f);

  const UpsilonValue gp = upsilon_region_detail(c, s_plus, f);
  const UpsilonValue gm = upsilon_region_detail(c, s_minus, f);
  if (!gp.attained || !gm.attained)
    throw InvariantError("secondary upsilon: a level supremum is not attained");
  const SouthWestRegion sp_level = s_plus.shifted(gp.value);
  const SouthWestRegion sm_level = s_minus.shifted(gm.value);
  const std::vector<int> vp = coords_in(sp_level, bas0);
  const std::vector<int> vm = coords_in(sm_level, bas0);

  // When one cycle lies in both levels it serves as x1 = x2 and a = 0 works
  // for every k, so the supremum is +infinity.
  std::vector<int> both;
  std::set_intersection(vp.begin(), vp.end(), vm.begin(), vm.end(),
                        std::back_inserter(both));
  if (f2::solve_in_subspace(B1, x0, coordinate_subspace(m0, both)))
    return SecondaryValue{true, Q(0)};

  const Q us = upsilon_region(c, s, f);

  long long jlo = std::numeric_limits<long long>::max();
  long long jhi = std::numeric_limits<long long>::min();
  long long alo = jlo, ahi = jhi;
  for (const Basis* b : {&bas0, &bas1})
    for (const auto& e : *b) {
      jlo = std::min(jlo, e.j);
      jhi = std::max(jhi, e.j);
      alo = std::min(alo, e.A);
      ahi = std::max(ahi, e.A);
    }
  long long diam = (jhi - jlo) + (ahi - alo);
  if (diam < 1) diam = 1;

  const std::vector<char> in_vp = [&] {
    std::vector<char> flags(m0, 0);
    for (int i : vp) flags[i] = 1;
    return flags;
  }();
  const std::vector<char> in_vm = [&] {
    std::vector<char> flags(m0, 0);
    for (int i : vm) flags[i] = 1;
    return flags;
  }();

  // Unknowns, stacked: w1 | w2 | a, each a degree-d1 chain.  Rows force
  // x0 + d(w1) into the S+ level, x0 + d(w2) into the S- level,
  // d(a + w1 + w2) = 0, and a supported inside the union region.
  auto feasible = [&](long long k) -> bool {
    const SouthWestRegion sk = s.shifted(Q(k));
    std::vector<char> a_ok(m1, 0);
    for (int i = 0; i < m1; ++i) {
      const Q j(bas1[i].j), A(bas1[i].A);
      a_ok[i] = sk.member(j, A) || sp_level.member(j, A) ||
                sm_level.member(j, A);
    }
    std::vector<std::pair<f2::Vec, bool>> rows;  // (row over 3*m1, rhs)
    auto blank = [&] { return f2::Vec(3 * m1); };
    for (int r = 0; r < m0; ++r) {
      if (!in_vp[r]) {
        f2::Vec row = blank();
        for (int t : B1.row(r).support()) row.set(t, true);
        rows.emplace_back(std::move(row), x0.get(r));
      }
      if (!in_vm[r]) {
        f2::Vec row = blank();
        for (int t : B1.row(r).support()) row.set(m1 + t, true);
        rows.emplace_back(std::move(row), x0.get(r));
      }
      f2::Vec closed = blank();
      for (int t : B1.row(r).support()) {
        closed.set(t, true);
        closed.set(m1 + t, true);
        closed.set(2 * m1 + t, true);
      }
      rows.emplace_back(std::move(closed), false);
    }
    for (int i = 0; i < m1; ++i)
      if (!a_ok[i]) {
        f2::Vec row = blank();
        row.set(2 * m1 + i, true);
        rows.emplace_back(std::move(row), false);
      }
    f2::Matrix sys(static_cast<int>(rows.size()), 3 * m1);
    f2::Vec rhs(static_cast<int>(rows.size()));
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      for (int t : rows[i].first.support()) sys.set(i, t, true);
      rhs.set(i, rows[i].second);
    }
    return f2::solve(sys, rhs).has_value();
  };

  if (feasible(2 * diam)) return SecondaryValue{true, Q(0)};
  if (!feasible(-2 * diam))
    throw InvariantError("secondary upsilon: infeasible across the search range");
  long long lo = -2 * diam, hi = 2 * diam;
  while (hi - lo > 1) {
    const long long mid = lo + (hi - lo) / 2;
    (feasible(mid) ? lo : hi) = mid;
  }
  return SecondaryValue{false, -us + lo};
}

std::vector<long long> UpsilonSet::values() const {
  std::vector<long long> out;
  for (const auto& block : by_degree)
    out.insert(out.end(), block.begin(), block.end());
  return out;
}

long long UpsilonSet::min_value() const {
  const auto all = values();
  return *std::min_element(all.begin(), all.end());
}

long long UpsilonSet::max_value() const {
  const auto all = values();
  return *std::max_element(all.begin(), all.end());
}

std::string UpsilonSet::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first_entry = true;
  for (const auto& block : by_degree)
    for (long long v : block) {
      if (!first_entry) os << ", ";
      os << v;
      first_entry = false;
    }
  os << '}';
  return os.str();
}

UpsilonSet upsilon_set(const ModelComplex& c) {
  const int n = c.n_components();
  UpsilonSet out;
  for (long long d = 0; d >= 1 - n; --d) {
    const int p = ModelComplex::parity_of(d);
    const Basis bas = c.basis(d);
    const int m = static_cast<int>(bas.size());
    std::vector<int> j0;
    for (int i = 0; i < m; ++i)
      if (bas[i].j <= 0) j0.push_back(i);
    const f2::Subspace v0 =
        intersect(c.kernel(p), coordinate_subspace(m, j0));
    f2::Subspace deep = deep_class_space(c, d, bas);
    const f2::Subspace reach = v0 + deep;  // classes visible in the quotient
    const long long expected = binomial(n - 1, -d);
    if (static_cast<long long>(reach.dim() - deep.dim()) != expected)
      throw DimensionMismatch(
          "upsilon set: degree " + std::to_string(d) + " quotient has dim " +
          std::to_string(reach.dim() - deep.dim()) + ", expected " +
          std::to_string(expected));

    // A_1-contact level of a coordinate: x lies in (A_1)_k iff j + A <= -k.
    std::vector<long long> thr(m);
    for (int i = 0; i < m; ++i) thr[i] = -(bas[i].j + bas[i].A);
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return thr[a] > thr[b]; });

    // reach /\ prefix grows by one class exactly when an echelon vector's
    // pivot enters the prefix and its class is new modulo `deep`; the jump
    // level is the pivot coordinate's contact level.
    std::vector<long long> block;
    f2::Subspace acc = deep;
    for (const auto& [pivot, vec] : f2::pivoted_basis(reach, order)) {
      const int before = acc.dim();
      acc.insert(vec);
      if (acc.dim() > before) block.push_back(thr[order[pivot]] + d);
    }
    if (static_cast<long long>(block.size()) != expected)
      throw DimensionMismatch("upsilon set: degree " + std::to_string(d) +
                              " jumps do not fill the quotient");
    std::sort(block.rbegin(), block.rend());
    out.by_degree.push_back(std::move(block));
  }
  return out;
}

std::vector<Q> normalized_upsilon_set(const ModelComplex& c, long long sigma,
                                      long long h) {
  const Q offset = Q(sigma + h, 2);
  std::vector<Q> out;
  for (long long v : upsilon_set(c).values()) out.push_back(Q(v) - offset);
  return out;
}

std::vector<long long> prime_upsilon_multiset(const PrimeComplex& p,
                                              long long d_lo, long long d_hi) {
  std::vector<long long> out;
  for (long long d = d_lo; d <= d_hi; ++d) {
    const long long jump = p.level_dim(d, 0) - p.level_dim(d, -1);
    for (long long i = 0; i < jump; ++i) out.push_back(d);
  }
  return out;
}

std::vector<long long> upsilon_set_via_prime(const ModelComplex& c) {
  const PrimeComplex p = prime_of_model(c);
  long long dlo = std::numeric_limits<long long>::max();
  long long dhi = std::numeric_limits<long long>::min();
  for (const auto& g : c.gens()) {
    dlo = std::min(dlo, g.M - g.A);
    dhi = std::max(dhi, g.M - g.A);
  }
  const long long span = alexander_span(c);
  std::vector<long long> vals = prime_upsilon_multiset(
      p, dlo - 2 * (span + 1) - c.n_components(), dhi + 2);
  const long long expected = 1LL << (c.n_components() - 1);
  if (static_cast<long long>(vals.size()) != expected)
    throw DimensionMismatch("delta-route upsilon set has " +
                            std::to_string(vals.size()) + " values, expected " +
                            std::to_string(expected));
  std::sort(vals.rbegin(), vals.rend());
  return vals;
}

InvariantReport compute_report(const ModelComplex& c) {
  InvariantReport r;
  r.name = c.name();
  r.upsilon = upsilon_function(c, Flavor::primary);
  r.upsilon_star = upsilon_function(c, Flavor::star);
  r.tau = neg_initial_slope(r.upsilon, "tau");
  r.tau_star = neg_initial_slope(r.upsilon_star, "tau*");
  r.nu_plus = nu_plus(c);
  r.nu_hat = nu_hat(c);
  r.nu_check = nu_check(c);
  r.upsilon_set = upsilon_set(c);
  r.fingerprint = fingerprint(c, natural_window(c));
  return r;
}

}  // namespace floerlat
