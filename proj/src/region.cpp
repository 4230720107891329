#include "floerlat/region.hpp"

#include <algorithm>
#include <set>

namespace floerlat {

namespace {
bool plane_holds(const HalfPlane& h, const Q& j, const Q& A) {
  Q lhs = h.a * j + h.b * A;
  return h.strict ? lhs < h.c : lhs <= h.c;
}
void check_plane(const HalfPlane& h) {
  if (h.a < 0 || h.b < 0 || (h.a == 0 && h.b == 0))
    throw RegionError("half-plane needs a, b >= 0 and not both zero");
}
}  // namespace

SouthWestRegion::SouthWestRegion(std::vector<Primitive> primitives, std::string label)
    : prims_(std::move(primitives)), label_(std::move(label)) {
  if (prims_.empty()) throw RegionError("region needs at least one primitive");
  for (const auto& p : prims_) {
    if (p.planes.empty()) throw RegionError("primitive needs at least one half-plane");
    for (const auto& h : p.planes) check_plane(h);
  }
}

bool SouthWestRegion::member(const Q& j, const Q& A) const {
  for (const auto& prim : prims_) {
    bool in = true;
    for (const auto& h : prim.planes)
      if (!plane_holds(h, j, A)) { in = false; break; }
    if (in) return true;
  }
  return false;
}

SouthWestRegion SouthWestRegion::shifted(const Q& k) const {
  std::vector<Primitive> out = prims_;
  for (auto& prim : out)
    for (auto& h : prim.planes) h.c -= k * (h.a + h.b) / 2;
  return SouthWestRegion(std::move(out), label_ + "_shift(" + to_string(k) + ")");
}

SouthWestRegion SouthWestRegion::reflected() const {
  std::vector<Primitive> out = prims_;
  for (auto& prim : out)
    for (auto& h : prim.planes) std::swap(h.a, h.b);
  return SouthWestRegion(std::move(out), "-" + label_);
}

// p in iota(S)  <=>  -p not in S  <=>  for every primitive some plane fails at
// -p.  A failing {a·j+b·A ≤ c} at -p means a·j+b·A < -c; a failing strict one
// means ≤ -c.  Distributing the "pick one plane per primitive" conjunction
// turns the CNF into a union of primitives; the closure then drops strictness.
SouthWestRegion SouthWestRegion::iota_closure() const {
  std::vector<Primitive> out;
  std::vector<size_t> pick(prims_.size(), 0);
  while (true) {
    Primitive prim;
    for (size_t i = 0; i < prims_.size(); ++i) {
      HalfPlane h = prims_[i].planes[pick[i]];
      h.c = -h.c;
      h.strict = false;  // closure
      prim.planes.push_back(h);
    }
    out.push_back(std::move(prim));
    size_t i = 0;
    for (; i < prims_.size(); ++i) {
      if (++pick[i] < prims_[i].planes.size()) break;
      pick[i] = 0;
    }
    if (i == prims_.size()) break;
  }
  return SouthWestRegion(std::move(out), "iota(" + label_ + ")");
}

void SouthWestRegion::check_proper() const {
  const long long R = 1000000;
  bool saw_in = false, saw_out = false;
  const std::pair<long long, long long> probes[] = {
      {0, 0},   {R, R},   {-R, -R}, {R, -R}, {-R, R},
      {0, R},   {R, 0},   {0, -R},  {-R, 0}, {1, 1},
      {-1, -1}, {5, -5},  {-5, 5}};
  for (auto [j, A] : probes)
    (member(Q(j), Q(A)) ? saw_in : saw_out) = true;
  if (!saw_in) throw RegionError("region looks empty (not proper)");
  if (!saw_out) throw RegionError("region looks like the whole plane (not proper)");
  for (long long j = -20; j <= 20; ++j)
    for (long long A = -20; A <= 20; ++A)
      if (member(Q(j), Q(A))) {
        if (!member(Q(j - 1), Q(A)) || !member(Q(j), Q(A - 1)))
          throw RegionError("region not down-closed near (" + std::to_string(j) +
                            "," + std::to_string(A) + ")");
      }
}

std::vector<Q> SouthWestRegion::contact_values(
    const std::vector<std::pair<Q, Q>>& points) const {
  std::set<Q> vals;
  for (const auto& [j, A] : points)
    for (const auto& prim : prims_)
      for (const auto& h : prim.planes)
        vals.insert(2 * (h.c - h.a * j - h.b * A) / (h.a + h.b));
  return std::vector<Q>(vals.begin(), vals.end());
}

SouthWestRegion region_At(const Q& t) {
  if (t < 0 || t > 2) throw RegionError("A_t needs t in [0,2]");
  Primitive p{{HalfPlane{(Q(2) - t) / 2, t / 2, Q(0), false}}};
  return SouthWestRegion({p}, "A_" + to_string(t));
}

SouthWestRegion region_Vk(const Q& k) {
  Primitive p{{HalfPlane{Q(1), Q(0), Q(0), false}, HalfPlane{Q(0), Q(1), k, false}}};
  return SouthWestRegion({p}, "V_" + to_string(k));
}

SouthWestRegion region_Wk(const Q& k) {
  Primitive pj{{HalfPlane{Q(1), Q(0), Q(0), false}}};
  Primitive pa{{HalfPlane{Q(0), Q(1), -k, false}}};
  return SouthWestRegion({pj, pa}, "W_" + to_string(k));
}

SouthWestRegion region_Vts(const Q& t, const Q& s) {
  Primitive p{{HalfPlane{Q(1), Q(0), t, false}, HalfPlane{Q(0), Q(1), s, false}}};
  return SouthWestRegion({p}, "V_{" + to_string(t) + "," + to_string(s) + "}");
}

SouthWestRegion region_Wts(const Q& t, const Q& s) {
  Primitive pj{{HalfPlane{Q(1), Q(0), t, false}}};
  Primitive pa{{HalfPlane{Q(0), Q(1), s, false}}};
  return SouthWestRegion({pj, pa}, "W_{" + to_string(t) + "," + to_string(s) + "}");
}

SouthWestRegion staircase_region(const std::vector<std::pair<Q, Q>>& corners) {
  if (corners.empty()) throw RegionError("staircase region needs corners");
  for (size_t i = 1; i < corners.size(); ++i)
    if (!(corners[i - 1].first < corners[i].first &&
          corners[i - 1].second > corners[i].second))
      throw RegionError("staircase corners must be strictly monotone");
  std::vector<Primitive> prims;
  for (const auto& [x, y] : corners)
    prims.push_back(Primitive{{HalfPlane{Q(1), Q(0), x, false},
                               HalfPlane{Q(0), Q(1), y, false}}});
  return SouthWestRegion(std::move(prims), "staircase");
}

namespace {

enum class Family { ConvexPrimitive, StaircaseQuadrants, PlaneUnion, Unsupported };

bool is_quadrant(const Primitive& p, Q* x, Q* y) {
  if (p.planes.size() != 2) return false;
  const HalfPlane *hj = nullptr, *ha = nullptr;
  for (const auto& h : p.planes) {
    if (h.b == 0 && !h.strict) hj = &h;
    else if (h.a == 0 && !h.strict) ha = &h;
  }
  if (!hj || !ha) return false;
  *x = hj->c / hj->a;
  *y = ha->c / ha->b;
  return true;
}

Family classify(const SouthWestRegion& s, std::vector<std::pair<Q, Q>>* corners) {
  if (s.primitives().size() == 1) return Family::ConvexPrimitive;
  bool all_quadrants = true;
  corners->clear();
  for (const auto& p : s.primitives()) {
    Q x, y;
    if (!is_quadrant(p, &x, &y)) { all_quadrants = false; break; }
    corners->emplace_back(x, y);
  }
  if (all_quadrants) return Family::StaircaseQuadrants;
  bool all_single = true;
  for (const auto& p : s.primitives())
    if (p.planes.size() != 1) all_single = false;
  if (all_single) return Family::PlaneUnion;
  return Family::Unsupported;
}

}  // namespace

SouthWestRegion envelope(const SouthWestRegion& s) {
  std::vector<std::pair<Q, Q>> corners;
  switch (classify(s, &corners)) {
    case Family::ConvexPrimitive: {
      // Sumset of a convex set with itself is 2S: double every offset.
      Primitive p = s.primitives()[0];
      for (auto& h : p.planes) h.c *= 2;
      return SouthWestRegion({p}, "env(" + s.label() + ")");
    }
    case Family::StaircaseQuadrants: {
      std::vector<std::pair<Q, Q>> sums;
      for (const auto& [x1, y1] : corners)
        for (const auto& [x2, y2] : corners) sums.emplace_back(x1 + x2, y1 + y2);
      // Keep maximal corners and sort them into a staircase.
      std::sort(sums.begin(), sums.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first < b.first : a.second > b.second;
      });
      std::vector<std::pair<Q, Q>> keep;
      for (const auto& c : sums) {
        bool dominated = false;
        for (const auto& d : sums)
          if ((d.first >= c.first && d.second > c.second) ||
              (d.first > c.first && d.second >= c.second))
            dominated = true;
        if (!dominated && (keep.empty() || keep.back().first != c.first))
          keep.push_back(c);
      }
      return staircase_region(keep);
    }
    case Family::PlaneUnion: {
      // Two half-planes with different outward directions sum to the whole
      // plane; same-direction unions collapse to the weakest plane.
      const auto& prims = s.primitives();
      Q a0 = prims[0].planes[0].a, b0 = prims[0].planes[0].b;
      for (const auto& p : prims) {
        const auto& h = p.planes[0];
        if (h.a * b0 != h.b * a0) {
          // Whole plane: represent as a single absurdly generous half-plane
          // tagged by label; region_h treats it as infinite.
          Primitive everything{{HalfPlane{Q(1), Q(1), Q(0), false}}};
          return SouthWestRegion({everything}, "env:plane");
        }
      }
      // Same direction: env = 2 * (weakest plane).
      Primitive weakest = prims[0];
      for (const auto& p : prims)
        if (p.planes[0].c / (p.planes[0].a + p.planes[0].b) >
            weakest.planes[0].c / (weakest.planes[0].a + weakest.planes[0].b))
          weakest = p;
      weakest.planes[0].c *= 2;
      return SouthWestRegion({weakest}, "env(" + s.label() + ")");
    }
    default:
      throw UnsupportedFamily("envelope: unsupported region family for " + s.label());
  }
}

HValue region_h(const SouthWestRegion& s) {
  std::vector<std::pair<Q, Q>> corners;
  Family fam = classify(s, &corners);
  switch (fam) {
    case Family::ConvexPrimitive: {
      // env ⊆ S_{-k} plane-wise: 2c_i ≤ c_i + k(a_i+b_i)/2.
      long long k = 0;
      for (const auto& h : s.primitives()[0].planes) {
        Q need = 2 * h.c / (h.a + h.b);
        k = std::max(k, qceil(need));
      }
      return HValue{false, k};
    }
    case Family::StaircaseQuadrants: {
      SouthWestRegion env = envelope(s);
      // Monotone integer search: all envelope corners inside S_{-k}.
      Q span(0);
      for (const auto& [x, y] : corners) span = qmax(span, qabs(x) + qabs(y));
      long long bound = 4 * qceil(span) + 4;
      for (long long k = 0; k <= bound; ++k) {
        SouthWestRegion shifted = s.shifted(Q(-k));
        bool ok = true;
        for (const auto& prim : env.primitives()) {
          Q x, y;
          is_quadrant(prim, &x, &y);
          if (!shifted.member(x, y)) { ok = false; break; }
        }
        if (ok) return HValue{false, k};
      }
      throw RegionError("h: staircase search exceeded bound");
    }
    case Family::PlaneUnion: {
      SouthWestRegion env = envelope(s);
      if (env.label() == "env:plane") return HValue{true, 0};
      long long k = 0;
      for (const auto& h : env.primitives()[0].planes)
        k = std::max(k, qceil(h.c / (h.a + h.b)));
      // env is 2*(weakest plane); S_{-k} contains it via the same plane.
      return HValue{false, std::max(0LL, k)};
    }
    default:
      throw UnsupportedFamily("h: unsupported region family for " + s.label());
  }
}

Q region_h_point(const SouthWestRegion& s, const Q& m) {
  auto value_at = [&](const Q& y) {
    // min k with (0, y) in S_{-k}: per primitive the max plane requirement,
    // then the min over primitives.
    bool have = false;
    Q best(0);
    for (const auto& prim : s.primitives()) {
      Q need(0);
      bool first = true;
      for (const auto& h : prim.planes) {
        Q v = 2 * (h.b * y - h.c) / (h.a + h.b);
        if (first || v > need) need = v;
        first = false;
      }
      if (!have || need < best) { best = need; have = true; }
    }
    return best;
  };
  if (value_at(Q(0)) != 0)
    throw RegionError("h_point requires a centered region (h(0) = 0), got " +
                      s.label());
  return value_at(m);
}

}  // namespace floerlat
