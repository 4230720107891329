#include "floerlat/pl_function.hpp"

#include <numeric>
#include <sstream>

namespace floerlat {

std::string to_string(const Q& q) {
  std::ostringstream os;
  os << q.numerator();
  if (q.denominator() != 1) os << '/' << q.denominator();
  return os.str();
}

PLFunction::PLFunction(std::vector<std::pair<Q, Q>> breakpoints)
    : pts_(std::move(breakpoints)) {
  if (pts_.size() < 2) throw PLError("PL function needs at least two points");
  for (size_t i = 1; i < pts_.size(); ++i)
    if (!(pts_[i - 1].first < pts_[i].first))
      throw PLError("PL breakpoints not strictly increasing");
}

Q PLFunction::eval(const Q& t) const {
  if (t < pts_.front().first || t > pts_.back().first)
    throw PLError("PL eval outside domain");
  for (size_t i = 1; i < pts_.size(); ++i) {
    if (t <= pts_[i].first) {
      const auto& [t0, y0] = pts_[i - 1];
      const auto& [t1, y1] = pts_[i];
      return y0 + (y1 - y0) * (t - t0) / (t1 - t0);
    }
  }
  return pts_.back().second;
}

Q PLFunction::slope_right(const Q& t) const {
  for (size_t i = 1; i < pts_.size(); ++i) {
    if (t < pts_[i].first) {
      const auto& [t0, y0] = pts_[i - 1];
      const auto& [t1, y1] = pts_[i];
      return (y1 - y0) / (t1 - t0);
    }
  }
  throw PLError("slope_right at or beyond domain max");
}

std::string PLFunction::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < pts_.size(); ++i) {
    if (i) os << " ";
    os << "(" << floerlat::to_string(pts_[i].first) << ","
       << floerlat::to_string(pts_[i].second) << ")";
  }
  return os.str();
}

PLFunction PLFunction::fit(const std::map<Q, Q>& samples) {
  if (samples.size() < 2) throw PLError("reconstruction ambiguity: too few samples");
  std::vector<std::pair<Q, Q>> pts(samples.begin(), samples.end());
  // Merge collinear runs.
  std::vector<std::pair<Q, Q>> bp;
  bp.push_back(pts.front());
  Q prev_slope;
  bool have_slope = false;
  for (size_t i = 1; i < pts.size(); ++i) {
    Q slope = (pts[i].second - pts[i - 1].second) / (pts[i].first - pts[i - 1].first);
    if (have_slope && slope != prev_slope) bp.push_back(pts[i - 1]);
    prev_slope = slope;
    have_slope = true;
  }
  bp.push_back(pts.back());
  PLFunction f(std::move(bp));
  // Every sample must sit exactly on the fit; otherwise the sample grid was
  // too coarse to pin the function down.
  for (const auto& [t, y] : pts)
    if (f.eval(t) != y)
      throw PLError("reconstruction ambiguity: sample off the piecewise-linear fit at t=" +
                    floerlat::to_string(t));
  return f;
}

std::vector<Q> farey_grid(const Q& lo, const Q& hi, long long max_den) {
  std::vector<Q> out;
  for (long long q = 1; q <= max_den; ++q) {
    long long p_lo = qceil(lo * q), p_hi = qfloor(hi * q);
    for (long long p = p_lo; p <= p_hi; ++p) {
      if (std::gcd(p, q) != 1 && !(p == 0 && q == 1)) continue;
      out.emplace_back(p, q);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace floerlat
