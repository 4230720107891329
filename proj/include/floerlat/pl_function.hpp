#pragma once
// Exact rational arithmetic helpers and piecewise-linear functions on [0,2],
// reconstructed from dense exact samples with explicit failure on ambiguity.

#include <boost/rational.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

// Boost 1.74's reversed-argument rational comparison templates recurse
// forever under C++20 operator rewriting when a rational meets a plain
// integer (the swapped exact-match candidate beats the converting member and
// calls itself).  Exact non-template overloads take precedence everywhere,
// including inside boost's own operator!= bodies.
namespace boost {
inline bool operator==(const rational<long long>& a, long long b) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline bool operator==(const rational<long long>& a, int b) {
  return a == static_cast<long long>(b);
}
inline bool operator==(long long a, const rational<long long>& b) {
  return b == a;
}
inline bool operator==(int a, const rational<long long>& b) {
  return b == static_cast<long long>(a);
}
inline bool operator!=(const rational<long long>& a, long long b) {
  return !(a == b);
}
inline bool operator!=(const rational<long long>& a, int b) {
  return !(a == b);
}
inline bool operator!=(long long a, const rational<long long>& b) {
  return !(b == a);
}
inline bool operator!=(int a, const rational<long long>& b) {
  return !(b == a);
}
}  // namespace boost

namespace floerlat {

using Q = boost::rational<long long>;

inline long long qfloor(const Q& q) {
  long long d = q.numerator() / q.denominator();
  if (q.numerator() % q.denominator() != 0 && q < 0) --d;
  return d;
}
inline long long qceil(const Q& q) { return -qfloor(-q); }
inline Q qabs(const Q& q) { return q < 0 ? -q : q; }
inline Q qmin(const Q& a, const Q& b) { return a < b ? a : b; }
inline Q qmax(const Q& a, const Q& b) { return a < b ? b : a; }
std::string to_string(const Q& q);

struct PLError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A continuous piecewise-linear function given by its breakpoints.
class PLFunction {
public:
  PLFunction() = default;
  // points: sorted (t, value) including both endpoints; consecutive slopes differ.
  explicit PLFunction(std::vector<std::pair<Q, Q>> breakpoints);

  Q eval(const Q& t) const;
  Q operator()(const Q& t) const { return eval(t); }
  const std::vector<std::pair<Q, Q>>& breakpoints() const { return pts_; }
  Q domain_min() const { return pts_.front().first; }
  Q domain_max() const { return pts_.back().first; }
  // Slope on the segment immediately to the right of t.
  Q slope_right(const Q& t) const;
  bool operator==(const PLFunction& o) const { return pts_ == o.pts_; }
  std::string to_string() const;

  // Fit a PL function through exact samples (t -> value).  Verifies that every
  // sample lies on the fit; throws PLError("reconstruction ambiguity: ...")
  // if the samples do not determine a PL function whose breakpoints are all
  // sample points.
  static PLFunction fit(const std::map<Q, Q>& samples);

private:
  std::vector<std::pair<Q, Q>> pts_;
};

// All reduced fractions p/q in [lo, hi] with 1 <= q <= max_den, sorted.
std::vector<Q> farey_grid(const Q& lo, const Q& hi, long long max_den);

}  // namespace floerlat
