#pragma once
// Dense-bitset linear algebra over GF(2): matrices, echelonized subspaces,
// kernels/images, and constrained solving.  Rows are packed into 64-bit words;
// everything is deterministic (no pivoting heuristics beyond first-nonzero).

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace floerlat::f2 {

// A vector in F_2^n, bit-packed.
class Vec {
public:
  Vec() = default;
  explicit Vec(int n) : n_(n), w_((n + 63) / 64, 0) {}

  int size() const { return n_; }
  bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i, bool v) {
    uint64_t m = uint64_t{1} << (i & 63);
    if (v) w_[i >> 6] |= m; else w_[i >> 6] &= ~m;
  }
  void flip(int i) { w_[i >> 6] ^= uint64_t{1} << (i & 63); }
  void operator^=(const Vec& o) {
    for (size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
  }
  friend Vec operator^(Vec a, const Vec& b) { a ^= b; return a; }
  bool is_zero() const {
    for (uint64_t w : w_) if (w) return false;
    return true;
  }
  // Index of the lowest set bit, or -1.
  int lowest_bit() const;
  // Index of the highest set bit, or -1.
  int highest_bit() const;
  bool operator==(const Vec& o) const { return n_ == o.n_ && w_ == o.w_; }
  std::vector<int> support() const;

private:
  int n_ = 0;
  std::vector<uint64_t> w_;
};

// Matrix over GF(2), stored as bit-packed rows.
class Matrix {
public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), r_(rows, Vec(cols)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool get(int r, int c) const { return r_[r].get(c); }
  void set(int r, int c, bool v) { r_[r].set(c, v); }
  void flip(int r, int c) { r_[r].flip(c); }
  const Vec& row(int r) const { return r_[r]; }
  Vec& row(int r) { return r_[r]; }

  static Matrix identity(int n);
  Matrix transposed() const;
  Matrix operator*(const Matrix& o) const;  // (rows_ x cols_) * (o.rows_ x o.cols_)
  Matrix operator+(const Matrix& o) const;
  bool is_zero() const;

  // y = M x  (x indexed by columns, y by rows).
  Vec apply(const Vec& x) const;

  int rank() const;

private:
  int rows_ = 0, cols_ = 0;
  std::vector<Vec> r_;
};

// A subspace of F_2^n kept as a reduced row-echelon basis (sorted by pivot).
class Subspace {
public:
  Subspace() = default;
  explicit Subspace(int ambient) : ambient_(ambient) {}
  static Subspace full(int ambient);
  static Subspace span(int ambient, const std::vector<Vec>& vectors);

  int ambient() const { return ambient_; }
  int dim() const { return (int)basis_.size(); }
  const std::vector<Vec>& basis() const { return basis_; }

  // Insert a vector; returns true if it was independent (dimension grew).
  bool insert(Vec v);
  bool contains(Vec v) const;
  // Reduce v modulo the basis (deterministic representative of v + this).
  Vec reduce(Vec v) const;

  friend Subspace operator+(const Subspace& a, const Subspace& b);
  friend Subspace intersect(const Subspace& a, const Subspace& b);
  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
  }

private:
  int ambient_ = 0;
  std::vector<Vec> basis_;  // reduced echelon, ascending pivots
  std::vector<int> pivots_;
};

// dim((V + W) / W): how much of V sticks out of W.
int quotient_dim(const Subspace& v, const Subspace& w);

// For every m in 0..n, dim(V intersect span{e_order[0], ..., e_order[m-1]}),
// computed in one elimination pass.  `order` must be a permutation of the
// ambient coordinates.
std::vector<int> prefix_dims(const Subspace& v, const std::vector<int>& order);

// Echelonized basis of V such that each vector has a distinct rightmost
// support position in the given coordinate order.  Returns pairs of
// (position in `order`, vector in the original coordinates) sorted by
// position; the first m entries span V intersect prefix_m.
std::vector<std::pair<int, Vec>> pivoted_basis(const Subspace& v,
                                               const std::vector<int>& order);

struct KernelImage {
  Subspace kernel;  // subspace of the domain F_2^cols
  Subspace image;   // subspace of the codomain F_2^rows
};
KernelImage kernel_image(const Matrix& m);

// Solve M w = b; returns one solution if any.
std::optional<Vec> solve(const Matrix& m, const Vec& b);

// Find z in `constraint` and w with  z + M w = b.  Returns (z, w).
std::optional<std::pair<Vec, Vec>> solve_in_subspace(const Matrix& m,
                                                     const Vec& b,
                                                     const Subspace& constraint);

}  // namespace floerlat::f2
