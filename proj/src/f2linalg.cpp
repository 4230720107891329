#include "floerlat/f2linalg.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace floerlat::f2 {

int Vec::lowest_bit() const {
  for (size_t k = 0; k < w_.size(); ++k)
    if (w_[k]) return (int)(k * 64 + std::countr_zero(w_[k]));
  return -1;
}

std::vector<int> Vec::support() const {
  std::vector<int> s;
  for (int i = 0; i < n_; ++i)
    if (get(i)) s.push_back(i);
  return s;
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c : r_[r].support()) t.set(c, r, true);
  return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
  Matrix out(rows_, o.cols_);
  for (int r = 0; r < rows_; ++r)
    for (int k : r_[r].support()) out.row(r) ^= o.row(k);
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("matrix sum shape mismatch");
  Matrix out = *this;
  for (int r = 0; r < rows_; ++r) out.row(r) ^= o.row(r);
  return out;
}

bool Matrix::is_zero() const {
  for (const Vec& v : r_)
    if (!v.is_zero()) return false;
  return true;
}

Vec Matrix::apply(const Vec& x) const {
  Vec y(rows_);
  for (int r = 0; r < rows_; ++r) {
    // parity of <row r, x>
    bool bit = false;
    for (int c : r_[r].support())
      if (x.get(c)) bit = !bit;
    if (bit) y.set(r, true);
  }
  return y;
}

int Matrix::rank() const {
  std::vector<Vec> rows = r_;
  int rank = 0;
  for (int c = 0; c < cols_ && rank < rows_; ++c) {
    int piv = -1;
    for (int r = rank; r < rows_; ++r)
      if (rows[r].get(c)) { piv = r; break; }
    if (piv < 0) continue;
    std::swap(rows[rank], rows[piv]);
    for (int r = 0; r < rows_; ++r)
      if (r != rank && rows[r].get(c)) rows[r] ^= rows[rank];
    ++rank;
  }
  return rank;
}

Subspace Subspace::full(int ambient) {
  Subspace s(ambient);
  for (int i = 0; i < ambient; ++i) {
    Vec e(ambient);
    e.set(i, true);
    s.insert(e);
  }
  return s;
}

Subspace Subspace::span(int ambient, const std::vector<Vec>& vectors) {
  Subspace s(ambient);
  for (const Vec& v : vectors) s.insert(v);
  return s;
}

bool Subspace::insert(Vec v) {
  for (size_t i = 0; i < basis_.size(); ++i)
    if (v.get(pivots_[i])) v ^= basis_[i];
  int p = v.lowest_bit();
  if (p < 0) return false;
  // Keep the basis reduced: clear bit p from existing rows.
  for (size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i].get(p)) basis_[i] ^= v;
  // Insert keeping pivots ascending.
  size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < p) ++pos;
  basis_.insert(basis_.begin() + pos, std::move(v));
  pivots_.insert(pivots_.begin() + pos, p);
  return true;
}

Vec Subspace::reduce(Vec v) const {
  for (size_t i = 0; i < basis_.size(); ++i)
    if (v.get(pivots_[i])) v ^= basis_[i];
  return v;
}

bool Subspace::contains(Vec v) const { return reduce(std::move(v)).is_zero(); }

Subspace operator+(const Subspace& a, const Subspace& b) {
  if (a.ambient_ != b.ambient_) throw std::invalid_argument("subspace sum ambient mismatch");
  Subspace s = a;
  for (const Vec& v : b.basis_) s.insert(v);
  return s;
}

// Zassenhaus: echelonize [a|a ; b|0]; rows with zero left half give the
// intersection on the right half.
Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient() != b.ambient()) throw std::invalid_argument("subspace intersect ambient mismatch");
  int n = a.ambient();
  std::vector<Vec> rows;
  for (const Vec& v : a.basis()) {
    Vec r(2 * n);
    for (int i : v.support()) { r.set(i, true); r.set(n + i, true); }
    rows.push_back(r);
  }
  for (const Vec& v : b.basis()) {
    Vec r(2 * n);
    for (int i : v.support()) r.set(i, true);
    rows.push_back(r);
  }
  // Echelonize on the first n coordinates.
  size_t rank = 0;
  for (int c = 0; c < n && rank < rows.size(); ++c) {
    size_t piv = rank;
    while (piv < rows.size() && !rows[piv].get(c)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    for (size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r].get(c)) rows[r] ^= rows[rank];
    ++rank;
  }
  Subspace out(n);
  for (size_t r = rank; r < rows.size(); ++r) {
    Vec right(n);
    bool nonzero = false;
    for (int i = 0; i < n; ++i)
      if (rows[r].get(n + i)) { right.set(i, true); nonzero = true; }
    if (nonzero) out.insert(right);
  }
  return out;
}

int quotient_dim(const Subspace& v, const Subspace& w) {
  return (v + w).dim() - w.dim();
}

KernelImage kernel_image(const Matrix& m) {
  int rows = m.rows(), cols = m.cols();
  // Column reduction with an identity tag: work on the transposed rows.
  std::vector<Vec> col(cols, Vec(rows));   // columns of m as vectors in F_2^rows
  for (int r = 0; r < rows; ++r)
    for (int c : m.row(r).support()) col[c].set(r, true);
  std::vector<Vec> tag(cols, Vec(cols));
  for (int c = 0; c < cols; ++c) tag[c].set(c, true);

  KernelImage out{Subspace(cols), Subspace(rows)};
  std::vector<int> used(rows, -1);
  for (int c = 0; c < cols; ++c) {
    Vec v = col[c], t = tag[c];
    for (int p = v.lowest_bit(); p >= 0; p = v.lowest_bit()) {
      if (used[p] < 0) { used[p] = c; col[c] = v; tag[c] = t; break; }
      v ^= col[used[p]];
      t ^= tag[used[p]];
    }
    if (v.is_zero())
      out.kernel.insert(t);
    else
      out.image.insert(v);
  }
  return out;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  int rows = m.rows(), cols = m.cols();
  if (b.size() != rows) throw std::invalid_argument("solve: rhs size mismatch");
  // Augmented row elimination, tracking column operations is unnecessary:
  // eliminate on [m | b] by rows, then back-substitute via pivot columns.
  std::vector<Vec> r(rows, Vec(cols + 1));
  for (int i = 0; i < rows; ++i) {
    for (int c : m.row(i).support()) r[i].set(c, true);
    if (b.get(i)) r[i].set(cols, true);
  }
  std::vector<int> pivot_col;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int i = rank; i < rows; ++i)
      if (r[i].get(c)) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(r[rank], r[piv]);
    for (int i = 0; i < rows; ++i)
      if (i != rank && r[i].get(c)) r[i] ^= r[rank];
    pivot_col.push_back(c);
    ++rank;
  }
  for (int i = rank; i < rows; ++i)
    if (r[i].get(cols)) return std::nullopt;  // inconsistent
  Vec w(cols);
  for (int i = 0; i < rank; ++i)
    if (r[i].get(cols)) w.set(pivot_col[i], true);
  return w;
}

std::optional<std::pair<Vec, Vec>> solve_in_subspace(const Matrix& m,
                                                     const Vec& b,
                                                     const Subspace& constraint) {
  int rows = m.rows(), cols = m.cols();
  if (constraint.ambient() != rows)
    throw std::invalid_argument("solve_in_subspace: constraint lives in the codomain");
  int k = constraint.dim();
  // Solve [C | M] (a, w)^T = b where C's columns are the constraint basis.
  Matrix big(rows, k + cols);
  for (int j = 0; j < k; ++j)
    for (int i : constraint.basis()[j].support()) big.set(i, j, true);
  for (int i = 0; i < rows; ++i)
    for (int c : m.row(i).support()) big.set(i, k + c, true);
  auto sol = solve(big, b);
  if (!sol) return std::nullopt;
  Vec z(rows), w(cols);
  for (int j = 0; j < k; ++j)
    if (sol->get(j)) z ^= constraint.basis()[j];
  for (int c = 0; c < cols; ++c)
    if (sol->get(k + c)) w.set(c, true);
  return std::make_pair(z, w);
}

}  // namespace floerlat::f2

namespace floerlat::f2 {

int Vec::highest_bit() const {
  for (int k = static_cast<int>(w_.size()) - 1; k >= 0; --k)
    if (w_[k]) return k * 64 + 63 - __builtin_clzll(w_[k]);
  return -1;
}

std::vector<int> prefix_dims(const Subspace& v, const std::vector<int>& order) {
  const int n = v.ambient();
  if (static_cast<int>(order.size()) != n)
    throw std::invalid_argument("prefix_dims: order must cover the ambient space");
  std::vector<int> colpos(n, -1);
  for (int i = 0; i < n; ++i) colpos[order[i]] = i;
  // Permute the basis into the new coordinate order, then eliminate so that
  // each surviving vector has a distinct highest set position.  A vector with
  // highest position h lies in the span of the first h+1 coordinates and in
  // no smaller prefix, so dim(V /\ prefix_m) = #(pivots < m).
  std::vector<Vec> rows;
  for (const Vec& b : v.basis()) {
    Vec p(n);
    for (int i : b.support()) p.set(colpos[i], true);
    rows.push_back(std::move(p));
  }
  std::vector<int> pivot_row(n, -1);
  std::vector<int> counts(n + 1, 0);
  std::vector<Vec> kept;
  for (Vec& r : rows) {
    int h;
    while ((h = r.highest_bit()) >= 0 && pivot_row[h] >= 0) r ^= kept[pivot_row[h]];
    if (h < 0) continue;  // cannot happen for an independent basis
    pivot_row[h] = static_cast<int>(kept.size());
    kept.push_back(r);
    ++counts[h + 1];
  }
  std::vector<int> out(n + 1, 0);
  for (int m = 1; m <= n; ++m) out[m] = out[m - 1] + counts[m];
  return out;
}

std::vector<std::pair<int, Vec>> pivoted_basis(const Subspace& v,
                                               const std::vector<int>& order) {
  const int n = v.ambient();
  if (static_cast<int>(order.size()) != n)
    throw std::invalid_argument("pivoted_basis: order must cover the ambient space");
  std::vector<int> colpos(n, -1);
  for (int i = 0; i < n; ++i) colpos[order[i]] = i;
  // Same elimination as prefix_dims, but each permuted row drags its
  // original-coordinate twin through the row operations.
  std::vector<std::pair<Vec, Vec>> rows;  // (permuted, original)
  for (const Vec& b : v.basis()) {
    Vec p(n);
    for (int i : b.support()) p.set(colpos[i], true);
    rows.emplace_back(std::move(p), b);
  }
  std::vector<int> pivot_row(n, -1);
  std::vector<std::pair<Vec, Vec>> kept;
  for (auto& [p, o] : rows) {
    int h;
    while ((h = p.highest_bit()) >= 0 && pivot_row[h] >= 0) {
      p ^= kept[pivot_row[h]].first;
      o ^= kept[pivot_row[h]].second;
    }
    if (h < 0) continue;
    pivot_row[h] = static_cast<int>(kept.size());
    kept.emplace_back(p, o);
  }
  std::vector<std::pair<int, Vec>> out;
  for (int h = 0; h < n; ++h)
    if (pivot_row[h] >= 0) out.emplace_back(h, kept[pivot_row[h]].second);
  return out;
}

}  // namespace floerlat::f2
