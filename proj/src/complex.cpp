#include "floerlat/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace floerlat {

std::vector<Edge> normalize_edges(std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end());
  std::vector<Edge> out;
  for (size_t i = 0; i < edges.size();) {
    size_t j = i;
    while (j < edges.size() && edges[j] == edges[i]) ++j;
    if ((j - i) % 2) out.push_back(edges[i]);
    i = j;
  }
  return out;
}

long long binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  long long r = 1;
  for (long long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

ModelComplex::ModelComplex(std::string name, std::vector<Generator> gens,
                           std::vector<Edge> edges, int n_components)
    : name_(std::move(name)),
      gens_(std::move(gens)),
      edges_(normalize_edges(std::move(edges))),
      n_components_(n_components),
      cache_(std::make_shared<HomologyCache>()) {
  pos_.resize(gens_.size(), -1);
  for (int i = 0; i < static_cast<int>(gens_.size()); ++i) {
    int p = parity_of(gens_[i].M);
    pos_[i] = static_cast<int>(pgens_[p].size());
    pgens_[p].push_back(i);
  }
  for (int p : {0, 1})
    B_[p] = f2::Matrix(static_cast<int>(pgens_[1 - p].size()),
                       static_cast<int>(pgens_[p].size()));
  for (const auto& [x, y] : edges_) {
    if (x < 0 || y < 0 || x >= size() || y >= size())
      throw ComplexError(name_ + ": edge endpoint out of range");
    if (x == y) throw InvalidDifferential(name_ + ": self-edge on " + gens_[x].id);
    int p = parity_of(gens_[x].M);
    if (parity_of(gens_[y].M) != 1 - p)
      throw InvalidDifferential(name_ + ": edge " + gens_[x].id + " -> " +
                                gens_[y].id + " has even grading drop");
    B_[p].flip(pos_[y], pos_[x]);
  }
}

long long ModelComplex::edge_power(const Edge& e) const {
  return (gens_[e.second].M - gens_[e.first].M + 1) / 2;
}

const f2::KernelImage& ModelComplex::ki(int p) const {
  if (!cache_->ki[p]) cache_->ki[p] = f2::kernel_image(B_[p]);
  return *cache_->ki[p];
}

const f2::Subspace& ModelComplex::kernel(int p) const { return ki(p).kernel; }

const f2::Subspace& ModelComplex::image_into(int p) const {
  return ki(1 - p).image;
}

long long ModelComplex::homology_dim(int p) const {
  return kernel(p).dim() - image_into(p).dim();
}

std::vector<ModelComplex::BasisElement> ModelComplex::basis(long long d) const {
  std::vector<BasisElement> out;
  for (int g : pgens_[parity_of(d)]) {
    long long j = (d - gens_[g].M) / 2;
    out.push_back({g, j, gens_[g].A + j});
  }
  return out;
}

long long ModelComplex::level_homology_dim(long long d,
                                           const SouthWestRegion& S) const {
  int p = parity_of(d);
  auto bas = basis(d);
  std::vector<int> coords;
  for (int i = 0; i < static_cast<int>(bas.size()); ++i)
    if (S.member(Q(bas[i].j), Q(bas[i].A))) coords.push_back(i);
  f2::Subspace level = coordinate_subspace(bas.size(), coords);
  return quotient_dim(intersect(kernel(p), level), image_into(p));
}

ModelComplex ModelComplex::with_name(std::string name) const {
  return ModelComplex(std::move(name), gens_, edges_, n_components_);
}

ModelComplex ModelComplex::with_components(int n) const {
  return ModelComplex(name_, gens_, edges_, n);
}

namespace {

// dim(V /\ prefix) at every cut of coordinates ordered by an integer key,
// for the cumulative levels key <= t.  Returns pairs (t, dim at key <= t)
// for each distinct key t.
std::vector<int> order_by_key(const std::vector<long long>& key) {
  std::vector<int> idx(key.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return key[a] < key[b]; });
  return idx;
}

}  // namespace

void ModelComplex::validate() const {
  if (n_components_ < 1)
    throw ComplexError(name_ + ": component count must be at least 1");
  std::set<std::string> ids;
  for (const auto& g : gens_) {
    if (g.id.empty()) throw ComplexError(name_ + ": empty generator id");
    if (!ids.insert(g.id).second)
      throw ComplexError(name_ + ": duplicate generator id " + g.id);
  }
  for (const auto& e : edges_) {
    long long k = edge_power(e);
    if (k < 0)
      throw InvalidDifferential(name_ + ": edge " + gens_[e.first].id + " -> " +
                                gens_[e.second].id + " needs U-power " +
                                std::to_string(k));
    if (gens_[e.second].A - k > gens_[e.first].A)
      throw FiltrationViolation(name_ + ": edge " + gens_[e.first].id + " -> " +
                                gens_[e.second].id + " raises the A-level");
  }
  if (!(B_[1] * B_[0]).is_zero() || !(B_[0] * B_[1]).is_zero())
    throw InvalidDifferential(name_ + ": differential does not square to zero");

  const long long n = n_components_;
  for (int p : {0, 1}) {
    long long expect = 0;
    for (long long k = 0; k <= n - 1; ++k)
      if (k % 2 == p) expect += binomial(n - 1, k);
    if (homology_dim(p) != expect)
      throw WrongHomologyRank(
          name_ + ": homology dimension " + std::to_string(homology_dim(p)) +
          " in parity " + std::to_string(p) + ", expected " +
          std::to_string(expect));
  }

  for (long long d : {0LL, -1LL}) {
    int p = parity_of(d);
    auto bas = basis(d);
    std::vector<long long> js;
    long long lo = -1, hi = n;
    for (const auto& b : bas) {
      js.push_back(b.j);
      lo = std::min(lo, b.j - 1);
      hi = std::max(hi, b.j + 1);
    }
    std::vector<int> order = order_by_key(js);
    std::vector<int> kdims = f2::prefix_dims(kernel(p), order);
    std::vector<int> idims = f2::prefix_dims(image_into(p), order);
    std::vector<long long> sorted_js = js;
    std::sort(sorted_js.begin(), sorted_js.end());
    long long prev = 0;
    for (long long t = lo; t <= hi; ++t) {
      size_t m = std::upper_bound(sorted_js.begin(), sorted_js.end(), t) -
                 sorted_js.begin();
      long long cur = kdims[m] - idims[m];
      if (cur - prev != binomial(n - 1, 2 * t - d))
        throw WrongHomologyRank(
            name_ + ": degree " + std::to_string(d) + " level jump at t = " +
            std::to_string(t) + " is " + std::to_string(cur - prev) +
            ", expected binom(" + std::to_string(n - 1) + ", " +
            std::to_string(2 * t - d) + ")");
      prev = cur;
    }
  }
}

f2::Subspace coordinate_subspace(size_t n, const std::vector<int>& coords) {
  f2::Subspace s(static_cast<int>(n));
  for (int c : coords) {
    f2::Vec v(static_cast<int>(n));
    v.set(c, true);
    s.insert(std::move(v));
  }
  return s;
}

// ---- closed-form constructions ----

ModelComplex unlink_complex(int n) {
  if (n < 1) throw ComplexError("unlink complex needs at least one component");
  std::vector<Generator> gens;
  for (long long k = 0; k <= n - 1; ++k)
    for (long long c = 0; c < binomial(n - 1, k); ++c)
      gens.push_back({"u" + std::to_string(k) + "_" + std::to_string(c), -k, 0});
  return ModelComplex("unlink" + std::to_string(n), std::move(gens), {}, n);
}

namespace {

void append_staircase(long long s, long long mshift, const std::string& prefix,
                      std::vector<Generator>& gens, std::vector<Edge>& edges) {
  int base = static_cast<int>(gens.size());
  if (s >= 0) {
    // Whites p_0..p_s descend the diagonal; black q_i maps up to p_{i-1}
    // (U-power 1) and down to p_i (U-power 0).
    for (long long i = 0; i <= s; ++i)
      gens.push_back({prefix + "p" + std::to_string(i), -2 * i + mshift, s - 2 * i});
    for (long long i = 1; i <= s; ++i) {
      gens.push_back(
          {prefix + "q" + std::to_string(i), 1 - 2 * i + mshift, s - 2 * i + 1});
      int q = static_cast<int>(gens.size()) - 1;
      edges.push_back({q, base + static_cast<int>(i) - 1});
      edges.push_back({q, base + static_cast<int>(i)});
    }
  } else {
    // Reflected shape: whites map out instead of being mapped onto.
    long long m = -s;
    for (long long i = 0; i <= m; ++i)
      gens.push_back(
          {prefix + "p" + std::to_string(i), -2 * (s + i) + mshift, -s - 2 * i});
    int qbase = static_cast<int>(gens.size());
    for (long long i = 0; i < m; ++i)
      gens.push_back({prefix + "q" + std::to_string(i),
                      -1 - 2 * (s + i) + mshift, -s - 2 * i - 1});
    for (long long i = 0; i <= m; ++i) {
      if (i >= 1) edges.push_back({base + static_cast<int>(i),
                                   qbase + static_cast<int>(i) - 1});
      if (i < m) edges.push_back({base + static_cast<int>(i),
                                  qbase + static_cast<int>(i)});
    }
  }
}

}  // namespace

ModelComplex staircase_thin(int n, long long sigma) {
  if (((n - 1 - sigma) % 2 + 2) % 2 != 0)
    throw ComplexError("thin complex needs sigma = n - 1 (mod 2)");
  std::vector<Generator> gens;
  std::vector<Edge> edges;
  long long summands = 0;
  for (long long k = 0; k <= n - 1; ++k) summands += binomial(n - 1, k);
  for (long long k = 0; k <= n - 1; ++k) {
    long long s = (n - 1 - sigma) / 2 - k;
    for (long long c = 0; c < binomial(n - 1, k); ++c) {
      std::string prefix =
          summands > 1
              ? "k" + std::to_string(k) + "i" + std::to_string(c) + ":"
              : "";
      append_staircase(s, -k, prefix, gens, edges);
    }
  }
  return ModelComplex(
      "thin(n=" + std::to_string(n) + ",sigma=" + std::to_string(sigma) + ")",
      std::move(gens), std::move(edges), n);
}

ModelComplex lspace_staircase(const std::string& name,
                              const std::vector<long long>& exponents) {
  if (exponents.empty() || exponents.size() % 2 == 0)
    throw ComplexError(name + ": staircase needs an odd exponent count");
  for (size_t i = 1; i < exponents.size(); ++i)
    if (exponents[i - 1] <= exponents[i])
      throw ComplexError(name + ": staircase exponents must strictly decrease");
  int r = static_cast<int>(exponents.size() - 1) / 2;
  std::vector<Generator> gens;
  std::vector<Edge> edges;
  long long mw = 0;
  for (int j = 0; j <= r; ++j) {
    gens.push_back({"w" + std::to_string(j), mw, exponents[2 * j]});
    if (j < r) {
      long long mb = mw + 1 - 2 * (exponents[2 * j] - exponents[2 * j + 1]);
      gens.push_back({"b" + std::to_string(j), mb, exponents[2 * j + 1]});
      mw = mb - 1;
    }
  }
  for (int j = 0; j < r; ++j) {
    int b = 2 * j + 1;
    edges.push_back({b, b - 1});  // b_j -> w_j, U-power e_{2j} - e_{2j+1}
    edges.push_back({b, b + 1});  // b_j -> w_{j+1}, U-power 0
  }
  return ModelComplex(name, std::move(gens), std::move(edges), 1);
}

ModelComplex acyclic_square(long long i, long long a, int n_components) {
  std::vector<Generator> gens = {{"s1", i, a},
                                 {"s2", i + 1, a + 1},
                                 {"s3", i - 1, a - 1},
                                 {"s4", i, a}};
  std::vector<Edge> edges = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  return ModelComplex(
      "square(" + std::to_string(i) + "," + std::to_string(a) + ")",
      std::move(gens), std::move(edges), n_components);
}

// ---- operations ----

ModelComplex mirror(const ModelComplex& c) {
  std::vector<Generator> gens = c.gens();
  long long sh = 1 - c.n_components();
  for (auto& g : gens) {
    g.M = -g.M + sh;
    g.A = -g.A;
  }
  std::vector<Edge> edges;
  for (const auto& [x, y] : c.edges()) edges.push_back({y, x});
  return ModelComplex("m(" + c.name() + ")", std::move(gens), std::move(edges),
                      c.n_components());
}

ModelComplex shift(const ModelComplex& c, long long a) {
  std::vector<Generator> gens = c.gens();
  for (auto& g : gens) g.M += a;
  return ModelComplex(c.name() + "[" + std::to_string(a) + "]",
                      std::move(gens), c.edges(), c.n_components());
}

ModelComplex tensor(const ModelComplex& a, const ModelComplex& b) {
  std::vector<Generator> gens;
  gens.reserve(static_cast<size_t>(a.size()) * b.size());
  auto at = [&](int i, int j) { return i * b.size() + j; };
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < b.size(); ++j)
      gens.push_back({a.gens()[i].id + "|" + b.gens()[j].id,
                      a.gens()[i].M + b.gens()[j].M,
                      a.gens()[i].A + b.gens()[j].A});
  std::vector<Edge> edges;
  for (const auto& [x, y] : a.edges())
    for (int j = 0; j < b.size(); ++j) edges.push_back({at(x, j), at(y, j)});
  for (int i = 0; i < a.size(); ++i)
    for (const auto& [x, y] : b.edges()) edges.push_back({at(i, x), at(i, y)});
  return ModelComplex(a.name() + "⊗" + b.name(), std::move(gens),
                      std::move(edges), a.n_components() + b.n_components() - 1);
}

ModelComplex direct_sum(const ModelComplex& a, const ModelComplex& b) {
  if (a.n_components() != b.n_components())
    throw ComplexError("direct sum needs matching component counts: " +
                       a.name() + " vs " + b.name());
  std::set<std::string> ids;
  for (const auto& g : a.gens()) ids.insert(g.id);
  for (const auto& g : b.gens())
    if (ids.count(g.id))
      throw ComplexError("direct sum id collision on " + g.id);
  std::vector<Generator> gens = a.gens();
  gens.insert(gens.end(), b.gens().begin(), b.gens().end());
  std::vector<Edge> edges = a.edges();
  for (const auto& [x, y] : b.edges())
    edges.push_back({x + a.size(), y + a.size()});
  return ModelComplex(a.name() + "⊕" + b.name(), std::move(gens),
                      std::move(edges), a.n_components());
}

ModelComplex disjoint_union(const ModelComplex& a, const ModelComplex& b) {
  return tensor(tensor(a, b), unlink_complex(2))
      .with_name("(" + a.name() + ")⊔(" + b.name() + ")");
}

ModelComplex reduce(const ModelComplex& c) {
  const int N = c.size();
  std::vector<int> rank(N);
  {
    std::vector<int> order(N);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      const auto& gx = c.gens()[x];
      const auto& gy = c.gens()[y];
      return std::tie(gx.M, gx.A, gx.id) < std::tie(gy.M, gy.A, gy.id);
    });
    for (int i = 0; i < N; ++i) rank[order[i]] = i;
  }
  std::vector<std::set<int>> out(N), in(N);
  for (const auto& [x, y] : c.edges()) {
    out[x].insert(y);
    in[y].insert(x);
  }
  std::vector<char> alive(N, 1);
  auto cancellable = [&](int x, int y) {
    return c.gens()[y].M == c.gens()[x].M - 1 && c.gens()[y].A == c.gens()[x].A;
  };
  while (true) {
    int bx = -1, by = -1;
    for (int x = 0; x < N; ++x) {
      if (!alive[x]) continue;
      for (int y : out[x])
        if (cancellable(x, y) &&
            (bx < 0 || std::make_pair(rank[x], rank[y]) <
                           std::make_pair(rank[bx], rank[by]))) {
          bx = x;
          by = y;
        }
    }
    if (bx < 0) break;
    std::vector<int> ws(in[by].begin(), in[by].end());
    std::vector<int> zs(out[bx].begin(), out[bx].end());
    for (int w : ws) {
      if (w == bx) continue;
      for (int z : zs) {
        if (z == by) continue;
        if (out[w].count(z)) {
          out[w].erase(z);
          in[z].erase(w);
        } else {
          out[w].insert(z);
          in[z].insert(w);
        }
      }
    }
    for (int v : {bx, by}) {
      for (int z : out[v]) in[z].erase(v);
      for (int w : in[v]) out[w].erase(v);
      out[v].clear();
      in[v].clear();
      alive[v] = 0;
    }
  }
  std::vector<Generator> gens;
  std::vector<int> remap(N, -1);
  for (int i = 0; i < N; ++i)
    if (alive[i]) {
      remap[i] = static_cast<int>(gens.size());
      gens.push_back(c.gens()[i]);
    }
  std::vector<Edge> edges;
  for (int i = 0; i < N; ++i)
    if (alive[i])
      for (int y : out[i]) edges.push_back({remap[i], remap[y]});
  return ModelComplex(c.name(), std::move(gens), std::move(edges),
                      c.n_components());
}

// ---- comparison ----

Window natural_window(const ModelComplex& c) {
  Window w;
  bool first = true;
  for (long long d : {0LL, -1LL})
    for (const auto& b : c.basis(d)) {
      if (first) {
        w = {b.j, b.j, b.A, b.A};
        first = false;
      } else {
        w.t_lo = std::min(w.t_lo, b.j);
        w.t_hi = std::max(w.t_hi, b.j);
        w.s_lo = std::min(w.s_lo, b.A);
        w.s_hi = std::max(w.s_hi, b.A);
      }
    }
  return w;
}

Window join(const Window& a, const Window& b) {
  return {std::min(a.t_lo, b.t_lo), std::max(a.t_hi, b.t_hi),
          std::min(a.s_lo, b.s_lo), std::max(a.s_hi, b.s_hi)};
}

Fingerprint fingerprint(const ModelComplex& c, const Window& w) {
  Fingerprint fp;
  fp.window = w;
  for (long long d : {0LL, -1LL}) {
    auto bas = c.basis(d);
    for (const auto& b : bas)
      if (b.j < w.t_lo || b.j > w.t_hi || b.A < w.s_lo || b.A > w.s_hi)
        throw ComplexError(c.name() +
                           ": fingerprint window misses a basis position");
    int p = ModelComplex::parity_of(d);
    auto& dims = d == 0 ? fp.dims0 : fp.dims1;
    for (long long t = w.t_lo; t <= w.t_hi; ++t) {
      // Coordinates inside {j <= t} ordered by A, then the rest; every
      // level {j <= t, A <= s} is then a prefix.  The homology-level
      // dimension is dim(ker /\ level) - dim(im /\ level) since im <= ker.
      std::vector<int> idx(bas.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) {
        bool inx = bas[x].j <= t, iny = bas[y].j <= t;
        if (inx != iny) return inx;
        return bas[x].A < bas[y].A;
      });
      std::vector<int> kdims = f2::prefix_dims(c.kernel(p), idx);
      std::vector<int> idims = f2::prefix_dims(c.image_into(p), idx);
      std::vector<long long> as;
      for (int i : idx)
        if (bas[i].j <= t) as.push_back(bas[i].A);
      for (long long s = w.s_lo; s <= w.s_hi; ++s) {
        size_t m = std::upper_bound(as.begin(), as.end(), s) - as.begin();
        dims.push_back(kdims[m] - idims[m]);
      }
    }
  }
  return fp;
}

namespace {

struct ChainMapSpace {
  std::vector<std::pair<int, int>> unknowns;  // (source gen, target gen)
  f2::Subspace solutions;                     // kernel of the linear system
  bool exceeded = false;
};

ChainMapSpace chain_map_space(const ModelComplex& a, const ModelComplex& b) {
  ChainMapSpace r;
  std::map<std::pair<int, int>, int> uidx;
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < b.size(); ++y) {
      long long dm = b.gens()[y].M - a.gens()[x].M;
      if (dm % 2 != 0) continue;
      long long k = dm / 2;
      if (k < 0) continue;
      if (b.gens()[y].A - k > a.gens()[x].A) continue;
      uidx[{x, y}] = static_cast<int>(r.unknowns.size());
      r.unknowns.emplace_back(x, y);
    }
  if (r.unknowns.size() > 4096) {
    r.exceeded = true;
    return r;
  }
  std::vector<std::vector<int>> out_a(a.size());
  for (const auto& [x, y] : a.edges()) out_a[x].push_back(y);
  std::vector<std::vector<int>> in_b(b.size());
  for (const auto& [x, y] : b.edges()) in_b[y].push_back(x);
  std::vector<f2::Vec> rows;
  int ncols = static_cast<int>(r.unknowns.size());
  for (int x = 0; x < a.size(); ++x)
    for (int w = 0; w < b.size(); ++w) {
      if ((b.gens()[w].M - a.gens()[x].M) % 2 == 0) continue;
      f2::Vec row(ncols);
      for (int z : out_a[x]) {
        auto it = uidx.find({z, w});
        if (it != uidx.end()) row.flip(it->second);
      }
      for (int y : in_b[w]) {
        auto it = uidx.find({x, y});
        if (it != uidx.end()) row.flip(it->second);
      }
      if (!row.is_zero()) rows.push_back(std::move(row));
    }
  f2::Matrix eqs(static_cast<int>(rows.size()), ncols);
  for (int i = 0; i < static_cast<int>(rows.size()); ++i) eqs.row(i) = rows[i];
  r.solutions = f2::kernel_image(eqs).kernel;
  return r;
}

// Does some element of the solution space induce an isomorphism on homology
// in both parity classes?
bool solution_with_iso(const ModelComplex& a, const ModelComplex& b,
                       const ChainMapSpace& space) {
  int dim = space.solutions.dim();
  f2::Vec coeffs(static_cast<int>(space.unknowns.size()));
  for (uint64_t mask = 0;; ++mask) {
    if (mask) {
      // Gray-code step: toggle one basis vector per iteration.
      int bit = __builtin_ctzll(mask);
      if (bit >= dim) break;
      coeffs ^= space.solutions.basis()[bit];
    }
    f2::Matrix F[2];
    for (int p : {0, 1})
      F[p] = f2::Matrix(static_cast<int>(b.parity_gens(p).size()),
                        static_cast<int>(a.parity_gens(p).size()));
    for (int u : coeffs.support()) {
      auto [x, y] = space.unknowns[u];
      int p = ModelComplex::parity_of(a.gens()[x].M);
      F[p].flip(b.parity_pos(y), a.parity_pos(x));
    }
    bool ok = true;
    for (int p : {0, 1}) {
      f2::Subspace sum = b.image_into(p);
      for (const auto& v : a.kernel(p).basis()) sum.insert(F[p].apply(v));
      if (sum.dim() - b.image_into(p).dim() != b.homology_dim(p)) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
    if (dim == 0) break;
  }
  return false;
}

}  // namespace

LocalEquiv exhaustive_local_equiv(const ModelComplex& a, const ModelComplex& b,
                                  int budget) {
  for (int p : {0, 1})
    if (a.homology_dim(p) != b.homology_dim(p)) return LocalEquiv::No;
  Window w = join(natural_window(a), natural_window(b));
  if (!(fingerprint(a, w) == fingerprint(b, w))) return LocalEquiv::No;
  if (budget < 0 || budget > 20) budget = 20;
  for (int dir = 0; dir < 2; ++dir) {
    const ModelComplex& src = dir == 0 ? a : b;
    const ModelComplex& dst = dir == 0 ? b : a;
    ChainMapSpace space = chain_map_space(src, dst);
    if (space.exceeded || space.solutions.dim() > budget)
      return LocalEquiv::Exceeded;
    if (!solution_with_iso(src, dst, space)) return LocalEquiv::No;
  }
  return LocalEquiv::Yes;
}

// ---- singly graded flavour ----

PrimeComplex::PrimeComplex(std::string name, std::vector<PrimeGenerator> gens,
                           std::vector<Edge> edges, int n_components)
    : name_(std::move(name)),
      gens_(std::move(gens)),
      edges_(normalize_edges(std::move(edges))),
      n_components_(n_components) {
  B_ = f2::Matrix(size(), size());
  for (const auto& [x, y] : edges_) {
    if (x < 0 || y < 0 || x >= size() || y >= size())
      throw ComplexError(name_ + ": edge endpoint out of range");
    B_.flip(y, x);
  }
}

long long PrimeComplex::edge_power(const Edge& e) const {
  return gens_[e.second].delta - gens_[e.first].delta + 1;
}

void PrimeComplex::validate() const {
  for (const auto& e : edges_)
    if (edge_power(e) < 0)
      throw InvalidDifferential(name_ + ": edge " + gens_[e.first].id +
                                " -> " + gens_[e.second].id +
                                " needs a negative U-power");
  if (!(B_ * B_).is_zero())
    throw InvalidDifferential(name_ + ": differential does not square to zero");
}

const f2::KernelImage& PrimeComplex::ki() const {
  if (!ki_) ki_ = f2::kernel_image(B_);
  return *ki_;
}

long long PrimeComplex::homology_rank() const {
  return ki().kernel.dim() - ki().image.dim();
}

long long PrimeComplex::level_dim(long long d, long long t) const {
  std::vector<int> coords;
  for (int g = 0; g < size(); ++g)
    if (gens_[g].delta >= d - t) coords.push_back(g);
  f2::Subspace level = coordinate_subspace(size(), coords);
  return quotient_dim(intersect(ki().kernel, level), ki().image);
}

PrimeComplex prime_of_model(const ModelComplex& c) {
  std::vector<PrimeGenerator> gens;
  for (const auto& g : c.gens()) gens.push_back({g.id, g.M - g.A});
  return PrimeComplex("prime(" + c.name() + ")", std::move(gens), c.edges(),
                      c.n_components());
}

}  // namespace floerlat
