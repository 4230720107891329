#include "floerlat/grid.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <utility>

#include "floerlat/f2linalg.hpp"

namespace floerlat {

namespace {

int cyc_len(int lo, int hi, int g) { return ((hi - lo) % g + g) % g; }

bool is_permutation_of_range(const std::vector<int>& v) {
  std::vector<bool> seen(v.size(), false);
  for (int x : v) {
    if (x < 0 || x >= static_cast<int>(v.size()) || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

std::string compact_name(const GridDiagram& g) {
  std::ostringstream os;
  os << "grid" << g.size << "[";
  for (int r = 0; r < g.size; ++r) os << g.o_col[r];
  os << "/";
  for (int r = 0; r < g.size; ++r) os << g.x_col[r];
  os << "]";
  return os.str();
}

// #{(p, q) in P x Q : p strictly south-west of q} on doubled coordinates.
long long strict_sw_pairs(const std::vector<std::pair<int, int>>& p,
                          const std::vector<std::pair<int, int>>& q) {
  long long count = 0;
  for (const auto& [px, py] : p)
    for (const auto& [qx, qy] : q)
      if (px < qx && py < qy) ++count;
  return count;
}

// Maslov grading of a state against one family of markings (per-row columns),
// J(x,x) - 2 J(x,marks) + J(marks,marks) + 1 with markings at square centers.
long long maslov_against(const std::vector<int>& state,
                         const std::vector<int>& mark_col) {
  const int g = static_cast<int>(state.size());
  std::vector<std::pair<int, int>> pts, marks;
  pts.reserve(g);
  marks.reserve(g);
  for (int c = 0; c < g; ++c) pts.emplace_back(2 * c, 2 * state[c]);
  for (int r = 0; r < g; ++r) marks.emplace_back(2 * mark_col[r] + 1, 2 * r + 1);
  return strict_sw_pairs(pts, pts) - strict_sw_pairs(pts, marks) -
         strict_sw_pairs(marks, pts) + strict_sw_pairs(marks, marks) + 1;
}

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Lexicographic rank of a permutation (matches grid_states ordering).
int perm_rank(const std::vector<int>& p) {
  const int g = static_cast<int>(p.size());
  long long rank = 0;
  for (int i = 0; i < g; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < g; ++j)
      if (p[j] < p[i]) ++smaller;
    rank += smaller * factorial(g - 1 - i);
  }
  return static_cast<int>(rank);
}

struct GridData {
  std::vector<std::vector<int>> states;
  std::vector<GridGradings> gradings;
  std::vector<GridEdgeData> edges;
};

GridData build_grid_data(const GridDiagram& g) {
  validate_grid(g);
  if (g.size > kGridSizeLimit)
    throw GridError("grid size " + std::to_string(g.size) +
                    " exceeds the state-enumeration limit " +
                    std::to_string(kGridSizeLimit));
  GridData data;
  data.states = grid_states(g.size);
  data.gradings.reserve(data.states.size());
  for (const auto& s : data.states) data.gradings.push_back(grid_gradings(g, s));

  const int n = g.size;
  // Net mod-2 empty rectangles; the two rectangles of a cancelling pair must
  // carry equal counts (forced by the gradings), which we assert.
  std::map<std::pair<int, int>, std::pair<long long, long long>> toggles;
  std::vector<int> y;
  for (int si = 0; si < static_cast<int>(data.states.size()); ++si) {
    const std::vector<int>& x = data.states[si];
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        y = x;
        std::swap(y[a], y[b]);
        const int yi = perm_rank(y);
        // The two rectangles from x to y: column arc then row arc, cyclic.
        const int corners[2][2] = {{a, b}, {b, a}};
        for (const auto& corner : corners) {
          const int ca = corner[0], cb = corner[1];
          const int r1 = x[ca], r2 = x[cb];
          const int col_len = cyc_len(ca, cb, n);
          const int row_len = cyc_len(r1, r2, n);
          // Interior emptiness: the untouched points of x.
          bool empty = true;
          for (int c = (ca + 1) % n; c != cb; c = (c + 1) % n) {
            if (cyc_len(r1, x[c], n) < row_len) {
              empty = false;
              break;
            }
          }
          if (!empty) continue;
          long long o_count = 0, x_count = 0;
          for (int rr = r1, k = 0; k < row_len; ++k, rr = (rr + 1) % n) {
            if (cyc_len(ca, g.o_col[rr], n) < col_len) ++o_count;
            if (cyc_len(ca, g.x_col[rr], n) < col_len) ++x_count;
          }
          // Grading bookkeeping of an empty rectangle.
          const GridGradings& gx = data.gradings[si];
          const GridGradings& gy = data.gradings[yi];
          if (gy.M - gx.M != 2 * o_count - 1)
            throw GridError("empty rectangle violates the Maslov drop law");
          if (gx.A - gy.A != x_count - o_count)
            throw GridError("empty rectangle violates the Alexander drop law");
          auto [it, inserted] =
              toggles.try_emplace({si, yi}, o_count, x_count + o_count);
          if (!inserted) {
            if (it->second != std::pair(o_count, x_count + o_count))
              throw GridError("cancelling rectangles disagree on U-powers");
            toggles.erase(it);
          }
        }
      }
    }
  }
  data.edges.reserve(toggles.size());
  for (const auto& [key, counts] : toggles)
    data.edges.push_back({key.first, key.second, counts.first, counts.second});
  return data;
}

std::string state_id(const std::vector<int>& state) {
  std::string id = "x";
  for (int r : state) id += static_cast<char>('0' + r);
  return id;
}

// ---- W-factor peeling -------------------------------------------------
//
// The collapsed grid complex is, up to bifiltered homotopy equivalence, the
// minimal complex of the link tensored with (size - components) copies of
// the rank-two zero-differential factor W spanned by (M, A) = (0, 0) and
// (-1, -1).  After reduce() the grid complex is some minimal model of that
// tensor product, so its multiset of indecomposable summands is the link's
// multiset convolved binomially along the diagonal.  We split the reduced
// complex into connected summands (after a basis-change pass that undoes the
// gluings reduce's rewiring can introduce), group them by shape up to
// diagonal shift, deconvolve the multiplicities, and certify the result by
// tensoring the W factors back on and comparing summand multisets.

ModelComplex w_factor() {
  return ModelComplex("W", {{"w0", 0, 0}, {"w1", -1, -1}}, {}, 2);
}

// A complex in a chosen homogeneous basis: generator (M, A) pairs plus the
// GF(2) differential matrix, d(y, x) = 1 when y appears in the boundary of
// x.  U-powers are implied by the gradings, so grading-preserving GF(2)
// matrix algebra is faithful to the module structure.
struct SubComplex {
  std::vector<std::pair<long long, long long>> ma;
  f2::Matrix d;

  int size() const { return static_cast<int>(ma.size()); }
};

SubComplex sub_of(const ModelComplex& c) {
  SubComplex p;
  p.ma.reserve(c.size());
  for (const auto& g : c.gens()) p.ma.emplace_back(g.M, g.A);
  p.d = f2::Matrix(c.size(), c.size());
  for (const auto& [s, t] : c.edges()) p.d.set(t, s, true);
  return p;
}

std::vector<SubComplex> connected_parts(const SubComplex& p) {
  const int n = p.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (p.d.get(y, x)) parent[find(x)] = find(y);
  std::map<int, std::vector<int>> comps;
  for (int i = 0; i < n; ++i) comps[find(i)].push_back(i);
  std::vector<SubComplex> parts;
  parts.reserve(comps.size());
  if (comps.size() == 1) {
    parts.push_back(p);
    return parts;
  }
  for (const auto& [root, members] : comps) {
    SubComplex q;
    const int m = static_cast<int>(members.size());
    std::vector<int> local(n, -1);
    for (int i = 0; i < m; ++i) {
      local[members[i]] = i;
      q.ma.push_back(p.ma[members[i]]);
    }
    q.d = f2::Matrix(m, m);
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y)
        if (p.d.get(members[y], members[x])) q.d.set(y, x, true);
    parts.push_back(std::move(q));
  }
  return parts;
}

// Basis of the algebra of grading-preserving chain endomorphisms, returned
// as coefficient matrices phi with phi(z, x) = coefficient of z in phi(x).
std::vector<f2::Matrix> endomorphism_basis(const SubComplex& p) {
  const int n = p.size();
  std::map<std::pair<long long, long long>, std::vector<int>> blocks;
  for (int i = 0; i < n; ++i) blocks[p.ma[i]].push_back(i);
  std::vector<std::pair<int, int>> unknowns;  // (row z, col x), same block
  std::map<std::pair<int, int>, int> unknown_idx;
  for (const auto& [key, blk] : blocks)
    for (int z : blk)
      for (int x : blk) {
        unknown_idx[{z, x}] = static_cast<int>(unknowns.size());
        unknowns.emplace_back(z, x);
      }
  const int u = static_cast<int>(unknowns.size());

  // d phi = phi d, one equation per matrix entry (w, x).
  std::vector<f2::Vec> rows;
  for (int w = 0; w < n; ++w) {
    for (int x = 0; x < n; ++x) {
      f2::Vec row(u);
      bool nonzero = false;
      for (int z : blocks[p.ma[x]])
        if (p.d.get(w, z)) {
          row.flip(unknown_idx[{z, x}]);
          nonzero = true;
        }
      for (int y : blocks[p.ma[w]])
        if (p.d.get(y, x)) {
          row.flip(unknown_idx[{w, y}]);
          nonzero = true;
        }
      if (nonzero) rows.push_back(std::move(row));
    }
  }
  f2::Matrix constraints(static_cast<int>(rows.size()), u);
  for (size_t r = 0; r < rows.size(); ++r) constraints.row(static_cast<int>(r)) = rows[r];
  const f2::Subspace kernel = f2::kernel_image(constraints).kernel;

  std::vector<f2::Matrix> basis;
  basis.reserve(kernel.dim());
  for (const f2::Vec& v : kernel.basis()) {
    f2::Matrix phi(n, n);
    for (int k : v.support()) phi.set(unknowns[k].first, unknowns[k].second, true);
    basis.push_back(std::move(phi));
  }
  return basis;
}

// Fitting split: for an endomorphism phi that is neither nilpotent nor
// invertible, P = ker(phi^N) + im(phi^N) is a direct sum of subcomplexes.
bool try_fitting_split(const SubComplex& p, const f2::Matrix& phi,
                       SubComplex& k_out, SubComplex& i_out) {
  const int n = p.size();
  f2::Matrix power = phi;
  for (int doubled = 1; doubled < n; doubled *= 2) power = power * power;
  const f2::KernelImage ki = f2::kernel_image(power);
  const int kdim = ki.kernel.dim();
  if (kdim == 0 || kdim == n) return false;

  // Homogeneous bases: split each echelon basis vector into its (M, A)
  // components (the subspaces are block-graded because phi is).
  auto homogeneous_basis = [&](const f2::Subspace& s) {
    f2::Subspace span(n);
    std::vector<std::pair<std::pair<long long, long long>, f2::Vec>> out;
    for (const f2::Vec& v : s.basis()) {
      std::map<std::pair<long long, long long>, f2::Vec> parts;
      for (int i : v.support()) {
        auto [it, fresh] = parts.try_emplace(p.ma[i], f2::Vec(n));
        it->second.flip(i);
      }
      for (auto& [key, vec] : parts)
        if (span.insert(vec)) out.emplace_back(key, vec);
    }
    if (static_cast<int>(out.size()) != s.dim())
      throw GridPeelError("endomorphism power is not grading-homogeneous");
    return out;
  };
  auto kb = homogeneous_basis(ki.kernel);
  auto ib = homogeneous_basis(ki.image);
  if (static_cast<int>(kb.size() + ib.size()) != n) return false;  // not yet stable

  auto restrict_to = [&](const std::vector<std::pair<std::pair<long long, long long>, f2::Vec>>& vs) {
    const int m = static_cast<int>(vs.size());
    f2::Matrix basis_cols(n, m);
    SubComplex q;
    q.ma.reserve(m);
    for (int j = 0; j < m; ++j) {
      q.ma.push_back(vs[j].first);
      for (int i : vs[j].second.support()) basis_cols.set(i, j, true);
    }
    q.d = f2::Matrix(m, m);
    for (int j = 0; j < m; ++j) {
      const f2::Vec image = p.d.apply(vs[j].second);
      const auto coords = f2::solve(basis_cols, image);
      if (!coords)
        throw GridPeelError("Fitting factor is not closed under the differential");
      for (int y : coords->support()) q.d.set(y, j, true);
    }
    return q;
  };
  k_out = restrict_to(kb);
  i_out = restrict_to(ib);
  return true;
}

void split_summands(const SubComplex& p, std::vector<SubComplex>& out) {
  std::vector<SubComplex> parts = connected_parts(p);
  if (parts.size() > 1) {
    for (const SubComplex& q : parts) split_summands(q, out);
    return;
  }
  if (p.size() > 1) {
    const std::vector<f2::Matrix> endos = endomorphism_basis(p);
    SubComplex k, i;
    for (const f2::Matrix& phi : endos) {
      if (try_fitting_split(p, phi, k, i)) {
        split_summands(k, out);
        split_summands(i, out);
        return;
      }
    }
    // Random combinations catch splitters the raw basis misses.
    std::mt19937 rng(0x9e3779b9u ^ static_cast<unsigned>(p.size()));
    for (int trial = 0; trial < 64 && !endos.empty(); ++trial) {
      f2::Matrix phi(p.size(), p.size());
      for (const f2::Matrix& e : endos)
        if (rng() & 1u) phi = phi + e;
      if (try_fitting_split(p, phi, k, i)) {
        split_summands(k, out);
        split_summands(i, out);
        return;
      }
    }
  }
  out.push_back(p);
}

struct Piece {
  std::string key;    // canonical shape encoding, diagonal-shift invariant
  long long pos = 0;  // diagonal position: max M over the piece
  std::vector<std::pair<long long, long long>> gens_ma;  // absolute (M, A)
  std::vector<std::pair<int, int>> edges;                // local indices
};

std::string encode_piece(const std::vector<std::pair<long long, long long>>& ma,
                         const std::vector<std::pair<int, int>>& edges,
                         const std::vector<int>& order, long long pos) {
  const int n = static_cast<int>(ma.size());
  std::vector<int> where(n);
  for (int i = 0; i < n; ++i) where[order[i]] = i;
  std::ostringstream os;
  for (int i = 0; i < n; ++i)
    os << ma[order[i]].first - pos << "," << ma[order[i]].second - pos << ";";
  std::vector<std::pair<int, int>> es;
  es.reserve(edges.size());
  for (const auto& [s, t] : edges) es.emplace_back(where[s], where[t]);
  std::sort(es.begin(), es.end());
  os << "|";
  for (const auto& [s, t] : es) os << s << ">" << t << ";";
  return os.str();
}

// Canonical form of one summand up to grading-preserving isomorphism:
// Weisfeiler-Leman refinement, then exhaustive tie-breaking.
Piece canonicalize_piece(const SubComplex& sub) {
  const int n = sub.size();
  if (n > 32)
    throw GridPeelError(
        "summand of the reduced grid complex is too large to canonicalize (" +
        std::to_string(n) + " generators)");

  Piece piece;
  piece.pos = sub.ma[0].first;
  piece.gens_ma = sub.ma;
  for (const auto& [m, a] : sub.ma) piece.pos = std::max(piece.pos, m);
  std::vector<std::vector<int>> outs(n), ins(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (sub.d.get(y, x)) {
        piece.edges.emplace_back(x, y);
        outs[x].push_back(y);
        ins[y].push_back(x);
      }

  // Refinement.
  std::vector<int> lab(n);
  {
    std::vector<std::string> init(n);
    for (int i = 0; i < n; ++i)
      init[i] = std::to_string(piece.gens_ma[i].first - piece.pos) + "," +
                std::to_string(piece.gens_ma[i].second - piece.pos);
    std::vector<std::string> sorted = init;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int i = 0; i < n; ++i)
      lab[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(),
                                                 init[i]) -
                                sorted.begin());
  }
  for (int round = 0; round < n; ++round) {
    std::vector<std::string> sig(n);
    for (int i = 0; i < n; ++i) {
      std::vector<int> so, si;
      for (int t : outs[i]) so.push_back(lab[t]);
      for (int s : ins[i]) si.push_back(lab[s]);
      std::sort(so.begin(), so.end());
      std::sort(si.begin(), si.end());
      std::ostringstream os;
      os << lab[i] << "/";
      for (int v : so) os << v << ",";
      os << "/";
      for (int v : si) os << v << ",";
      sig[i] = os.str();
    }
    std::vector<std::string> sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> next(n);
    for (int i = 0; i < n; ++i)
      next[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(),
                                                  sig[i]) -
                                 sorted.begin());
    if (next == lab) break;
    lab = next;
  }

  // Order by label; enumerate the remaining ties exhaustively.
  std::vector<std::vector<int>> classes;
  {
    std::map<int, std::vector<int>> by_label;
    for (int i = 0; i < n; ++i) by_label[lab[i]].push_back(i);
    long long work = 1;
    for (auto& [l, cls] : by_label) {
      work *= factorial(static_cast<int>(cls.size()));
      if (work > 5040)
        throw GridPeelError(
            "connected summand too symmetric to canonicalize cheaply");
      classes.push_back(cls);
    }
  }
  std::string best;
  std::vector<std::vector<int>> perms = classes;
  while (true) {
    std::vector<int> order;
    for (const auto& cls : perms) order.insert(order.end(), cls.begin(), cls.end());
    std::string enc = encode_piece(piece.gens_ma, piece.edges, order, piece.pos);
    if (best.empty() || enc < best) best = enc;
    int k = static_cast<int>(perms.size()) - 1;
    while (k >= 0 && !std::next_permutation(perms[k].begin(), perms[k].end()))
      --k;
    if (k < 0) break;
    for (size_t j = k + 1; j < perms.size(); ++j) perms[j] = classes[j];
  }
  piece.key = best;
  return piece;
}

std::vector<Piece> decompose_summands(const ModelComplex& c) {
  std::vector<SubComplex> subs;
  split_summands(sub_of(c), subs);
  std::vector<Piece> pieces;
  pieces.reserve(subs.size());
  for (const SubComplex& s : subs) pieces.push_back(canonicalize_piece(s));
  return pieces;
}

std::vector<std::pair<std::string, long long>> piece_multiset(
    const std::vector<Piece>& pieces) {
  std::vector<std::pair<std::string, long long>> ms;
  ms.reserve(pieces.size());
  for (const auto& p : pieces) ms.emplace_back(p.key, p.pos);
  std::sort(ms.begin(), ms.end());
  return ms;
}

std::string summarize_pieces(const std::vector<Piece>& pieces) {
  std::map<std::string, std::map<long long, long long>> tally;
  for (const auto& p : pieces) ++tally[p.key][p.pos];
  std::ostringstream os;
  for (const auto& [key, by_pos] : tally) {
    os << "\n  shape " << (key.size() > 48 ? key.substr(0, 48) + "..." : key)
       << " at";
    for (const auto& [pos, cnt] : by_pos) os << " " << pos << "(x" << cnt << ")";
  }
  return os.str();
}

ModelComplex peel_w_factors(const ModelComplex& reduced, int m, int components,
                            const std::string& name) {
  if (m < 0) throw GridPeelError("negative W-multiplicity");
  if (m == 0) return reduced.with_components(components).with_name(name);

  const std::vector<Piece> pieces = decompose_summands(reduced);

  struct Group {
    std::map<long long, long long> count;  // diagonal position -> multiplicity
    std::map<long long, const Piece*> rep;
  };
  std::map<std::string, Group> groups;
  for (const auto& p : pieces) {
    Group& grp = groups[p.key];
    ++grp.count[p.pos];
    grp.rep.try_emplace(p.pos, &p);
  }

  // nu * binom(m, .) = mu along descending diagonal positions.
  std::vector<Generator> gens;
  std::vector<Edge> edges;
  int shape_idx = 0;
  long long total_nu = 0, total_mu = 0;
  for (auto& [key, grp] : groups) {
    const long long hi = grp.count.rbegin()->first;
    const long long lo = grp.count.begin()->first;
    std::map<long long, long long> nu;
    for (long long p = hi; p >= lo; --p) {
      long long expected = 0;
      for (const auto& [q, nq] : nu)
        if (q > p && q - p <= m) expected += nq * binomial(m, q - p);
      const auto it = grp.count.find(p);
      const long long mu = it == grp.count.end() ? 0 : it->second;
      const long long np = mu - expected;
      if (np < 0)
        throw GridPeelError(
            "summand multiplicities do not deconvolve binomially:" +
            summarize_pieces(pieces));
      if (np > 0) nu[p] = np;
      total_mu += mu;
    }
    for (const auto& [p, np] : nu) {
      total_nu += np;
      const Piece* rep = grp.rep.at(p);
      if (rep == nullptr)
        throw GridPeelError("missing representative summand");
      for (long long copy = 0; copy < np; ++copy) {
        const int base = static_cast<int>(gens.size());
        for (size_t k = 0; k < rep->gens_ma.size(); ++k) {
          std::ostringstream id;
          id << "s" << shape_idx << "p" << p << "c" << copy << "g" << k;
          gens.push_back(
              {id.str(), rep->gens_ma[k].first, rep->gens_ma[k].second});
        }
        for (const auto& [s, t] : rep->edges)
          edges.emplace_back(base + s, base + t);
      }
    }
    ++shape_idx;
  }
  if (total_nu * (1LL << m) != total_mu)
    throw GridPeelError("W-factor deconvolution does not balance:" +
                        summarize_pieces(pieces));

  ModelComplex peeled(name, std::move(gens), std::move(edges), components);

  // Certify: tensoring the W factors back on must reproduce the reduced
  // complex's summand multiset exactly.
  ModelComplex check = peeled;
  for (int i = 0; i < m; ++i) check = tensor(check, w_factor());
  if (piece_multiset(decompose_summands(check)) != piece_multiset(pieces))
    throw GridPeelError(
        "peeled complex does not reproduce the reduced grid complex after "
        "re-tensoring the W factors");
  try {
    peeled.validate();
  } catch (const ComplexError& e) {
    throw GridPeelError(std::string("peeled grid complex fails validation: ") +
                        e.what());
  }
  return peeled;
}

}  // namespace

// ---- diagram plumbing --------------------------------------------------

void validate_grid(const GridDiagram& g) {
  const int n = g.size;
  if (n <= 0) throw GridError("grid size must be positive");
  if (static_cast<int>(g.o_col.size()) != n ||
      static_cast<int>(g.x_col.size()) != n ||
      static_cast<int>(g.special.size()) != n)
    throw GridError("marking arrays do not match the grid size");
  if (!is_permutation_of_range(g.o_col))
    throw GridError("O-markings are not one per row and column");
  if (!is_permutation_of_range(g.x_col))
    throw GridError("X-markings are not one per row and column");
  if (!g.allow_doubly) {
    for (int r = 0; r < n; ++r)
      if (g.o_col[r] == g.x_col[r])
        throw GridError("doubly-marked square at row " + std::to_string(r) +
                        " in a diagram that does not allow them");
  }
  const std::vector<int> comp = trace_components(g);
  const int traced = *std::max_element(comp.begin(), comp.end()) + 1;
  if (traced != g.components)
    throw GridError("diagram traces " + std::to_string(traced) +
                    " components but declares " +
                    std::to_string(g.components));
  std::vector<int> specials_per(traced, 0);
  for (int r = 0; r < n; ++r)
    if (g.special[r]) ++specials_per[comp[r]];
  for (int c = 0; c < traced; ++c)
    if (specials_per[c] != 1)
      throw GridError("component " + std::to_string(c) + " has " +
                      std::to_string(specials_per[c]) +
                      " special O-markings (wants exactly one)");
}

GridDiagram make_grid(int size, int components, std::vector<int> o_col,
                      std::vector<int> x_col,
                      const std::vector<int>& special_rows, bool allow_doubly) {
  GridDiagram g;
  g.size = size;
  g.components = components;
  g.o_col = std::move(o_col);
  g.x_col = std::move(x_col);
  g.special.assign(size > 0 ? size : 0, false);
  for (int r : special_rows) {
    if (r < 0 || r >= size) throw GridError("special row out of range");
    g.special[r] = true;
  }
  g.allow_doubly = allow_doubly;
  validate_grid(g);
  return g;
}

std::vector<int> trace_components(const GridDiagram& g) {
  const int n = g.size;
  if (!is_permutation_of_range(g.o_col) || !is_permutation_of_range(g.x_col))
    throw GridError("markings are not permutations");
  std::vector<int> o_row(n);  // column -> row of its O
  for (int r = 0; r < n; ++r) o_row[g.o_col[r]] = r;
  std::vector<int> comp(n, -1);
  int next_id = 0;
  for (int start = n - 1; start >= 0; --start) {
    if (comp[start] >= 0) continue;
    int cur = start;
    do {
      comp[cur] = next_id;
      cur = o_row[g.x_col[cur]];
    } while (cur != start);
    ++next_id;
  }
  return comp;
}

GridDiagram parse_grid(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        lines.push_back(line);
    }
  }
  if (lines.size() != 4)
    throw GridError("grid text wants exactly 4 nonempty lines, got " +
                    std::to_string(lines.size()));
  std::istringstream head(lines[0]);
  std::string word;
  int size = 0, components = 0;
  if (!(head >> word >> size >> components) || word != "grid")
    throw GridError("grid text must start with 'grid <size> <components>'");
  bool allow_doubly = false;
  std::string flag;
  if (head >> flag) {
    if (flag != "!") throw GridError("unknown grid header flag '" + flag + "'");
    allow_doubly = true;
  }
  if (size <= 0 || size > 64) throw GridError("unreasonable grid size");

  auto read_columns = [&](const std::string& line,
                          const char* what) -> std::vector<int> {
    std::istringstream is(line);
    std::vector<int> cols(size, -1);
    for (int i = 0; i < size; ++i) {
      int v = 0;
      if (!(is >> v) || v < 1 || v > size)
        throw GridError(std::string(what) + " line wants " +
                        std::to_string(size) + " columns in 1.." +
                        std::to_string(size));
      cols[size - 1 - i] = v - 1;  // file lists rows top to bottom
    }
    int extra;
    if (is >> extra) throw GridError(std::string(what) + " line has extra data");
    return cols;
  };
  const std::vector<int> o_col = read_columns(lines[1], "O");
  const std::vector<int> x_col = read_columns(lines[2], "X");

  std::vector<int> specials;
  {
    std::istringstream is(lines[3]);
    int v = 0;
    while (is >> v) {
      if (v < 1 || v > size) throw GridError("special row out of range");
      specials.push_back(size - v);  // 1-based from the top in the file
    }
    if (specials.empty()) throw GridError("no special O-markings listed");
  }
  return make_grid(size, components, o_col, x_col, specials, allow_doubly);
}

std::string serialize_grid(const GridDiagram& g) {
  std::ostringstream os;
  os << "grid " << g.size << " " << g.components;
  if (g.allow_doubly) os << " !";
  os << "\n";
  for (int i = 0; i < g.size; ++i)
    os << g.o_col[g.size - 1 - i] + 1 << (i + 1 == g.size ? "\n" : " ");
  for (int i = 0; i < g.size; ++i)
    os << g.x_col[g.size - 1 - i] + 1 << (i + 1 == g.size ? "\n" : " ");
  bool first = true;
  for (int i = 0; i < g.size; ++i) {
    if (g.special[g.size - 1 - i]) {
      os << (first ? "" : " ") << i + 1;
      first = false;
    }
  }
  os << "\n";
  return os.str();
}

GridDiagram unlink_markings(const GridDiagram& g) {
  validate_grid(g);
  const int n = g.size;
  int start = -1;
  for (int r = n - 1; r >= 0; --r)
    if (g.special[r]) {
      start = r;
      break;
    }
  GridDiagram out = g;
  out.x_col.assign(n, -1);
  // Walk downward (cyclically) from the topmost special O.  Every O gets an
  // X just below it; when the row below starts a new run (its O is special),
  // the current run instead closes up into its own special row.
  int anchor = start;
  int row = start;
  for (int step = 0; step < n; ++step) {
    const int below = (row - 1 + n) % n;
    if (g.special[below]) {
      out.x_col[anchor] = g.o_col[row];
      anchor = below;
    } else {
      out.x_col[below] = g.o_col[row];
    }
    row = below;
  }
  for (int r = 0; r < n; ++r)
    if (out.x_col[r] < 0) throw GridError("unlink rewrite left a row empty");
  out.allow_doubly = false;
  for (int r = 0; r < n; ++r)
    if (out.x_col[r] == out.o_col[r]) out.allow_doubly = true;
  validate_grid(out);
  return out;
}

GridDiagram stabilize_ne(const GridDiagram& g, int row) {
  validate_grid(g);
  if (row < 0 || row >= g.size) throw GridError("stabilization row out of range");
  if (g.x_col[row] == g.o_col[row])
    throw GridError("cannot stabilize at a doubly-marked square");
  if (g.size + 1 > kGridSizeLimit)
    throw GridError("stabilization would exceed the grid size limit");
  const int c = g.x_col[row];
  const int sz = g.size + 1;
  auto new_row = [&](int r) { return r > row ? r + 1 : r; };
  auto new_col = [&](int col) { return col > c ? col + 1 : col; };
  GridDiagram out;
  out.size = sz;
  out.components = g.components;
  out.o_col.assign(sz, -1);
  out.x_col.assign(sz, -1);
  out.special.assign(sz, false);
  out.allow_doubly = g.allow_doubly;
  for (int r = 0; r < g.size; ++r) {
    out.o_col[new_row(r)] = new_col(g.o_col[r]);
    out.special[new_row(r)] = g.special[r];
    out.x_col[new_row(r)] = r == row ? c + 1 : new_col(g.x_col[r]);
  }
  out.o_col[row + 1] = c + 1;
  out.x_col[row + 1] = c;
  validate_grid(out);
  return out;
}

GridGradings grid_gradings(const GridDiagram& g,
                           const std::vector<int>& state) {
  if (static_cast<int>(state.size()) != g.size ||
      !is_permutation_of_range(state))
    throw GridError("grid state is not a permutation of the rows");
  const long long mo = maslov_against(state, g.o_col);
  const long long mx = maslov_against(state, g.x_col);
  const long long twice_a = mo - mx - (g.size - g.components);
  if (twice_a % 2 != 0)
    throw GridError("Alexander grading is not an integer");
  GridGradings gr;
  gr.M = mo;
  gr.A = twice_a / 2;
  gr.delta = gr.M - gr.A;
  return gr;
}

std::vector<std::vector<int>> grid_states(int size) {
  std::vector<int> p(size);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> states;
  states.reserve(factorial(size));
  do {
    states.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return states;
}

std::vector<GridEdgeData> grid_edges(const GridDiagram& g) {
  return build_grid_data(g).edges;
}

ModelComplex grid_raw_complex(const GridDiagram& g) {
  const GridData data = build_grid_data(g);
  std::vector<Generator> gens;
  gens.reserve(data.states.size());
  for (size_t i = 0; i < data.states.size(); ++i)
    gens.push_back(
        {state_id(data.states[i]), data.gradings[i].M, data.gradings[i].A});
  std::vector<Edge> edges;
  edges.reserve(data.edges.size());
  for (const auto& e : data.edges) edges.emplace_back(e.from, e.to);
  // The raw complex carries one surplus rank-two tensor factor per
  // non-special O-marking; its homology rank is 2^(size-1).
  return ModelComplex("raw-" + compact_name(g), std::move(gens),
                      std::move(edges), g.size);
}

PrimeComplex grid_raw_prime_complex(const GridDiagram& g) {
  const GridData data = build_grid_data(g);
  std::vector<PrimeGenerator> gens;
  gens.reserve(data.states.size());
  for (size_t i = 0; i < data.states.size(); ++i)
    gens.push_back({state_id(data.states[i]), data.gradings[i].delta});
  std::vector<Edge> edges;
  edges.reserve(data.edges.size());
  for (const auto& e : data.edges) {
    // Independent count: the delta-graded differential weights a rectangle
    // by its total O+X count, which must agree with the grading-implied
    // power delta(y) - delta(x) + 1.
    const long long implied =
        data.gradings[e.to].delta - data.gradings[e.from].delta + 1;
    if (implied != e.ox_count)
      throw GridError("delta-graded U-power disagrees with the O+X count");
    edges.emplace_back(e.from, e.to);
  }
  return PrimeComplex("raw-prime-" + compact_name(g), std::move(gens),
                      std::move(edges), g.size);
}

ModelComplex grid_complex(const GridDiagram& g) {
  const ModelComplex raw = grid_raw_complex(g);
  const ModelComplex red = reduce(raw);
  return peel_w_factors(red, g.size - g.components, g.components,
                        compact_name(g));
}

PrimeComplex prime_complex(const GridDiagram& g) {
  return prime_of_model(grid_complex(g));
}

IMapReport i_map_check(const GridDiagram& g) {
  const GridData data = build_grid_data(g);
  // Rescaling a state by U^(-A) maps the bifiltered complex onto the
  // delta-graded one; gradings must satisfy delta = M - A and every edge
  // k' = 2k + A(x) - A(y).
  for (const auto& gr : data.gradings)
    if (gr.delta != gr.M - gr.A)
      throw GridError("delta grading is not M - A");
  for (const auto& e : data.edges) {
    const GridGradings& gx = data.gradings[e.from];
    const GridGradings& gy = data.gradings[e.to];
    if (e.ox_count != 2 * e.o_count + gx.A - gy.A)
      throw GridError("edge powers violate k' = 2k + A(x) - A(y)");
    if (gy.delta - gx.delta + 1 != e.ox_count)
      throw GridError("delta-graded edge power mismatch");
    if (gy.M - gx.M + 1 != 2 * e.o_count)
      throw GridError("bifiltered edge power mismatch");
  }
  // The rescaled differential must still square to zero.
  grid_raw_prime_complex(g).validate();
  IMapReport report;
  report.states = static_cast<long long>(data.states.size());
  report.edges = static_cast<long long>(data.edges.size());
  report.ok = true;
  return report;
}

GridCrossingData grid_crossings(const GridDiagram& g) {
  validate_grid(g);
  const std::vector<int> comp = trace_components(g);
  std::vector<int> o_row(g.size), x_row(g.size);
  for (int r = 0; r < g.size; ++r) {
    o_row[g.o_col[r]] = r;
    x_row[g.x_col[r]] = r;
  }
  GridCrossingData out;
  out.inter.assign(g.components, std::vector<long long>(g.components, 0));
  for (int c = 0; c < g.size; ++c) {
    const int ra = x_row[c], rb = o_row[c];  // vertical segment, X -> O
    if (ra == rb) continue;                  // doubly-marked square
    const int sv = rb > ra ? 1 : -1;
    for (int r = std::min(ra, rb) + 1; r < std::max(ra, rb); ++r) {
      const int ca = g.o_col[r], cb = g.x_col[r];  // horizontal, O -> X
      if (c <= std::min(ca, cb) || c >= std::max(ca, cb)) continue;
      // Sign calibrated so the standard diagram of the positive trefoil
      // (tau = +1) has writhe +3.
      const int s = (cb > ca ? -1 : 1) * sv;
      out.writhe += s;
      if (comp[ra] != comp[r]) {
        out.inter[comp[ra]][comp[r]] += s;
        out.inter[comp[r]][comp[ra]] += s;
      }
    }
  }
  return out;
}

}  // namespace floerlat
