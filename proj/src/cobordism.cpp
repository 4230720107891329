#include "floerlat/cobordism.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <tuple>

#include "floerlat/invariants.hpp"

namespace floerlat {

namespace {

bool same_model(const ModelComplex& a, const ModelComplex& b) {
  if (a.size() != b.size() || a.edges() != b.edges() ||
      a.n_components() != b.n_components())
    return false;
  for (int i = 0; i < a.size(); ++i) {
    const Generator &ga = a.gens()[i], &gb = b.gens()[i];
    if (ga.id != gb.id || ga.M != gb.M || ga.A != gb.A) return false;
  }
  return true;
}

bool same_prime(const PrimeComplex& a, const PrimeComplex& b) {
  if (a.size() != b.size() || a.edges() != b.edges() ||
      a.n_components() != b.n_components())
    return false;
  for (int i = 0; i < a.size(); ++i) {
    const PrimeGenerator &ga = a.gens()[i], &gb = b.gens()[i];
    if (ga.id != gb.id || ga.delta != gb.delta) return false;
  }
  return true;
}

using Term = std::tuple<int, int, long long>;  // (src, tgt, power)

void toggle(std::map<Term, int>& terms, int s, int t, long long p) {
  auto [it, fresh] = terms.try_emplace({s, t, p}, 0);
  it->second ^= 1;
  if (it->second == 0) terms.erase(it);
}

void check_sharp(const char* label, std::optional<long long> declared,
                 const std::vector<long long>& observed) {
  if (!declared) return;
  if (observed.empty())
    throw CobordismError(std::string("declared ") + label +
                         " shift on a map with no entries");
  long long max = observed.front();
  for (long long v : observed) max = std::max(max, v);
  for (long long v : observed)
    if (v > *declared)
      throw CobordismError(std::string("an entry exceeds the declared ") +
                           label + " shift");
  if (max != *declared)
    throw CobordismError(std::string("no entry attains the declared ") +
                         label + " shift");
}

}  // namespace

void verify_chain_map(const ChainMap& f) {
  const bool model = f.model_src.has_value();
  if (model != f.model_tgt.has_value() ||
      model == f.prime_src.has_value() ||
      f.prime_src.has_value() != f.prime_tgt.has_value())
    throw CobordismError("map must carry one matched source/target pair");
  const int ns = model ? f.model_src->size() : f.prime_src->size();
  const int nt = model ? f.model_tgt->size() : f.prime_tgt->size();

  std::vector<MapEntry> entries = f.entries;
  std::sort(entries.begin(), entries.end());
  if (std::adjacent_find(entries.begin(), entries.end()) != entries.end())
    throw CobordismError("duplicate map entry");
  std::vector<std::vector<std::pair<int, long long>>> by_src(ns);
  for (const MapEntry& e : entries) {
    if (e.src < 0 || e.src >= ns || e.tgt < 0 || e.tgt >= nt)
      throw CobordismError("map entry out of range");
    by_src[e.src].emplace_back(e.tgt, e.power);
  }

  // f d = d f with formal U-powers, mod 2.
  std::map<Term, int> terms;
  const auto& src_edges = model ? f.model_src->edges() : f.prime_src->edges();
  for (const Edge& e : src_edges) {
    const long long k = model ? f.model_src->edge_power(e)
                              : f.prime_src->edge_power(e);
    for (const auto& [tgt, p] : by_src[e.second])
      toggle(terms, e.first, tgt, k + p);
  }
  const auto& tgt_edges = model ? f.model_tgt->edges() : f.prime_tgt->edges();
  for (const Edge& e : tgt_edges) {
    const long long k = model ? f.model_tgt->edge_power(e)
                              : f.prime_tgt->edge_power(e);
    for (int x = 0; x < ns; ++x)
      for (const auto& [tgt, p] : by_src[x])
        if (tgt == e.first) toggle(terms, x, e.second, p + k);
  }
  if (!terms.empty())
    throw CobordismError("map does not commute with the differentials");

  // Declared shifts: entry-wise sharp bounds.
  std::vector<long long> dm, da, dj, dd;
  for (const MapEntry& e : entries) {
    if (model) {
      const Generator& s = f.model_src->gens()[e.src];
      const Generator& t = f.model_tgt->gens()[e.tgt];
      dm.push_back(t.M - 2 * e.power - s.M);
      da.push_back(t.A - e.power - s.A);
      dj.push_back(-e.power);
    } else {
      dd.push_back(f.prime_tgt->gens()[e.tgt].delta - e.power -
                   f.prime_src->gens()[e.src].delta);
    }
  }
  check_sharp("Maslov", f.dM, dm);
  check_sharp("Alexander", f.dA, da);
  check_sharp("j", f.dj, dj);
  check_sharp("delta", f.ddelta, dd);
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  const bool model = f.model_src.has_value();
  if (model != g.model_src.has_value())
    throw CobordismError("cannot compose maps of different flavors");
  if (model ? !same_model(*f.model_tgt, *g.model_src)
            : !same_prime(*f.prime_tgt, *g.prime_src))
    throw CobordismError("composition mismatch: f's target is not g's source");
  std::map<Term, int> terms;
  for (const MapEntry& ef : f.entries)
    for (const MapEntry& eg : g.entries)
      if (eg.src == ef.tgt)
        toggle(terms, ef.src, eg.tgt, ef.power + eg.power);
  ChainMap h;
  h.model_src = f.model_src;
  h.prime_src = f.prime_src;
  h.model_tgt = g.model_tgt;
  h.prime_tgt = g.prime_tgt;
  for (const auto& [term, parity] : terms)
    h.entries.push_back(
        {std::get<0>(term), std::get<1>(term), std::get<2>(term)});
  return h;
}

f2::Matrix parity_matrix(const ChainMap& f, int source_parity) {
  if (!f.model_src)
    throw CobordismError("parity matrices exist for model-flavor maps only");
  std::optional<long long> dm;
  for (const MapEntry& e : f.entries) {
    const long long entry_dm = f.model_tgt->gens()[e.tgt].M - 2 * e.power -
                               f.model_src->gens()[e.src].M;
    if (dm && *dm != entry_dm)
      throw CobordismError("map entries carry different Maslov shifts");
    dm = entry_dm;
  }
  const int tgt_parity =
      ModelComplex::parity_of(source_parity + (dm ? *dm : 0));
  f2::Matrix m(
      static_cast<int>(f.model_tgt->parity_gens(tgt_parity).size()),
      static_cast<int>(f.model_src->parity_gens(source_parity).size()));
  for (const MapEntry& e : f.entries) {
    if (ModelComplex::parity_of(f.model_src->gens()[e.src].M) != source_parity)
      continue;
    m.flip(f.model_tgt->parity_pos(e.tgt), f.model_src->parity_pos(e.src));
  }
  return m;
}

bool is_multiplication_by_u(const ChainMap& f) {
  const int n = f.model_src ? f.model_src->size() : f.prime_src->size();
  if (static_cast<int>(f.entries.size()) != n) return false;
  std::vector<MapEntry> entries = f.entries;
  std::sort(entries.begin(), entries.end());
  for (int i = 0; i < n; ++i)
    if (entries[i].src != i || entries[i].tgt != i || entries[i].power != 1)
      return false;
  return true;
}

ChainMap band_identity_map(const GridDiagram& g1, const GridDiagram& g2,
                           long long allowed_dA) {
  validate_grid(g1);
  validate_grid(g2);
  if (g1.size != g2.size)
    throw CobordismError("band move wants diagrams of equal size");
  if (g1.o_col != g2.o_col)
    throw CobordismError("band move wants identical O-markings");
  std::vector<int> moved;
  for (int r = 0; r < g1.size; ++r)
    if (g1.x_col[r] != g2.x_col[r]) moved.push_back(r);
  if (!moved.empty()) {
    if (moved.size() != 2 || moved[1] != moved[0] + 1)
      throw CobordismError("band move wants the X's of two adjacent rows moved");
    const int r = moved[0];
    const int c = std::min(g1.x_col[r], g1.x_col[r + 1]);
    const bool block =
        std::max(g1.x_col[r], g1.x_col[r + 1]) == c + 1 &&
        g2.x_col[r] == g1.x_col[r + 1] && g2.x_col[r + 1] == g1.x_col[r];
    if (!block)
      throw CobordismError(
          "band move wants the two X's swapped across a 2x2 block of adjacent "
          "columns");
  }

  ChainMap f;
  f.model_src = grid_raw_complex(g1);
  f.model_tgt = grid_raw_complex(g2);
  // The differential and the Maslov grading never look at the X-markings,
  // so both must agree literally.
  if (f.model_src->edges() != f.model_tgt->edges())
    throw CobordismError("band diagrams disagree on the differential");
  for (const Edge& e : f.model_src->edges())
    if (f.model_src->edge_power(e) != f.model_tgt->edge_power(e))
      throw CobordismError("band diagrams disagree on U-powers");
  long long max_da = 0;
  bool first = true;
  for (int i = 0; i < f.model_src->size(); ++i) {
    const Generator& s = f.model_src->gens()[i];
    const Generator& t = f.model_tgt->gens()[i];
    if (s.M != t.M)
      throw CobordismError("band diagrams disagree on the Maslov grading");
    const long long da = t.A - s.A;
    max_da = first ? da : std::max(max_da, da);
    first = false;
    f.entries.push_back({i, i, 0});
  }
  if (max_da > allowed_dA)
    throw CobordismError("band map exceeds the allowed Alexander shift");
  f.dM = 0;
  f.dj = 0;
  f.dA = max_da;
  verify_chain_map(f);
  return f;
}

ChainMap split_map(const GridDiagram& g1, const GridDiagram& g2, int col,
                   int row) {
  validate_grid(g1);
  validate_grid(g2);
  if (g1.size != g2.size)
    throw CobordismError("split move wants diagrams of equal size");
  if (g1.x_col != g2.x_col)
    throw CobordismError("split move wants identical X-markings");
  if (col < 1 || col >= g1.size || row < 1 || row >= g1.size)
    throw CobordismError("split corner out of range");
  for (int r = 0; r < g1.size; ++r)
    if (r != row - 1 && r != row && g1.o_col[r] != g2.o_col[r])
      throw CobordismError("split move moved an O outside the corner block");
  if (g1.o_col[row - 1] != col || g1.o_col[row] != col - 1 ||
      g2.o_col[row - 1] != col - 1 || g2.o_col[row] != col)
    throw CobordismError(
        "split move wants the corner block O's anti-diagonal before and "
        "diagonal after");
  if (!g1.special[row - 1] && !g1.special[row])
    throw CobordismError("split move wants a special O at the corner block");
  int extra = -1;
  for (int r = 0; r < g1.size; ++r) {
    if (g1.special[r] && !g2.special[r])
      throw CobordismError("split move dropped a special O");
    if (!g1.special[r] && g2.special[r]) {
      if (extra >= 0) throw CobordismError("split move added two specials");
      extra = r;
    }
  }
  if (extra != row - 1 && extra != row)
    throw CobordismError("split move wants the new special at the corner block");
  if (g2.components != g1.components + 1)
    throw CobordismError("split move wants one more component");

  ChainMap f;
  f.model_src = grid_raw_complex(g1);
  f.model_tgt = grid_raw_complex(g2);
  const auto states = grid_states(g1.size);
  long long max_da = 0, max_dj = 0;
  bool first = true;
  for (int i = 0; i < f.model_src->size(); ++i) {
    const long long p = states[i][col] == row ? 0 : 1;
    f.entries.push_back({i, i, p});
    const Generator& s = f.model_src->gens()[i];
    const Generator& t = f.model_tgt->gens()[i];
    if (t.M - 2 * p - s.M != -1)
      throw CobordismError("split map entry is not of Maslov degree -1");
    const long long da = t.A - p - s.A;
    max_da = first ? da : std::max(max_da, da);
    max_dj = first ? -p : std::max(max_dj, -p);
    first = false;
  }
  if (max_da > 0)
    throw CobordismError("split map raises the Alexander filtration");
  if (max_dj > 0) throw CobordismError("split map raises the j filtration");
  f.dM = -1;
  f.dA = max_da;
  f.dj = max_dj;
  verify_chain_map(f);
  return f;
}

NuMaps nu_maps(const GridDiagram& g1, const GridDiagram& g2) {
  validate_grid(g1);
  validate_grid(g2);
  const int n = g1.size;
  if (g2.size != n)
    throw CobordismError("saddle move wants diagrams of equal size");
  if (g1.o_col != g2.o_col)
    throw CobordismError("saddle move wants identical O-markings");
  std::vector<int> moved;
  for (int r = 0; r < n; ++r)
    if (g1.x_col[r] != g2.x_col[r]) moved.push_back(r);
  if (moved.size() != 2 || g1.x_col[moved[0]] != g2.x_col[moved[1]] ||
      g1.x_col[moved[1]] != g2.x_col[moved[0]])
    throw CobordismError(
        "saddle move wants the X's of two rows to trade columns");

  const PrimeComplex p1 = grid_raw_prime_complex(g1);
  const PrimeComplex p2 = grid_raw_prime_complex(g2);
  if (p1.edges() != p2.edges())
    throw CobordismError("saddle diagrams disagree on the rectangle pairs");
  const auto states = grid_states(n);
  const auto e1 = grid_edges(g1);
  const auto e2 = grid_edges(g2);

  for (int col = 0; col < n; ++col) {
    for (int arc_row = 0; arc_row < n; ++arc_row) {
      for (int arc_len = 1; arc_len < n; ++arc_len) {
        auto in_arc = [&](int i) {
          const int d = (states[i][col] - arc_row + n) % n;
          return d < arc_len ? 1LL : 0LL;
        };
        // Constant delta-shift of nu.
        bool ok = true;
        long long shift = 0;
        for (int i = 0; i < p1.size() && ok; ++i) {
          const long long d =
              p2.gens()[i].delta - in_arc(i) - p1.gens()[i].delta;
          if (i == 0)
            shift = d;
          else if (d != shift)
            ok = false;
        }
        // Commutation: k'_2 - k'_1 = p(y) - p(x) on every edge (the same
        // relation makes both nu and nu_prime chain maps).
        for (size_t e = 0; e < e1.size() && ok; ++e)
          if (e2[e].ox_count - e1[e].ox_count !=
              in_arc(e1[e].to) - in_arc(e1[e].from))
            ok = false;
        if (!ok) continue;

        NuMaps maps;
        maps.column = col;
        maps.arc_row = arc_row;
        maps.arc_len = arc_len;
        maps.nu.prime_src = p1;
        maps.nu.prime_tgt = p2;
        maps.nu_prime.prime_src = p2;
        maps.nu_prime.prime_tgt = p1;
        for (int i = 0; i < p1.size(); ++i) {
          maps.nu.entries.push_back({i, i, in_arc(i)});
          maps.nu_prime.entries.push_back({i, i, 1 - in_arc(i)});
        }
        maps.nu.ddelta = shift;
        maps.nu_prime.ddelta = -1 - shift;
        verify_chain_map(maps.nu);
        verify_chain_map(maps.nu_prime);
        if (!is_multiplication_by_u(compose(maps.nu_prime, maps.nu)) ||
            !is_multiplication_by_u(compose(maps.nu, maps.nu_prime)))
          throw CobordismError("saddle maps do not compose to U");
        return maps;
      }
    }
  }
  throw CobordismError(
      "fragment mismatch: no annular arc makes the saddle maps chain maps");
}

int stabilization_invariance_check(const GridDiagram& g) {
  InvariantReport base = compute_report(grid_complex(g));
  base.name.clear();
  int checked = 0;
  for (int r = 0; r < g.size; ++r) {
    if (g.x_col[r] == g.o_col[r]) continue;  // doubly-marked square
    if (g.size + 1 > kGridSizeLimit) break;
    InvariantReport rep = compute_report(grid_complex(stabilize_ne(g, r)));
    rep.name.clear();
    if (!(rep == base))
      throw CobordismError("stabilization at row " + std::to_string(r) +
                           " changed the invariant report");
    ++checked;
  }
  return checked;
}

}  // namespace floerlat
