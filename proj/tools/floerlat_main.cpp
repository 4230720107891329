// floerlat: command-line front end for the bifiltered-complex invariant
// library.
//
// Commands
//   invariants    full invariant report, or a single-region evaluation (JSON)
//   upsilon-plot  CSV of (t, upsilon, upsilon*) on the exact breakpoint grid
//   bounds        slice-genus and crosscap-number lower bounds (JSON)
//   compare       fingerprint / local-equivalence / secondary-upsilon verdict
//   grid-info     grid-diagram combinatorics (JSON)
//   self-test     validates every built-in input
//
// Exit codes: 0 ok, 1 parse or input resolution, 2 validation,
// 3 unsupported region family.  Outputs are deterministic: identical
// invocations produce byte-identical files.

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "floerlat/bounds.hpp"
#include "floerlat/builtins.hpp"
#include "floerlat/grid.hpp"
#include "floerlat/invariants.hpp"
#include "floerlat/json_io.hpp"
#include "floerlat/region.hpp"

namespace {

using namespace floerlat;
using ordered_json = nlohmann::ordered_json;

// Input-resolution failures: missing files, unknown builtins, bad numbers.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string stem_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

Q parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Q(std::stoll(text));
    return Q(std::stoll(text.substr(0, slash)),
             std::stoll(text.substr(slash + 1)));
  } catch (const std::exception&) {
    throw InputError("not a rational number: \"" + text + "\"");
  }
}

ordered_json q_json(const Q& q) {
  if (q.denominator() == 1) return ordered_json(q.numerator());
  return ordered_json(to_string(q));
}

// ---- input plumbing -------------------------------------------------------

struct InputFlags {
  std::vector<std::string> builtins;
  std::vector<std::string> grids;
  std::vector<std::string> complexes;
};

void add_input_flags(CLI::App* cmd, InputFlags* f) {
  cmd->add_option("--builtin", f->builtins,
                  "built-in complex or grid name (see self-test for the list)");
  cmd->add_option("--grid", f->grids, "grid diagram text file");
  cmd->add_option("--complex", f->complexes, "chain complex JSON file");
}

ModelComplex complex_from_builtin_name(const std::string& name) {
  try {
    return builtin_complex(name);
  } catch (const UnknownBuiltin&) {
  }
  try {
    return grid_complex(builtin_grid(name));
  } catch (const UnknownBuiltin&) {
    throw UnknownBuiltin("unknown builtin \"" + name + "\"");
  }
}

// Resolved in flag order: builtins, then grid files, then complex files.
std::vector<ModelComplex> resolve_inputs(const InputFlags& f, size_t want) {
  std::vector<ModelComplex> out;
  for (const auto& name : f.builtins)
    out.push_back(complex_from_builtin_name(name));
  for (const auto& path : f.grids)
    out.push_back(grid_complex(parse_grid(slurp(path))));
  for (const auto& path : f.complexes)
    out.push_back(complex_from_json(slurp(path)));
  if (out.size() != want)
    throw InputError("expected " + std::to_string(want) +
                     " input(s) via --builtin/--grid/--complex, got " +
                     std::to_string(out.size()));
  return out;
}

ModelComplex resolve_one(const InputFlags& f) {
  return std::move(resolve_inputs(f, 1).front());
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InputError("cannot write " + out_path);
  out << text;
  if (!out) throw InputError("write failed: " + out_path);
}

// ---- commands -------------------------------------------------------------

std::string cmd_invariants(const ModelComplex& c,
                           const std::string& region_path) {
  c.validate();
  if (region_path.empty()) return report_to_json(compute_report(c));
  const SouthWestRegion s = region_from_json(slurp(region_path));
  ordered_json j;
  j["name"] = c.name();
  j["region"] = ordered_json::parse(region_to_json(s));
  j["upsilon"] = q_json(upsilon_region(c, s, Flavor::primary));
  j["upsilon_star"] = q_json(upsilon_region(c, s, Flavor::star));
  const HValue h = region_h(s);  // UnsupportedFamily -> exit 3
  if (h.infinite)
    j["h"] = "infinity";
  else
    j["h"] = h.value;
  return j.dump(2) + "\n";
}

std::string cmd_upsilon_plot(const ModelComplex& c,
                             const std::vector<std::string>& t_flags) {
  c.validate();
  const PLFunction u = upsilon_function(c, Flavor::primary);
  const PLFunction us = upsilon_function(c, Flavor::star);
  if (t_flags.empty()) return upsilon_csv(u, us);
  std::set<Q> grid;
  for (const auto& [t, v] : u.breakpoints()) grid.insert(t);
  for (const auto& [t, v] : us.breakpoints()) grid.insert(t);
  for (const std::string& s : t_flags) {
    const Q t = parse_rational(s);
    if (t < u.domain_min() || t > u.domain_max())
      throw InputError("--t " + s + " outside the domain [" +
                       to_string(u.domain_min()) + ", " +
                       to_string(u.domain_max()) + "]");
    grid.insert(t);
  }
  std::ostringstream os;
  os << "t,upsilon,upsilon_star\n";
  for (const Q& t : grid)
    os << to_string(t) << ',' << to_string(u.eval(t)) << ','
       << to_string(us.eval(t)) << '\n';
  return os.str();
}

std::string cmd_bounds(const ModelComplex& c, std::optional<long long> n_flag,
                       std::optional<long long> sigma, long long k) {
  c.validate();
  const int n = c.n_components();
  if (n_flag && *n_flag != n)
    throw InvariantError("--n " + std::to_string(*n_flag) +
                         " does not match the input's " + std::to_string(n) +
                         " component(s)");
  const InvariantReport r = compute_report(c);
  BoundReport br;
  br.g4 = slice_genus_bounds(r, n);
  if (sigma) {
    br.k = static_cast<int>(k);
    br.gamma4 = crosscap_bounds(
        bound_input_from(r, n, static_cast<int>(k), *sigma));
  }
  return bound_report_to_json(br);
}

std::string secondary_json(const SecondaryValue& v) {
  return v.infinite ? "infinity" : to_string(v.value);
}

std::string cmd_compare(const ModelComplex& a, const ModelComplex& b) {
  a.validate();
  b.validate();
  ordered_json j;
  j["a"] = a.name();
  j["b"] = b.name();
  const Window w = join(natural_window(a), natural_window(b));
  const bool fp = fingerprint(a, w) == fingerprint(b, w);
  j["fingerprint_equal"] = fp;
  if (!fp) {
    j["verdict"] = "distinguishable";
    j["method"] = "fingerprint";
    return j.dump(2) + "\n";
  }
  const LocalEquiv le = exhaustive_local_equiv(a, b, 20);
  j["local_equivalence"] = le == LocalEquiv::Yes  ? "yes"
                           : le == LocalEquiv::No ? "no"
                                                  : "search-exceeded";
  if (le == LocalEquiv::Yes) {
    j["verdict"] = "local-equivalent";
    return j.dump(2) + "\n";
  }
  if (le == LocalEquiv::No) {
    j["verdict"] = "distinguishable";
    j["method"] = "local-equivalence-search";
    return j.dump(2) + "\n";
  }
  // Exhaustive search is out of reach; scan secondary upsilon triples
  // (A_{t+}, A_{t-}, A_t) over a small exact grid for a differing value.
  const std::vector<Q> grid = farey_grid(Q(1, 4), Q(7, 4), 4);
  for (const Q& tp : grid)
    for (const Q& tm : grid) {
      if (tp == tm) continue;
      for (const Q& t : grid) {
        const SecondaryValue va = upsilon_secondary(
            a, region_At(tp), region_At(tm), region_At(t), Flavor::primary);
        const SecondaryValue vb = upsilon_secondary(
            b, region_At(tp), region_At(tm), region_At(t), Flavor::primary);
        const bool differ = va.infinite != vb.infinite ||
                            (!va.infinite && !vb.infinite &&
                             va.value != vb.value);
        if (!differ) continue;
        j["secondary"] = {{"t_plus", to_string(tp)},
                          {"t_minus", to_string(tm)},
                          {"t", to_string(t)},
                          {"a_value", secondary_json(va)},
                          {"b_value", secondary_json(vb)}};
        j["verdict"] = "distinguishable";
        j["method"] = "secondary-upsilon";
        return j.dump(2) + "\n";
      }
    }
  j["verdict"] = "indistinguishable by computed invariants";
  return j.dump(2) + "\n";
}

std::string cmd_grid_info(const InputFlags& f) {
  GridDiagram g;
  std::string label;
  if (f.builtins.size() + f.grids.size() != 1 || !f.complexes.empty())
    throw InputError("grid-info expects exactly one --builtin or --grid");
  if (!f.builtins.empty()) {
    label = f.builtins.front();
    g = builtin_grid(label);
  } else {
    label = stem_of(f.grids.front());
    g = parse_grid(slurp(f.grids.front()));
  }
  const GridCrossingData cross = grid_crossings(g);
  long long states = 1;
  for (int i = 2; i <= g.size; ++i) states *= i;
  ordered_json j;
  j["name"] = label;
  j["size"] = g.size;
  j["components"] = g.components;
  j["doubly_marked"] = g.allow_doubly;
  j["writhe"] = cross.writhe;
  ordered_json linking = ordered_json::array();
  for (int i = 0; i < g.components; ++i) {
    ordered_json row = ordered_json::array();
    for (int k = 0; k < g.components; ++k)
      row.push_back(i == k ? 0 : cross.inter[i][k] / 2);
    linking.push_back(row);
  }
  j["linking"] = linking;
  j["states"] = states;
  return j.dump(2) + "\n";
}

std::string cmd_self_test(long long jobs) {
  std::vector<std::string> names;
  std::vector<std::function<std::string()>> tasks;
  for (const std::string& name : builtin_complex_names())
    tasks.push_back([name] {
      const ModelComplex c = builtin_complex(name);
      c.validate();
      return "ok complex " + name + " (" + std::to_string(c.size()) +
             " generators)\n";
    });
  for (const std::string& name : builtin_grid_names())
    tasks.push_back([name] {
      const GridDiagram g = builtin_grid(name);
      validate_grid(g);
      std::string line =
          "ok grid " + name + " (size " + std::to_string(g.size) + ")\n";
      if (g.size <= 5) {
        const ModelComplex c = grid_complex(g);
        c.validate();
        line += "ok grid-complex " + name + " (" +
                std::to_string(c.size()) + " generators)\n";
      }
      return line;
    });

  std::vector<std::string> lines(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  if (jobs <= 1) {
    for (size_t i = 0; i < tasks.size(); ++i) lines[i] = tasks[i]();
  } else {
    std::atomic<size_t> next{0};
    auto worker = [&] {
      for (size_t i; (i = next.fetch_add(1)) < tasks.size();) {
        try {
          lines[i] = tasks[i]();
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    const size_t width =
        std::min<size_t>(static_cast<size_t>(jobs), tasks.size());
    for (size_t i = 0; i < width; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& e : errors)
      if (e) std::rethrow_exception(e);
  }
  std::ostringstream os;
  size_t checks = 0;
  for (const std::string& line : lines) {
    os << line;
    for (char ch : line) checks += ch == '\n';
  }
  os << "self-test: " << checks << " checks passed\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "link-concordance invariants of bifiltered chain complexes "
      "(upsilon family, tau, nu+, upsilon-set, genus bounds)"};
  app.require_subcommand(1);

  InputFlags inputs;
  std::string out_path;
  std::string region_path;
  std::vector<std::string> t_flags;
  std::string sigma_text;
  std::optional<long long> n_flag;
  long long k_flag = 1;
  long long jobs = 1;

  auto add_common = [&](CLI::App* cmd, bool with_inputs = true) {
    if (with_inputs) add_input_flags(cmd, &inputs);
    cmd->add_option("--out", out_path, "output file (default: stdout)");
    cmd->add_option("--jobs", jobs, "max worker threads")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* inv = app.add_subcommand(
      "invariants", "full invariant report, or one region evaluation");
  add_common(inv);
  inv->add_option("--region", region_path,
                  "south-west region JSON: report upsilon_S, upsilon*_S, h(S)");

  CLI::App* plot = app.add_subcommand(
      "upsilon-plot", "CSV of t,upsilon,upsilon_star at exact breakpoints");
  add_common(plot);
  plot->add_option("--t", t_flags,
                   "extra exact sample points (integer or p/q), repeatable");

  CLI::App* bounds = app.add_subcommand(
      "bounds", "slice-genus and crosscap-number lower bounds");
  add_common(bounds);
  bounds->add_option("--n", n_flag,
                     "expected component count (checked against the input)");
  CLI::Option* sigma_opt = bounds->add_option(
      "--sigma", sigma_text, "link signature (enables the crosscap bounds)");
  bounds->add_option("--k", k_flag, "surface component count (default 1)")
      ->needs(sigma_opt)
      ->check(CLI::PositiveNumber);

  CLI::App* cmp = app.add_subcommand(
      "compare",
      "decide whether two inputs are distinguishable (give two of "
      "--builtin/--grid/--complex; resolved builtins, grids, complexes)");
  add_common(cmp);

  CLI::App* ginfo =
      app.add_subcommand("grid-info", "grid diagram combinatorics");
  add_common(ginfo);

  CLI::App* selftest =
      app.add_subcommand("self-test", "validate every built-in input");
  add_common(selftest, /*with_inputs=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    std::string text;
    if (*inv) {
      text = cmd_invariants(resolve_one(inputs), region_path);
    } else if (*plot) {
      text = cmd_upsilon_plot(resolve_one(inputs), t_flags);
    } else if (*bounds) {
      std::optional<long long> sigma;
      if (sigma_opt->count()) {
        const Q s = parse_rational(sigma_text);
        if (s.denominator() != 1)
          throw InputError("--sigma wants an integer, got " + sigma_text);
        sigma = s.numerator();
      }
      text = cmd_bounds(resolve_one(inputs), n_flag, sigma, k_flag);
    } else if (*cmp) {
      const std::vector<ModelComplex> pair = resolve_inputs(inputs, 2);
      text = cmd_compare(pair[0], pair[1]);
    } else if (*ginfo) {
      text = cmd_grid_info(inputs);
    } else {
      text = cmd_self_test(jobs);
    }
    emit(out_path, text);
    return 0;
  } catch (const UnsupportedFamily& e) {
    std::cerr << "floerlat: unsupported region family: " << e.what() << "\n";
    return 3;
  } catch (const GridPeelError& e) {
    std::cerr << "floerlat: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "floerlat: " << e.what() << "\n";
    return 1;
  } catch (const UnknownBuiltin& e) {
    std::cerr << "floerlat: " << e.what() << "\n";
    return 1;
  } catch (const JsonError& e) {
    std::cerr << "floerlat: " << e.what() << "\n";
    return 1;
  } catch (const GridError& e) {
    std::cerr << "floerlat: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "floerlat: " << e.what() << "\n";
    return 2;
  }
}
