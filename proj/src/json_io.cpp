#include "floerlat/json_io.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace floerlat {
namespace {

using OJson = nlohmann::ordered_json;

OJson q_to_json(const Q& q) {
  if (q.denominator() == 1) return OJson(q.numerator());
  return OJson(to_string(q));
}

Q q_from_json(const OJson& j, const char* what) {
  if (j.is_number_integer()) return Q(j.get<long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    std::istringstream is(s);
    long long num = 0, den = 1;
    char slash = 0;
    if (!(is >> num)) throw JsonError(std::string(what) + ": bad rational '" + s + "'");
    if (is >> slash) {
      if (slash != '/' || !(is >> den) || den == 0)
        throw JsonError(std::string(what) + ": bad rational '" + s + "'");
    }
    std::string rest;
    if (is >> rest) throw JsonError(std::string(what) + ": bad rational '" + s + "'");
    return Q(num, den);
  }
  throw JsonError(std::string(what) + ": expected integer or \"p/q\" string");
}

OJson parse(const std::string& text) {
  try {
    return OJson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw JsonError(std::string("malformed JSON: ") + e.what());
  }
}

const OJson& field(const OJson& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw JsonError(std::string("missing field \"") + key + "\"");
  return *it;
}

OJson pl_to_json(const PLFunction& f) {
  OJson arr = OJson::array();
  for (const auto& [t, v] : f.breakpoints())
    arr.push_back(OJson{{"t", q_to_json(t)}, {"value", q_to_json(v)}});
  return arr;
}

OJson items_to_values(const std::vector<BoundItem>& items) {
  OJson arr = OJson::array();
  for (const auto& it : items) arr.push_back(it.value);
  return arr;
}

}  // namespace

std::string complex_to_json(const ModelComplex& c, int indent) {
  OJson j;
  j["name"] = c.name();
  j["n_components"] = c.n_components();
  OJson gens = OJson::array();
  for (const Generator& g : c.gens())
    gens.push_back(OJson{{"id", g.id}, {"maslov", g.M}, {"alexander", g.A}});
  j["generators"] = std::move(gens);
  OJson edges = OJson::array();
  for (const Edge& e : c.edges())
    edges.push_back(
        OJson::array({c.gens()[e.first].id, c.gens()[e.second].id}));
  j["edges"] = std::move(edges);
  return j.dump(indent) + "\n";
}

ModelComplex complex_from_json(const std::string& text) {
  const OJson j = parse(text);
  if (!j.is_object()) throw JsonError("complex: expected a JSON object");
  const std::string name = field(j, "name").get<std::string>();
  const int n = field(j, "n_components").get<int>();

  std::vector<Generator> gens;
  std::map<std::string, int> index;
  for (const OJson& gj : field(j, "generators")) {
    Generator g;
    g.id = field(gj, "id").get<std::string>();
    g.M = field(gj, "maslov").get<long long>();
    g.A = field(gj, "alexander").get<long long>();
    if (!index.emplace(g.id, static_cast<int>(gens.size())).second)
      throw JsonError("complex: duplicate generator id \"" + g.id + "\"");
    gens.push_back(std::move(g));
  }

  std::vector<Edge> edges;
  for (const OJson& ej : field(j, "edges")) {
    if (!ej.is_array() || ej.size() != 2)
      throw JsonError("complex: each edge wants exactly [\"from\",\"to\"]");
    auto resolve = [&](const OJson& idj) {
      const std::string id = idj.get<std::string>();
      auto it = index.find(id);
      if (it == index.end())
        throw JsonError("complex: edge references unknown id \"" + id + "\"");
      return it->second;
    };
    edges.emplace_back(resolve(ej[0]), resolve(ej[1]));
  }
  return ModelComplex(name, std::move(gens), std::move(edges), n);
}

std::string region_to_json(const SouthWestRegion& s, int indent) {
  OJson prims = OJson::array();
  for (const Primitive& p : s.primitives()) {
    OJson planes = OJson::array();
    for (const HalfPlane& h : p.planes)
      planes.push_back(OJson{{"a", q_to_json(h.a)},
                             {"b", q_to_json(h.b)},
                             {"c", q_to_json(h.c)},
                             {"strict", h.strict}});
    prims.push_back(std::move(planes));
  }
  OJson j;
  j["primitives"] = std::move(prims);
  return j.dump(indent) + "\n";
}

SouthWestRegion region_from_json(const std::string& text) {
  const OJson j = parse(text);
  if (!j.is_object()) throw JsonError("region: expected a JSON object");
  if (j.contains("At")) return region_At(q_from_json(j["At"], "At"));
  if (j.contains("Vk")) return region_Vk(q_from_json(j["Vk"], "Vk"));
  if (j.contains("Wk")) return region_Wk(q_from_json(j["Wk"], "Wk"));
  if (j.contains("corners")) {
    std::vector<std::pair<Q, Q>> corners;
    for (const OJson& cj : j["corners"]) {
      if (!cj.is_array() || cj.size() != 2)
        throw JsonError("region: each corner wants [j, A]");
      corners.emplace_back(q_from_json(cj[0], "corner j"),
                           q_from_json(cj[1], "corner A"));
    }
    return staircase_region(corners);
  }
  if (!j.contains("primitives"))
    throw JsonError(
        "region: expected \"primitives\" or one of the shortcuts "
        "\"At\"/\"Vk\"/\"Wk\"/\"corners\"");
  std::vector<Primitive> prims;
  for (const OJson& pj : j["primitives"]) {
    Primitive prim;
    for (const OJson& hj : pj) {
      HalfPlane h;
      h.a = q_from_json(field(hj, "a"), "plane a");
      h.b = q_from_json(field(hj, "b"), "plane b");
      h.c = q_from_json(field(hj, "c"), "plane c");
      h.strict = hj.value("strict", false);
      prim.planes.push_back(std::move(h));
    }
    prims.push_back(std::move(prim));
  }
  return SouthWestRegion(std::move(prims), "custom");
}

std::string report_to_json(const InvariantReport& r, int indent) {
  OJson j;
  j["name"] = r.name;
  j["tau"] = r.tau;
  j["tau_star"] = r.tau_star;
  j["nu_plus"] = r.nu_plus;
  j["nu_hat"] = r.nu_hat;
  j["nu_check"] = r.nu_check;
  j["upsilon"] = pl_to_json(r.upsilon);
  j["upsilon_star"] = pl_to_json(r.upsilon_star);
  j["upsilon_set"] = r.upsilon_set.values();
  OJson w;
  w["t_lo"] = r.fingerprint.window.t_lo;
  w["t_hi"] = r.fingerprint.window.t_hi;
  w["s_lo"] = r.fingerprint.window.s_lo;
  w["s_hi"] = r.fingerprint.window.s_hi;
  j["fingerprint"] =
      OJson{{"window", std::move(w)},
            {"dims0", r.fingerprint.dims0},
            {"dims1", r.fingerprint.dims1}};
  return j.dump(indent) + "\n";
}

std::string bound_report_to_json(const BoundReport& r, int indent) {
  OJson j;
  j["g4_lower"] = items_to_values(r.g4);
  if (r.k) {
    j["gamma4"] = OJson{{"k", *r.k}, {"bounds", items_to_values(r.gamma4)}};
  } else {
    j["gamma4"] = nullptr;
  }
  OJson wit = OJson::array();
  for (const auto& it : r.g4)
    wit.push_back(it.witness + " (exact " + to_string(it.exact) + ")");
  for (const auto& it : r.gamma4)
    wit.push_back(it.witness + " (exact " + to_string(it.exact) + ")");
  j["witnesses"] = std::move(wit);
  return j.dump(indent) + "\n";
}

std::string upsilon_csv(const PLFunction& upsilon,
                        const PLFunction& upsilon_star) {
  std::set<Q> grid;
  for (const auto& [t, v] : upsilon.breakpoints()) grid.insert(t);
  for (const auto& [t, v] : upsilon_star.breakpoints()) grid.insert(t);
  std::ostringstream os;
  os << "t,upsilon,upsilon_star\n";
  for (const Q& t : grid)
    os << to_string(t) << ',' << to_string(upsilon.eval(t)) << ','
       << to_string(upsilon_star.eval(t)) << '\n';
  return os.str();
}

}  // namespace floerlat
