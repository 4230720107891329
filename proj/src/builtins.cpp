#include "floerlat/builtins.hpp"

#include <algorithm>
#include <map>

#include "floerlat/json_io.hpp"

namespace floerlat {
namespace {

struct BuiltinText {
  const char* name;
  const char* text;
};

#include "builtins_data.inc"

const BuiltinText* find_text(const BuiltinText* begin, const BuiltinText* end,
                             const std::string& name) {
  for (const BuiltinText* it = begin; it != end; ++it)
    if (name == it->name) return it;
  return nullptr;
}

// Composite entries assembled from the library.
const char* const kComposites[] = {"unknot", "unlink2", "unlink3",
                                   "l0",     "l1",      "l2",
                                   "l3",     "j1",      "j2"};

ModelComplex composite(const std::string& name) {
  if (name == "unknot") return unlink_complex(1);
  if (name == "unlink2") return unlink_complex(2);
  if (name == "unlink3") return unlink_complex(3);
  if (name == "l0") return l_n_complex(0);
  if (name == "l1") return l_n_complex(1);
  if (name == "l2") return l_n_complex(2);
  if (name == "l3") return l_n_complex(3);
  if (name == "j1") return builtin_complex("t57").with_name("j1");
  // j2 matches j1 on every classical invariant; the secondary family tells
  // them apart.
  return tensor(builtin_complex("t25"), builtin_complex("t56"))
      .with_name("j2");
}

std::string resolve_alias(const std::string& name) {
  static const std::map<std::string, std::string> kAliases = {
      {"trefoil+", "t23"},
      {"trefoil-", "t23m"},
      {"hopf+", "hopf_plus"},
      {"hopf-", "hopf_minus"},
  };
  auto it = kAliases.find(name);
  return it == kAliases.end() ? name : it->second;
}

}  // namespace

std::vector<std::string> builtin_complex_names() {
  std::vector<std::string> names;
  for (const BuiltinText& t : kBuiltinComplexTexts) names.push_back(t.name);
  for (const char* n : kComposites) names.push_back(n);
  std::sort(names.begin(), names.end());
  return names;
}

ModelComplex builtin_complex(const std::string& name) {
  const std::string canon = resolve_alias(name);
  if (const BuiltinText* t =
          find_text(std::begin(kBuiltinComplexTexts),
                    std::end(kBuiltinComplexTexts), canon))
    return complex_from_json(t->text);
  for (const char* n : kComposites)
    if (canon == n) return composite(canon);
  throw UnknownBuiltin("unknown builtin complex \"" + name + "\"");
}

std::vector<std::string> builtin_grid_names() {
  std::vector<std::string> names;
  for (const BuiltinText& t : kBuiltinGridTexts) names.push_back(t.name);
  std::sort(names.begin(), names.end());
  return names;
}

const std::string& builtin_grid_text(const std::string& name) {
  static std::map<std::string, std::string> cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  if (const BuiltinText* t = find_text(std::begin(kBuiltinGridTexts),
                                       std::end(kBuiltinGridTexts), name))
    return cache.emplace(name, t->text).first->second;
  throw UnknownBuiltin("unknown builtin grid \"" + name + "\"");
}

GridDiagram builtin_grid(const std::string& name) {
  return parse_grid(builtin_grid_text(name));
}

ModelComplex l_n_complex(int n) {
  if (n < 0 || n > 6)
    throw UnknownBuiltin("l_n_complex wants 0 <= n <= 6, got " +
                         std::to_string(n));
  ModelComplex c = builtin_complex("t24m");
  const ModelComplex t34 = builtin_complex("t34");
  for (int i = 0; i < n; ++i) c = tensor(c, t34);
  return c.with_name("l" + std::to_string(n));
}

}  // namespace floerlat
