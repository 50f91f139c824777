#include "stabcat/io.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "stabcat/corpus.hpp"
#include "stabcat/error.hpp"

namespace stabcat::io {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(Errc::InputError, where + ": " + what);
}

void only_fields(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  for (const auto& [key, value] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      bad(where, "unknown field '" + key + "'");
    }
  }
}

const Json& field(const Json& j, const char* name, const std::string& where) {
  auto it = j.find(name);
  if (it == j.end()) bad(where, std::string("missing field '") + name + "'");
  return *it;
}

std::string string_of(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

std::vector<std::string> strings_of(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(string_of(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::map<std::string, std::string> name_table(const Json& j, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object of names");
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) out[k] = string_of(v, where + "." + k);
  return out;
}

void check_kind(const Json& j, const char* kind, const std::string& where) {
  auto it = j.find("kind");
  if (it != j.end() && string_of(*it, where + ".kind") != kind) {
    bad(where, "expected kind '" + std::string(kind) + "', found '" + it->get<std::string>() + "'");
  }
}

// Rethrows library errors with the location prepended.
template <class F>
auto located(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.message().starts_with(where)) throw;
    throw Error(e.code(), where + ": " + e.message(), e.witness());
  }
}

// Objects may be given inline or as a path relative to `base`.
std::pair<Json, fs::path> resolve(const Json& j, const fs::path& base, std::string& where) {
  if (j.is_string()) {
    const fs::path p = base / j.get<std::string>();
    where = p.string();
    return {read_json(p), p.parent_path()};
  }
  return {j, base};
}

Table assignment(const FinPreord& a, const FinPreord& b, const std::map<std::string, std::string>& assign,
                 const std::string& where) {
  Table t(static_cast<std::size_t>(a.size()), -1);
  for (const auto& [x, y] : assign) {
    auto ix = a.index_of(x);
    auto iy = b.index_of(y);
    if (!ix) bad(where, "unknown source element '" + x + "'");
    if (!iy) bad(where, "unknown target element '" + y + "'");
    t[static_cast<std::size_t>(*ix)] = *iy;
  }
  for (int i = 0; i < a.size(); ++i) {
    if (t[static_cast<std::size_t>(i)] < 0) bad(where, "no image for '" + a.name(i) + "'");
  }
  return t;
}

}  // namespace

Json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::InputError, path.string() + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::InputError, path.string() + ": malformed JSON at byte " + std::to_string(e.byte));
  }
}

FinPreord preord_from_json(const Json& j, bool strict, const std::string& where) {
  only_fields(j, {"kind", "elements", "leq", "strict"}, where);
  check_kind(j, "preord", where);
  RawPreord raw;
  raw.elements = strings_of(field(j, "elements", where), where + ".elements");
  if (auto it = j.find("leq"); it != j.end()) {
    if (!it->is_array()) bad(where + ".leq", "expected an array of pairs");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto pair = strings_of((*it)[i], where + ".leq[" + std::to_string(i) + "]");
      if (pair.size() != 2) bad(where + ".leq[" + std::to_string(i) + "]", "expected a pair");
      raw.leq.emplace_back(pair[0], pair[1]);
    }
  }
  bool file_strict = false;
  if (auto it = j.find("strict"); it != j.end()) {
    if (!it->is_boolean()) bad(where + ".strict", "expected a boolean");
    file_strict = it->get<bool>();
  }
  return located(where, [&] { return validate_preord(raw, strict || file_strict); });
}

FinCat cat_from_json(const Json& j, const std::string& where) {
  only_fields(j, {"kind", "objects", "arrows", "identities", "compose"}, where);
  check_kind(j, "cat", where);
  RawCat raw;
  raw.objects = strings_of(field(j, "objects", where), where + ".objects");
  if (auto it = j.find("arrows"); it != j.end()) {
    if (!it->is_array()) bad(where + ".arrows", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string w = where + ".arrows[" + std::to_string(i) + "]";
      const auto& a = (*it)[i];
      only_fields(a, {"name", "dom", "cod"}, w);
      raw.arrows.push_back(RawArrow{string_of(field(a, "name", w), w + ".name"), string_of(field(a, "dom", w), w + ".dom"),
                                    string_of(field(a, "cod", w), w + ".cod")});
    }
  }
  if (auto it = j.find("identities"); it != j.end()) raw.identities = name_table(*it, where + ".identities");
  if (auto it = j.find("compose"); it != j.end()) {
    if (!it->is_array()) bad(where + ".compose", "expected an array of triples");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const auto t = strings_of((*it)[i], where + ".compose[" + std::to_string(i) + "]");
      if (t.size() != 3) bad(where + ".compose[" + std::to_string(i) + "]", "expected [g, f, g∘f]");
      raw.compose.emplace_back(t[0], t[1], t[2]);
    }
  }
  return located(where, [&] { return validate_cat(raw); });
}

PreordPresheaf presheaf_from_json(const Json& j, const fs::path& base, bool strict, const std::string& where) {
  only_fields(j, {"kind", "index", "components", "restrictions"}, where);
  check_kind(j, "presheaf", where);
  std::string iw = where + ".index";
  auto [ij, ibase] = resolve(field(j, "index", where), base, iw);
  const auto order = preord_from_json(ij, strict, iw);
  auto index = located(iw, [&] { return FinPoset::make(order); });

  const auto& comps = field(j, "components", where);
  if (!comps.is_object()) bad(where + ".components", "expected an object keyed by index point");
  std::vector<FinPreord> components;
  for (int p = 0; p < index.size(); ++p) {
    auto it = comps.find(index.name(p));
    if (it == comps.end()) bad(where + ".components", "missing component for '" + index.name(p) + "'");
    std::string cw = where + ".components." + index.name(p);
    auto [cj, cbase] = resolve(*it, base, cw);
    components.push_back(preord_from_json(cj, strict, cw));
  }
  for (const auto& [k, v] : comps.items()) {
    if (!index.order.index_of(k)) bad(where + ".components", "component for unknown point '" + k + "'");
  }

  std::vector<PreordPresheaf::Restriction> covers;
  if (auto it = j.find("restrictions"); it != j.end()) {
    if (!it->is_array()) bad(where + ".restrictions", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string w = where + ".restrictions[" + std::to_string(i) + "]";
      const auto& r = (*it)[i];
      only_fields(r, {"from", "to", "map"}, w);
      auto from = index.order.index_of(string_of(field(r, "from", w), w + ".from"));
      auto to = index.order.index_of(string_of(field(r, "to", w), w + ".to"));
      if (!from || !to) bad(w, "unknown index point");
      const auto& src = components[static_cast<std::size_t>(*from)];
      const auto& dst = components[static_cast<std::size_t>(*to)];
      const auto& m = field(r, "map", w);
      Table t;
      if (m.is_string()) {
        // A map file; its declared source and target must be the components.
        std::string mw = w + ".map";
        auto [mj, mbase] = resolve(m, base, mw);
        auto loaded = map_from_json(mj, mbase, strict, mw);
        auto* mm = std::get_if<MonotoneMap>(&loaded);
        if (!mm) bad(mw, "restriction must be a map of preorders");
        if (!(*mm->source == src) || !(*mm->target == dst)) bad(mw, "source or target differs from the components");
        t = mm->assign;
      } else {
        t = assignment(src, dst, name_table(m, w + ".map"), w + ".map");
      }
      covers.push_back({*from, *to, std::move(t)});
    }
  }
  return located(where, [&] { return PreordPresheaf::make(std::move(index), std::move(components), std::move(covers)); });
}

AnyObject object_from_json(const Json& j, const fs::path& base, bool strict, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  const auto it = j.find("kind");
  if (it == j.end()) bad(where, "missing field 'kind'");
  const auto kind = string_of(*it, where + ".kind");
  if (kind == "preord") return preord_from_json(j, strict, where);
  if (kind == "cat") return cat_from_json(j, where);
  if (kind == "presheaf") return presheaf_from_json(j, base, strict, where);
  bad(where, "unknown kind '" + kind + "'");
}

AnyMap map_from_json(const Json& j, const fs::path& base, bool strict, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  const auto kind = string_of(field(j, "kind", where), where + ".kind");
  if (kind == "map") {
    only_fields(j, {"kind", "source", "target", "assign"}, where);
    std::string sw = where + ".source";
    std::string tw = where + ".target";
    auto [sj, sb] = resolve(field(j, "source", where), base, sw);
    auto [tj, tb] = resolve(field(j, "target", where), base, tw);
    auto src = share(preord_from_json(sj, strict, sw));
    auto dst = share(preord_from_json(tj, strict, tw));
    auto t = assignment(*src, *dst, name_table(field(j, "assign", where), where + ".assign"), where + ".assign");
    return located(where, [&] { return MonotoneMap::make(src, dst, std::move(t)); });
  }
  if (kind == "functor") {
    only_fields(j, {"kind", "source", "target", "objects", "arrows"}, where);
    std::string sw = where + ".source";
    std::string tw = where + ".target";
    auto [sj, sb] = resolve(field(j, "source", where), base, sw);
    auto [tj, tb] = resolve(field(j, "target", where), base, tw);
    auto src = share(cat_from_json(sj, sw));
    auto dst = share(cat_from_json(tj, tw));
    FunctorTable t{std::vector<int>(static_cast<std::size_t>(src->object_count()), -1),
                   std::vector<int>(static_cast<std::size_t>(src->arrow_count()), -1)};
    for (const auto& [x, y] : name_table(field(j, "objects", where), where + ".objects")) {
      auto ix = src->object_index(x);
      auto iy = dst->object_index(y);
      if (!ix || !iy) bad(where + ".objects", "unknown object in '" + x + "' -> '" + y + "'");
      t.obj[static_cast<std::size_t>(*ix)] = *iy;
    }
    for (const auto& [x, y] : name_table(field(j, "arrows", where), where + ".arrows")) {
      auto ix = src->arrow_index(x);
      auto iy = dst->arrow_index(y);
      if (!ix || !iy) bad(where + ".arrows", "unknown arrow in '" + x + "' -> '" + y + "'");
      t.arr[static_cast<std::size_t>(*ix)] = *iy;
    }
    // Identities may be left out: they go to identities.
    for (int x = 0; x < src->object_count(); ++x) {
      if (t.obj[static_cast<std::size_t>(x)] < 0) bad(where + ".objects", "no image for '" + src->object_name(x) + "'");
      auto& slot = t.arr[static_cast<std::size_t>(src->identity(x))];
      if (slot < 0) slot = dst->identity(t.obj[static_cast<std::size_t>(x)]);
    }
    for (int f = 0; f < src->arrow_count(); ++f) {
      if (t.arr[static_cast<std::size_t>(f)] < 0) bad(where + ".arrows", "no image for '" + src->arrow(f).name + "'");
    }
    return located(where, [&] { return Functor::make(src, dst, std::move(t)); });
  }
  bad(where, "expected kind 'map' or 'functor', found '" + kind + "'");
}

AnyObject load_object(const fs::path& path, bool strict) {
  return object_from_json(read_json(path), path.parent_path(), strict, path.string());
}

AnyMap load_map(const fs::path& path, bool strict) {
  return map_from_json(read_json(path), path.parent_path(), strict, path.string());
}

std::variant<AnyObject, AnyMap> load_any(const fs::path& path, bool strict) {
  const Json j = read_json(path);
  if (j.is_object() && j.contains("kind") && j["kind"].is_string()) {
    const auto kind = j["kind"].get<std::string>();
    if (kind == "map" || kind == "functor") return map_from_json(j, path.parent_path(), strict, path.string());
  }
  return object_from_json(j, path.parent_path(), strict, path.string());
}

AnyCorpus load_corpus(const std::string& selector, bool strict) {
  static const std::regex preord_gen(R"(gen:preord<=(\d+))");
  std::smatch m;
  if (std::regex_match(selector, m, preord_gen)) return preorder_corpus(std::stoi(m[1]));
  if (selector == "gen:cat-fixtures") return cat_fixture_corpus();
  if (selector == "gen:presheaf") return presheaf_corpus();
  if (selector.starts_with("gen:")) throw Error(Errc::InputError, selector + ": unknown generator");

  const fs::path dir(selector);
  if (!fs::is_directory(dir)) throw Error(Errc::InputError, selector + ": not a directory or generator");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::optional<AnyCorpus> out;
  for (const auto& f : files) {
    const Json j = read_json(f);
    // Map files and component files referenced by presheaves are skipped.
    const auto kind = j.is_object() && j.contains("kind") && j["kind"].is_string() ? j["kind"].get<std::string>() : "";
    if (kind == "map" || kind == "functor") continue;
    auto obj = object_from_json(j, f.parent_path(), strict, f.string());
    const std::string name = f.stem().string();
    std::visit(
        [&](auto&& value) {
          using T = std::decay_t<decltype(value)>;
          if (!out) out = Corpus<T>{};
          auto* c = std::get_if<Corpus<T>>(&*out);
          if (!c) throw Error(Errc::InputError, f.string() + ": corpus mixes object kinds");
          c->emplace_back(name, std::move(value));
        },
        obj);
  }
  if (!out) throw Error(Errc::InputError, selector + ": no object files");
  return *out;
}

}  // namespace stabcat::io
