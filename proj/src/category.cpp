#include "stabcat/category.hpp"

#include <algorithm>
#include <set>

#include "stabcat/error.hpp"

namespace stabcat {

FinCat build_cat(std::vector<std::string> objects, std::vector<Arrow> arrows, std::vector<int> identity,
                 std::vector<int> compose) {
  FinCat c;
  c.objects_ = std::move(objects);
  c.arrows_ = std::move(arrows);
  c.identity_ = std::move(identity);
  c.compose_ = std::move(compose);
  return c;
}

std::optional<int> FinCat::object_index(std::string_view name) const {
  auto it = std::find(objects_.begin(), objects_.end(), name);
  if (it == objects_.end()) return std::nullopt;
  return static_cast<int>(it - objects_.begin());
}

std::optional<int> FinCat::arrow_index(std::string_view name) const {
  for (int f = 0; f < arrow_count(); ++f) {
    if (arrows_[f].name == name) return f;
  }
  return std::nullopt;
}

std::vector<int> FinCat::hom(int x, int y) const {
  std::vector<int> out;
  for (int f = 0; f < arrow_count(); ++f) {
    if (arrows_[f].dom == x && arrows_[f].cod == y) out.push_back(f);
  }
  return out;
}

std::optional<int> FinCat::inverse(int f) const {
  const int x = dom(f);
  const int y = cod(f);
  for (int g : hom(y, x)) {
    if (compose(g, f) == identity(x) && compose(f, g) == identity(y)) return g;
  }
  return std::nullopt;
}

Mask FinCat::arrows_within(Mask objs) const {
  Mask out = 0;
  for (int f = 0; f < arrow_count(); ++f) {
    if (has(objs, dom(f)) && has(objs, cod(f))) out |= bit(f);
  }
  return out;
}

FinCat FinCat::restrict(Mask objs, Mask arrs) const {
  std::vector<int> obj_new(objects_.size(), -1);
  std::vector<int> arr_new(arrows_.size(), -1);
  std::vector<std::string> objects;
  for (int x : members(objs)) {
    obj_new[x] = static_cast<int>(objects.size());
    objects.push_back(objects_[x]);
  }
  std::vector<Arrow> arrows;
  for (int f : members(arrs)) {
    arr_new[f] = static_cast<int>(arrows.size());
    arrows.push_back(Arrow{arrows_[f].name, obj_new[dom(f)], obj_new[cod(f)]});
  }
  std::vector<int> identity;
  for (int x : members(objs)) identity.push_back(arr_new[this->identity(x)]);
  const auto n = arrows.size();
  std::vector<int> comp(n * n, -1);
  const auto arr_idx = members(arrs);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const int gf = compose(arr_idx[i], arr_idx[j]);
      if (gf >= 0) comp[i * n + j] = arr_new[gf];
    }
  }
  return build_cat(std::move(objects), std::move(arrows), std::move(identity), std::move(comp));
}

FinCat FinCat::opposite() const {
  std::vector<Arrow> arrows = arrows_;
  for (auto& a : arrows) std::swap(a.dom, a.cod);
  const auto n = arrows.size();
  std::vector<int> comp(n * n, -1);
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t f = 0; f < n; ++f) comp[g * n + f] = compose(static_cast<int>(f), static_cast<int>(g));
  }
  return build_cat(objects_, std::move(arrows), identity_, std::move(comp));
}

std::string FinCat::key() const {
  std::string k = "C{";
  for (const auto& o : objects_) k += o + ',';
  k += '|';
  for (const auto& a : arrows_) k += a.name + ':' + std::to_string(a.dom) + '>' + std::to_string(a.cod) + ',';
  k += '|';
  for (int c : compose_) k += std::to_string(c) + ',';
  k += '}';
  return k;
}

FinCat validate_cat(const RawCat& raw) {
  std::set<std::string> seen;
  for (const auto& o : raw.objects) {
    if (o.empty()) throw Error(Errc::InputError, "empty object name");
    if (!seen.insert(o).second) throw Error(Errc::DuplicateName, "duplicate object '" + o + "'", {o});
  }
  auto obj = [&](const std::string& n) -> std::optional<int> {
    auto it = std::find(raw.objects.begin(), raw.objects.end(), n);
    if (it == raw.objects.end()) return std::nullopt;
    return static_cast<int>(it - raw.objects.begin());
  };

  std::vector<Arrow> arrows;
  std::set<std::string> arrow_names;
  for (const auto& a : raw.arrows) {
    if (a.name.empty()) throw Error(Errc::InputError, "empty arrow name");
    if (!arrow_names.insert(a.name).second) throw Error(Errc::DuplicateName, "duplicate arrow '" + a.name + "'", {a.name});
    auto d = obj(a.dom);
    auto c = obj(a.cod);
    if (!d || !c) throw Error(Errc::DanglingEndpoint, "arrow '" + a.name + "' has an unknown endpoint", {a.name});
    arrows.push_back(Arrow{a.name, *d, *c});
  }
  auto arrow_of = [&](const std::string& n) -> std::optional<int> {
    for (std::size_t f = 0; f < arrows.size(); ++f) {
      if (arrows[f].name == n) return static_cast<int>(f);
    }
    return std::nullopt;
  };

  for (const auto& [o, a] : raw.identities) {
    if (!obj(o)) throw Error(Errc::InputError, "identity given for unknown object '" + o + "'");
    if (!arrow_of(a)) throw Error(Errc::DanglingEndpoint, "identity arrow '" + a + "' is not declared", {a});
  }
  std::vector<int> identity(raw.objects.size(), -1);
  for (std::size_t x = 0; x < raw.objects.size(); ++x) {
    const auto& o = raw.objects[x];
    std::string id_name;
    if (auto it = raw.identities.find(o); it != raw.identities.end()) {
      id_name = it->second;
    } else {
      id_name = "id_" + o;
      if (!arrow_of(id_name)) {
        if (arrows.size() >= static_cast<std::size_t>(kMaxCarrier)) throw Error(Errc::SizeLimit, "too many arrows");
        arrows.push_back(Arrow{id_name, static_cast<int>(x), static_cast<int>(x)});
      }
    }
    const int i = *arrow_of(id_name);
    if (arrows[i].dom != static_cast<int>(x) || arrows[i].cod != static_cast<int>(x)) {
      throw Error(Errc::UnitLawViolation, "identity '" + id_name + "' is not an endomorphism of " + o, {id_name});
    }
    identity[x] = i;
  }
  if (arrows.size() > static_cast<std::size_t>(kMaxCarrier)) throw Error(Errc::SizeLimit, "too many arrows");

  const auto n = arrows.size();
  std::vector<int> comp(n * n, -1);
  for (const auto& [g, f, gf] : raw.compose) {
    auto ig = arrow_of(g);
    auto iff = arrow_of(f);
    auto igf = arrow_of(gf);
    if (!ig || !iff || !igf) throw Error(Errc::InputError, "composition entry mentions an unknown arrow");
    if (arrows[*iff].cod != arrows[*ig].dom) {
      throw Error(Errc::TypeMismatch, "composite given for non-composable pair (" + g + "," + f + ")", {g, f});
    }
    if (arrows[*igf].dom != arrows[*iff].dom || arrows[*igf].cod != arrows[*ig].cod) {
      throw Error(Errc::TypeMismatch, "composite '" + gf + "' has wrong endpoints", {g, f, gf});
    }
    auto& slot = comp[*ig * n + *iff];
    if (slot >= 0 && slot != *igf) throw Error(Errc::InputError, "conflicting composites for (" + g + "," + f + ")", {g, f});
    slot = *igf;
  }

  // Unit laws: fill the forced entries, reject contradicting ones.
  for (std::size_t f = 0; f < n; ++f) {
    const int l = identity[arrows[f].cod];
    const int r = identity[arrows[f].dom];
    for (auto* slot : {&comp[l * n + f], &comp[f * n + r]}) {
      if (*slot < 0) *slot = static_cast<int>(f);
      if (*slot != static_cast<int>(f)) {
        throw Error(Errc::UnitLawViolation, "unit law fails for '" + arrows[f].name + "'", {arrows[f].name});
      }
    }
  }
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t f = 0; f < n; ++f) {
      if (arrows[f].cod == arrows[g].dom && comp[g * n + f] < 0) {
        throw Error(Errc::MissingComposite, "no composite for (" + arrows[g].name + "," + arrows[f].name + ")",
                    {arrows[g].name, arrows[f].name});
      }
    }
  }
  for (std::size_t h = 0; h < n; ++h) {
    for (std::size_t g = 0; g < n; ++g) {
      const int hg = comp[h * n + g];
      if (hg < 0) continue;
      for (std::size_t f = 0; f < n; ++f) {
        const int gf = comp[g * n + f];
        if (gf < 0) continue;
        if (comp[h * n + gf] != comp[hg * n + f]) {
          throw Error(Errc::AssociativityViolation,
                      "(" + arrows[h].name + "," + arrows[g].name + "," + arrows[f].name + ")",
                      {arrows[h].name, arrows[g].name, arrows[f].name});
        }
      }
    }
  }
  return build_cat(raw.objects, std::move(arrows), std::move(identity), std::move(comp));
}

namespace {

struct Triple {
  int g, f, gf;
};

}  // namespace

bool is_functor_on(const FinCat& source, const FunctorTable& t, Mask objs, const FinCat& target) {
  const Mask arrs = source.arrows_within(objs);
  for (int x : members(objs)) {
    if (t.obj[x] < 0 || t.obj[x] >= target.object_count()) return false;
    if (t.arr[source.identity(x)] != target.identity(t.obj[x])) return false;
  }
  for (int f : members(arrs)) {
    const int y = t.arr[f];
    if (y < 0 || target.dom(y) != t.obj[source.dom(f)] || target.cod(y) != t.obj[source.cod(f)]) return false;
  }
  for (int g : members(arrs)) {
    for (int f : members(arrs)) {
      const int gf = source.compose(g, f);
      if (gf >= 0 && target.compose(t.arr[g], t.arr[f]) != t.arr[gf]) return false;
    }
  }
  return true;
}

std::vector<FunctorTable> functor_tables(const FinCat& source, Mask objs, const FinCat& target) {
  std::vector<FunctorTable> out;
  objs &= source.all_objects();
  const auto obj_list = members(objs);
  const Mask arrs = source.arrows_within(objs);
  std::vector<int> free_arrows;
  for (int f : members(arrs)) {
    if (!source.is_identity(f)) free_arrows.push_back(f);
  }
  // Composition constraints bucketed by the latest free arrow they mention,
  // so each one is checked as soon as all its arrows are assigned.
  std::vector<int> order(static_cast<std::size_t>(source.arrow_count()), -1);
  for (std::size_t k = 0; k < free_arrows.size(); ++k) order[free_arrows[k]] = static_cast<int>(k);
  std::vector<std::vector<Triple>> checks(free_arrows.size() + 1);
  for (int g : members(arrs)) {
    for (int f : members(arrs)) {
      const int gf = source.compose(g, f);
      if (gf < 0) continue;
      const int stage = std::max({order[g], order[f], order[gf]}) + 1;
      checks[static_cast<std::size_t>(stage)].push_back({g, f, gf});
    }
  }

  FunctorTable t{std::vector<int>(static_cast<std::size_t>(source.object_count()), -1),
                 std::vector<int>(static_cast<std::size_t>(source.arrow_count()), -1)};
  auto ok_stage = [&](std::size_t stage) {
    for (const auto& c : checks[stage]) {
      if (target.compose(t.arr[c.g], t.arr[c.f]) != t.arr[c.gf]) return false;
    }
    return true;
  };
  auto arrows_rec = [&](auto&& self, std::size_t k) -> void {
    if (k == free_arrows.size()) {
      out.push_back(t);
      return;
    }
    const int f = free_arrows[k];
    for (int y : target.hom(t.obj[source.dom(f)], t.obj[source.cod(f)])) {
      t.arr[f] = y;
      if (ok_stage(k + 1)) self(self, k + 1);
    }
    t.arr[f] = -1;
  };
  auto objects_rec = [&](auto&& self, std::size_t k) -> void {
    if (k == obj_list.size()) {
      for (int x : obj_list) t.arr[source.identity(x)] = target.identity(t.obj[x]);
      if (ok_stage(0)) arrows_rec(arrows_rec, 0);
      for (int x : obj_list) t.arr[source.identity(x)] = -1;
      return;
    }
    for (int y = 0; y < target.object_count(); ++y) {
      t.obj[obj_list[k]] = y;
      self(self, k + 1);
    }
    t.obj[obj_list[k]] = -1;
  };
  objects_rec(objects_rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

Functor Functor::make(CatRef source, CatRef target, FunctorTable map) {
  if (static_cast<int>(map.obj.size()) != source->object_count() ||
      static_cast<int>(map.arr.size()) != source->arrow_count()) {
    throw Error(Errc::TypeMismatch, "functor table size does not match source");
  }
  for (int x = 0; x < source->object_count(); ++x) {
    if (map.obj[x] < 0 || map.obj[x] >= target->object_count()) {
      throw Error(Errc::TypeMismatch, "object assignment out of range", {source->object_name(x)});
    }
  }
  for (int f = 0; f < source->arrow_count(); ++f) {
    const int y = map.arr[f];
    if (y < 0 || y >= target->arrow_count() || target->dom(y) != map.obj[source->dom(f)] ||
        target->cod(y) != map.obj[source->cod(f)]) {
      throw Error(Errc::NotFunctorial, "arrow '" + source->arrow(f).name + "' is not mapped between the images of its endpoints",
                  {source->arrow(f).name});
    }
  }
  for (int x = 0; x < source->object_count(); ++x) {
    if (map.arr[source->identity(x)] != target->identity(map.obj[x])) {
      throw Error(Errc::NotFunctorial, "identity of '" + source->object_name(x) + "' not preserved",
                  {source->arrow(source->identity(x)).name});
    }
  }
  for (int g = 0; g < source->arrow_count(); ++g) {
    for (int f = 0; f < source->arrow_count(); ++f) {
      const int gf = source->compose(g, f);
      if (gf >= 0 && target->compose(map.arr[g], map.arr[f]) != map.arr[gf]) {
        throw Error(Errc::NotFunctorial, "composite (" + source->arrow(g).name + "," + source->arrow(f).name + ") not preserved",
                    {source->arrow(g).name, source->arrow(f).name});
      }
    }
  }
  return Functor{std::move(source), std::move(target), std::move(map)};
}

Functor Functor::identity(CatRef c) {
  FunctorTable t;
  for (int x = 0; x < c->object_count(); ++x) t.obj.push_back(x);
  for (int f = 0; f < c->arrow_count(); ++f) t.arr.push_back(f);
  return Functor{c, c, std::move(t)};
}

Functor Functor::inclusion(const CatRef& ambient, Mask objs, Mask arrs) {
  auto sub = share(ambient->restrict(objs, arrs));
  FunctorTable t;
  for (int x : members(objs)) t.obj.push_back(x);
  for (int f : members(arrs)) t.arr.push_back(f);
  return Functor{std::move(sub), ambient, std::move(t)};
}

bool Functor::surjective_on_objects() const {
  Mask img = 0;
  for (int y : map.obj) img |= bit(y);
  return img == target->all_objects();
}

bool Functor::surjective_on_arrows() const {
  Mask img = 0;
  for (int y : map.arr) img |= bit(y);
  return img == target->all_arrows();
}

bool Functor::certified_epi() const {
  if (!surjective_on_objects()) return false;
  Mask gen = 0;
  for (int y : map.arr) gen |= bit(y);
  for (bool grew = true; grew;) {
    grew = false;
    for (int g : members(gen)) {
      for (int f : members(gen)) {
        const int gf = target->compose(g, f);
        if (gf >= 0 && !has(gen, gf)) {
          gen |= bit(gf);
          grew = true;
        }
      }
    }
  }
  return gen == target->all_arrows();
}

Functor compose(const Functor& g, const Functor& f) {
  if (!(*f.target == *g.source)) throw Error(Errc::TypeMismatch, "composite of non-composable functors");
  FunctorTable t;
  for (int y : f.map.obj) t.obj.push_back(g.map.obj[y]);
  for (int y : f.map.arr) t.arr.push_back(g.map.arr[y]);
  return Functor{f.source, g.target, std::move(t)};
}

bool operator==(const Functor& a, const Functor& b) {
  return a.map == b.map && *a.source == *b.source && *a.target == *b.target;
}

bool is_subcategory(const FinCat& c, Mask objs, Mask arrs) {
  for (int x : members(objs)) {
    if (!has(arrs, c.identity(x))) return false;
  }
  for (int f : members(arrs)) {
    if (!has(objs, c.dom(f)) || !has(objs, c.cod(f))) return false;
  }
  for (int g : members(arrs)) {
    for (int f : members(arrs)) {
      const int gf = c.compose(g, f);
      if (gf >= 0 && !has(arrs, gf)) return false;
    }
  }
  return true;
}

SubCat SubCat::make(CatRef ambient, Mask objs, Mask arrs) {
  if (!subset(objs, ambient->all_objects()) || !subset(arrs, ambient->all_arrows()) ||
      !is_subcategory(*ambient, objs, arrs)) {
    throw Error(Errc::TypeMismatch, "not a subcategory (closure invariants fail)");
  }
  return SubCat{std::move(ambient), objs, arrs};
}

SubCat SubCat::full(CatRef ambient, Mask objs) {
  const Mask arrs = ambient->arrows_within(objs);
  return SubCat{std::move(ambient), objs, arrs};
}

std::vector<SubCat> all_subcategories(const CatRef& c) {
  if (c->object_count() > 16) throw Error(Errc::SizeLimit, "too many objects for subcategory enumeration");
  std::vector<SubCat> out;
  for (Mask objs = 0; objs <= c->all_objects(); ++objs) {
    Mask ids = 0;
    for (int x : members(objs)) ids |= bit(c->identity(x));
    const auto optional_arrows = members(c->arrows_within(objs) & ~ids);
    if (optional_arrows.size() > 20) throw Error(Errc::SizeLimit, "too many arrows for subcategory enumeration");
    const Mask combos = full_mask(static_cast<int>(optional_arrows.size()));
    for (Mask pick = 0; pick <= combos; ++pick) {
      Mask arrs = ids;
      for (int k : members(pick)) arrs |= bit(optional_arrows[k]);
      if (is_subcategory(*c, objs, arrs)) out.push_back(SubCat{c, objs, arrs});
    }
    if (objs == c->all_objects()) break;
  }
  return out;
}

SubCat union_closure(const SubCat& s, const SubCat& t) {
  if (!(*s.ambient == *t.ambient)) throw Error(Errc::TypeMismatch, "subcategories of different categories");
  const FinCat& c = *s.ambient;
  Mask arrs = s.arrs | t.arrs;
  for (bool grew = true; grew;) {
    grew = false;
    for (int g : members(arrs)) {
      for (int f : members(arrs)) {
        const int gf = c.compose(g, f);
        if (gf >= 0 && !has(arrs, gf)) {
          arrs |= bit(gf);
          grew = true;
        }
      }
    }
  }
  return SubCat{s.ambient, s.objs | t.objs, arrs};
}

SubCat intersection(const SubCat& s, const SubCat& t) {
  if (!(*s.ambient == *t.ambient)) throw Error(Errc::TypeMismatch, "subcategories of different categories");
  return SubCat{s.ambient, s.objs & t.objs, s.arrs & t.arrs};
}

SubCat preimage_sub(const Functor& f, const SubCat& sub) {
  if (!(*sub.ambient == *f.target)) throw Error(Errc::TypeMismatch, "subcategory is not in the target of the functor");
  Mask objs = 0;
  Mask arrs = 0;
  for (std::size_t x = 0; x < f.map.obj.size(); ++x) {
    if (has(sub.objs, f.map.obj[x])) objs |= bit(static_cast<int>(x));
  }
  for (std::size_t a = 0; a < f.map.arr.size(); ++a) {
    if (has(sub.arrs, f.map.arr[a])) arrs |= bit(static_cast<int>(a));
  }
  return SubCat::make(f.source, objs, arrs);
}

}  // namespace stabcat
