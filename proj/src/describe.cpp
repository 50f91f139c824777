#include "stabcat/describe.hpp"

namespace stabcat {

Json describe(const FinPreord& p) {
  Json out;
  out["kind"] = "preord";
  out["elements"] = p.names();
  Json leq = Json::array();
  for (int a = 0; a < p.size(); ++a) {
    for (int b : members(p.up(a))) {
      if (a != b) leq.push_back(Json::array({p.name(a), p.name(b)}));
    }
  }
  out["leq"] = leq;
  return out;
}

Json describe(const FinCat& c) {
  Json out;
  out["kind"] = "cat";
  out["objects"] = c.object_names();
  Json arrows = Json::array();
  for (const auto& a : c.arrows()) {
    arrows.push_back(Json{{"name", a.name}, {"dom", c.object_name(a.dom)}, {"cod", c.object_name(a.cod)}});
  }
  out["arrows"] = arrows;
  Json ids = Json::object();
  for (int x = 0; x < c.object_count(); ++x) ids[c.object_name(x)] = c.arrow(c.identity(x)).name;
  out["identities"] = ids;
  Json comp = Json::array();
  for (int g = 0; g < c.arrow_count(); ++g) {
    for (int f = 0; f < c.arrow_count(); ++f) {
      const int gf = c.compose(g, f);
      if (gf < 0 || c.is_identity(g) || c.is_identity(f)) continue;
      comp.push_back(Json::array({c.arrow(g).name, c.arrow(f).name, c.arrow(gf).name}));
    }
  }
  out["compose"] = comp;
  return out;
}

Json describe_sub(const FinPreord& p, Mask m) { return p.names_of(m); }

Json describe_sub(const FinCat& c, Mask objs) { return CatAmbient::names_of(c, objs); }

Json describe_map(const FinPreord& a, const Table& f, const FinPreord& b) {
  Json out = Json::object();
  for (int i = 0; i < a.size(); ++i) {
    if (f[static_cast<std::size_t>(i)] >= 0) out[a.name(i)] = b.name(f[static_cast<std::size_t>(i)]);
  }
  return out;
}

Json describe_map(const FinCat& a, const FunctorTable& f, const FinCat& b) {
  Json objs = Json::object();
  for (int i = 0; i < a.object_count(); ++i) {
    if (f.obj[static_cast<std::size_t>(i)] >= 0) objs[a.object_name(i)] = b.object_name(f.obj[static_cast<std::size_t>(i)]);
  }
  Json arrs = Json::object();
  for (int i = 0; i < a.arrow_count(); ++i) {
    if (f.arr[static_cast<std::size_t>(i)] >= 0) arrs[a.arrow(i).name] = b.arrow(f.arr[static_cast<std::size_t>(i)]).name;
  }
  return Json{{"objects", objs}, {"arrows", arrs}};
}

}  // namespace stabcat
