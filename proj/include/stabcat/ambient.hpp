#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "stabcat/category.hpp"
#include "stabcat/preorder.hpp"

namespace stabcat {

enum class EpiStatus { Epi, NotEpi, Unknown };

// Uniform view of the two ambient categories. Subobjects that matter for the
// coherent systems are always induced (preorders) or full (categories), so
// they are addressed by a mask over elements / objects. Morphisms are tables
// indexed by the source, with -1 outside a partial domain.

struct PreordAmbient {
  using Object = FinPreord;
  using Map = Table;
  static constexpr std::string_view name = "preord";

  static int size(const Object& a) { return a.size(); }
  static Mask whole(const Object& a) { return a.all(); }
  static std::vector<std::string> names_of(const Object& a, Mask m) { return a.names_of(m); }
  static Object induced(const Object& a, Mask m) { return a.induced(m); }

  static std::vector<Map> maps(const Object& a, Mask dom, const Object& b) { return monotone_tables(a, dom, b); }
  static Mask preimage(const Object&, const Map& f, Mask m) { return preimage_mask(f, m); }
  static Mask image(const Object&, const Map& f) { return image_mask(f); }
  static Mask domain(const Object&, const Map& f) { return domain_mask(f); }

  static Map restrict(const Object&, const Map& f, Mask m) {
    Map out(f.size(), -1);
    for (int a : members(m)) out[static_cast<std::size_t>(a)] = f[static_cast<std::size_t>(a)];
    return out;
  }
  static bool agree_on(const Object&, const Map& f, const Map& g, Mask m) {
    for (int a : members(m)) {
      if (f[static_cast<std::size_t>(a)] != g[static_cast<std::size_t>(a)]) return false;
    }
    return true;
  }
  // g ∘ f where f is indexed by `a` and g by the codomain of f.
  static Map compose(const Object&, const Map& g, const Map& f) {
    Map out(f.size(), -1);
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i] >= 0) out[i] = g[static_cast<std::size_t>(f[i])];
    }
    return out;
  }
  static Map identity(const Object& a, Mask m) {
    Map out(static_cast<std::size_t>(a.size()), -1);
    for (int i : members(m)) out[static_cast<std::size_t>(i)] = i;
    return out;
  }
  // Inclusion of the induced sub on `m`, as a map out of that sub.
  static Map inclusion(const Object&, Mask m) {
    Map out;
    for (int i : members(m)) out.push_back(i);
    return out;
  }
  // Transports a map out of induced(a, m) to a table indexed by `a`.
  static Map widen(const Object& a, Mask m, const Map& f) {
    Map out(static_cast<std::size_t>(a.size()), -1);
    int k = 0;
    for (int i : members(m)) out[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(k++)];
    return out;
  }
  // Reindexes a table over `a` restricted to `m` to the coordinates of induced(a, m).
  static Map narrow(const Object&, Mask m, const Map& f) {
    Map out;
    for (int i : members(m)) out.push_back(f[static_cast<std::size_t>(i)]);
    return out;
  }
  static EpiStatus epi_status(const Object& a, const Map& f, const Object& b) {
    return image_mask(restrict(a, f, a.all())) == b.all() ? EpiStatus::Epi : EpiStatus::NotEpi;
  }
  static bool injective(const Object& a, const Map& f) {
    return popcount(image_mask(f)) == popcount(domain_mask(f)) && domain_mask(f) == a.all();
  }
};

struct CatAmbient {
  using Object = FinCat;
  using Map = FunctorTable;
  static constexpr std::string_view name = "cat";

  static int size(const Object& a) { return a.object_count(); }
  static Mask whole(const Object& a) { return a.all_objects(); }
  static std::vector<std::string> names_of(const Object& a, Mask m) {
    std::vector<std::string> out;
    for (int x : members(m)) out.push_back(a.object_name(x));
    return out;
  }
  static Object induced(const Object& a, Mask m) { return a.full(m); }

  static std::vector<Map> maps(const Object& a, Mask dom, const Object& b) { return functor_tables(a, dom, b); }
  static Mask preimage(const Object&, const Map& f, Mask m) {
    Mask out = 0;
    for (std::size_t x = 0; x < f.obj.size(); ++x) {
      if (f.obj[x] >= 0 && has(m, f.obj[x])) out |= bit(static_cast<int>(x));
    }
    return out;
  }
  static Mask image(const Object&, const Map& f) {
    Mask out = 0;
    for (int y : f.obj) {
      if (y >= 0) out |= bit(y);
    }
    return out;
  }
  static Mask domain(const Object&, const Map& f) {
    Mask out = 0;
    for (std::size_t x = 0; x < f.obj.size(); ++x) {
      if (f.obj[x] >= 0) out |= bit(static_cast<int>(x));
    }
    return out;
  }
  static Map restrict(const Object& a, const Map& f, Mask m) {
    Map out{std::vector<int>(f.obj.size(), -1), std::vector<int>(f.arr.size(), -1)};
    for (int x : members(m)) out.obj[static_cast<std::size_t>(x)] = f.obj[static_cast<std::size_t>(x)];
    for (int e : members(a.arrows_within(m))) out.arr[static_cast<std::size_t>(e)] = f.arr[static_cast<std::size_t>(e)];
    return out;
  }
  static bool agree_on(const Object& a, const Map& f, const Map& g, Mask m) {
    for (int x : members(m)) {
      if (f.obj[static_cast<std::size_t>(x)] != g.obj[static_cast<std::size_t>(x)]) return false;
    }
    for (int e : members(a.arrows_within(m))) {
      if (f.arr[static_cast<std::size_t>(e)] != g.arr[static_cast<std::size_t>(e)]) return false;
    }
    return true;
  }
  static Map compose(const Object&, const Map& g, const Map& f) {
    Map out{std::vector<int>(f.obj.size(), -1), std::vector<int>(f.arr.size(), -1)};
    for (std::size_t i = 0; i < f.obj.size(); ++i) {
      if (f.obj[i] >= 0) out.obj[i] = g.obj[static_cast<std::size_t>(f.obj[i])];
    }
    for (std::size_t i = 0; i < f.arr.size(); ++i) {
      if (f.arr[i] >= 0) out.arr[i] = g.arr[static_cast<std::size_t>(f.arr[i])];
    }
    return out;
  }
  static Map identity(const Object& a, Mask m) {
    Map out{std::vector<int>(static_cast<std::size_t>(a.object_count()), -1),
            std::vector<int>(static_cast<std::size_t>(a.arrow_count()), -1)};
    for (int x : members(m)) out.obj[static_cast<std::size_t>(x)] = x;
    for (int e : members(a.arrows_within(m))) out.arr[static_cast<std::size_t>(e)] = e;
    return out;
  }
  static Map inclusion(const Object& a, Mask m) {
    Map out;
    for (int x : members(m)) out.obj.push_back(x);
    for (int e : members(a.arrows_within(m))) out.arr.push_back(e);
    return out;
  }
  static Map widen(const Object& a, Mask m, const Map& f) {
    Map out{std::vector<int>(static_cast<std::size_t>(a.object_count()), -1),
            std::vector<int>(static_cast<std::size_t>(a.arrow_count()), -1)};
    int k = 0;
    for (int x : members(m)) out.obj[static_cast<std::size_t>(x)] = f.obj[static_cast<std::size_t>(k++)];
    k = 0;
    for (int e : members(a.arrows_within(m))) out.arr[static_cast<std::size_t>(e)] = f.arr[static_cast<std::size_t>(k++)];
    return out;
  }
  static Map narrow(const Object& a, Mask m, const Map& f) {
    Map out;
    for (int x : members(m)) out.obj.push_back(f.obj[static_cast<std::size_t>(x)]);
    for (int e : members(a.arrows_within(m))) out.arr.push_back(f.arr[static_cast<std::size_t>(e)]);
    return out;
  }
  static EpiStatus epi_status(const Object& a, const Map& f, const Object& b) {
    const Map g = restrict(a, f, a.all_objects());
    if (image(a, g) != b.all_objects()) return EpiStatus::NotEpi;
    Mask gen = 0;
    for (int y : g.arr) {
      if (y >= 0) gen |= bit(y);
    }
    for (bool grew = true; grew;) {
      grew = false;
      for (int h : members(gen)) {
        for (int k : members(gen)) {
          const int hk = b.compose(h, k);
          if (hk >= 0 && !has(gen, hk)) {
            gen |= bit(hk);
            grew = true;
          }
        }
      }
    }
    return gen == b.all_arrows() ? EpiStatus::Epi : EpiStatus::Unknown;
  }
  static bool injective(const Object& a, const Map& f) {
    Mask objs = 0;
    Mask arrs = 0;
    for (int y : f.obj) {
      if (y < 0 || has(objs, y)) return false;
      objs |= bit(y);
    }
    for (int y : f.arr) {
      if (y < 0 || has(arrs, y)) return false;
      arrs |= bit(y);
    }
    return static_cast<int>(f.obj.size()) == a.object_count();
  }
};

}  // namespace stabcat
