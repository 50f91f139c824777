#include "stabcat/pretorsion.hpp"

#include <algorithm>

#include "stabcat/error.hpp"

namespace stabcat {

std::string_view to_string(TheoryKind kind) {
  return kind == TheoryKind::Preord ? "preord-theory" : "cat-theory";
}

std::optional<TheoryKind> parse_theory_kind(std::string_view text) {
  if (text == "preord" || text == "preord-theory") return TheoryKind::Preord;
  if (text == "cat" || text == "cat-theory") return TheoryKind::Cat;
  return std::nullopt;
}

bool is_torsion(const FinPreord& a) {
  for (int x = 0; x < a.size(); ++x) {
    if (a.up(x) != a.down(x)) return false;
  }
  return true;
}

bool is_torsion_free(const FinPreord& a) {
  for (int x = 0; x < a.size(); ++x) {
    if ((a.up(x) & a.down(x)) != bit(x)) return false;
  }
  return true;
}

bool is_trivial_object(const FinPreord& a) {
  for (int x = 0; x < a.size(); ++x) {
    if (a.up(x) != bit(x)) return false;
  }
  return true;
}

Mask iso_arrows(const FinCat& c) {
  Mask m = 0;
  for (int f = 0; f < c.arrow_count(); ++f) {
    if (c.is_iso(f)) m |= bit(f);
  }
  return m;
}

bool is_torsion(const FinCat& c) { return iso_arrows(c) == c.all_arrows(); }

bool is_torsion_free(const FinCat& c) {
  for (int f : members(iso_arrows(c))) {
    if (c.dom(f) != c.cod(f)) return false;
  }
  return true;
}

bool is_trivial_object(const FinCat& c) {
  for (int f = 0; f < c.arrow_count(); ++f) {
    if (!c.is_invertible_endo(f)) return false;
  }
  return true;
}

bool is_trivial_on(const FinPreord& a, const Table& f, Mask dom, const FinPreord&) {
  for (int x : members(dom)) {
    for (int y : members(a.up(x) & dom)) {
      if (f[static_cast<std::size_t>(x)] != f[static_cast<std::size_t>(y)]) return false;
    }
  }
  return true;
}

bool is_trivial_on(const FinCat& a, const FunctorTable& f, Mask objs, const FinCat& b) {
  for (int e : members(a.arrows_within(objs))) {
    if (!b.is_invertible_endo(f.arr[static_cast<std::size_t>(e)])) return false;
  }
  return true;
}

TrivialityCertificate<PreordAmbient> is_trivial_morphism(const FinPreord& a, const Table& f, const FinPreord& b) {
  TrivialityCertificate<PreordAmbient> cert;
  for (int x = a.size() - 1; x >= 0 && cert.violation.empty(); --x) {
    for (int y : members(a.up(x))) {
      if (f[static_cast<std::size_t>(x)] != f[static_cast<std::size_t>(y)]) {
        cert.violation = {a.name(x), a.name(y)};
        break;
      }
    }
  }
  if (!cert.violation.empty()) return cert;
  cert.trivial = true;
  const Mask img = image_mask(f);
  cert.middle = FinPreord::discrete(b.names_of(img));
  cert.second = PreordAmbient::inclusion(b, img);
  for (int y : f) cert.first.push_back(popcount(img & full_mask(y)));
  return cert;
}

TrivialityCertificate<CatAmbient> is_trivial_morphism(const FinCat& a, const FunctorTable& f, const FinCat& b) {
  TrivialityCertificate<CatAmbient> cert;
  for (int e = 0; e < a.arrow_count(); ++e) {
    if (!b.is_invertible_endo(f.arr[static_cast<std::size_t>(e)])) {
      cert.violation = {a.arrow(e).name};
      return cert;
    }
  }
  cert.trivial = true;
  Mask objs = 0;
  for (int y : f.obj) objs |= bit(y);
  Mask arrs = 0;
  for (int g = 0; g < b.arrow_count(); ++g) {
    if (has(objs, b.dom(g)) && b.is_invertible_endo(g)) arrs |= bit(g);
  }
  cert.middle = b.restrict(objs, arrs);
  for (int x : members(objs)) cert.second.obj.push_back(x);
  for (int g : members(arrs)) cert.second.arr.push_back(g);
  for (int y : f.obj) cert.first.obj.push_back(popcount(objs & full_mask(y)));
  for (int g : f.arr) cert.first.arr.push_back(popcount(arrs & full_mask(g)));
  return cert;
}

FinPreord torsion_part(const FinPreord& a) {
  std::vector<Mask> rows;
  for (int x = 0; x < a.size(); ++x) rows.push_back(a.up(x) & a.down(x));
  return FinPreord::from_rows(a.names(), std::move(rows));
}

Table condensation_classes(const FinPreord& a) {
  Table cls(static_cast<std::size_t>(a.size()), -1);
  int next = 0;
  for (int x = 0; x < a.size(); ++x) {
    if (cls[static_cast<std::size_t>(x)] >= 0) continue;
    for (int y : members(a.up(x) & a.down(x))) cls[static_cast<std::size_t>(y)] = next;
    ++next;
  }
  return cls;
}

namespace {

std::string class_label(std::vector<std::string> names) {
  if (names.size() == 1) return names[0];
  std::sort(names.begin(), names.end());
  std::string s = "[";
  for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "," : "") + names[i];
  return s + "]";
}

}  // namespace

FinPreord torsion_free_part(const FinPreord& a) {
  const Table cls = condensation_classes(a);
  const int k = cls.empty() ? 0 : *std::max_element(cls.begin(), cls.end()) + 1;
  std::vector<std::vector<std::string>> names(static_cast<std::size_t>(k));
  std::vector<Mask> rows(static_cast<std::size_t>(k), 0);
  for (int x = 0; x < a.size(); ++x) {
    const auto cx = static_cast<std::size_t>(cls[static_cast<std::size_t>(x)]);
    names[cx].push_back(a.name(x));
    for (int y : members(a.up(x))) rows[cx] |= bit(cls[static_cast<std::size_t>(y)]);
  }
  std::vector<std::string> labels;
  for (auto& n : names) labels.push_back(class_label(std::move(n)));
  return FinPreord::from_rows(std::move(labels), std::move(rows));
}

PreordSequence canonical_sequence(const FinPreord& a) {
  PreordSequence s;
  s.object = a;
  s.torsion = torsion_part(a);
  s.counit = PreordAmbient::identity(a, a.all());
  s.torsion_free = torsion_free_part(a);
  s.unit = condensation_classes(a);
  return s;
}

Table torsion_free_map(const FinPreord& a, const Table& f, const FinPreord& b) {
  const Table ca = condensation_classes(a);
  const Table cb = condensation_classes(b);
  const int k = ca.empty() ? 0 : *std::max_element(ca.begin(), ca.end()) + 1;
  Table out(static_cast<std::size_t>(k), -1);
  for (int x = 0; x < a.size(); ++x) {
    const auto c = static_cast<std::size_t>(ca[static_cast<std::size_t>(x)]);
    const int y = cb[static_cast<std::size_t>(f[static_cast<std::size_t>(x)])];
    if (out[c] >= 0 && out[c] != y) {
      throw Error(Errc::CoherenceFault, "map is not constant on a condensation class", {a.name(x)});
    }
    out[c] = y;
  }
  return out;
}

FinCat torsion_part(const FinCat& c) { return c.restrict(c.all_objects(), iso_arrows(c)); }

CatSequence canonical_sequence(const FinCat& c, int max_chain) {
  CatSequence s;
  s.object = c;
  const Mask isos = iso_arrows(c);
  s.torsion = c.restrict(c.all_objects(), isos);
  for (int x = 0; x < c.object_count(); ++x) s.counit.obj.push_back(x);
  for (int f : members(isos)) s.counit.arr.push_back(f);
  s.quotient = std::make_shared<const SkeletalQuotient>(share(c), max_chain);
  s.torsion_free = s.quotient->materialize();
  if (s.torsion_free) s.unit = s.quotient->unit_table();
  return s;
}

ChainArrow map_chain(const SkeletalQuotient& qa, const SkeletalQuotient& qb, const FunctorTable& f,
                     const ChainArrow& c) {
  if (c.arrows.empty()) {
    return qb.identity(qb.class_of(f.obj[static_cast<std::size_t>(qa.representative(c.dom))]));
  }
  std::vector<int> image;
  for (int e : c.arrows) image.push_back(f.arr[static_cast<std::size_t>(e)]);
  return qb.normalize(qb.make_chain(std::move(image)));
}

}  // namespace stabcat
