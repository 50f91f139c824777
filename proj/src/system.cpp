#include "stabcat/system.hpp"

#include <algorithm>
#include <map>

#include "stabcat/error.hpp"

namespace stabcat {

std::string_view to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::Indiscrete: return "indiscrete";
    case SystemKind::Open: return "open";
    case SystemKind::Closed: return "closed";
    case SystemKind::Saturated: return "saturated";
    case SystemKind::LeftSaturated: return "left-saturated";
    case SystemKind::RightSaturated: return "right-saturated";
  }
  return "?";
}

std::optional<SystemKind> parse_system_kind(std::string_view text) {
  static const std::map<std::string_view, SystemKind> table = {
      {"indiscrete", SystemKind::Indiscrete},   {"open", SystemKind::Open},
      {"closed", SystemKind::Closed},           {"saturated", SystemKind::Saturated},
      {"clopen", SystemKind::Saturated},        {"left-saturated", SystemKind::LeftSaturated},
      {"right-saturated", SystemKind::RightSaturated},
  };
  auto it = table.find(text);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

bool applies_to_preord(SystemKind kind) {
  return kind == SystemKind::Indiscrete || kind == SystemKind::Open || kind == SystemKind::Closed ||
         kind == SystemKind::Saturated;
}

bool applies_to_cat(SystemKind kind) {
  return kind == SystemKind::Indiscrete || kind == SystemKind::Saturated || kind == SystemKind::LeftSaturated ||
         kind == SystemKind::RightSaturated;
}

namespace {

[[noreturn]] void kind_mismatch(SystemKind kind, std::string_view ambient) {
  throw Error(Errc::KindMismatch,
              "system '" + std::string(to_string(kind)) + "' does not apply to " + std::string(ambient));
}

bool down_closed(const FinPreord& a, Mask m) {
  for (int b : members(m)) {
    if (!subset(a.down(b), m)) return false;
  }
  return true;
}

bool up_closed(const FinPreord& a, Mask m) {
  for (int b : members(m)) {
    if (!subset(a.up(b), m)) return false;
  }
  return true;
}

// Every arrow whose codomain is in `objs` has its domain in `objs`.
bool closed_under_incoming(const FinCat& c, Mask objs) {
  for (const auto& f : c.arrows()) {
    if (has(objs, f.cod) && !has(objs, f.dom)) return false;
  }
  return true;
}

bool closed_under_outgoing(const FinCat& c, Mask objs) {
  for (const auto& f : c.arrows()) {
    if (has(objs, f.dom) && !has(objs, f.cod)) return false;
  }
  return true;
}

}  // namespace

bool is_distinguished_mask(const FinPreord& a, Mask m, SystemKind kind) {
  if (!applies_to_preord(kind)) kind_mismatch(kind, "preorders");
  if (!subset(m, a.all())) return false;
  switch (kind) {
    case SystemKind::Indiscrete: return m == 0 || m == a.all();
    case SystemKind::Open: return down_closed(a, m);
    case SystemKind::Closed: return up_closed(a, m);
    case SystemKind::Saturated: return down_closed(a, m) && up_closed(a, m);
    default: break;
  }
  return false;
}

bool is_distinguished_mask(const FinCat& c, Mask objs, SystemKind kind) {
  if (!applies_to_cat(kind)) kind_mismatch(kind, "categories");
  if (!subset(objs, c.all_objects())) return false;
  switch (kind) {
    case SystemKind::Indiscrete: return objs == 0 || objs == c.all_objects();
    case SystemKind::LeftSaturated: return closed_under_incoming(c, objs);
    case SystemKind::RightSaturated: return closed_under_outgoing(c, objs);
    case SystemKind::Saturated: return closed_under_incoming(c, objs) && closed_under_outgoing(c, objs);
    default: break;
  }
  return false;
}

bool is_distinguished(const SubPreord& s, SystemKind kind) { return is_distinguished_mask(*s.ambient, s.members, kind); }

bool is_distinguished(const SubCat& s, SystemKind kind) {
  if (!applies_to_cat(kind)) kind_mismatch(kind, "categories");
  return s.is_full() && is_distinguished_mask(*s.ambient, s.objs, kind);
}

bool same_subobject(const FinPreord& a, Mask ma, const FinPreord& b, Mask mb) {
  const int n = a.size();
  if (n != b.size() || popcount(ma) != popcount(mb)) return false;
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  do {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) {
      const int px = perm[static_cast<std::size_t>(x)];
      if (has(ma, x) != has(mb, px)) ok = false;
      for (int y = 0; y < n && ok; ++y) {
        if (a.leq(x, y) != b.leq(px, perm[static_cast<std::size_t>(y)])) ok = false;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

bool same_subobject(const FinCat& a, Mask ma, const FinCat& b, Mask mb) { return ma == mb && a == b; }

PreordSystem seeded_union_fault() {
  PreordSystem sys{SystemKind::Open, {}};
  sys.removed.emplace_back(FinPreord::discrete({"a", "b", "c"}), bit(0) | bit(1));
  return sys;
}

PreordSystem seeded_pullback_fault() {
  PreordSystem sys{SystemKind::Open, {}};
  const FinPreord p3 = FinPreord::from_rows({"a", "b", "c"}, {0b111, 0b111, 0b100});
  sys.removed.emplace_back(p3, bit(0) | bit(1));
  return sys;
}

int DistinguishedLattice::index_of(Mask m) const {
  auto it = std::find(members.begin(), members.end(), m);
  return it == members.end() ? -1 : static_cast<int>(it - members.begin());
}

std::vector<std::string> DistinguishedLattice::names(int i) const {
  std::vector<std::string> out;
  for (int k : stabcat::members(members[static_cast<std::size_t>(i)])) out.push_back(carrier[static_cast<std::size_t>(k)]);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

template <class Object, class Contains>
DistinguishedLattice build_lattice(SystemKind kind, std::vector<std::string> carrier, Contains contains, int cap) {
  const int n = static_cast<int>(carrier.size());
  if (n > cap) {
    throw Error(Errc::SizeLimit, "carrier of " + std::to_string(n) + " exceeds the lattice scan cap of " +
                                     std::to_string(cap));
  }
  DistinguishedLattice lat;
  lat.kind = kind;
  lat.carrier = std::move(carrier);
  for (Mask m = 0; m <= full_mask(n); ++m) {
    if (contains(m)) lat.members.push_back(m);
    if (m == full_mask(n)) break;
  }
  auto sorted_names = [&](Mask m) {
    std::vector<std::string> v;
    for (int k : members(m)) v.push_back(lat.carrier[static_cast<std::size_t>(k)]);
    std::sort(v.begin(), v.end());
    return v;
  };
  std::stable_sort(lat.members.begin(), lat.members.end(),
                   [&](Mask x, Mask y) { return sorted_names(x) < sorted_names(y); });
  std::map<Mask, int> index;
  for (std::size_t i = 0; i < lat.members.size(); ++i) index[lat.members[i]] = static_cast<int>(i);
  const std::size_t k = lat.members.size();
  lat.join.assign(k, std::vector<int>(k, -1));
  lat.meet.assign(k, std::vector<int>(k, -1));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      auto u = index.find(lat.members[i] | lat.members[j]);
      auto v = index.find(lat.members[i] & lat.members[j]);
      if (u != index.end()) lat.join[i][j] = u->second;
      if (v != index.end()) lat.meet[i][j] = v->second;
    }
  }
  return lat;
}

}  // namespace

DistinguishedLattice enumerate_distinguished(const FinPreord& a, const PreordSystem& sys, int cap) {
  if (!applies_to_preord(sys.kind)) kind_mismatch(sys.kind, "preorders");
  return build_lattice<FinPreord>(sys.kind, a.names(), [&](Mask m) { return sys.contains(a, m); }, cap);
}

DistinguishedLattice enumerate_distinguished(const FinCat& c, const CatSystem& sys, int cap) {
  if (!applies_to_cat(sys.kind)) kind_mismatch(sys.kind, "categories");
  return build_lattice<FinCat>(sys.kind, c.object_names(), [&](Mask m) { return sys.contains(c, m); }, cap);
}

DistinguishedLattice enumerate_distinguished(const FinPreord& a, SystemKind kind, int cap) {
  return enumerate_distinguished(a, PreordSystem{kind, {}}, cap);
}

DistinguishedLattice enumerate_distinguished(const FinCat& c, SystemKind kind, int cap) {
  return enumerate_distinguished(c, CatSystem{kind, {}}, cap);
}

namespace {

void require_distinguished(const SubPreord& s, SystemKind kind) {
  if (!is_distinguished(s, kind)) {
    throw Error(Errc::NotDistinguishedInput, "subobject is not " + std::string(to_string(kind)),
                s.ambient->names_of(s.members));
  }
}

void require_distinguished(const SubCat& s, SystemKind kind) {
  if (!is_distinguished(s, kind)) {
    throw Error(Errc::NotDistinguishedInput, "subcategory is not " + std::string(to_string(kind)),
                CatAmbient::names_of(*s.ambient, s.objs));
  }
}

template <class Sub>
Sub assert_distinguished(Sub s, SystemKind kind, std::string_view what) {
  if (!is_distinguished(s, kind)) {
    throw Error(Errc::CoherenceFault, std::string(what) + " left the " + std::string(to_string(kind)) + " system");
  }
  return s;
}

}  // namespace

SubPreord dist_union(const SubPreord& s, const SubPreord& t, SystemKind kind) {
  if (!(*s.ambient == *t.ambient)) throw Error(Errc::TypeMismatch, "subobjects of different preorders");
  require_distinguished(s, kind);
  require_distinguished(t, kind);
  return assert_distinguished(SubPreord{s.ambient, s.members | t.members}, kind, "union");
}

SubCat dist_union(const SubCat& s, const SubCat& t, SystemKind kind) {
  require_distinguished(s, kind);
  require_distinguished(t, kind);
  SubCat u = union_closure(s, t);
  if (kind != SystemKind::Indiscrete && u.arrs != (s.arrs | t.arrs)) {
    throw Error(Errc::CoherenceFault, "composite closure added arrows to a union of saturated subcategories");
  }
  return assert_distinguished(std::move(u), kind, "union");
}

SubPreord dist_intersection(const SubPreord& s, const SubPreord& t, SystemKind kind) {
  if (!(*s.ambient == *t.ambient)) throw Error(Errc::TypeMismatch, "subobjects of different preorders");
  require_distinguished(s, kind);
  require_distinguished(t, kind);
  return assert_distinguished(SubPreord{s.ambient, s.members & t.members}, kind, "intersection");
}

SubCat dist_intersection(const SubCat& s, const SubCat& t, SystemKind kind) {
  require_distinguished(s, kind);
  require_distinguished(t, kind);
  return assert_distinguished(intersection(s, t), kind, "intersection");
}

SubPreord dist_preimage(const MonotoneMap& f, const SubPreord& s, SystemKind kind) {
  require_distinguished(s, kind);
  return assert_distinguished(preimage_sub(f, s), kind, "inverse image");
}

SubCat dist_preimage(const Functor& f, const SubCat& s, SystemKind kind) {
  require_distinguished(s, kind);
  return assert_distinguished(preimage_sub(f, s), kind, "inverse image");
}

template <class Amb>
EpiVerdict distinguished_epi_verdict(const typename Amb::Object& a, const typename Amb::Map& f,
                                     const typename Amb::Object& b, const System<typename Amb::Object>& sys,
                                     const DistinguishedLattice& lattice_of_b) {
  (void)sys;
  const EpiStatus status = Amb::epi_status(a, f, b);
  if (status == EpiStatus::NotEpi) throw Error(Errc::NotEpi, "map is not an epimorphism");
  const Mask img = Amb::image(a, f);
  for (Mask m : lattice_of_b.members) {
    if (m != Amb::whole(b) && subset(img, m)) return EpiVerdict{EpiVerdict::Value::No, m};
  }
  if (status == EpiStatus::Unknown) return EpiVerdict{EpiVerdict::Value::Unknown, 0};
  return EpiVerdict{EpiVerdict::Value::Yes, 0};
}

template EpiVerdict distinguished_epi_verdict<PreordAmbient>(const FinPreord&, const Table&, const FinPreord&,
                                                             const PreordSystem&, const DistinguishedLattice&);
template EpiVerdict distinguished_epi_verdict<CatAmbient>(const FinCat&, const FunctorTable&, const FinCat&,
                                                          const CatSystem&, const DistinguishedLattice&);

EpiVerdict is_distinguished_epi(const MonotoneMap& f, SystemKind kind) {
  PreordSystem sys{kind, {}};
  return distinguished_epi_verdict<PreordAmbient>(*f.source, f.assign, *f.target, sys,
                                                  enumerate_distinguished(*f.target, sys));
}

EpiVerdict is_distinguished_epi(const Functor& f, SystemKind kind) {
  CatSystem sys{kind, {}};
  return distinguished_epi_verdict<CatAmbient>(*f.source, f.map, *f.target, sys,
                                               enumerate_distinguished(*f.target, sys));
}

std::optional<SubCat> find_complement(const SubCat& s) {
  for (const auto& t : all_subcategories(s.ambient)) {
    if ((s.objs & t.objs) != 0 || (s.arrs & t.arrs) != 0) continue;
    const SubCat u = union_closure(s, t);
    if (u.objs == s.ambient->all_objects() && u.arrs == s.ambient->all_arrows()) return t;
  }
  return std::nullopt;
}

bool is_complemented(const SubCat& s) { return find_complement(s).has_value(); }

}  // namespace stabcat
