#include "stabcat/presheaf.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "stabcat/corpus.hpp"
#include "stabcat/describe.hpp"
#include "stabcat/error.hpp"
#include "stabcat/pretorsion.hpp"

namespace stabcat {

FinPoset FinPoset::make(FinPreord order) {
  for (int a = 0; a < order.size(); ++a) {
    for (int b = a + 1; b < order.size(); ++b) {
      if (order.leq(a, b) && order.leq(b, a)) {
        throw Error(Errc::InputError, "index is not antisymmetric", {order.name(a), order.name(b)});
      }
    }
  }
  return FinPoset{std::move(order)};
}

bool FinPoset::covers(int p, int q) const {
  if (p == q || !leq(p, q)) return false;
  for (int r = 0; r < size(); ++r) {
    if (r != p && r != q && leq(p, r) && leq(r, q)) return false;
  }
  return true;
}

namespace {

Table compose_tables(const Table& g, const Table& f) {
  Table out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = g[static_cast<std::size_t>(f[i])];
  return out;
}

Table identity_table(int n) {
  Table t(static_cast<std::size_t>(n));
  std::iota(t.begin(), t.end(), 0);
  return t;
}

}  // namespace

PreordPresheaf PreordPresheaf::make(FinPoset index, std::vector<FinPreord> components, std::vector<Restriction> covers) {
  if (static_cast<int>(components.size()) != index.size()) {
    throw Error(Errc::InputError, "one component per index point is required");
  }
  std::map<std::pair<int, int>, Table> given;
  for (auto& r : covers) {
    if (r.from < 0 || r.to < 0 || r.from >= index.size() || r.to >= index.size() || !index.covers(r.to, r.from)) {
      throw Error(Errc::InputError, "restriction given for a pair that is not a covering pair");
    }
    const auto& src = components[static_cast<std::size_t>(r.from)];
    const auto& dst = components[static_cast<std::size_t>(r.to)];
    if (static_cast<int>(r.map.size()) != src.size() ||
        std::any_of(r.map.begin(), r.map.end(), [&](int y) { return y < 0 || y >= dst.size(); })) {
      throw Error(Errc::TypeMismatch, "restriction " + index.name(r.from) + " -> " + index.name(r.to) + " is not a total map");
    }
    if (!is_monotone_on(src, r.map, src.all(), dst)) {
      throw Error(Errc::NotMonotone, "restriction " + index.name(r.from) + " -> " + index.name(r.to) + " is not monotone");
    }
    if (!given.emplace(std::make_pair(r.from, r.to), std::move(r.map)).second) {
      throw Error(Errc::InputError, "duplicate restriction " + index.name(r.from) + " -> " + index.name(r.to));
    }
  }
  for (int p = 0; p < index.size(); ++p) {
    for (int q = 0; q < index.size(); ++q) {
      if (index.covers(p, q) && !given.count({q, p})) {
        throw Error(Errc::InputError, "missing restriction " + index.name(q) + " -> " + index.name(p));
      }
    }
  }

  PreordPresheaf out;
  out.index_ = std::move(index);
  out.components_ = std::move(components);
  const auto& idx = out.index_;
  std::function<const Table&(int, int)> get = [&](int q, int p) -> const Table& {
    auto it = out.restrictions_.find({q, p});
    if (it != out.restrictions_.end()) return it->second;
    Table result;
    if (p == q) {
      result = identity_table(out.at(q).size());
    } else {
      bool first = true;
      for (int c = 0; c < idx.size(); ++c) {
        if (!idx.covers(c, q) || !idx.leq(p, c)) continue;
        Table via = compose_tables(get(c, p), given.at({q, c}));
        if (first) {
          result = std::move(via);
          first = false;
        } else if (via != result) {
          throw Error(Errc::NotFunctorial, "restrictions " + idx.name(q) + " -> " + idx.name(p) + " disagree along two paths");
        }
      }
    }
    return out.restrictions_.emplace(std::make_pair(q, p), std::move(result)).first->second;
  };
  for (int q = 0; q < idx.size(); ++q) {
    for (int p = 0; p < idx.size(); ++p) {
      if (idx.leq(p, q)) get(q, p);
    }
  }
  return out;
}

PreordPresheaf PreordPresheaf::constant(FinPoset index, const FinPreord& value) {
  std::vector<Restriction> covers;
  for (int p = 0; p < index.size(); ++p) {
    for (int q = 0; q < index.size(); ++q) {
      if (index.covers(p, q)) covers.push_back({q, p, identity_table(value.size())});
    }
  }
  std::vector<FinPreord> comps(static_cast<std::size_t>(index.size()), value);
  return make(std::move(index), std::move(comps), std::move(covers));
}

int PreordPresheaf::total_size() const {
  int n = 0;
  for (const auto& c : components_) n += c.size();
  return n;
}

PreordPresheaf PreordPresheaf::without_point(int p) const {
  const Mask keep = index_.order.all() & ~bit(p);
  const auto kept = members(keep);
  auto index = FinPoset::make(index_.order.induced(keep));
  std::vector<FinPreord> comps;
  for (int x : kept) comps.push_back(at(x));
  std::vector<Restriction> covers;
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (index.covers(static_cast<int>(i), static_cast<int>(j))) {
        covers.push_back({static_cast<int>(j), static_cast<int>(i), restriction(kept[j], kept[i])});
      }
    }
  }
  return make(std::move(index), std::move(comps), std::move(covers));
}

bool is_internal_sub(const PreordPresheaf& a, const InternalSub& s) {
  if (static_cast<int>(s.at.size()) != a.points()) return false;
  for (int q = 0; q < a.points(); ++q) {
    if (!subset(s.at[static_cast<std::size_t>(q)], a.at(q).all())) return false;
    for (int p = 0; p < a.points(); ++p) {
      if (p == q || !a.index().leq(p, q)) continue;
      const auto& r = a.restriction(q, p);
      for (int x : members(s.at[static_cast<std::size_t>(q)])) {
        if (!has(s.at[static_cast<std::size_t>(p)], r[static_cast<std::size_t>(x)])) return false;
      }
    }
  }
  return true;
}

std::vector<InternalSub> internal_subs(const PreordPresheaf& a) {
  const int total = a.total_size();
  if (total > 20) throw Error(Errc::SizeLimit, "presheaf has more than 20 elements in total");
  std::vector<InternalSub> out;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << total); ++code) {
    InternalSub s;
    int shift = 0;
    for (int p = 0; p < a.points(); ++p) {
      s.at.push_back(static_cast<Mask>((code >> shift) & full_mask(a.at(p).size())));
      shift += a.at(p).size();
    }
    if (is_internal_sub(a, s)) out.push_back(std::move(s));
  }
  return out;
}

InternalSub whole_sub(const PreordPresheaf& a) {
  InternalSub s;
  for (int p = 0; p < a.points(); ++p) s.at.push_back(a.at(p).all());
  return s;
}

InternalSub meet(const InternalSub& s, const InternalSub& t) {
  InternalSub out = s;
  for (std::size_t p = 0; p < out.at.size(); ++p) out.at[p] &= t.at[p];
  return out;
}

InternalSub join(const InternalSub& s, const InternalSub& t) {
  InternalSub out = s;
  for (std::size_t p = 0; p < out.at.size(); ++p) out.at[p] |= t.at[p];
  return out;
}

namespace {

template <class Rule>
bool pointwise(const PreordPresheaf& a, const InternalSub& s, Rule rule) {
  for (int p = 0; p < a.points(); ++p) {
    const Mask m = s.at[static_cast<std::size_t>(p)];
    const auto& c = a.at(p);
    for (int x = 0; x < c.size(); ++x) {
      for (int y : members(c.up(x))) {
        if (!rule(has(m, x), has(m, y))) return false;
      }
    }
  }
  return true;
}

}  // namespace

bool is_left_saturated_internal(const PreordPresheaf& a, const InternalSub& s) {
  return pointwise(a, s, [](bool x, bool y) { return !y || x; });
}

bool is_right_saturated_internal(const PreordPresheaf& a, const InternalSub& s) {
  return pointwise(a, s, [](bool x, bool y) { return !x || y; });
}

bool is_saturated_internal(const PreordPresheaf& a, const InternalSub& s) {
  return pointwise(a, s, [](bool x, bool y) { return !(x || y) || (x && y); });
}

bool saturated_by_factorization(const PreordPresheaf& a, const InternalSub& s, Endpoint which) {
  // A1(p) as the list of pairs x <= y of A(p).
  std::vector<std::vector<std::pair<int, int>>> arrows(static_cast<std::size_t>(a.points()));
  std::vector<std::map<std::pair<int, int>, int>> arrow_index(static_cast<std::size_t>(a.points()));
  for (int p = 0; p < a.points(); ++p) {
    const auto& c = a.at(p);
    for (int x = 0; x < c.size(); ++x) {
      for (int y : members(c.up(x))) {
        arrow_index[static_cast<std::size_t>(p)][{x, y}] = static_cast<int>(arrows[static_cast<std::size_t>(p)].size());
        arrows[static_cast<std::size_t>(p)].emplace_back(x, y);
      }
    }
  }
  // S1 and the pullback of the endpoint condition, as masks over A1(p).
  std::vector<std::vector<bool>> s1(arrows.size()), pulled(arrows.size());
  for (std::size_t p = 0; p < arrows.size(); ++p) {
    const Mask m = s.at[p];
    for (const auto& [x, y] : arrows[p]) {
      s1[p].push_back(has(m, x) && has(m, y));
      const bool d0 = has(m, x);
      const bool d1 = has(m, y);
      pulled[p].push_back(which == Endpoint::Codomain ? d1 : which == Endpoint::Domain ? d0 : (d0 || d1));
    }
  }
  // Both are subpresheaves of A1.
  for (int q = 0; q < a.points(); ++q) {
    for (int p = 0; p < a.points(); ++p) {
      if (p == q || !a.index().leq(p, q)) continue;
      const auto& r = a.restriction(q, p);
      for (std::size_t k = 0; k < arrows[static_cast<std::size_t>(q)].size(); ++k) {
        const auto [x, y] = arrows[static_cast<std::size_t>(q)][k];
        const int j = arrow_index[static_cast<std::size_t>(p)].at({r[static_cast<std::size_t>(x)], r[static_cast<std::size_t>(y)]});
        if ((s1[static_cast<std::size_t>(q)][k] && !s1[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)]) ||
            (pulled[static_cast<std::size_t>(q)][k] && !pulled[static_cast<std::size_t>(p)][static_cast<std::size_t>(j)])) {
          throw Error(Errc::CoherenceFault, "arrow subobject is not closed under restriction");
        }
      }
    }
  }
  for (std::size_t p = 0; p < arrows.size(); ++p) {
    for (std::size_t k = 0; k < arrows[p].size(); ++k) {
      if (pulled[p][k] && !s1[p][k]) return false;
    }
  }
  return true;
}

std::optional<InternalSub> complement_of(const PreordPresheaf& a, const InternalSub& s) {
  for (const auto& t : internal_subs(a)) {
    bool ok = true;
    for (int p = 0; p < a.points() && ok; ++p) {
      const Mask ms = s.at[static_cast<std::size_t>(p)];
      const Mask mt = t.at[static_cast<std::size_t>(p)];
      if ((ms & mt) || (ms | mt) != a.at(p).all()) ok = false;
      const auto& c = a.at(p);
      for (int x = 0; x < c.size() && ok; ++x) {
        for (int y : members(c.up(x))) {
          const bool in_s = has(ms, x) && has(ms, y);
          const bool in_t = has(mt, x) && has(mt, y);
          if (!in_s && !in_t) ok = false;
        }
      }
    }
    if (ok) return t;
  }
  return std::nullopt;
}

Json describe_internal(const PreordPresheaf& a, const InternalSub& s) {
  Json out = Json::object();
  for (int p = 0; p < a.points(); ++p) out[a.index().name(p)] = a.at(p).names_of(s.at[static_cast<std::size_t>(p)]);
  return out;
}

Json describe_presheaf(const PreordPresheaf& a) {
  Json comps = Json::object();
  for (int p = 0; p < a.points(); ++p) comps[a.index().name(p)] = describe(a.at(p));
  Json restr = Json::array();
  for (int q = 0; q < a.points(); ++q) {
    for (int p = 0; p < a.points(); ++p) {
      if (a.index().covers(p, q)) {
        restr.push_back({{"from", a.index().name(q)}, {"to", a.index().name(p)},
                         {"map", describe_map(a.at(q), a.restriction(q, p), a.at(p))}});
      }
    }
  }
  return Json{{"kind", "presheaf"}, {"index", describe(a.index().order)}, {"components", comps}, {"restrictions", restr}};
}

Report verify_internal_saturation(const Corpus<PreordPresheaf>& corpus) {
  Report rep("verify-internal");
  rep.config()["corpus_size"] = corpus.size();
  for (const auto& [name, a] : corpus) {
    const auto subs = internal_subs(a);
    std::vector<InternalSub> saturated;
    for (const auto& s : subs) {
      const bool l = is_left_saturated_internal(a, s);
      const bool r = is_right_saturated_internal(a, s);
      const bool sat = is_saturated_internal(a, s);
      const Json w{{"presheaf", name}, {"sub", describe_internal(a, s)}, {"left", l}, {"right", r}, {"saturated", sat}};
      rep.check(l == saturated_by_factorization(a, s, Endpoint::Codomain), "left-pointwise-matches-factorization", name, w);
      rep.check(r == saturated_by_factorization(a, s, Endpoint::Domain), "right-pointwise-matches-factorization", name, w);
      rep.check(sat == saturated_by_factorization(a, s, Endpoint::Either), "pointwise-matches-factorization", name, w);
      rep.check(!sat || (l && r), "saturated-implies-left-and-right", name, w);
      rep.check(!(l && r) || sat, "left-and-right-implies-saturated", name, w);
      if (sat) saturated.push_back(s);
    }
    for (std::size_t i = 0; i < saturated.size(); ++i) {
      for (std::size_t j = i; j < saturated.size(); ++j) {
        const auto m = meet(saturated[i], saturated[j]);
        const auto u = join(saturated[i], saturated[j]);
        const Json w{{"presheaf", name}, {"S", describe_internal(a, saturated[i])}, {"T", describe_internal(a, saturated[j])}};
        rep.check(is_internal_sub(a, m) && is_saturated_internal(a, m), "saturated-meet", name, w);
        rep.check(is_internal_sub(a, u) && is_saturated_internal(a, u), "saturated-join", name, w);
      }
    }
  }
  return rep;
}

PreordPresheaf sierpinski_presheaf() {
  auto index = FinPoset::make(FinPreord::chain({"U", "X"}));
  const auto top = FinPreord::from_rows({"a1", "b1", "a2", "b2"}, {0b0011, 0b0010, 0b1100, 0b1000});
  const auto bottom = FinPreord::chain({"a", "b"});
  return PreordPresheaf::make(std::move(index), {bottom, top}, {{1, 0, Table{0, 1, 0, 1}}});
}

std::pair<InternalSub, InternalSub> sierpinski_subs() {
  return {InternalSub{{0b11, 0b0011}}, InternalSub{{0b11, 0b1100}}};
}

Report sierpinski_demo() {
  Report rep("sierpinski-demo");
  const auto a = sierpinski_presheaf();
  const auto [s, t] = sierpinski_subs();
  rep.config()["presheaf"] = describe_presheaf(a);
  rep.config()["S"] = describe_internal(a, s);
  rep.config()["T"] = describe_internal(a, t);

  rep.check(is_internal_sub(a, s) && is_internal_sub(a, t), "valid-subobjects", "S,T", Json::object());
  for (const auto& [label, sub] : {std::pair{"S", s}, std::pair{"T", t}}) {
    const bool sat = is_saturated_internal(a, sub) && saturated_by_factorization(a, sub, Endpoint::Either);
    rep.check(sat, "saturated", label, Json{{"sub", describe_internal(a, sub)}});
    const auto comp = complement_of(a, sub);
    Json w{{"sub", describe_internal(a, sub)}};
    if (comp) w["complement"] = describe_internal(a, *comp);
    rep.check(!comp, "not-complemented", label, w);
  }
  rep.check(join(s, t) == whole_sub(a), "union-is-whole", "S,T", Json{{"union", describe_internal(a, join(s, t))}});
  const auto m = meet(s, t);
  rep.check(is_internal_sub(a, m) && is_saturated_internal(a, m), "intersection-saturated", "S,T",
            Json{{"meet", describe_internal(a, m)}});

  // Dropping the stage U leaves plain preorders, where saturated subobjects
  // are complemented.
  const auto top = a.without_point(0);
  for (const auto& [label, sub] : {std::pair{"S", s}, std::pair{"T", t}}) {
    const InternalSub restricted{{sub.at[1]}};
    rep.check(is_complemented_sub(top, restricted), "complemented-without-U", label,
              Json{{"sub", describe_internal(top, restricted)}});
  }

  Corpus<FinPreord> stages;
  for (int p = 0; p < a.points(); ++p) stages.emplace_back("A(" + a.index().name(p) + ")", a.at(p));
  Battery<FinPreord> battery;
  for (auto& [n, b] : preorder_corpus(2)) battery.emplace_back(n, b);
  rep.merge(verify_cc(stages, SystemKind::Saturated, battery));
  rep.note("compatibility axioms are checked at each stage separately");
  return rep;
}

namespace {

std::vector<Table> automorphisms(const FinPreord& p) {
  std::vector<Table> out;
  Table perm = identity_table(p.size());
  do {
    bool ok = true;
    for (int x = 0; x < p.size() && ok; ++x) {
      for (int y = 0; y < p.size() && ok; ++y) {
        if (p.leq(x, y) != p.leq(perm[static_cast<std::size_t>(x)], perm[static_cast<std::size_t>(y)])) ok = false;
      }
    }
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace

Corpus<PreordPresheaf> presheaf_corpus(int max_top, int max_bottom) {
  Corpus<PreordPresheaf> out;
  const auto index = FinPoset::make(FinPreord::chain({"U", "X"}));
  const auto tops = preorder_corpus(max_top);
  const auto bottoms = preorder_corpus(max_bottom);
  for (const auto& [tn, top] : tops) {
    const auto auto_top = automorphisms(top);
    for (const auto& [bn, bottom] : bottoms) {
      const auto auto_bottom = automorphisms(bottom);
      std::set<Table> seen;
      for (const auto& r : monotone_tables(top, top.all(), bottom)) {
        // Canonical form: least table among β ∘ r ∘ α over automorphisms.
        Table best = r;
        for (const auto& al : auto_top) {
          for (const auto& be : auto_bottom) {
            Table c(r.size());
            for (std::size_t i = 0; i < r.size(); ++i) {
              c[static_cast<std::size_t>(al[i])] = be[static_cast<std::size_t>(r[i])];
            }
            best = std::min(best, c);
          }
        }
        if (!seen.insert(best).second) continue;
        std::string name = tn + "->" + bn + "[";
        for (std::size_t i = 0; i < best.size(); ++i) name += (i ? "," : "") + std::to_string(best[i]);
        name += "]";
        out.emplace_back(name, PreordPresheaf::make(index, {bottom, top}, {{1, 0, best}}));
      }
    }
  }
  out.emplace_back("sierpinski", sierpinski_presheaf());
  return out;
}

}  // namespace stabcat
