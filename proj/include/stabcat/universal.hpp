#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "stabcat/describe.hpp"
#include "stabcat/error.hpp"
#include "stabcat/fixtures.hpp"
#include "stabcat/stable.hpp"

namespace stabcat {

// Targets of a functor F out of the ambient category. A target presents a
// category X whose objects are ambient objects (F is the identity on
// objects) and exposes:
//
//   hom(a, b)                 every arrow F(a) -> F(b)
//   compose(a, b, c, g, f)    g ∘ f
//   identity(a), is_zero(a, b, x), zero(a, b)
//   map_arrow(a, b, f)        F(f) for an ambient map f: a -> b
//   describe(a, b, x)         report rendering

/// F = σ into a computed stable category. Arrows are class indices.
template <class Th>
class StableTarget {
 public:
  using Amb = typename Th::Amb;
  using Object = typename Amb::Object;
  using Arrow = int;

  explicit StableTarget(SystemKind kind) : st_(kind) {}

  std::string name() const { return std::string("stable-") + std::string(to_string(st_.kind())); }
  const StableCategory<Th>& stable() const { return st_; }
  std::vector<Arrow> hom(const Object& a, const Object& b) const {
    std::vector<Arrow> out(static_cast<std::size_t>(st_.hom(a, b).class_count()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i);
    return out;
  }
  Arrow compose(const Object& a, const Object& b, const Object& c, Arrow g, Arrow f) const {
    return st_.compose_classes(a, b, c, g, f);
  }
  Arrow identity(const Object& a) const { return st_.identity_class(a); }
  bool is_zero(const Object& a, const Object& b, Arrow x) const { return x == st_.zero_class(a, b); }
  Arrow zero(const Object& a, const Object& b) const { return st_.zero_class(a, b); }
  Arrow map_arrow(const Object& a, const Object& b, const typename Amb::Map& f) const { return st_.sigma(a, f, b); }
  Json describe(const Object& a, const Object& b, Arrow x) const {
    const auto& p = st_.hom(a, b).representative(x);
    return Json{{"class", x}, {"S0", Amb::names_of(a, p.s0)}, {"S1", Amb::names_of(a, p.s1)}, {"map", describe_map(a, p.map, b)}};
  }

 private:
  StableCategory<Th> st_;
};

/// F into the category with one arrow between any two objects.
template <class Th>
struct ZeroTarget {
  using Amb = typename Th::Amb;
  using Object = typename Amb::Object;
  using Arrow = int;

  std::string name() const { return "zero"; }
  std::vector<Arrow> hom(const Object&, const Object&) const { return {0}; }
  Arrow compose(const Object&, const Object&, const Object&, Arrow, Arrow) const { return 0; }
  Arrow identity(const Object&) const { return 0; }
  bool is_zero(const Object&, const Object&, Arrow) const { return true; }
  Arrow zero(const Object&, const Object&) const { return 0; }
  Arrow map_arrow(const Object&, const Object&, const typename Amb::Map&) const { return 0; }
  Json describe(const Object&, const Object&, Arrow) const { return "0"; }
};

/// The nontrivial ambient maps together with one formal zero per hom-set
/// (nullopt). A composite is kept when it is nontrivial and becomes the
/// formal zero otherwise.
template <class Th>
struct ExplicitIndiscrete {
  using Amb = typename Th::Amb;
  using Object = typename Amb::Object;
  using Arrow = std::optional<typename Amb::Map>;

  std::string name() const { return "explicit-indiscrete"; }
  Arrow keep(const Object& a, const typename Amb::Map& f, const Object& b) const {
    if (Th::trivial_on(a, f, Amb::whole(a), b)) return std::nullopt;
    return f;
  }
  std::vector<Arrow> hom(const Object& a, const Object& b) const {
    std::vector<Arrow> out;
    for (const auto& f : Amb::maps(a, Amb::whole(a), b)) {
      if (!Th::trivial_on(a, f, Amb::whole(a), b)) out.emplace_back(f);
    }
    out.emplace_back(std::nullopt);
    return out;
  }
  Arrow compose(const Object& a, const Object&, const Object& c, const Arrow& g, const Arrow& f) const {
    if (!g || !f) return std::nullopt;
    return keep(a, Amb::compose(a, *g, *f), c);
  }
  Arrow identity(const Object& a) const { return keep(a, Amb::identity(a, Amb::whole(a)), a); }
  bool is_zero(const Object&, const Object&, const Arrow& x) const { return !x.has_value(); }
  Arrow zero(const Object&, const Object&) const { return std::nullopt; }
  Arrow map_arrow(const Object& a, const Object& b, const typename Amb::Map& f) const { return keep(a, f, b); }
  Json describe(const Object& a, const Object& b, const Arrow& x) const {
    return x ? describe_map(a, *x, b) : Json("0");
  }
};

/// F = identity of the ambient category. It has no zero arrows and does not
/// invert the map from the initial to the terminal object.
template <class Th>
struct AmbientTarget {
  using Amb = typename Th::Amb;
  using Object = typename Amb::Object;
  using Arrow = typename Amb::Map;

  std::string name() const { return "ambient"; }
  std::vector<Arrow> hom(const Object& a, const Object& b) const { return Amb::maps(a, Amb::whole(a), b); }
  Arrow compose(const Object& a, const Object&, const Object&, const Arrow& g, const Arrow& f) const {
    return Amb::compose(a, g, f);
  }
  Arrow identity(const Object& a) const { return Amb::identity(a, Amb::whole(a)); }
  bool is_zero(const Object&, const Object&, const Arrow&) const { return false; }
  Arrow zero(const Object&, const Object&) const {
    throw Error(Errc::PreconditionFailed, "the ambient category has no zero arrows");
  }
  Arrow map_arrow(const Object&, const Object&, const Arrow& f) const { return f; }
  Json describe(const Object& a, const Object& b, const Arrow& x) const { return describe_map(a, x, b); }
};

template <class Target>
std::optional<typename Target::Arrow> target_inverse(const Target& x, const typename Target::Object& a,
                                                     const typename Target::Object& b,
                                                     const typename Target::Arrow& f) {
  for (const auto& g : x.hom(b, a)) {
    if (x.compose(a, b, a, g, f) == x.identity(a) && x.compose(b, a, b, f, g) == x.identity(b)) return g;
  }
  return std::nullopt;
}

namespace detail {

inline FinPreord terminal_of(const FinPreord&) { return FinPreord::point("*"); }
inline FinCat terminal_of(const FinCat&) { return fixtures::terminal_cat(); }

template <class Th, class Target>
void echo_target(Report& rep, const Target& x, std::size_t corpus, std::size_t battery) {
  auto& cfg = rep.config();
  cfg["ambient"] = std::string(Th::Amb::name);
  cfg["theory"] = std::string(Th::name);
  cfg["target"] = x.name();
  cfg["corpus_size"] = corpus;
  cfg["battery_size"] = battery;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Factorization of a functor sending trivial maps to zero and distinguished
// squares to zero-pushouts through the stable category.

template <class Th, class Target>
struct Factorization {
  using Amb = typename Th::Amb;
  using Object = typename Amb::Object;

  StableCategory<Th> source;
  const Target& target;

  Factorization(SystemKind kind, const Target& x) : source(kind), target(x) {}

  /// The unique y: F(a) -> F(b) with y ∘ F(S1 ⊆ a) = F(f) and
  /// y ∘ F(S0 ⊆ a) = 0.
  typename Target::Arrow mediator(const Object& a, const Object& b, const PartialMorphism<Th>& p) const {
    const auto s0 = Amb::induced(a, p.s0);
    const auto s1 = Amb::induced(a, p.s1);
    const auto on_s1 = target.map_arrow(s1, b, Amb::narrow(a, p.s1, p.map));
    const auto i0 = target.map_arrow(s0, a, Amb::inclusion(a, p.s0));
    const auto i1 = target.map_arrow(s1, a, Amb::inclusion(a, p.s1));
    std::optional<typename Target::Arrow> found;
    int count = 0;
    for (const auto& y : target.hom(a, b)) {
      if (target.compose(s1, a, b, y, i1) == on_s1 && target.is_zero(s0, b, target.compose(s0, a, b, y, i0))) {
        if (!found) found = y;
        ++count;
      }
    }
    if (count == 0) throw Error(Errc::NoMediator, "no mediator for a partial morphism", Amb::names_of(a, p.s1));
    if (count > 1) throw Error(Errc::NonUniqueMediator, "several mediators for a partial morphism", Amb::names_of(a, p.s1));
    return *found;
  }

  typename Target::Arrow apply(const Object& a, const Object& b, int cls) const {
    auto key = std::make_tuple(a.key(), b.key(), cls);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    auto y = mediator(a, b, source.hom(a, b).representative(cls));
    cache_.emplace(std::move(key), y);
    return y;
  }

 private:
  mutable std::map<std::tuple<std::string, std::string, int>, typename Target::Arrow> cache_;
};

/// Throws HypothesesFail naming the first failing map or square.
template <class Th, class Target>
void check_factor_hypotheses(const Corpus<typename Th::Amb::Object>& corpus, SystemKind kind, const Target& x,
                             const Battery<typename Th::Amb::Object>& battery) {
  using Amb = typename Th::Amb;
  for (const auto& [an, a] : corpus) {
    for (const auto& [bn, b] : battery) {
      for (const auto& f : Amb::maps(a, Amb::whole(a), b)) {
        if (Th::trivial_on(a, f, Amb::whole(a), b) && !x.is_zero(a, b, x.map_arrow(a, b, f))) {
          throw Error(Errc::HypothesesFail, "a trivial map " + an + " -> " + bn + " is not sent to zero");
        }
      }
    }
    const auto lat = enumerate_distinguished(a, kind);
    for (Mask s : lat.members) {
      for (Mask t : lat.members) {
        if ((s | t) != Amb::whole(a)) continue;
        const Mask i = s & t;
        const auto oi = Amb::induced(a, i);
        const auto os = Amb::induced(a, s);
        const auto ot = Amb::induced(a, t);
        const auto ps = x.map_arrow(oi, os, Amb::inclusion(os, compress(i, s)));
        const auto pt = x.map_arrow(oi, ot, Amb::inclusion(ot, compress(i, t)));
        const auto qs = x.map_arrow(os, a, Amb::inclusion(a, s));
        const auto qt = x.map_arrow(ot, a, Amb::inclusion(a, t));
        for (const auto& [bn, b] : battery) {
          auto fail = [&](const std::string& side) {
            auto names = Amb::names_of(a, s);
            auto tn = Amb::names_of(a, t);
            names.push_back("|");
            names.insert(names.end(), tn.begin(), tn.end());
            throw Error(Errc::HypothesesFail,
                        "square on " + an + " is not sent to a zero-pushout (" + side + " side, probe " + bn + ")", names);
          };
          const auto hu = x.hom(a, b);
          for (const auto& f : x.hom(os, b)) {
            if (!x.is_zero(oi, b, x.compose(oi, os, b, f, ps))) continue;
            int n = 0;
            for (const auto& h : hu) {
              if (x.compose(os, a, b, h, qs) == f && x.is_zero(ot, b, x.compose(ot, a, b, h, qt))) ++n;
            }
            if (n != 1) fail("S");
          }
          for (const auto& g : x.hom(ot, b)) {
            if (!x.is_zero(oi, b, x.compose(oi, ot, b, g, pt))) continue;
            int n = 0;
            for (const auto& h : hu) {
              if (x.compose(ot, a, b, h, qt) == g && x.is_zero(os, b, x.compose(os, a, b, h, qs))) ++n;
            }
            if (n != 1) fail("T");
          }
        }
      }
    }
  }
}

/// Builds G on every hom-set from a corpus object to a battery object and
/// between battery objects, then checks it is well defined on classes,
/// extends F and is functorial.
template <class Th, class Target>
Report factor_torsion_functor(const Corpus<typename Th::Amb::Object>& corpus, SystemKind kind, const Target& x,
                              const Battery<typename Th::Amb::Object>& battery) {
  using Amb = typename Th::Amb;
  Report rep("factor-torsion-functor");
  detail::echo_target<Th>(rep, x, corpus.size(), battery.size());
  rep.config()["system"] = std::string(to_string(kind));
  check_factor_hypotheses<Th>(corpus, kind, x, battery);
  const Factorization<Th, Target> g(kind, x);

  auto per_pair = [&](const std::string& an, const auto& a, const std::string& bn, const auto& b) {
    const std::string subject = an + " -> " + bn;
    const auto& h = g.source.hom(a, b);
    for (const auto& cls : h.classes) {
      const auto rep_value = g.mediator(a, b, h.partials[static_cast<std::size_t>(cls.representative)]);
      bool same = true;
      for (int m : cls.members) same = same && g.mediator(a, b, h.partials[static_cast<std::size_t>(m)]) == rep_value;
      rep.check(same, "well-defined", subject,
                Json{{"class", describe_map(a, h.partials[static_cast<std::size_t>(cls.representative)].map, b)}});
    }
    for (const auto& f : Amb::maps(a, Amb::whole(a), b)) {
      const bool ok = g.apply(a, b, g.source.sigma(a, f, b)) == x.map_arrow(a, b, f);
      rep.check(ok, "extends-F", subject, Json{{"map", describe_map(a, f, b)}});
    }
  };
  for (const auto& [an, a] : corpus) {
    rep.check(g.apply(a, a, g.source.identity_class(a)) == x.identity(a), "identities", an, Json{{"object", an}});
    for (const auto& [bn, b] : battery) per_pair(an, a, bn, b);
  }
  for (const auto& [an, a] : corpus) {
    for (const auto& [bn, b] : battery) {
      const auto& hab = g.source.hom(a, b);
      for (const auto& [cn, c] : battery) {
        const auto& hbc = g.source.hom(b, c);
        for (int p = 0; p < hab.class_count(); ++p) {
          const auto gp = g.apply(a, b, p);
          for (int q = 0; q < hbc.class_count(); ++q) {
            const bool ok = g.apply(a, c, g.source.compose_classes(a, b, c, q, p)) ==
                            x.compose(a, b, c, g.apply(b, c, q), gp);
            rep.check(ok, "functorial", an + " -> " + bn + " -> " + cn,
                      Json{{"first", x.describe(a, b, gp)}, {"second", x.describe(b, c, g.apply(b, c, q))}});
          }
        }
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// The stable category of the indiscrete system against its explicit
// description.

template <class Th>
Report indiscrete_stable_description(const Corpus<typename Th::Amb::Object>& corpus, int min_composition_pairs = 20) {
  using Amb = typename Th::Amb;
  using Object = typename Amb::Object;
  Report rep("indiscrete-description");
  const ExplicitIndiscrete<Th> ex;
  detail::echo_target<Th>(rep, ex, corpus.size(), 0);
  rep.check(Th::trivial_object(Object{}), "initial-trivial", "0", Json::object());
  const StableCategory<Th> st(SystemKind::Indiscrete);

  // Explicit arrow -> stable class.
  auto to_class = [&](const Object& a, const Object& b, const typename ExplicitIndiscrete<Th>::Arrow& f) {
    return f ? st.sigma(a, *f, b) : st.zero_class(a, b);
  };
  for (const auto& [an, a] : corpus) {
    for (const auto& [bn, b] : corpus) {
      const auto arrows = ex.hom(a, b);
      const auto& h = st.hom(a, b);
      std::vector<int> hit(static_cast<std::size_t>(h.class_count()), 0);
      for (const auto& f : arrows) ++hit[static_cast<std::size_t>(to_class(a, b, f))];
      const bool bijective = std::all_of(hit.begin(), hit.end(), [](int n) { return n == 1; });
      rep.check(bijective && arrows.size() == hit.size(), "hom-bijection", an + " -> " + bn,
                Json{{"explicit", arrows.size()}, {"stable", h.class_count()}});
    }
  }
  long pairs = 0;
  for (const auto& [an, a] : corpus) {
    for (const auto& [bn, b] : corpus) {
      for (const auto& [cn, c] : corpus) {
        const auto fs = ex.hom(a, b);
        const auto gs = ex.hom(b, c);
        for (const auto& f : fs) {
          for (const auto& g : gs) {
            const int lhs = to_class(a, c, ex.compose(a, b, c, g, f));
            const int rhs = st.compose_classes(a, b, c, to_class(b, c, g), to_class(a, b, f));
            rep.check(lhs == rhs, "composition-agrees", an + " -> " + bn + " -> " + cn,
                      Json{{"first", ex.describe(a, b, f)}, {"second", ex.describe(b, c, g)}});
            ++pairs;
          }
        }
      }
    }
  }
  rep.check(pairs >= min_composition_pairs, "composition-coverage", "corpus",
            Json{{"pairs", pairs}, {"required", min_composition_pairs}});
  return rep;
}

// ---------------------------------------------------------------------------
// The stable category of the indiscrete system as a category of fractions
// inverting ξ: 0 -> 1.

template <class Th, class Target>
Report verify_fractions(const Corpus<typename Th::Amb::Object>& corpus, const Target& x) {
  using Amb = typename Th::Amb;
  using Object = typename Amb::Object;
  Report rep("verify-fractions");
  detail::echo_target<Th>(rep, x, corpus.size(), 0);
  const StableCategory<Th> st(SystemKind::Indiscrete);
  const Object zero{};
  const Object one = detail::terminal_of(zero);
  if (!Th::trivial_object(one)) throw Error(Errc::PreconditionFailed, "terminal object is not trivial");

  const auto& h01 = st.hom(zero, one);
  const auto& h10 = st.hom(one, zero);
  const bool stab_iso = h01.class_count() == 1 && h10.class_count() == 1 &&
                        st.compose_classes(zero, one, zero, 0, 0) == st.identity_class(zero) &&
                        st.compose_classes(one, zero, one, 0, 0) == st.identity_class(one);
  rep.check(stab_iso, "xi-invertible", "0 -> 1", Json::object());

  const auto xi = x.map_arrow(zero, one, Amb::identity(zero, 0));
  const auto xi_inv = target_inverse(x, zero, one, xi);
  if (!xi_inv) throw Error(Errc::PreconditionFailed, "the functor does not invert 0 -> 1");

  // G(σ f) = F(f) for nontrivial f; the zero class goes to
  // F(0 -> B) ∘ F(ξ)^-1 ∘ F(A -> 1).
  auto to_terminal = [&](const Object& a) {
    return x.map_arrow(a, one, Amb::maps(a, Amb::whole(a), one).front());
  };
  auto from_initial = [&](const Object& b) { return x.map_arrow(zero, b, Amb::identity(zero, 0)); };
  auto g_of = [&](const Object& a, const Object& b, int cls) {
    const auto& hom = st.hom(a, b);
    if (cls == hom.zero_class) {
      return x.compose(a, zero, b, from_initial(b), x.compose(a, one, zero, *xi_inv, to_terminal(a)));
    }
    return x.map_arrow(a, b, hom.representative(cls).map);
  };

  for (const auto& [an, a] : corpus) {
    rep.check(g_of(a, a, st.identity_class(a)) == x.identity(a), "identities", an, Json{{"object", an}});
    for (const auto& [bn, b] : corpus) {
      for (const auto& f : Amb::maps(a, Amb::whole(a), b)) {
        rep.check(g_of(a, b, st.sigma(a, f, b)) == x.map_arrow(a, b, f), "extends-F", an + " -> " + bn,
                  Json{{"map", describe_map(a, f, b)}});
      }
    }
  }
  for (const auto& [an, a] : corpus) {
    for (const auto& [bn, b] : corpus) {
      const auto& hab = st.hom(a, b);
      for (const auto& [cn, c] : corpus) {
        const auto& hbc = st.hom(b, c);
        for (int p = 0; p < hab.class_count(); ++p) {
          for (int q = 0; q < hbc.class_count(); ++q) {
            const int qp = st.compose_classes(a, b, c, q, p);
            const bool ok = g_of(a, c, qp) == x.compose(a, b, c, g_of(b, c, q), g_of(a, b, p));
            const bool collapse = p != hab.zero_class && q != hbc.zero_class && qp == st.zero_class(a, c);
            rep.check(ok, collapse ? "trivial-composite-case" : "functorial", an + " -> " + bn + " -> " + cn,
                      Json{{"first", x.describe(a, b, g_of(a, b, p))}, {"second", x.describe(b, c, g_of(b, c, q))}});
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace stabcat
