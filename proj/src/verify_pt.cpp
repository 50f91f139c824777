#include <map>

#include "stabcat/describe.hpp"
#include "stabcat/error.hpp"
#include "stabcat/pretorsion.hpp"

namespace stabcat {

namespace {

template <class Object>
void echo(Report& rep, std::string_view ambient, std::string_view theory, const Corpus<Object>& corpus,
          const Battery<Object>& battery, const PtOptions& opts) {
  auto& cfg = rep.config();
  cfg["ambient"] = std::string(ambient);
  cfg["theory"] = std::string(theory);
  cfg["seeded_fault"] = opts.swap_fault;
  cfg["corpus_size"] = corpus.size();
  cfg["battery_size"] = battery.size();
  cfg["composition_max_size"] = opts.composition_max_size;
}

template <class Map>
std::map<Map, int> tally(const std::vector<Map>& maps) {
  std::map<Map, int> out;
  for (const auto& m : maps) ++out[m];
  return out;
}

}  // namespace

Report verify_pt(const Corpus<FinPreord>& corpus, const Battery<FinPreord>& battery, const PtOptions& opts) {
  using A = PreordAmbient;
  Report rep("verify-pt");
  echo(rep, A::name, PreordTheory::name, corpus, battery, opts);

  for (const auto& [tn, t] : corpus) {
    if (!is_torsion(t)) continue;
    for (const auto& [fn, f] : corpus) {
      if (!is_torsion_free(f)) continue;
      for (const auto& m : monotone_tables(t, t.all(), f)) {
        const auto cert = is_trivial_morphism(t, m, f);
        rep.check(cert.trivial, "PT1", tn + " -> " + fn,
                  Json{{"torsion", tn}, {"torsion_free", fn}, {"map", describe_map(t, m, f)}, {"violation", cert.violation}});
      }
    }
  }

  for (const auto& [name, a] : corpus) {
    PreordSequence seq = canonical_sequence(a);
    if (opts.swap_fault) seq.torsion = FinPreord::discrete(a.names());
    const FinPreord& tau = seq.torsion;
    const FinPreord& phi = seq.torsion_free;
    auto base = [&] { return Json{{"object", name}, {"definition", describe(a)}}; };

    rep.check(is_torsion(tau), "PT2-torsion-part", name, base());
    rep.check(is_torsion_free(phi), "PT2-torsion-free-part", name, base());
    rep.check(is_monotone_on(tau, seq.counit, tau.all(), a) && A::injective(tau, seq.counit), "counit-mono", name, base());
    rep.check(is_monotone_on(a, seq.unit, a.all(), phi) && image_mask(seq.unit) == phi.all(), "unit-epi", name, base());
    rep.check(is_trivial_on(tau, A::compose(tau, seq.unit, seq.counit), tau.all(), phi), "PT2-trivial-composite", name,
              base());

    for (const auto& [xn, x] : battery) {
      const auto through = tally([&] {
        std::vector<Table> v;
        for (const auto& y : monotone_tables(x, x.all(), tau)) v.push_back(A::compose(x, seq.counit, y));
        return v;
      }());
      for (const auto& m : monotone_tables(x, x.all(), a)) {
        if (!is_trivial_on(x, A::compose(x, seq.unit, m), x.all(), phi)) continue;
        auto it = through.find(m);
        const int n = it == through.end() ? 0 : it->second;
        Json w = base();
        w["probe"] = xn;
        w["map"] = describe_map(x, m, a);
        w["factorizations"] = n;
        rep.check(n == 1, "PT2-kernel", name, w);
      }

      const auto out_of = tally([&] {
        std::vector<Table> v;
        for (const auto& z : monotone_tables(phi, phi.all(), x)) v.push_back(A::compose(a, z, seq.unit));
        return v;
      }());
      for (const auto& m : monotone_tables(a, a.all(), x)) {
        if (!is_trivial_on(tau, A::compose(tau, m, seq.counit), tau.all(), x)) continue;
        auto it = out_of.find(m);
        const int n = it == out_of.end() ? 0 : it->second;
        Json w = base();
        w["probe"] = xn;
        w["map"] = describe_map(a, m, x);
        w["factorizations"] = n;
        rep.check(n == 1, "PT2-cokernel", name, w);
      }
    }
  }

  // Functoriality of τ and φ on corpus maps.
  for (const auto& [an, a] : corpus) {
    const FinPreord ta = torsion_part(a);
    const FinPreord pa = torsion_free_part(a);
    const Table ua = condensation_classes(a);
    rep.check(torsion_free_map(a, A::identity(a, a.all()), a) == A::identity(pa, pa.all()), "functor-identities", an,
              Json{{"object", an}});
    for (const auto& [bn, b] : corpus) {
      const FinPreord tb = torsion_part(b);
      const FinPreord pb = torsion_free_part(b);
      const Table ub = condensation_classes(b);
      for (const auto& f : monotone_tables(a, a.all(), b)) {
        Json w{{"source", an}, {"target", bn}, {"map", describe_map(a, f, b)}};
        rep.check(is_monotone_on(ta, f, ta.all(), tb), "functor-torsion-part", an + " -> " + bn, w);
        bool ok = true;
        try {
          const Table pf = torsion_free_map(a, f, b);
          ok = is_monotone_on(pa, pf, pa.all(), pb) && A::compose(a, pf, ua) == A::compose(a, ub, f);
        } catch (const Error&) {
          ok = false;
        }
        rep.check(ok, "functor-torsion-free-part", an + " -> " + bn, w);
      }
    }
  }
  for (const auto& [an, a] : corpus) {
    if (a.size() > opts.composition_max_size) continue;
    for (const auto& [bn, b] : corpus) {
      if (b.size() > opts.composition_max_size) continue;
      const auto fs = monotone_tables(a, a.all(), b);
      for (const auto& [cn, c] : corpus) {
        if (c.size() > opts.composition_max_size) continue;
        const auto gs = monotone_tables(b, b.all(), c);
        for (const auto& f : fs) {
          const Table pf = torsion_free_map(a, f, b);
          for (const auto& g : gs) {
            const Table gf = A::compose(a, g, f);
            const bool ok = torsion_free_map(a, gf, c) == A::compose(a, torsion_free_map(b, g, c), pf);
            rep.check(ok, "functor-composition", an + " -> " + bn + " -> " + cn,
                      Json{{"first", describe_map(a, f, b)}, {"second", describe_map(b, g, c)}});
          }
        }
      }
    }
  }
  rep.note("kernel and cokernel universal properties are tested against the battery only");
  return rep;
}

namespace {

// Lazy facts about a quotient that may be infinite.
bool generator_trivial(const SkeletalQuotient& q, int arrow) {
  const FinCat& c = q.ambient();
  if (q.class_of(c.dom(arrow)) != q.class_of(c.cod(arrow))) return false;
  return q.inverse(q.generator(arrow), q.bound()).has_value();
}

bool bounded_torsion_free(const SkeletalQuotient& q) {
  for (const auto& ch : q.all_chains(q.bound())) {
    if (ch.dom != ch.cod && q.inverse(ch, q.bound())) return false;
  }
  return true;
}

// Tables of the iso-part of f, indexed by the torsion parts.
std::optional<FunctorTable> torsion_table(const FinCat& a, const FunctorTable& f, const FinCat& b) {
  const Mask ia = iso_arrows(a);
  const Mask ib = iso_arrows(b);
  FunctorTable t{f.obj, {}};
  for (int e : members(ia)) {
    const int g = f.arr[static_cast<std::size_t>(e)];
    if (!has(ib, g)) return std::nullopt;
    t.arr.push_back(popcount(ib & full_mask(g)));
  }
  return t;
}

// Whether m : A -> X is constant on iso-classes and its induced assignment on
// reduced chains respects composition of chains within the bound.
bool descends(const SkeletalQuotient& q, const FunctorTable& m, const FinCat& x) {
  const FinCat& a = q.ambient();
  for (int o = 0; o < a.object_count(); ++o) {
    if (m.obj[static_cast<std::size_t>(o)] != m.obj[static_cast<std::size_t>(q.representative(q.class_of(o)))]) {
      return false;
    }
  }
  auto value = [&](const ChainArrow& ch) {
    int acc = x.identity(m.obj[static_cast<std::size_t>(q.representative(ch.dom))]);
    for (int e : ch.arrows) acc = x.compose(m.arr[static_cast<std::size_t>(e)], acc);
    return acc;
  };
  const auto chains = q.all_chains(q.bound());
  for (const auto& f : chains) {
    if (value(f) < 0) return false;
    for (const auto& g : chains) {
      if (f.cod != g.dom || f.arrows.size() + g.arrows.size() > static_cast<std::size_t>(q.bound())) continue;
      if (value(q.compose(g, f)) != x.compose(value(g), value(f))) return false;
    }
  }
  return true;
}

}  // namespace

Report verify_pt(const Corpus<FinCat>& corpus, const Battery<FinCat>& battery, const PtOptions& opts) {
  using A = CatAmbient;
  Report rep("verify-pt");
  echo(rep, A::name, CatTheory::name, corpus, battery, opts);
  rep.config()["max_chain"] = opts.max_chain;

  for (const auto& [tn, t] : corpus) {
    if (!is_torsion(t)) continue;
    for (const auto& [fn, f] : corpus) {
      if (!is_torsion_free(f)) continue;
      for (const auto& m : functor_tables(t, t.all_objects(), f)) {
        const auto cert = is_trivial_morphism(t, m, f);
        rep.check(cert.trivial, "PT1", tn + " -> " + fn,
                  Json{{"torsion", tn}, {"torsion_free", fn}, {"map", describe_map(t, m, f)}, {"violation", cert.violation}});
      }
    }
  }

  std::vector<CatSequence> seqs;
  for (const auto& [name, a] : corpus) {
    CatSequence seq = canonical_sequence(a, opts.max_chain);
    if (opts.swap_fault) {
      Mask ids = 0;
      for (int x = 0; x < a.object_count(); ++x) ids |= bit(a.identity(x));
      seq.torsion = a.restrict(a.all_objects(), ids);
      seq.counit.arr.clear();
      for (int e : members(ids)) seq.counit.arr.push_back(e);
    }
    const SkeletalQuotient& q = *seq.quotient;
    const FinCat& tau = seq.torsion;
    auto base = [&] { return Json{{"object", name}, {"definition", describe(a)}}; };
    if (seq.truncated()) {
      rep.note(name + ": torsion-free part truncated at chain length " + std::to_string(opts.max_chain) +
               "; its properties are decided from generators and bounded inverse search");
    }

    rep.check(is_torsion(tau), "PT2-torsion-part", name, base());
    rep.check(seq.torsion_free ? is_torsion_free(*seq.torsion_free) : bounded_torsion_free(q), "PT2-torsion-free-part",
              name, base());
    rep.check(is_functor_on(tau, seq.counit, tau.all_objects(), a) && A::injective(tau, seq.counit), "counit-mono", name,
              base());
    bool epi = q.classes_of(a.all_objects()) == full_mask(q.class_count());
    if (seq.torsion_free) epi = epi && A::epi_status(a, *seq.unit, *seq.torsion_free) == EpiStatus::Epi;
    rep.check(epi, "unit-epi", name, base());
    bool composite = true;
    for (int e : seq.counit.arr) composite = composite && generator_trivial(q, e);
    rep.check(composite, "PT2-trivial-composite", name, base());

    for (const auto& [xn, x] : battery) {
      const auto through = tally([&] {
        std::vector<FunctorTable> v;
        for (const auto& y : functor_tables(x, x.all_objects(), tau)) v.push_back(A::compose(x, seq.counit, y));
        return v;
      }());
      for (const auto& m : functor_tables(x, x.all_objects(), a)) {
        bool trivial = true;
        for (int g : m.arr) trivial = trivial && generator_trivial(q, g);
        if (!trivial) continue;
        auto it = through.find(m);
        const int n = it == through.end() ? 0 : it->second;
        Json w = base();
        w["probe"] = xn;
        w["map"] = describe_map(x, m, a);
        w["factorizations"] = n;
        rep.check(n == 1, "PT2-kernel", name, w);
      }

      std::map<FunctorTable, int> out_of;
      if (seq.torsion_free) {
        std::vector<FunctorTable> v;
        for (const auto& z : functor_tables(*seq.torsion_free, seq.torsion_free->all_objects(), x)) {
          v.push_back(A::compose(a, z, *seq.unit));
        }
        out_of = tally(v);
      }
      for (const auto& m : functor_tables(a, a.all_objects(), x)) {
        if (!is_trivial_on(tau, A::compose(tau, m, seq.counit), tau.all_objects(), x)) continue;
        int n = 0;
        if (seq.torsion_free) {
          auto it = out_of.find(m);
          n = it == out_of.end() ? 0 : it->second;
        } else {
          n = descends(q, m, x) ? 1 : 0;  // unique when it exists: the unit is epi
        }
        Json w = base();
        w["probe"] = xn;
        w["map"] = describe_map(a, m, x);
        w["factorizations"] = n;
        rep.check(n == 1, "PT2-cokernel", name, w);
      }
    }
    seqs.push_back(std::move(seq));
  }

  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& [an, a] = corpus[i];
    const SkeletalQuotient& qa = *seqs[i].quotient;
    const auto chains = qa.all_chains(qa.bound());
    bool ids = true;
    for (const auto& ch : chains) ids = ids && map_chain(qa, qa, A::identity(a, a.all_objects()), ch) == ch;
    rep.check(ids, "functor-identities", an, Json{{"object", an}});
    for (std::size_t j = 0; j < corpus.size(); ++j) {
      const auto& [bn, b] = corpus[j];
      const SkeletalQuotient& qb = *seqs[j].quotient;
      for (const auto& f : functor_tables(a, a.all_objects(), b)) {
        Json w{{"source", an}, {"target", bn}, {"map", describe_map(a, f, b)}};
        const auto tf = torsion_table(a, f, b);
        rep.check(tf && is_functor_on(torsion_part(a), *tf, a.all_objects(), torsion_part(b)), "functor-torsion-part",
                  an + " -> " + bn, w);
        bool ok = true;
        for (int o = 0; o < a.object_count(); ++o) {
          ok = ok && qb.class_of(f.obj[static_cast<std::size_t>(o)]) ==
                         qb.class_of(f.obj[static_cast<std::size_t>(qa.representative(qa.class_of(o)))]);
        }
        for (const auto& c1 : chains) {
          for (const auto& c2 : chains) {
            if (!ok) break;
            if (c1.cod != c2.dom || c1.arrows.size() + c2.arrows.size() > static_cast<std::size_t>(qa.bound())) continue;
            ok = map_chain(qa, qb, f, qa.compose(c2, c1)) ==
                 qb.compose(map_chain(qa, qb, f, c2), map_chain(qa, qb, f, c1));
          }
        }
        rep.check(ok, "functor-torsion-free-part", an + " -> " + bn, w);
      }
    }
  }
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& [an, a] = corpus[i];
    const SkeletalQuotient& qa = *seqs[i].quotient;
    const auto chains = qa.all_chains(qa.bound());
    for (std::size_t j = 0; j < corpus.size(); ++j) {
      const auto& [bn, b] = corpus[j];
      const auto fs = functor_tables(a, a.all_objects(), b);
      for (std::size_t k = 0; k < corpus.size(); ++k) {
        const auto& [cn, c] = corpus[k];
        const auto gs = functor_tables(b, b.all_objects(), c);
        for (const auto& f : fs) {
          for (const auto& g : gs) {
            bool ok = true;
            const FunctorTable gf = A::compose(a, g, f);
            for (const auto& ch : chains) {
              ok = ok && map_chain(qa, *seqs[k].quotient, gf, ch) ==
                             map_chain(*seqs[j].quotient, *seqs[k].quotient, g, map_chain(qa, *seqs[j].quotient, f, ch));
            }
            rep.check(ok, "functor-composition", an + " -> " + bn + " -> " + cn,
                      Json{{"first", describe_map(a, f, b)}, {"second", describe_map(b, g, c)}});
          }
        }
      }
    }
  }
  rep.note("kernel and cokernel universal properties are tested against the battery only");
  return rep;
}

}  // namespace stabcat
