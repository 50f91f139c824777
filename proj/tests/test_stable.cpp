#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "stabcat/corpus.hpp"
#include "stabcat/error.hpp"
#include "stabcat/fixtures.hpp"
#include "stabcat/stable.hpp"
#include "stabcat/universal.hpp"

using namespace stabcat;

namespace {

Battery<FinPreord> small_battery(int max_size) {
  Battery<FinPreord> out;
  for (auto& [n, p] : preorder_corpus(max_size)) out.emplace_back(n, p);
  return out;
}

Mask by_names(const FinPreord& p, std::initializer_list<const char*> names) {
  Mask m = 0;
  for (const char* n : names) m |= bit(*p.index_of(n));
  return m;
}

// Brute-force closure of the one-step congruence, straight from the
// definition: search every (U0, U1) of the lattice for each pair, then take
// connected components.
std::vector<int> brute_classes(const PreordStable& st, const FinPreord& a, const FinPreord& b,
                               const std::vector<PartialMorphism<PreordTheory>>& ps, bool drop) {
  const auto& lat = st.lattice(a);
  const std::size_t n = ps.size();
  std::vector<int> comp(n);
  for (std::size_t i = 0; i < n; ++i) comp[i] = static_cast<int>(i);
  auto related = [&](const auto& p, const auto& q) {
    for (Mask u0 : lat.members) {
      for (Mask u1 : lat.members) {
        if ((u0 | u1) != a.all() || (u1 & ~(p.s1 & q.s1))) continue;
        bool agree = true;
        for (int x : members(u1)) agree = agree && p.map[x] == q.map[x];
        if (!agree) continue;
        if (drop) return true;
        auto trivial = [&](const Table& f, Mask d) {
          for (int x : members(d)) {
            for (int y : members(a.up(x) & d)) {
              if (f[x] != f[y]) return false;
            }
          }
          return true;
        };
        if (trivial(p.map, u0 & p.s1) && trivial(q.map, u0 & q.s1)) return true;
      }
    }
    return false;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (comp[i] != comp[j] && related(ps[i], ps[j])) {
          const int lo = std::min(comp[i], comp[j]);
          const int hi = std::max(comp[i], comp[j]);
          for (auto& c : comp) {
            if (c == hi) c = lo;
          }
          changed = true;
        }
      }
    }
  }
  return comp;
}

}  // namespace

TEST_CASE("partial morphism invariants") {
  const auto a = fixtures::chain_plus_point();
  const auto b = fixtures::chain2();
  const PreordStable st(SystemKind::Saturated);
  const Mask t = by_names(a, {"t"});
  const Mask pq = by_names(a, {"p", "q"});
  Table f(3, -1);
  f[*a.index_of("p")] = 0;
  f[*a.index_of("q")] = 1;
  CHECK_NOTHROW(st.make_partial(a, t, pq, f, b));
  CHECK_NOTHROW(st.make_partial(a, a.all(), 0, Table(3, -1), b));
  try {
    st.make_partial(a, 0, pq, f, b);
    FAIL("expected NotACover");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotACover);
  }
  try {
    st.make_partial(a, a.all(), pq, f, b);
    FAIL("expected NotTrivialOnOverlap");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotTrivialOnOverlap);
  }
  const PreordStable open(SystemKind::Open);
  try {
    open.make_partial(a, by_names(a, {"q", "t"}), a.all(), Table{0, 0, 0}, b);
    FAIL("expected NotDistinguishedInput");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotDistinguishedInput);
  }
}

TEST_CASE("partial composition") {
  const auto a = fixtures::chain_plus_point();
  const auto p = fixtures::chain2();
  const PreordStable st(SystemKind::Saturated);
  const Mask t = by_names(a, {"t"});
  const Mask pq = by_names(a, {"p", "q"});
  Table incl(3, -1);
  incl[*a.index_of("p")] = 0;
  incl[*a.index_of("q")] = 1;
  const auto first = st.make_partial(a, t, pq, incl, p);
  const auto g = st.embed(p, Table{1, 1});
  const auto out = st.compose(a, p, p, g, first);
  CHECK(out.s0 == t);
  CHECK(out.s1 == pq);
  CHECK(out.map[*a.index_of("p")] == 1);
  CHECK(out.map[*a.index_of("q")] == 1);
  CHECK(out.map[*a.index_of("t")] == -1);

  CHECK(st.compose(a, p, p, st.identity(p), first) == first);
  const auto z = st.zero(p, p);
  const auto zc = st.compose(a, p, p, z, first);
  CHECK(zc.s0 == a.all());
  CHECK(zc.s1 == 0);
}

TEST_CASE("congruence search") {
  const auto a = fixtures::chain_plus_point();
  const auto p = fixtures::chain2();
  const PreordStable st(SystemKind::Saturated);
  const Mask t = by_names(a, {"t"});
  const Mask pq = by_names(a, {"p", "q"});
  Table f(3, -1);
  f[*a.index_of("p")] = 0;
  f[*a.index_of("q")] = 1;
  const auto x = st.make_partial(a, t, pq, f, p);
  Table g = f;
  g[*a.index_of("t")] = 0;
  const auto y = st.embed(a, g);
  auto w = st.find_congruence(a, p, x, y);
  REQUIRE(w);
  CHECK(w->u0 == t);
  CHECK(w->u1 == pq);
  w = st.find_congruence(a, p, x, x);
  REQUIRE(w);
  CHECK(w->u0 == x.s0);

  // Two total maps that differ on the nontrivial component are unrelated.
  Table h = g;
  h[*a.index_of("p")] = 1;
  CHECK_FALSE(st.find_congruence(a, p, y, st.embed(a, h)));
}

TEST_CASE("small hom-sets") {
  const PreordStable ind(SystemKind::Indiscrete);
  const auto one = FinPreord::point("x");
  CHECK(ind.hom(one, one).class_count() == 1);
  CHECK(ind.hom(one, one).zero_class == 0);
  const auto p3 = fixtures::p3();
  CHECK(ind.hom(FinPreord{}, p3).class_count() == 1);
  CHECK(ind.hom(p3, FinPreord{}).class_count() == 1);

  // Indiscrete system: the classes are the nontrivial monotone maps plus zero.
  int nontrivial = 0;
  for (const auto& f : oracle::monotone_maps(p3, p3)) {
    bool trivial = true;
    for (int x = 0; x < 3; ++x) {
      for (int y = 0; y < 3; ++y) {
        if (p3.leq(x, y) && f[x] != f[y]) trivial = false;
      }
    }
    nontrivial += trivial ? 0 : 1;
  }
  CHECK(ind.hom(p3, p3).class_count() == nontrivial + 1);

  const auto& h = ind.hom(p3, p3);
  const auto& zero = h.classes[static_cast<std::size_t>(h.zero_class)];
  CHECK(h.partials[static_cast<std::size_t>(zero.representative)] == ind.zero(p3, p3));
  CHECK(zero.is_zero);
}

TEST_CASE("union-find classes match brute-force closure") {
  const auto corpus = preorder_corpus(3);
  const auto battery = small_battery(2);
  for (auto kind : {SystemKind::Saturated, SystemKind::Open, SystemKind::Closed, SystemKind::Indiscrete}) {
    for (bool drop : {false, true}) {
      const PreordStable st(kind, StableOptions{drop});
      for (const auto& [an, a] : corpus) {
        for (const auto& [bn, b] : battery) {
          const auto& h = st.hom(a, b);
          const auto brute = brute_classes(st, a, b, h.partials, drop);
          for (std::size_t i = 0; i < h.partials.size(); ++i) {
            for (std::size_t j = i + 1; j < h.partials.size(); ++j) {
              REQUIRE((brute[i] == brute[j]) == (h.class_of[i] == h.class_of[j]));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("collapse isomorphism") {
  const auto a = fixtures::chain_plus_point();
  const Mask t = by_names(a, {"t"});
  const Mask pq = by_names(a, {"p", "q"});
  const auto iso = union_collapse_iso<PreordTheory>(a, pq, t, SystemKind::Saturated);
  CHECK(iso.forward.s0 == t);
  CHECK(iso.backward.s1 == 3);
  CHECK(iso.on_source.u0 == t);

  const auto whole = union_collapse_iso<PreordTheory>(a, a.all(), 0, SystemKind::Saturated);
  CHECK(whole.forward.s0 == 0);
  try {
    union_collapse_iso<PreordTheory>(a, t, pq, SystemKind::Saturated);
    FAIL("expected HypothesisViolated");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::HypothesisViolated);
  }
}

TEST_CASE("zero-pushouts hold in the quotient and fail before it") {
  const auto a = fixtures::chain_plus_point();
  const Mask t = by_names(a, {"t"});
  const Mask pq = by_names(a, {"p", "q"});
  const auto battery = small_battery(3);
  const auto stab = verify_zero_pushout<PreordTheory>(a, pq, t, SystemKind::Saturated, battery);
  CHECK(stab.ok());
  CHECK(stab.passes_of("zero-pushout") > 0);
  const auto degenerate = verify_zero_pushout<PreordTheory>(a, a.all(), a.all(), SystemKind::Saturated, battery);
  CHECK(degenerate.ok());
  const auto dispar = verify_zero_pushout<PreordTheory>(a, pq, t, SystemKind::Saturated, battery, true);
  CHECK_FALSE(dispar.ok());
}

TEST_CASE("stable zero suite") {
  const auto corpus = preorder_corpus(3);
  const auto battery = small_battery(2);
  for (auto kind : {SystemKind::Saturated, SystemKind::Indiscrete, SystemKind::Open, SystemKind::Closed}) {
    CAPTURE(to_string(kind));
    const auto rep = verify_stable_zero<PreordTheory>(corpus, kind, battery);
    CHECK(rep.ok());
  }
  // Two points, trivial: isomorphic to zero.
  const PreordStable st(SystemKind::Saturated);
  const auto two = FinPreord::discrete({"a", "b"});
  CHECK(st.identity_class(two) == st.zero_class(two, two));

  const auto faulty = verify_stable_zero<PreordTheory>(corpus, SystemKind::Saturated, battery, StableOptions{true});
  CHECK(faulty.failures_of("zero-iff-trivial-map") > 0);
}

TEST_CASE("stable torsion suite") {
  const auto corpus = preorder_corpus(3);
  const auto battery = small_battery(2);
  for (auto kind : {SystemKind::Saturated, SystemKind::Indiscrete}) {
    const auto rep = verify_stable_torsion<PreordTheory>(corpus, kind, battery);
    CHECK(rep.ok());
    CHECK(rep.passes_of("stable-kernel") > 0);
    CHECK(rep.passes_of("stable-cokernel") > 0);
  }
  Battery<FinCat> cats;
  for (auto& [n, c] : fixtures::cat_fixtures()) {
    if (c.object_count() <= 2) cats.emplace_back(n, c);
  }
  const auto rep = verify_stable_torsion<CatTheory>(cat_fixture_corpus(), SystemKind::Saturated, cats);
  CHECK(rep.ok());
}

TEST_CASE("stable unions suite") {
  const auto corpus = preorder_corpus(3);
  const auto battery = small_battery(2);
  const auto rep = verify_stable_unions<PreordTheory>(corpus, SystemKind::Saturated, battery);
  CHECK(rep.ok());
  CHECK(rep.passes_of("collapse-iso") > 0);
}

TEST_CASE("factorization through the stable category") {
  const auto corpus = preorder_corpus(2);
  const auto battery = small_battery(2);
  const StableTarget<PreordTheory> same(SystemKind::Saturated);
  const auto rep = factor_torsion_functor<PreordTheory>(corpus, SystemKind::Saturated, same, battery);
  CHECK(rep.ok());
  // G is the identity on classes.
  const Factorization<PreordTheory, StableTarget<PreordTheory>> g(SystemKind::Saturated, same);
  const auto p3 = fixtures::p3();
  for (int c = 0; c < g.source.hom(p3, p3).class_count(); ++c) CHECK(g.apply(p3, p3, c) == c);

  const ZeroTarget<PreordTheory> zero;
  CHECK(factor_torsion_functor<PreordTheory>(corpus, SystemKind::Saturated, zero, battery).ok());

  const StableTarget<PreordTheory> sat(SystemKind::Saturated);
  CHECK(factor_torsion_functor<PreordTheory>(preorder_corpus(3), SystemKind::Indiscrete, sat, battery).ok());

  const StableTarget<PreordTheory> ind(SystemKind::Indiscrete);
  Corpus<FinPreord> cpp{{"chain+point", fixtures::chain_plus_point()}};
  try {
    factor_torsion_functor<PreordTheory>(cpp, SystemKind::Saturated, ind, battery);
    FAIL("expected HypothesesFail");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::HypothesesFail);
  }
  const AmbientTarget<PreordTheory> amb;
  try {
    factor_torsion_functor<PreordTheory>(corpus, SystemKind::Saturated, amb, battery);
    FAIL("expected HypothesesFail");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::HypothesesFail);
  }
}

TEST_CASE("explicit description of the indiscrete stable category") {
  const auto rep = indiscrete_stable_description<PreordTheory>(preorder_corpus(3));
  CHECK(rep.ok());
  CHECK(rep.passes_of("composition-agrees") >= 20);

  const ExplicitIndiscrete<PreordTheory> ex;
  const auto p3 = fixtures::p3();
  const PreordStable st(SystemKind::Indiscrete);
  CHECK(ex.hom(p3, p3).size() == static_cast<std::size_t>(st.hom(p3, p3).class_count()));
  CHECK(ex.hom(p3, FinPreord::point("x")).size() == 1);
  // x < y mapped onto a chain and then collapsed: two nontrivial maps with a
  // trivial composite.
  const auto c2 = fixtures::chain2();
  const auto c3 = FinPreord::chain({"0", "1", "2"});
  const auto f = ex.keep(c2, Table{0, 1}, c3);
  const auto g = ex.keep(c3, Table{0, 0, 1}, c2);
  REQUIRE(f);
  REQUIRE(g);
  CHECK_FALSE(ex.compose(c2, c3, c2, g, f));
}

TEST_CASE("category of fractions") {
  const auto corpus = preorder_corpus(2);
  const StableTarget<PreordTheory> ind(SystemKind::Indiscrete);
  const auto rep = verify_fractions<PreordTheory>(corpus, ind);
  CHECK(rep.ok());
  const ExplicitIndiscrete<PreordTheory> ex;
  const auto rep2 = verify_fractions<PreordTheory>(preorder_corpus(3), ex);
  CHECK(rep2.ok());
  CHECK(rep2.passes_of("trivial-composite-case") > 0);
  const AmbientTarget<PreordTheory> amb;
  try {
    verify_fractions<PreordTheory>(corpus, amb);
    FAIL("expected PreconditionFailed");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::PreconditionFailed);
  }
}
