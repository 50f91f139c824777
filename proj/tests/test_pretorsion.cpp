#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "stabcat/corpus.hpp"
#include "stabcat/error.hpp"
#include "stabcat/fixtures.hpp"
#include "stabcat/pretorsion.hpp"

using namespace stabcat;

namespace {

// Kosaraju on a raw digraph (no closure taken), components numbered by the
// least vertex they contain.
std::vector<int> kosaraju(int n, const std::vector<std::vector<bool>>& edge) {
  std::vector<int> order;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::function<void(int)> forward = [&](int v) {
    seen[v] = true;
    for (int w = 0; w < n; ++w) {
      if (edge[v][w] && !seen[w]) forward(w);
    }
    order.push_back(v);
  };
  for (int v = 0; v < n; ++v) {
    if (!seen[v]) forward(v);
  }
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::function<void(int, int)> backward = [&](int v, int c) {
    comp[v] = c;
    for (int w = 0; w < n; ++w) {
      if (edge[w][v] && comp[w] < 0) backward(w, c);
    }
  };
  int c = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] < 0) backward(*it, c++);
  }
  // Renumber by least member.
  std::vector<int> least(static_cast<std::size_t>(c), n);
  for (int v = 0; v < n; ++v) least[comp[v]] = std::min(least[comp[v]], v);
  std::vector<int> rank(static_cast<std::size_t>(c));
  std::vector<int> by(least.begin(), least.end());
  std::sort(by.begin(), by.end());
  for (int k = 0; k < c; ++k) rank[k] = static_cast<int>(std::find(by.begin(), by.end(), least[k]) - by.begin());
  for (int v = 0; v < n; ++v) comp[v] = rank[comp[v]];
  return comp;
}

int arrow(const FinCat& c, const char* name) { return *c.arrow_index(name); }

}  // namespace

TEST_CASE("torsion and torsion-free predicates") {
  const FinPreord p3 = fixtures::p3();
  CHECK_FALSE(is_torsion(p3));
  CHECK_FALSE(is_torsion_free(p3));
  CHECK(is_trivial_object(FinPreord::point()));
  CHECK(is_trivial_object(FinPreord{}));
  CHECK(is_torsion(FinPreord::indiscrete({"a", "b"})));
  CHECK(is_torsion_free(fixtures::chain2()));

  const FinCat i2 = fixtures::i2();
  CHECK(is_torsion(i2));
  CHECK_FALSE(is_torsion_free(i2));
  CHECK(is_trivial_object(fixtures::grpd2()));
  CHECK(is_torsion_free(fixtures::arrow_cat()));
  CHECK_FALSE(is_torsion(fixtures::arrow_cat()));
}

TEST_CASE("trivial morphisms of preorders with certificates") {
  const FinPreord p3 = fixtures::p3();
  const FinPreord pt = FinPreord::point();
  auto c = is_trivial_morphism(p3, Table{0, 0, 0}, pt);
  REQUIRE(c.trivial);
  CHECK(is_trivial_object(c.middle));
  CHECK(PreordAmbient::compose(p3, c.second, c.first) == Table{0, 0, 0});

  const FinPreord xy = fixtures::chain2();
  c = is_trivial_morphism(p3, Table{0, 0, 1}, xy);
  CHECK_FALSE(c.trivial);
  CHECK(c.violation == std::vector<std::string>{"b", "c"});

  const FinPreord d = FinPreord::discrete({"p", "q"});
  CHECK(is_trivial_morphism(d, Table{0, 1}, d).trivial);
}

TEST_CASE("trivial functors with certificates") {
  const FinCat g = fixtures::grpd2();
  const FinCat pt = fixtures::terminal_cat();
  FunctorTable to_point{std::vector<int>(2, 0), std::vector<int>(static_cast<std::size_t>(g.arrow_count()), 0)};
  auto c = is_trivial_morphism(g, to_point, pt);
  REQUIRE(c.trivial);
  CHECK(is_trivial_object(c.middle));
  CHECK(CatAmbient::compose(g, c.second, c.first) == to_point);

  const FinCat i2 = fixtures::i2();
  c = is_trivial_morphism(i2, CatAmbient::identity(i2, i2.all_objects()), i2);
  CHECK_FALSE(c.trivial);
  REQUIRE(c.violation.size() == 1);
  CHECK((c.violation[0] == "u" || c.violation[0] == "v"));

  const auto id_g = CatAmbient::identity(g, g.all_objects());
  c = is_trivial_morphism(g, id_g, g);
  REQUIRE(c.trivial);
  CHECK(CatAmbient::compose(g, c.second, c.first) == id_g);
}

TEST_CASE("triviality agrees with factorization search through trivial objects") {
  const auto corpus = preorder_corpus(3);
  std::vector<FinPreord> trivial;
  for (const auto& [n, p] : corpus) {
    if (is_trivial_object(p)) trivial.push_back(p);
  }
  REQUIRE(trivial.size() == 4);
  for (const auto& [an, a] : corpus) {
    for (const auto& [bn, b] : corpus) {
      for (const auto& f : monotone_tables(a, a.all(), b)) {
        bool found = false;
        for (const auto& d : trivial) {
          for (const auto& g : monotone_tables(a, a.all(), d)) {
            for (const auto& h : monotone_tables(d, d.all(), b)) {
              if (PreordAmbient::compose(a, h, g) == f) found = true;
            }
          }
        }
        const auto cert = is_trivial_morphism(a, f, b);
        CHECK(cert.trivial == found);
        if (cert.trivial) CHECK(PreordAmbient::compose(a, cert.second, cert.first) == f);
      }
    }
  }

  const auto cats = cat_fixture_corpus();
  std::vector<FinCat> tcats;
  for (const auto& [n, c] : cats) {
    if (is_trivial_object(c)) tcats.push_back(c);
  }
  tcats.push_back(fixtures::terminal_cat());
  tcats.push_back(FinCat{});
  for (const auto& [an, a] : cats) {
    for (const auto& [bn, b] : cats) {
      for (const auto& f : functor_tables(a, a.all_objects(), b)) {
        const auto cert = is_trivial_morphism(a, f, b);
        if (cert.trivial) {
          CHECK(is_trivial_object(cert.middle));
          CHECK(CatAmbient::compose(a, cert.second, cert.first) == f);
          continue;
        }
        // No factorization through any trivial fixture.
        for (const auto& d : tcats) {
          for (const auto& g : functor_tables(a, a.all_objects(), d)) {
            for (const auto& h : functor_tables(d, d.all_objects(), b)) CHECK(CatAmbient::compose(a, h, g) != f);
          }
        }
      }
    }
  }
}

TEST_CASE("canonical sequence of P3 matches the condensation oracle") {
  const FinPreord p3 = fixtures::p3();
  const auto seq = canonical_sequence(p3);
  CHECK(seq.torsion.leq(0, 1));
  CHECK(seq.torsion.leq(1, 0));
  CHECK_FALSE(seq.torsion.leq(1, 2));
  CHECK(seq.torsion.up(2) == bit(2));
  CHECK(seq.counit == Table{0, 1, 2});
  CHECK(seq.torsion_free.names() == std::vector<std::string>{"[a,b]", "c"});
  CHECK(seq.torsion_free.leq(0, 1));
  CHECK_FALSE(seq.torsion_free.leq(1, 0));
  const auto comp = oracle::scc(p3);
  CHECK(seq.unit == Table(comp.begin(), comp.end()));
}

TEST_CASE("condensation size equals the number of strongly connected components") {
  std::mt19937 rng(20261016);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 7);
    std::bernoulli_distribution coin(0.25);
    std::vector<std::vector<bool>> edge(n, std::vector<bool>(n, false));
    std::vector<Mask> rows(static_cast<std::size_t>(n), 0);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a != b && coin(rng)) {
          edge[a][b] = true;
          rows[a] |= bit(b);
        }
      }
    }
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
    const FinPreord p = FinPreord::from_rows(names, preorder_closure(rows));
    const auto comp = kosaraju(n, edge);
    const auto seq = canonical_sequence(p);
    CHECK(seq.torsion_free.size() == *std::max_element(comp.begin(), comp.end()) + 1);
    CHECK(seq.unit == Table(comp.begin(), comp.end()));
    CHECK(is_torsion_free(seq.torsion_free));
    CHECK(is_torsion(seq.torsion));
    // Idempotence.
    CHECK(torsion_part(seq.torsion) == seq.torsion);
    CHECK(torsion_free_part(seq.torsion_free) == seq.torsion_free);
  }
}

TEST_CASE("partial orders are their own torsion-free part") {
  for (const auto& [n, p] : preorder_corpus(4)) {
    if (!is_torsion_free(p)) continue;
    CHECK(torsion_free_part(p) == p);
    CHECK(is_trivial_object(torsion_part(p)));
  }
}

TEST_CASE("reduced chains in I2") {
  const FinCat i2 = fixtures::i2();
  const SkeletalQuotient q(share(i2));
  const int u = arrow(i2, "u");
  const int v = arrow(i2, "v");
  CHECK(q.class_count() == 1);
  CHECK(q.class_name(0) == "[x,y]");
  const auto id = normalize_chain(q, {u, v});
  CHECK(id.arrows.empty());
  CHECK(id == q.identity(0));
  CHECK(normalize_chain(q, {u, u}).arrows == std::vector<int>{u, u});
  CHECK(normalize_chain(q, {u}).arrows == std::vector<int>{u});
  CHECK(normalize_chain(q, {u, u, v}).arrows == std::vector<int>{u});
  CHECK_FALSE(q.finite());
  CHECK_FALSE(q.materialize().has_value());
  // Two chains of every positive length: (u)^n and (v)^n.
  for (int len = 1; len <= 4; ++len) {
    int count = 0;
    for (const auto& ch : q.hom(0, 0, len)) count += static_cast<int>(ch.arrows.size()) == len;
    CHECK(count == 2);
  }
  const auto inv = q.inverse(q.generator(u), 4);
  REQUIRE(inv);
  CHECK(inv->arrows == std::vector<int>{v});
  const auto uu = normalize_chain(q, {u, u});
  CHECK(q.inverse(uu, 4)->arrows == std::vector<int>{v, v});
}

TEST_CASE("junction mismatch") {
  const FinCat c = fixtures::arrow_cat();
  const SkeletalQuotient q(share(c));
  const int f = arrow(c, "f");
  try {
    (void)normalize_chain(q, {f, f});
    FAIL("expected JunctionMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::JunctionMismatch);
  }
  CHECK(q.finite());
  const auto m = q.materialize();
  REQUIRE(m);
  CHECK(m->object_count() == 2);
  CHECK(m->arrow_count() == 3);
}

TEST_CASE("chain rewriting is confluent on the fixtures") {
  std::mt19937 rng(7);
  int chains = 0;
  for (const auto& [name, c] : cat_fixture_corpus()) {
    const SkeletalQuotient q(share(c));
    if (c.arrow_count() == 0) continue;
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<int> ch{static_cast<int>(rng() % static_cast<unsigned>(c.arrow_count()))};
      const int len = 1 + static_cast<int>(rng() % 7);
      while (static_cast<int>(ch.size()) < len) {
        std::vector<int> next;
        for (int g = 0; g < c.arrow_count(); ++g) {
          if (q.class_of(c.dom(g)) == q.class_of(c.cod(ch.back()))) next.push_back(g);
        }
        ch.push_back(next[rng() % next.size()]);
      }
      ++chains;
      const ChainArrow expected = normalize_chain(q, ch);
      CHECK(q.is_reduced(expected.arrows));
      for (int order = 0; order < 6; ++order) {
        std::vector<int> cur = ch;
        for (auto rs = q.redexes(cur); !rs.empty(); rs = q.redexes(cur)) cur = q.apply(cur, rs[rng() % rs.size()]);
        CHECK(cur == expected.arrows);
      }
    }
  }
  CHECK(chains >= 1000);
}

TEST_CASE("quotient composition is associative within the bound") {
  for (const auto& [name, c] : cat_fixture_corpus()) {
    const SkeletalQuotient q(share(c));
    const auto all = q.all_chains(4);
    for (const auto& f : all) {
      for (const auto& g : all) {
        if (f.cod != g.dom) continue;
        for (const auto& h : all) {
          if (g.cod != h.dom || f.arrows.size() + g.arrows.size() + h.arrows.size() > 4) continue;
          CHECK(q.compose(h, q.compose(g, f)) == q.compose(q.compose(h, g), f));
        }
        CHECK(q.compose(g, q.identity(g.dom)) == g);
      }
    }
  }
}

TEST_CASE("canonical sequences of the category fixtures") {
  const auto seq = canonical_sequence(fixtures::i2());
  CHECK(seq.truncated());
  CHECK(seq.torsion == fixtures::i2());
  CHECK(is_torsion(seq.torsion));

  const FinCat ac = fixtures::arrow_cat();
  const auto s2 = canonical_sequence(ac);
  REQUIRE(s2.torsion_free);
  CHECK(s2.torsion_free->object_names() == ac.object_names());
  CHECK(s2.torsion_free->arrow_count() == ac.arrow_count());
  CHECK(s2.torsion.arrow_count() == 2);
  CHECK(is_functor_on(ac, *s2.unit, ac.all_objects(), *s2.torsion_free));

  const FinCat g = fixtures::grpd2();
  const auto s3 = canonical_sequence(g);
  REQUIRE(s3.torsion_free);
  CHECK(is_torsion_free(*s3.torsion_free));
  CHECK(s3.torsion_free->arrow_count() == g.arrow_count());
  // Idempotence on the materialized part.
  const auto again = canonical_sequence(*s3.torsion_free);
  REQUIRE(again.torsion_free);
  CHECK(again.torsion_free->arrow_count() == s3.torsion_free->arrow_count());
}

TEST_CASE("pretorsion suites on preorders") {
  const auto corpus = preorder_corpus(3);
  const auto rep = verify_pt(corpus, corpus);
  CHECK(rep.ok());
  CHECK(rep.passes_of("PT1") > 0);
  CHECK(rep.passes_of("PT2-kernel") > 0);
  CHECK(rep.passes_of("PT2-cokernel") > 0);

  PtOptions bad;
  bad.swap_fault = true;
  const auto faulty = verify_pt(corpus, corpus, bad);
  CHECK(faulty.failures_of("PT2-kernel") >= 1);

  for (SystemKind k : {SystemKind::Open, SystemKind::Closed, SystemKind::Saturated, SystemKind::Indiscrete}) {
    const auto cc = verify_cc(corpus, k, corpus);
    CHECK_MESSAGE(cc.ok(), to_string(k));
    if (!cc.ok()) MESSAGE(cc.to_json()["summary"].dump());
    CHECK(cc.passes_of("CC3") > 0);
    CHECK(cc.passes_of("CC4") > 0);
  }
}

TEST_CASE("pretorsion suites on the category fixtures") {
  const auto corpus = cat_fixture_corpus();
  const auto rep = verify_pt(corpus, corpus);
  CHECK(rep.ok());
  if (!rep.ok()) MESSAGE(rep.to_json().dump(1));
  CHECK(rep.passes_of("PT2-cokernel") > 0);

  PtOptions bad;
  bad.swap_fault = true;
  CHECK_FALSE(verify_pt(corpus, corpus, bad).ok());

  for (SystemKind k : {SystemKind::Saturated, SystemKind::Indiscrete}) {
    const auto cc = verify_cc(corpus, k, corpus);
    CHECK_MESSAGE(cc.ok(), to_string(k));
    if (!cc.ok()) MESSAGE(cc.to_json().dump(1));
  }
  CHECK_THROWS_AS(verify_cc(corpus, SystemKind::LeftSaturated, corpus), Error);
}
