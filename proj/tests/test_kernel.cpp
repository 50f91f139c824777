#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "stabcat/corpus.hpp"
#include "stabcat/error.hpp"
#include "stabcat/fixtures.hpp"
#include "stabcat/pushout.hpp"

using namespace stabcat;

namespace {

Errc error_code(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::InputError;
}

std::vector<std::string> witness_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.witness();
  }
  return {};
}

}  // namespace

TEST_CASE("closure of a small relation adds the forced pairs") {
  const FinPreord p = fixtures::p3();
  CHECK(p.leq(0, 2));  // a <= c by transitivity
  CHECK(p.leq(0, 1));
  CHECK(p.leq(1, 0));
  CHECK_FALSE(p.leq(2, 0));
  for (int i = 0; i < 3; ++i) CHECK(p.leq(i, i));
}

TEST_CASE("strict validation names the offending pair") {
  CHECK(error_code([] { validate_preord({{"a"}, {}}, true); }) == Errc::NotReflexive);
  CHECK(witness_of([] { validate_preord({{"a"}, {}}, true); }) == std::vector<std::string>{"a", "a"});
  const RawPreord raw{{"a", "b", "c"}, {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"a", "b"}, {"b", "c"}}};
  CHECK(error_code([&] { validate_preord(raw, true); }) == Errc::NotTransitive);
  CHECK(witness_of([&] { validate_preord(raw, true); }) == std::vector<std::string>{"a", "c"});
  CHECK(error_code([] { validate_preord({{"a", "a"}, {}}, false); }) == Errc::DuplicateName);
}

TEST_CASE("closure agrees with a dense closure oracle and is idempotent") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    std::bernoulli_distribution coin(0.2);
    std::vector<Mask> rows(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<bool>> dense(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (coin(rng)) {
          rows[static_cast<std::size_t>(a)] |= bit(b);
          dense[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
        }
      }
    }
    const auto closed = preorder_closure(rows);
    const auto expect = oracle::closure(dense);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) CHECK(has(closed[static_cast<std::size_t>(a)], b) == expect[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
    }
    CHECK(preorder_closure(closed) == closed);
  }
}

TEST_CASE("monotone map enumeration matches a brute-force filter") {
  const auto corpus = preorder_corpus(3);
  for (const auto& [an, a] : corpus) {
    for (const auto& [bn, b] : corpus) {
      auto got = monotone_tables(a, a.all(), b);
      auto want = oracle::monotone_maps(a, b);
      std::sort(got.begin(), got.end());
      std::sort(want.begin(), want.end());
      CHECK_MESSAGE(got == want, an << " -> " << bn);
    }
  }
}

TEST_CASE("category validation") {
  const FinCat arrow = fixtures::arrow_cat();
  CHECK(arrow.object_count() == 2);
  CHECK(arrow.arrow_count() == 3);
  const FinCat i2 = fixtures::i2();
  const int u = *i2.arrow_index("u");
  const int v = *i2.arrow_index("v");
  CHECK(i2.compose(v, u) == i2.identity(*i2.object_index("x")));
  CHECK(i2.is_iso(u));
  CHECK_FALSE(i2.is_invertible_endo(u));

  RawCat broken;
  broken.objects = {"x", "y"};
  broken.arrows = {{"u", "x", "y"}, {"v", "y", "x"}};
  broken.compose = {{"u", "v", "id_y"}};
  CHECK(error_code([&] { validate_cat(broken); }) == Errc::MissingComposite);
  CHECK(witness_of([&] { validate_cat(broken); }) == std::vector<std::string>{"v", "u"});

  RawCat dangling;
  dangling.objects = {"x"};
  dangling.arrows = {{"u", "x", "z"}};
  CHECK(error_code([&] { validate_cat(dangling); }) == Errc::DanglingEndpoint);

  RawCat unit;
  unit.objects = {"x"};
  unit.arrows = {{"e", "x", "x"}};
  unit.compose = {{"e", "id_x", "id_x"}};
  CHECK(error_code([&] { validate_cat(unit); }) == Errc::UnitLawViolation);

  // e∘e = e and f∘e = e with f∘f = id: (f∘e)∘... check associativity is enforced.
  RawCat assoc;
  assoc.objects = {"x"};
  assoc.arrows = {{"e", "x", "x"}, {"f", "x", "x"}};
  assoc.compose = {{"e", "e", "e"}, {"e", "f", "e"}, {"f", "e", "f"}, {"f", "f", "id_x"}};
  CHECK(error_code([&] { validate_cat(assoc); }) == Errc::AssociativityViolation);
}

TEST_CASE("functor enumeration matches a brute-force filter on small categories") {
  for (const auto& [an, a] : fixtures::cat_fixtures()) {
    for (const auto& [bn, b] : fixtures::cat_fixtures()) {
      if (a.arrow_count() > 5 || b.arrow_count() > 5) continue;
      std::size_t count = 0;
      for (const auto& objs : oracle::all_functions(a.object_count(), b.object_count())) {
        for (const auto& arrs : oracle::all_functions(a.arrow_count(), b.arrow_count())) {
          FunctorTable t{objs, arrs};
          bool ok = true;
          for (int f = 0; f < a.arrow_count() && ok; ++f) {
            const int g = arrs[static_cast<std::size_t>(f)];
            ok = b.dom(g) == objs[static_cast<std::size_t>(a.dom(f))] && b.cod(g) == objs[static_cast<std::size_t>(a.cod(f))];
          }
          for (int x = 0; x < a.object_count() && ok; ++x) {
            ok = arrs[static_cast<std::size_t>(a.identity(x))] == b.identity(objs[static_cast<std::size_t>(x)]);
          }
          for (int g = 0; g < a.arrow_count() && ok; ++g) {
            for (int f = 0; f < a.arrow_count() && ok; ++f) {
              const int gf = a.compose(g, f);
              if (gf >= 0) ok = b.compose(arrs[static_cast<std::size_t>(g)], arrs[static_cast<std::size_t>(f)]) == arrs[static_cast<std::size_t>(gf)];
            }
          }
          if (ok) ++count;
        }
      }
      CHECK_MESSAGE(functor_tables(a, a.all_objects(), b).size() == count, an << " -> " << bn);
    }
  }
}

TEST_CASE("preimages of subobjects") {
  auto p3 = share(fixtures::p3());
  auto c2 = share(fixtures::chain2());
  const auto f = MonotoneMap::make(p3, c2, {0, 0, 1});
  CHECK(preimage_sub(f, SubPreord{c2, bit(1)}).members == bit(2));
  CHECK(preimage_sub(f, SubPreord{c2, c2->all()}).members == p3->all());
  CHECK(preimage_sub(f, SubPreord{c2, 0}).members == 0);
  CHECK(error_code([&] { MonotoneMap::make(c2, p3, {2, 0}); }) == Errc::NotMonotone);

  auto arrow = share(fixtures::arrow_cat());
  auto i2 = share(fixtures::i2());
  FunctorTable t;
  t.obj = {*i2->object_index("x"), *i2->object_index("y")};
  t.arr.assign(3, -1);
  t.arr[static_cast<std::size_t>(arrow->identity(0))] = i2->identity(t.obj[0]);
  t.arr[static_cast<std::size_t>(arrow->identity(1))] = i2->identity(t.obj[1]);
  t.arr[static_cast<std::size_t>(*arrow->arrow_index("f"))] = *i2->arrow_index("u");
  const auto F = Functor::make(arrow, i2, t);
  const auto pre = preimage_sub(F, SubCat::full(i2, bit(*i2->object_index("x"))));
  CHECK(pre.objs == bit(0));
  CHECK(pre.arrs == bit(arrow->identity(0)));
}

TEST_CASE("preimage is functorial on corpus pairs") {
  const auto corpus = preorder_corpus(3);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const auto& a = corpus[rng() % corpus.size()].second;
    const auto& b = corpus[rng() % corpus.size()].second;
    const auto& c = corpus[rng() % corpus.size()].second;
    const auto fs = monotone_tables(a, a.all(), b);
    const auto gs = monotone_tables(b, b.all(), c);
    if (fs.empty() || gs.empty()) continue;
    const auto& f = fs[rng() % fs.size()];
    const auto& g = gs[rng() % gs.size()];
    Table gf(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) gf[i] = g[static_cast<std::size_t>(f[i])];
    const Mask s = static_cast<Mask>(rng()) & c.all();
    CHECK(preimage_mask(gf, s) == preimage_mask(f, preimage_mask(g, s)));
  }
}

TEST_CASE("pushout check on unions of subobjects") {
  const auto battery = preorder_corpus(3);
  const FinPreord a = fixtures::chain_plus_point();
  SUBCASE("degenerate square") {
    CHECK(pushout_holds(a, a.all(), a.all(), a.all(), battery).holds);
  }
  SUBCASE("disjoint components") {
    const auto rep = pushout_holds(a, bit(0) | bit(1), bit(2), a.all(), battery);
    CHECK(rep.holds);
    CHECK(rep.pairs_checked > 0);
  }
  SUBCASE("union with a missing order relation") {
    const FinPreord c = fixtures::chain2();
    const auto rep = pushout_holds(c, bit(0), bit(1), c.all(), battery);
    REQUIRE_FALSE(rep.holds);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->mediators == 0);
  }
  SUBCASE("categories") {
    const FinCat cospan = fixtures::cospan_cat();
    const Battery<FinCat> cats = fixtures::cat_fixtures();
    CHECK(pushout_holds(cospan, bit(0) | bit(1), bit(1) | bit(2), cospan.all_objects(), cats).holds);
    CHECK_FALSE(pushout_holds(cospan, bit(0), bit(1), bit(0) | bit(1), cats).holds);
  }
}

TEST_CASE("preorder corpus counts agree with orbit counting") {
  const auto corpus = preorder_corpus(4);
  std::vector<long> by_size(5, 0);
  for (const auto& [name, p] : corpus) ++by_size[static_cast<std::size_t>(p.size())];
  for (int n = 0; n <= 4; ++n) CHECK(by_size[static_cast<std::size_t>(n)] == oracle::preorders_up_to_iso(n));
  CHECK(oracle::labeled_preorders(3) == 29);
  CHECK(preorder_corpus(3).size() == 14);
  CHECK(preorder_corpus(1).size() == 2);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = i + 1; j < corpus.size(); ++j) CHECK_FALSE(isomorphic(corpus[i].second, corpus[j].second));
  }
}
