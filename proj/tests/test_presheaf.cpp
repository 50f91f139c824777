#include "doctest.h"
#include "stabcat/corpus.hpp"
#include "stabcat/error.hpp"
#include "stabcat/presheaf.hpp"

using namespace stabcat;

TEST_CASE("presheaf construction") {
  const auto a = sierpinski_presheaf();
  CHECK(a.points() == 2);
  CHECK(a.total_size() == 6);
  CHECK(a.restriction(1, 0) == Table{0, 1, 0, 1});
  CHECK(a.restriction(1, 1) == Table{0, 1, 2, 3});

  CHECK_THROWS_AS(FinPoset::make(FinPreord::indiscrete({"p", "q"})), Error);
  auto index = FinPoset::make(FinPreord::chain({"U", "X"}));
  const auto c2 = FinPreord::chain({"x", "y"});
  try {
    PreordPresheaf::make(index, {c2, c2}, {});
    FAIL("expected InputError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::InputError);
  }
  try {
    PreordPresheaf::make(index, {c2, c2}, {{1, 0, Table{1, 0}}});
    FAIL("expected NotMonotone");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotMonotone);
  }

  // A square index whose two paths disagree.
  const auto square = FinPoset::make(FinPreord::from_rows({"b", "l", "r", "t"}, {0b1111, 0b1010, 0b1100, 0b1000}));
  const auto pt = FinPreord::discrete({"0", "1"});
  std::vector<PreordPresheaf::Restriction> rs{
      {1, 0, Table{0, 1}}, {2, 0, Table{0, 1}}, {3, 1, Table{0, 1}}, {3, 2, Table{1, 0}}};
  try {
    PreordPresheaf::make(square, {pt, pt, pt, pt}, rs);
    FAIL("expected NotFunctorial");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotFunctorial);
  }
  rs[3].map = Table{0, 1};
  CHECK_NOTHROW(PreordPresheaf::make(square, {pt, pt, pt, pt}, rs));
}

TEST_CASE("internal saturation on the Sierpinski presheaf") {
  const auto a = sierpinski_presheaf();
  const auto [s, t] = sierpinski_subs();
  CHECK(is_saturated_internal(a, s));
  CHECK(is_saturated_internal(a, t));
  CHECK(is_saturated_internal(a, InternalSub{{0, 0}}));
  CHECK_FALSE(is_complemented_sub(a, s));
  CHECK_FALSE(is_complemented_sub(a, t));
  CHECK(is_complemented_sub(a, whole_sub(a)));
  CHECK(join(s, t) == whole_sub(a));

  // {a1} at X and {a} at U: a < b forces b.
  const InternalSub small{{0b01, 0b0001}};
  REQUIRE(is_internal_sub(a, small));
  CHECK_FALSE(is_saturated_internal(a, small));
  CHECK_FALSE(saturated_by_factorization(a, small, Endpoint::Either));
  CHECK(is_left_saturated_internal(a, small));
  CHECK_FALSE(is_right_saturated_internal(a, small));

  // Not closed under restriction.
  CHECK_FALSE(is_internal_sub(a, InternalSub{{0, 0b0011}}));

  const auto top = a.without_point(0);
  CHECK(top.points() == 1);
  CHECK(is_complemented_sub(top, InternalSub{{0b0011}}));
}

TEST_CASE("complement of a component in a constant presheaf") {
  const auto index = FinPoset::make(FinPreord::chain({"U", "X"}));
  const auto value = FinPreord::from_rows({"p", "q", "t"}, {0b011, 0b010, 0b100});
  const auto a = PreordPresheaf::constant(index, value);
  const InternalSub chain{{0b011, 0b011}};
  const auto comp = complement_of(a, chain);
  REQUIRE(comp);
  CHECK(comp->at == std::vector<Mask>{0b100, 0b100});
}

TEST_CASE("constant presheaf over one point matches plain saturation") {
  const auto index = FinPoset::make(FinPreord::point("X"));
  for (const auto& [n, p] : preorder_corpus(3)) {
    const auto a = PreordPresheaf::constant(index, p);
    const auto lat = enumerate_distinguished(p, SystemKind::Saturated);
    int count = 0;
    for (const auto& s : internal_subs(a)) {
      const bool sat = is_saturated_internal(a, s);
      CHECK(sat == lat.contains(s.at[0]));
      count += sat ? 1 : 0;
    }
    CHECK(count == lat.size());
  }
}

TEST_CASE("internal saturation suite") {
  const auto corpus = presheaf_corpus();
  CHECK(corpus.back().first == "sierpinski");
  const auto rep = verify_internal_saturation(corpus);
  CHECK(rep.ok());
  CHECK(rep.passes_of("left-and-right-implies-saturated") > 0);
}

TEST_CASE("presheaf corpus is free of isomorphic duplicates") {
  // Over the two-point chain with |A(X)| <= 1: (0,0), (1,0) has no maps,
  // (0,1), (1,1), (0,2 sizes) ... count by hand for |A(X)|, |A(U)| <= 1:
  // empty->empty, empty->point, point->point.
  CHECK(presheaf_corpus(1, 1).size() == 3 + 1);
  // |A(X)| <= 2, |A(U)| <= 1: tops {0, 1, discrete2, chain2, indiscrete2}
  // into {0, 1}: empty top gives 2, each nonempty top gives 1.
  CHECK(presheaf_corpus(2, 1).size() == 2 + 4 + 1);
}

TEST_CASE("Sierpinski demo") {
  const auto rep = sierpinski_demo();
  CHECK(rep.ok());
  CHECK(rep.passes_of("not-complemented") == 2);
  CHECK(rep.passes_of("complemented-without-U") == 2);
}
